// Library walk-through on the three-species toy ecosystem: histogram, tree,
// distance matrix and the 14 indices of one gray image.

#include <cstdio>
#include <iostream>
#include <vector>

#include "bit/bit.hpp"

int main() {
  std::vector<bit::Level> px;
  px.insert(px.end(), 6, 255);
  px.insert(px.end(), 5, 128);
  px.insert(px.end(), 5, 0);
  const bit::GrayImage image(4, 4, px);

  const auto hist = bit::build_histogram(image);
  std::cout << "species (level: individuals)\n";
  for (const auto& sp : hist.entries()) std::cout << "  " << int(sp.level) << ": " << sp.count << '\n';

  const auto tree = bit::build_tree(hist);
  std::cout << "\ntree\n" << tree.to_text();
  std::cout << "\ndistances\n" << bit::distance_matrix(tree).to_csv(tree.leaves());

  std::cout << "\nindices\n";
  const auto values = bit::image_indices(image);
  for (std::size_t i = 0; i < values.size(); ++i)
    std::printf("  %-10s %.6f\n", std::string(bit::kIndexNames[i]).c_str(), values[i]);
}
