#pragma once

// PNG / JPEG / BMP decoding and encoding through OpenCV's imgcodecs.

#include <filesystem>
#include <optional>
#include <vector>

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

#include "bit/ecosystem.hpp"

namespace bit::io {

/// Decodes any 8-bit image OpenCV can read; gray inputs become three equal
/// channels. Returns nullopt when the file cannot be decoded.
inline std::optional<RgbImage> load_rgb(const std::filesystem::path& path) {
  cv::Mat bgr;
  try {
    bgr = cv::imread(path.string(), cv::IMREAD_COLOR);
  } catch (const cv::Exception&) {
    return std::nullopt;
  }
  if (bgr.empty() || bgr.type() != CV_8UC3) return std::nullopt;
  std::vector<Rgb> px(static_cast<std::size_t>(bgr.rows) * static_cast<std::size_t>(bgr.cols));
  for (int y = 0; y < bgr.rows; ++y) {
    const auto* row = bgr.ptr<cv::Vec3b>(y);
    for (int x = 0; x < bgr.cols; ++x)
      px[static_cast<std::size_t>(y) * static_cast<std::size_t>(bgr.cols) + static_cast<std::size_t>(x)] = {
          row[x][2], row[x][1], row[x][0]};
  }
  return RgbImage(static_cast<std::size_t>(bgr.cols), static_cast<std::size_t>(bgr.rows), std::move(px));
}

inline bool save_rgb(const std::filesystem::path& path, const RgbImage& image) {
  cv::Mat bgr(static_cast<int>(image.height()), static_cast<int>(image.width()), CV_8UC3);
  for (std::size_t y = 0; y < image.height(); ++y) {
    auto* row = bgr.ptr<cv::Vec3b>(static_cast<int>(y));
    for (std::size_t x = 0; x < image.width(); ++x) {
      const auto p = image.at(x, y);
      row[x] = cv::Vec3b(p.b, p.g, p.r);
    }
  }
  try {
    return cv::imwrite(path.string(), bgr);
  } catch (const cv::Exception&) {
    return false;
  }
}

} // namespace bit::io
