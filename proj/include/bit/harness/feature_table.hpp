#pragma once

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "bit/error.hpp"

namespace bit {

struct FeatureRow {
  std::string sample_id;
  std::string label;
  std::vector<double> features;
};

/// Labeled descriptor rows for a dataset. Feature count is uniform across
/// rows and sample ids are unique.
class FeatureTable {
public:
  FeatureTable() = default;
  explicit FeatureTable(std::vector<std::string> feature_names) : names_(std::move(feature_names)) {}

  void add(FeatureRow row) {
    if (row.features.size() != names_.size())
      throw InvalidInput("feature table: row '" + row.sample_id + "' has " +
                         std::to_string(row.features.size()) + " features, expected " +
                         std::to_string(names_.size()));
    if (!ids_.insert(row.sample_id).second)
      throw InvalidInput("feature table: duplicate sample id '" + row.sample_id + "'");
    rows_.push_back(std::move(row));
  }

  const std::vector<std::string>& feature_names() const noexcept { return names_; }
  const std::vector<FeatureRow>& rows() const noexcept { return rows_; }
  const FeatureRow& operator[](std::size_t i) const { return rows_[i]; }
  std::size_t size() const noexcept { return rows_.size(); }
  bool empty() const noexcept { return rows_.empty(); }
  std::size_t dimension() const noexcept { return names_.size(); }

  /// Same schema, no rows.
  FeatureTable like() const { return FeatureTable(names_); }

  /// Same schema and ids, with features replaced.
  FeatureTable with_features(std::vector<std::vector<double>> features) const {
    FeatureTable out(names_);
    for (std::size_t i = 0; i < rows_.size(); ++i)
      out.add({rows_[i].sample_id, rows_[i].label, std::move(features.at(i))});
    return out;
  }

  void sort_by_id() {
    std::ranges::sort(rows_, {}, &FeatureRow::sample_id);
  }

  std::vector<std::string> labels() const {
    std::vector<std::string> out;
    for (const auto& r : rows_) out.push_back(r.label);
    return out;
  }

private:
  std::vector<std::string> names_;
  std::vector<FeatureRow> rows_;
  std::set<std::string> ids_;
};

namespace csv {

/// Nine significant digits, C locale.
inline std::string format_value(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

inline std::string quote(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

/// Splits one record. Quoted fields may contain commas and doubled quotes.
inline std::vector<std::string> split_record(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (quoted) throw InvalidInput("csv: unterminated quoted field");
  fields.push_back(std::move(cur));
  return fields;
}

} // namespace csv

/// Header `sample_id,label,<names...>`, one row per sample.
inline void write_csv(std::ostream& out, const FeatureTable& table) {
  out << "sample_id,label";
  for (const auto& n : table.feature_names()) out << ',' << csv::quote(n);
  out << '\n';
  for (const auto& row : table.rows()) {
    out << csv::quote(row.sample_id) << ',' << csv::quote(row.label);
    for (double v : row.features) out << ',' << csv::format_value(v);
    out << '\n';
  }
}

inline FeatureTable read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw InvalidInput("csv: missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  auto header = csv::split_record(line);
  if (header.size() < 3 || header[0] != "sample_id" || header[1] != "label")
    throw InvalidInput("csv: header must start with sample_id,label and name at least one feature");

  FeatureTable table(std::vector<std::string>(header.begin() + 2, header.end()));
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = csv::split_record(line);
    if (fields.size() != header.size())
      throw InvalidInput("csv: line " + std::to_string(line_no) + " has " + std::to_string(fields.size()) +
                         " fields, expected " + std::to_string(header.size()));
    FeatureRow row{fields[0], fields[1], {}};
    for (std::size_t i = 2; i < fields.size(); ++i) {
      char* end = nullptr;
      const double v = std::strtod(fields[i].c_str(), &end);
      if (fields[i].empty() || end != fields[i].c_str() + fields[i].size())
        throw InvalidInput("csv: line " + std::to_string(line_no) + ": bad number '" + fields[i] + "'");
      row.features.push_back(v);
    }
    table.add(std::move(row));
  }
  return table;
}

} // namespace bit
