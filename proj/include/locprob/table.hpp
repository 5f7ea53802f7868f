// Copyright 2026 The locprob Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace locprob {

using Cell = std::variant<double, std::int64_t, std::string>;

/// Column-oriented result of one CLI command plus ordered metadata.
class ResultTable {
 public:
  ResultTable() = default;
  explicit ResultTable(std::vector<std::string> columns);

  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<std::vector<Cell>>& rows() const { return rows_; }
  const std::vector<std::pair<std::string, std::string>>& metadata() const { return metadata_; }

  /// Throws std::invalid_argument when the row width differs from the header.
  void add_row(std::vector<Cell> row);
  /// Inserts or replaces; insertion order is kept.
  void set_metadata(const std::string& key, std::string value);
  /// Empty string when absent.
  std::string metadata_value(const std::string& key) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
  std::vector<std::pair<std::string, std::string>> metadata_;
};

/// 17 significant digits; "nan", "inf", "-inf" for non-finite values.
std::string format_double(double value);

/// `# key=value` metadata lines, then an RFC 4180 header and records.
void write_csv(const ResultTable& table, std::ostream& out);
/// {"metadata": {...}, "records": [{column: value}, ...]}; non-finite numbers become null.
void write_json(const ResultTable& table, std::ostream& out);

}  // namespace locprob
