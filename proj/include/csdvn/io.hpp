#pragma once

// Text formats: the key/value constellation config and plain CSV tables.

#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "csdvn/constellation.hpp"
#include "csdvn/vn_division.hpp"

namespace csdvn {

/// Parses `key = value` lines; `#` starts a comment. Unknown keys and
/// malformed numbers raise ConfigError naming the key. The result is
/// applied on top of `base` and validated.
ConstellationConfig parse_config(std::istream& in, ConstellationConfig base = {});
ConstellationConfig load_config_file(const std::string& path, ConstellationConfig base = {});

/// Canonical key/value text; parse_config(canonical_config_text(c)) == c.
std::string canonical_config_text(const ConstellationConfig& config);

/// Shortest text that reads back to the same double.
std::string format_double(double x);

using CsvRow = std::vector<std::string>;

/// Comma separated, LF terminated, no quoting (fields never contain commas).
void write_csv_row(std::ostream& out, const CsvRow& row);
std::vector<CsvRow> read_csv(std::istream& in);

struct DivisionRow {
  VirtualAddress address;
  RegionLabel region = RegionLabel::R1;
  VnCellBounds bounds;
};

std::vector<DivisionRow> division_table(const ConstellationConfig& config, const DivisionConfig& division,
                                        const RegionBoundaries& boundaries);
void write_division_csv(std::ostream& out, const std::vector<DivisionRow>& rows);
std::vector<DivisionRow> read_division_csv(std::istream& in);

}  // namespace csdvn
