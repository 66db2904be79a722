#include "csdvn/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

namespace csdvn {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_number(const std::string& key, const std::string& text) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) throw ConfigError(key, "not a number: '" + text + "'");
  return value;
}

int parse_int(const std::string& key, const std::string& text) {
  int value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) throw ConfigError(key, "not an integer: '" + text + "'");
  return value;
}

RegionLabel parse_region(const std::string& s) {
  for (auto r : {RegionLabel::R1, RegionLabel::P1, RegionLabel::R2, RegionLabel::P2})
    if (to_string(r) == s) return r;
  throw ConfigError("region", "unknown region '" + s + "'");
}

}  // namespace

ConstellationConfig parse_config(std::istream& in, ConstellationConfig base) {
  ConstellationConfig c = std::move(base);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(line_no), "expected key = value, got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "n1") c.n1 = parse_int(key, value);
    else if (key == "n2") c.n2 = parse_int(key, value);
    else if (key == "F") c.phasing = parse_int(key, value);
    else if (key == "altitude_km") c.altitude = parse_number(key, value) * 1e3;
    else if (key == "inclination_deg") c.inclination = deg2rad(parse_number(key, value));
    else if (key == "polar_threshold_deg") c.polar_threshold = deg2rad(parse_number(key, value));
    else if (key == "raan0_deg") c.raan0 = deg2rad(parse_number(key, value));
    else if (key == "phase0_deg") c.phase0 = deg2rad(parse_number(key, value));
    else if (key == "period_s") c.period_override = parse_number(key, value);
    else throw ConfigError(key, "unknown key");
  }
  c.validate();
  return c;
}

ConstellationConfig load_config_file(const std::string& path, ConstellationConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open '" + path + "'");
  return parse_config(in, std::move(base));
}

std::string format_double(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

std::string canonical_config_text(const ConstellationConfig& c) {
  std::ostringstream out;
  out << "n1 = " << c.n1 << '\n'
      << "n2 = " << c.n2 << '\n'
      << "F = " << c.phasing << '\n'
      << "altitude_km = " << format_double(c.altitude / 1e3) << '\n'
      << "inclination_deg = " << format_double(rad2deg(c.inclination)) << '\n'
      << "polar_threshold_deg = " << format_double(rad2deg(c.polar_threshold)) << '\n'
      << "raan0_deg = " << format_double(rad2deg(c.raan0)) << '\n';
  if (c.phase0) out << "phase0_deg = " << format_double(rad2deg(*c.phase0)) << '\n';
  if (c.period_override) out << "period_s = " << format_double(*c.period_override) << '\n';
  return out.str();
}

void write_csv_row(std::ostream& out, const CsvRow& row) {
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) out << ',';
    out << row[i];
  }
  out << '\n';
}

std::vector<CsvRow> read_csv(std::istream& in) {
  std::vector<CsvRow> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    CsvRow row;
    std::string field;
    std::istringstream fields(line);
    while (std::getline(fields, field, ',')) row.push_back(field);
    if (!line.empty() && line.back() == ',') row.emplace_back();
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<DivisionRow> division_table(const ConstellationConfig& config, const DivisionConfig& division,
                                        const RegionBoundaries& boundaries) {
  std::vector<DivisionRow> rows;
  rows.reserve(static_cast<std::size_t>(config.satellite_count()));
  for (int h = 1; h <= config.n1; ++h)
    for (int v = 1; v <= config.n2; ++v)
      rows.push_back({{v, h}, classify_region(v, boundaries), vn_cell_bounds(v, h, division, config)});
  return rows;
}

void write_division_csv(std::ostream& out, const std::vector<DivisionRow>& rows) {
  write_csv_row(out, {"v", "h", "region", "lat_low_deg", "lat_high_deg", "lon_low_deg", "lon_high_deg", "pole_wrap"});
  for (const auto& r : rows)
    write_csv_row(out, {std::to_string(r.address.v), std::to_string(r.address.h), to_string(r.region),
                        format_double(r.bounds.lat_low), format_double(r.bounds.lat_high),
                        format_double(r.bounds.lon_low), format_double(r.bounds.lon_high),
                        r.bounds.pole_wrap ? "1" : "0"});
}

std::vector<DivisionRow> read_division_csv(std::istream& in) {
  auto table = read_csv(in);
  if (table.empty()) throw ConfigError("csv", "empty division table");
  std::vector<DivisionRow> rows;
  for (std::size_t i = 1; i < table.size(); ++i) {
    const auto& f = table[i];
    if (f.size() != 8) throw ConfigError("csv", "row " + std::to_string(i) + " has " + std::to_string(f.size()) + " fields");
    DivisionRow r;
    r.address = {parse_int("v", f[0]), parse_int("h", f[1])};
    r.region = parse_region(f[2]);
    r.bounds.lat_low = parse_number("lat_low_deg", f[3]);
    r.bounds.lat_high = parse_number("lat_high_deg", f[4]);
    r.bounds.lon_low = parse_number("lon_low_deg", f[5]);
    r.bounds.lon_high = parse_number("lon_high_deg", f[6]);
    r.bounds.pole_wrap = f[7] == "1";
    rows.push_back(r);
  }
  return rows;
}

}  // namespace csdvn
