#include "csdvn/vn_division.hpp"

#include <algorithm>
#include <cmath>

#include "csdvn/isl_topology.hpp"

namespace csdvn {

std::string to_string(RegionLabel r) {
  switch (r) {
    case RegionLabel::R1: return "R1";
    case RegionLabel::P1: return "P1";
    case RegionLabel::R2: return "R2";
    case RegionLabel::P2: return "P2";
  }
  return "?";
}

std::string to_string(IslMode m) { return m == IslMode::conventional ? "conventional" : "optimized"; }

IslMode parse_isl_mode(const std::string& s) {
  if (s == "conventional") return IslMode::conventional;
  if (s == "optimized") return IslMode::optimized;
  throw ConfigError("mode", "expected conventional or optimized, got '" + s + "'");
}

DivisionConfig DivisionConfig::unphased(const ConstellationConfig& config) {
  DivisionConfig d;
  d.phi0 = -config.polar_threshold;
  d.lambda0 = config.raan0 - config.plane_spacing() / 2.0;
  d.phasing = DivisionPhasing::unphased;
  if (config.phasing > 0) d.k = Rational(config.n1, config.phasing);
  return d;
}

DivisionConfig DivisionConfig::matched(const ConstellationConfig& config, IslMode mode) {
  DivisionConfig d = unphased(config);
  if (config.phasing > 0)
    d.phasing = mode == IslMode::optimized ? DivisionPhasing::optimized : DivisionPhasing::conventional;
  return d;
}

std::pair<double, double> vn_longitude_range(int h, double lambda0_deg, double plane_spacing_deg) {
  const double low = positive_mod(lambda0_deg + (h - 1) * plane_spacing_deg + 180.0, 360.0) - 180.0;
  const double high = positive_mod(lambda0_deg + h * plane_spacing_deg + 180.0, 360.0) - 180.0;
  return {low, high};
}

long cell_offset_quanta(int h, const DivisionConfig& division, const ConstellationConfig& config) {
  if (division.phasing == DivisionPhasing::unphased) return 0;
  if (config.phasing == 0) throw ConfigError("F", "a phased division needs F > 0 (K = n1/F is undefined)");
  const long raw = static_cast<long>(h - 1) * config.phasing;
  return division.phasing == DivisionPhasing::optimized ? raw % config.n1 : raw;
}

double cell_reference_phase(int h, const DivisionConfig& division, const ConstellationConfig& config) {
  return division.phi0 + static_cast<double>(cell_offset_quanta(h, division, config)) * config.phase_quantum();
}

namespace {

double fold_latitude_deg(double unfolded) {
  return 90.0 - std::abs(180.0 - positive_mod(unfolded + 90.0, 360.0));
}

}  // namespace

LatitudeBand vn_latitude_range(int v, int h, const DivisionConfig& division, const ConstellationConfig& config) {
  const double quantum_deg = 360.0 / (static_cast<double>(config.n1) * config.n2);
  const double slot_deg = 360.0 / config.n2;
  const double start = rad2deg(division.phi0) +
                       static_cast<double>(cell_offset_quanta(h, division, config)) * quantum_deg +
                       (v - 1) * slot_deg;
  LatitudeBand band;
  band.low = fold_latitude_deg(start);
  band.high = fold_latitude_deg(start + slot_deg);
  // Half-open band [start, start + slot) in unfolded phase; poles sit at 90 + 180k.
  const double first_pole = 90.0 + 180.0 * std::ceil((start - 90.0) / 180.0 - kBoundaryTolerance);
  band.pole_wrap = first_pole < start + slot_deg - kBoundaryTolerance;
  return band;
}

VnCellBounds vn_cell_bounds(int v, int h, const DivisionConfig& division, const ConstellationConfig& config) {
  const auto [lon_low, lon_high] = vn_longitude_range(h, rad2deg(division.lambda0), 180.0 / config.n1);
  const auto lat = vn_latitude_range(v, h, division, config);
  return {lon_low, lon_high, lat.low, lat.high, lat.pole_wrap};
}

namespace {

int floor_snapped(double x) { return static_cast<int>(std::floor(x + kBoundaryTolerance)); }

int first_descending_row(int n2) { return (n2 + 1) / 2 + 1; }  // ceil(n2/2 + 1)

RegionBoundaries normalized(int va, int vb, int vc) {
  // Empty equatorial bands collapse to vA = 0 and vC = vB - 1.
  return {std::max(va, 0), vb, std::max(vc, vb - 1)};
}

}  // namespace

RegionBoundaries region_boundaries(int n2, double polar_threshold) {
  const double x = n2 * polar_threshold / kPi;
  return normalized(floor_snapped(x), first_descending_row(n2), floor_snapped(x + n2 / 2.0));
}

RegionBoundaries region_boundaries_constrained(int n2, double polar_threshold, double row_spread) {
  const double slot = kTwoPi / n2;
  const int va = floor_snapped((2.0 * polar_threshold - row_spread) / slot);
  const int vc = floor_snapped((kPi + 2.0 * polar_threshold - row_spread) / slot);
  return normalized(va, first_descending_row(n2), std::min(vc, n2));
}

RegionBoundaries region_boundaries_closed_form(int n2, double polar_threshold, int k) {
  const double x = n2 * polar_threshold / kPi;
  const double lag = static_cast<double>(k - 1) / k;
  return normalized(floor_snapped(x - lag), first_descending_row(n2), floor_snapped(x + n2 / 2.0 - lag));
}

RegionBoundaries region_boundaries_phased(int n1, int n2, int phasing, double polar_threshold) {
  if (phasing <= 0) throw ConfigError("F", "phased boundaries need F > 0; use the unphased form");
  const Rational k(n1, phasing);
  if (k.is_integer()) return region_boundaries_closed_form(n2, polar_threshold, static_cast<int>(k.num()));
  const double quantum = kTwoPi / (static_cast<double>(n1) * n2);
  return region_boundaries_constrained(n2, polar_threshold,
                                       static_cast<double>(optimized_spread_quanta(n1, phasing)) * quantum);
}

RegionBoundaries mode_boundaries(const ConstellationConfig& config, IslMode mode) {
  if (config.phasing == 0) return region_boundaries(config.n2, config.polar_threshold);
  if (mode == IslMode::optimized)
    return region_boundaries_phased(config.n1, config.n2, config.phasing, config.polar_threshold);
  return region_boundaries_constrained(config.n2, config.polar_threshold,
                                       (config.n1 - 1) * config.phase_offset());
}

RegionLabel classify_region(int v, const RegionBoundaries& b) {
  if (v <= b.va) return RegionLabel::R1;
  if (v < b.vb) return RegionLabel::P1;
  if (v <= b.vc) return RegionLabel::R2;
  return RegionLabel::P2;
}

int csd_row(double phase, int h, const DivisionConfig& division, const ConstellationConfig& config) {
  const double rel = wrap_two_pi(phase - cell_reference_phase(h, division, config));
  const int cell = floor_snapped(rel / config.slot_spacing());
  return cell % config.n2 + 1;
}

VirtualAddress csd_map(const SatelliteState& state, const ConstellationConfig& config, const DivisionConfig& division) {
  return {csd_row(state.phase, state.sat.plane, division, config), state.sat.plane};
}

double grd_switch_interval(double period, int n2) {
  if (!(period > 0.0)) throw ConfigError("period_s", "period must be positive");
  if (n2 < 1) throw ConfigError("n2", "need at least one satellite per plane");
  return period / n2;
}

GrdGrid::GrdGrid(ConstellationConfig config, DivisionConfig division)
    : config_(std::move(config)), division_(std::move(division)) {
  config_.validate();
  centers_.resize(static_cast<std::size_t>(cell_count()));
  for (int h = 1; h <= config_.n1; ++h) {
    const double ref = cell_reference_phase(h, division_, config_);
    for (int v = 1; v <= config_.n2; ++v) {
      const double u = ref + (v - 0.5) * config_.slot_spacing();
      const Vec3 p = orbit_position(config_.orbit_radius(), plane_raan(config_, h), config_.inclination, u);
      centers_[static_cast<std::size_t>(index({v, h}))] = ground_point(p, 0.0);
    }
  }
}

namespace {

// Plane and along-track phase of the great circle through an inertial
// longitude nearest to the given cell centre.
std::pair<int, double> nearest_plane(const ConstellationConfig& config, const GeoPoint& center, double t) {
  const double inertial_lon = center.lon + kEarthRotationRate * t;
  const double rel = wrap_two_pi(inertial_lon - config.raan0) / config.plane_spacing();
  const int k = static_cast<int>(std::floor(rel + 0.5)) % (2 * config.n1);
  if (k < config.n1) return {k + 1, center.lat};
  return {k - config.n1 + 1, kPi - center.lat};
}

}  // namespace

GrdAssignment grd_assign(const GrdGrid& grid, GrdVariant variant, double t, double min_elevation,
                         const std::vector<SatelliteState>& states) {
  const auto& config = grid.config();
  GrdAssignment out;
  out.address_of.assign(static_cast<std::size_t>(config.satellite_count()), std::nullopt);
  out.server_of.assign(static_cast<std::size_t>(grid.cell_count()), std::nullopt);

  auto serve = [&](int cell, const SatelliteState& s) {
    const VirtualAddress a = grid.address(cell);
    if (elevation_angle(s, grid.center(a)) < min_elevation) return;
    out.server_of[static_cast<std::size_t>(cell)] = s.sat;
    auto& slot = out.address_of[static_cast<std::size_t>(satellite_index(s.sat, config.n2))];
    if (slot) {
      ++out.conflicts;
      return;
    }
    slot = a;
  };

  if (variant == GrdVariant::intra_only) {
    for (const auto& s : states) {
      const int v = csd_row(s.phase, s.sat.plane, grid.division(), config);
      serve(grid.index({v, s.sat.plane}), s);
    }
    return out;
  }

  for (int cell = 0; cell < grid.cell_count(); ++cell) {
    const auto [plane, u] = nearest_plane(config, grid.center(grid.address(cell)), t);
    const double first = states[static_cast<std::size_t>(satellite_index({plane, 1}, config.n2))].phase;
    const double x = wrap_two_pi(u - first) / config.slot_spacing();
    const int m = static_cast<int>(std::floor(x + 0.5 - kBoundaryTolerance)) % config.n2;
    serve(cell, states[static_cast<std::size_t>(satellite_index({plane, m + 1}, config.n2))]);
  }
  return out;
}

std::optional<VirtualAddress> grd_map(const SatelliteState& state, const GrdGrid& grid, GrdVariant variant,
                                      double min_elevation) {
  const auto states = propagate_all(grid.config(), state.t);
  const auto a = grd_assign(grid, variant, state.t, min_elevation, states);
  return a.address_of[static_cast<std::size_t>(satellite_index(state.sat, grid.config().n2))];
}

}  // namespace csdvn
