#pragma once

// Virtual-node division: celestial-sphere cells and addressing (CSD-VN), the
// row region partition, and the Earth-fixed baseline (GRD-VN) mappings.

#include <compare>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "csdvn/constellation.hpp"
#include "csdvn/rational.hpp"

namespace csdvn {

struct VirtualAddress {
  int v = 1;  // row, along the direction of motion
  int h = 1;  // column, west to east

  friend auto operator<=>(const VirtualAddress&, const VirtualAddress&) = default;
};

/// Degrees, exactly as produced by the longitude normalization and latitude
/// fold. On descending bands lat_low > lat_high.
struct VnCellBounds {
  double lon_low = 0.0;
  double lon_high = 0.0;
  double lat_low = 0.0;
  double lat_high = 0.0;
  bool pole_wrap = false;

  friend bool operator==(const VnCellBounds&, const VnCellBounds&) = default;
};

struct RegionBoundaries {
  int va = 0;
  int vb = 0;
  int vc = 0;

  friend bool operator==(const RegionBoundaries&, const RegionBoundaries&) = default;
};

enum class RegionLabel { R1, P1, R2, P2 };
std::string to_string(RegionLabel r);

enum class IslMode { conventional, optimized };
std::string to_string(IslMode m);
IslMode parse_isl_mode(const std::string& s);

/// How the start of cell (1,h) is offset along plane h.
///  unphased     - no offset
///  optimized    - mod(h-1, K) * df, matching the optimized ISL rows
///  conventional - (h-1) * df, matching same-slot rows
enum class DivisionPhasing { unphased, optimized, conventional };

struct DivisionConfig {
  double phi0 = 0.0;     // rad, unfolded start latitude of VN (1,1)
  double lambda0 = 0.0;  // rad, inertial start longitude of column 1
  DivisionPhasing phasing = DivisionPhasing::unphased;
  std::optional<Rational> k;  // n1/F, set whenever F > 0

  /// phi0 = -polar_threshold, columns centred on the orbit planes.
  static DivisionConfig unphased(const ConstellationConfig& config);
  /// Division whose cell starts coincide with the rows of the given ISL mode.
  static DivisionConfig matched(const ConstellationConfig& config, IslMode mode);
};

// --- cell geometry (degrees in, degrees out) ---

std::pair<double, double> vn_longitude_range(int h, double lambda0_deg, double plane_spacing_deg);

struct LatitudeBand {
  double low = 0.0;
  double high = 0.0;
  bool pole_wrap = false;
};

/// Cell latitude range; throws ConfigError when a phased division is asked
/// for with F = 0.
LatitudeBand vn_latitude_range(int v, int h, const DivisionConfig& division, const ConstellationConfig& config);

VnCellBounds vn_cell_bounds(int v, int h, const DivisionConfig& division, const ConstellationConfig& config);

/// Phase offset of cell (1,h) relative to phi0, in multiples of the phase quantum 2*pi/(n1*n2).
long cell_offset_quanta(int h, const DivisionConfig& division, const ConstellationConfig& config);
/// Phase (argument of latitude) at which cell (1,h) starts.
double cell_reference_phase(int h, const DivisionConfig& division, const ConstellationConfig& config);

// --- region partition ---

/// Closed form for zero phase difference.
RegionBoundaries region_boundaries(int n2, double polar_threshold);
/// Largest rows satisfying the polar constraints when a row spans `row_spread`
/// radians of phase beyond its own cell. Clamped so vA >= 0.
RegionBoundaries region_boundaries_constrained(int n2, double polar_threshold, double row_spread);
/// Closed form for the optimized mode when K = n1/F is an integer.
RegionBoundaries region_boundaries_closed_form(int n2, double polar_threshold, int k);
/// Optimized-mode boundaries: closed form for integer K, constraint form otherwise.
RegionBoundaries region_boundaries_phased(int n1, int n2, int phasing, double polar_threshold);
/// Boundaries appropriate to the ISL mode (conventional uses the full
/// same-slot spread (n1-1)*df).
RegionBoundaries mode_boundaries(const ConstellationConfig& config, IslMode mode);

RegionLabel classify_region(int v, const RegionBoundaries& b);
inline bool h_links_on(RegionLabel r) { return r == RegionLabel::R1 || r == RegionLabel::R2; }

// --- CSD mapping ---

/// Row index from phase with half-open cells; a satellite on a boundary
/// belongs to the higher cell.
int csd_row(double phase, int h, const DivisionConfig& division, const ConstellationConfig& config);
VirtualAddress csd_map(const SatelliteState& state, const ConstellationConfig& config, const DivisionConfig& division);

// --- GRD baseline ---

double grd_switch_interval(double period, int n2);

enum class GrdVariant { intra_only, inter_plane };

/// Earth-fixed n1 x n2 grid frozen from the ground projection of the
/// celestial cells at t = 0.
class GrdGrid {
 public:
  GrdGrid(ConstellationConfig config, DivisionConfig division);

  const ConstellationConfig& config() const { return config_; }
  const DivisionConfig& division() const { return division_; }
  const GeoPoint& center(VirtualAddress a) const { return centers_[index(a)]; }

  int index(VirtualAddress a) const { return (a.h - 1) * config_.n2 + (a.v - 1); }
  VirtualAddress address(int idx) const { return {idx % config_.n2 + 1, idx / config_.n2 + 1}; }
  int cell_count() const { return config_.n1 * config_.n2; }

 private:
  ConstellationConfig config_;
  DivisionConfig division_;
  std::vector<GeoPoint> centers_;
};

struct GrdAssignment {
  std::vector<std::optional<VirtualAddress>> address_of;  // by satellite_index; nullopt = NO_COVER
  std::vector<std::optional<SatelliteId>> server_of;      // by cell index
  int conflicts = 0;  // cells whose chosen server already served another cell
};

/// Maps every satellite at time t.
///  intra_only  - a satellite only serves cells of the column bound to its
///                plane; the along-track cell follows its phase.
///  inter_plane - each cell is served by the satellite of the plane whose node
///                longitude currently lies nearest the cell, nearest in phase.
/// Cells whose server sits below `min_elevation` are NO_COVER.
GrdAssignment grd_assign(const GrdGrid& grid, GrdVariant variant, double t, double min_elevation,
                         const std::vector<SatelliteState>& states);

/// Single-satellite form of grd_assign.
std::optional<VirtualAddress> grd_map(const SatelliteState& state, const GrdGrid& grid, GrdVariant variant,
                                      double min_elevation);

}  // namespace csdvn
