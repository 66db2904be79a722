#pragma once

// Physical inter-satellite links: phase-difference bookkeeping for the two
// inter-plane connecting modes, neighbour selection, and per-instant edge sets.

#include <optional>
#include <string>
#include <vector>

#include "csdvn/constellation.hpp"
#include "csdvn/rational.hpp"
#include "csdvn/vn_division.hpp"

namespace csdvn {

enum class LinkKind { v_isl, h_isl };
enum class HDirection { none, forward, backward };
std::string to_string(LinkKind k);
std::string to_string(HDirection d);

struct IslEdge {
  SatelliteId a;
  SatelliteId b;
  LinkKind kind = LinkKind::v_isl;
  HDirection direction = HDirection::none;
  bool active = true;

  friend bool operator==(const IslEdge&, const IslEdge&) = default;
};

/// Phase quantities of a row. Spreads are also kept as integer multiples of
/// the phase quantum q = 2*pi/(n1*n2) (so df = F*q and wf = n1*q) which keeps
/// every comparison exact.
struct PhaseAnalysis {
  int n1 = 0;
  int n2 = 0;
  int phasing = 0;
  double delta_f = 0.0;
  std::optional<Rational> k;                // n1/F; empty when F = 0
  double conventional_spread = 0.0;         // (n1-1)*df
  double conventional_spread_wrapped = 0.0; // same, as an angular distance in [0, pi]
  double optimized_spread = 0.0;            // max_h mod(h-1, K)*df
  long conventional_spread_quanta = 0;
  long optimized_spread_quanta = 0;
  std::vector<int> bh_count;        // N(h), index h-1
  std::vector<int> fh_count;        // M(h), index h-1
  std::vector<long> spread_quanta;  // dP'(h) in quanta, index h-1
};

PhaseAnalysis phase_analysis(int n1, int n2, int phasing);

/// max over h in 1..n1 of ((h-1)*F mod n1): the optimized in-row spread in quanta.
long optimized_spread_quanta(int n1, int phasing);

/// Slot shift applied by the eastward link leaving plane h under the optimized
/// mode: floor(h/K) - floor((h-1)/K). 0 is a forward link, 1 a backward link.
int bh_slot_shift(int h, int n1, int phasing);

/// Planes h in 1..n1-1 whose eastward link is backward under the optimized mode.
std::vector<int> bh_isl_planes(int n1, const Rational& k);

enum class Side { east, west };

/// Inter-plane neighbour; empty across the seam.
std::optional<SatelliteId> h_neighbor(SatelliteId sat, Side side, IslMode mode, const ConstellationConfig& config);

/// Chain of satellites joined by eastward inter-plane links, starting from
/// plane 1 slot `first_slot`.
std::vector<SatelliteId> row_members(int first_slot, IslMode mode, const ConstellationConfig& config);

enum class ShutoffPolicy {
  row_synchronized,  // a row is off while any member's current cell reaches the polar caps
  per_satellite,     // a link is off while either endpoint is currently polar
};

/// True when some point of the phase arc [start, end] lies strictly above the
/// polar threshold (with kBoundaryTolerance).
bool arc_reaches_polar(double start, double end, double inclination, double polar_threshold);

/// Every V-ISL and every non-seam H-ISL at time t, with on/off state.
std::vector<IslEdge> snapshot_edges(const ConstellationConfig& config, IslMode mode, const DivisionConfig& division,
                                    double t, ShutoffPolicy policy = ShutoffPolicy::row_synchronized);

int count_active(const std::vector<IslEdge>& edges, LinkKind kind);

struct IslCounts {
  long n_hisl = 0;
  long n_visl = 0;
};

/// (n1-1)(vA + vC - vB + 1) H-ISLs and n1*n2 V-ISLs; empty bands count as zero.
IslCounts hisl_count_analytic(int n1, int n2, const RegionBoundaries& b);

/// Exhaustive search over the eastward link choice at each of the n1-1 plane
/// boundaries for the assignment minimising the in-row phase spread subject
/// to every cumulative offset staying non-negative.
struct Theorem1Result {
  long min_spread_quanta = 0;
  double min_spread = 0.0;
  std::vector<int> shifts;          // per boundary h = 1..n1-1
  std::vector<int> bh_boundaries;   // boundaries with a nonzero shift
  long assignments_checked = 0;
};

inline constexpr int kTheorem1MaxPlanes = 12;

/// Throws std::invalid_argument when n1 exceeds kTheorem1MaxPlanes.
Theorem1Result theorem1_bruteforce(int n1, int n2, int phasing);

}  // namespace csdvn
