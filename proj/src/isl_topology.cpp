#include "csdvn/isl_topology.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace csdvn {

std::string to_string(LinkKind k) { return k == LinkKind::v_isl ? "V_ISL" : "H_ISL"; }

std::string to_string(HDirection d) {
  switch (d) {
    case HDirection::none: return "NONE";
    case HDirection::forward: return "FH";
    case HDirection::backward: return "BH";
  }
  return "?";
}

long optimized_spread_quanta(int n1, int phasing) {
  long best = 0;
  for (int h = 1; h <= n1; ++h) best = std::max(best, (static_cast<long>(h - 1) * phasing) % n1);
  return best;
}

int bh_slot_shift(int h, int n1, int phasing) {
  const long hi = static_cast<long>(h) * phasing / n1;
  const long lo = static_cast<long>(h - 1) * phasing / n1;
  return static_cast<int>(hi - lo);
}

PhaseAnalysis phase_analysis(int n1, int n2, int phasing) {
  if (n1 < 1 || n2 < 1 || phasing < 0) throw std::invalid_argument("phase_analysis: invalid constellation size");
  PhaseAnalysis pa;
  pa.n1 = n1;
  pa.n2 = n2;
  pa.phasing = phasing;
  const double quantum = kTwoPi / (static_cast<double>(n1) * n2);
  pa.delta_f = phasing * quantum;
  if (phasing > 0) pa.k = Rational(n1, phasing);

  pa.bh_count.resize(static_cast<std::size_t>(n1));
  pa.fh_count.resize(static_cast<std::size_t>(n1));
  pa.spread_quanta.resize(static_cast<std::size_t>(n1));
  int backward = 0;
  for (int h = 1; h <= n1; ++h) {
    if (h > 1 && bh_slot_shift(h - 1, n1, phasing) > 0) ++backward;
    pa.bh_count[static_cast<std::size_t>(h - 1)] = backward;
    pa.fh_count[static_cast<std::size_t>(h - 1)] = h - 1 - backward;
    pa.spread_quanta[static_cast<std::size_t>(h - 1)] = (static_cast<long>(h - 1) * phasing) % n1;
  }
  pa.conventional_spread_quanta = static_cast<long>(n1 - 1) * phasing;
  pa.optimized_spread_quanta = optimized_spread_quanta(n1, phasing);
  pa.conventional_spread = static_cast<double>(pa.conventional_spread_quanta) * quantum;
  pa.optimized_spread = static_cast<double>(pa.optimized_spread_quanta) * quantum;
  const double wrapped = wrap_two_pi(pa.conventional_spread);
  pa.conventional_spread_wrapped = std::min(wrapped, kTwoPi - wrapped);
  return pa;
}

std::vector<int> bh_isl_planes(int n1, const Rational& k) {
  std::vector<int> planes;
  for (int h = 1; h <= n1 - 1; ++h)
    if (k.floor_divide(h) - k.floor_divide(h - 1) >= 1) planes.push_back(h);
  return planes;
}

namespace {

int east_shift(int plane, IslMode mode, const ConstellationConfig& config) {
  if (mode == IslMode::conventional || config.phasing == 0) return 0;
  return bh_slot_shift(plane, config.n1, config.phasing);
}

int wrap_slot(int slot, int n2) { return ((slot - 1) % n2 + n2) % n2 + 1; }

}  // namespace

std::optional<SatelliteId> h_neighbor(SatelliteId sat, Side side, IslMode mode, const ConstellationConfig& config) {
  if (side == Side::east) {
    if (sat.plane == config.n1) return std::nullopt;
    return SatelliteId{sat.plane + 1, wrap_slot(sat.slot - east_shift(sat.plane, mode, config), config.n2)};
  }
  if (sat.plane == 1) return std::nullopt;
  return SatelliteId{sat.plane - 1, wrap_slot(sat.slot + east_shift(sat.plane - 1, mode, config), config.n2)};
}

std::vector<SatelliteId> row_members(int first_slot, IslMode mode, const ConstellationConfig& config) {
  std::vector<SatelliteId> row;
  row.reserve(static_cast<std::size_t>(config.n1));
  std::optional<SatelliteId> cur = SatelliteId{1, first_slot};
  while (cur) {
    row.push_back(*cur);
    cur = h_neighbor(*cur, Side::east, mode, config);
  }
  return row;
}

bool arc_reaches_polar(double start, double end, double inclination, double polar_threshold) {
  double peak = 0.0;
  const double first_apex = kPi / 2.0 + kPi * std::ceil((start - kPi / 2.0) / kPi);
  if (end - start >= kPi || first_apex <= end) {
    peak = 1.0;
  } else {
    peak = std::max(std::abs(std::sin(start)), std::abs(std::sin(end)));
  }
  const double lat = std::asin(std::min(1.0, std::abs(std::sin(inclination)) * peak));
  return lat > polar_threshold + kBoundaryTolerance;
}

std::vector<IslEdge> snapshot_edges(const ConstellationConfig& config, IslMode mode, const DivisionConfig& division,
                                    double t, ShutoffPolicy policy) {
  const int n1 = config.n1, n2 = config.n2;
  const auto states = propagate_all(config, t);
  const auto count = static_cast<std::size_t>(config.satellite_count());

  // Per-satellite polar flag under the chosen rule.
  std::vector<char> polar(count, 0);
  for (std::size_t i = 0; i < count; ++i) {
    const auto& s = states[i];
    if (policy == ShutoffPolicy::per_satellite) {
      polar[i] = in_polar_region(s.lat, config.polar_threshold);
    } else {
      const int v = csd_row(s.phase, s.sat.plane, division, config);
      const double start = cell_reference_phase(s.sat.plane, division, config) + (v - 1) * config.slot_spacing();
      polar[i] = arc_reaches_polar(start, start + config.slot_spacing(), config.inclination, config.polar_threshold);
    }
  }

  // Row-synchronized: a row is on only if none of its members is polar.
  std::vector<char> row_on(count, 1);
  if (policy == ShutoffPolicy::row_synchronized) {
    for (int j = 1; j <= n2; ++j) {
      const auto members = row_members(j, mode, config);
      const bool on = std::none_of(members.begin(), members.end(),
                                   [&](SatelliteId m) { return polar[static_cast<std::size_t>(satellite_index(m, n2))]; });
      for (auto m : members) row_on[static_cast<std::size_t>(satellite_index(m, n2))] = on;
    }
  }

  std::vector<IslEdge> edges;
  edges.reserve(count * 2);
  for (int h = 1; h <= n1; ++h)
    for (int j = 1; j <= n2; ++j)
      edges.push_back({{h, j}, {h, j % n2 + 1}, LinkKind::v_isl, HDirection::none, true});

  for (int h = 1; h < n1; ++h) {
    for (int j = 1; j <= n2; ++j) {
      const SatelliteId a{h, j};
      const auto b = h_neighbor(a, Side::east, mode, config);
      const auto ia = static_cast<std::size_t>(satellite_index(a, n2));
      const auto ib = static_cast<std::size_t>(satellite_index(*b, n2));
      const bool active = policy == ShutoffPolicy::row_synchronized ? static_cast<bool>(row_on[ia])
                                                                   : !polar[ia] && !polar[ib];
      const auto dir = b->slot == a.slot ? HDirection::forward : HDirection::backward;
      edges.push_back({a, *b, LinkKind::h_isl, dir, active});
    }
  }
  return edges;
}

int count_active(const std::vector<IslEdge>& edges, LinkKind kind) {
  return static_cast<int>(
      std::count_if(edges.begin(), edges.end(), [&](const IslEdge& e) { return e.kind == kind && e.active; }));
}

IslCounts hisl_count_analytic(int n1, int n2, const RegionBoundaries& b) {
  const long rows = std::max(0, b.va) + std::max(0, b.vc - b.vb + 1);
  return {static_cast<long>(n1 - 1) * rows, static_cast<long>(n1) * n2};
}

Theorem1Result theorem1_bruteforce(int n1, int n2, int phasing) {
  if (n1 > kTheorem1MaxPlanes)
    throw std::invalid_argument("theorem1_bruteforce: n1 > " + std::to_string(kTheorem1MaxPlanes) +
                                " is outside the exhaustive oracle's scope");
  if (n1 < 2 || n2 < 1 || phasing < 0) throw std::invalid_argument("theorem1_bruteforce: invalid constellation");

  const int boundaries = n1 - 1;
  const int max_shift = phasing / n1 + 1;  // shift 0 = forward link, 1 = nearest backward link
  Theorem1Result best;
  best.min_spread_quanta = -1;
  std::vector<int> shifts(static_cast<std::size_t>(boundaries), 0);

  while (true) {
    ++best.assignments_checked;
    long cumulative = 0, spread = 0;
    bool feasible = true;
    for (int b = 0; b < boundaries; ++b) {
      cumulative += phasing - static_cast<long>(shifts[static_cast<std::size_t>(b)]) * n1;
      if (cumulative < 0) {
        feasible = false;
        break;
      }
      spread = std::max(spread, cumulative);
    }
    if (feasible && (best.min_spread_quanta < 0 || spread < best.min_spread_quanta)) {
      best.min_spread_quanta = spread;
      best.shifts = shifts;
    }
    int pos = boundaries - 1;
    while (pos >= 0 && shifts[static_cast<std::size_t>(pos)] == max_shift) shifts[static_cast<std::size_t>(pos--)] = 0;
    if (pos < 0) break;
    ++shifts[static_cast<std::size_t>(pos)];
  }

  best.min_spread = static_cast<double>(best.min_spread_quanta) * kTwoPi / (static_cast<double>(n1) * n2);
  for (int b = 0; b < boundaries; ++b)
    if (best.shifts[static_cast<std::size_t>(b)] > 0) best.bh_boundaries.push_back(b + 1);
  return best;
}

}  // namespace csdvn
