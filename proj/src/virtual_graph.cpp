#include "csdvn/virtual_graph.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace csdvn {

VirtualEdge make_virtual_edge(VirtualAddress x, VirtualAddress y, LinkClass kind) {
  if (y < x) std::swap(x, y);
  return {x, y, kind};
}

std::size_t VirtualGraph::count(LinkClass kind) const {
  return static_cast<std::size_t>(
      std::count_if(edges.begin(), edges.end(), [&](const VirtualEdge& e) { return e.kind == kind; }));
}

VirtualGraph build_static_graph(int n1, int n2, const RegionBoundaries& b) {
  VirtualGraph g;
  g.n1 = n1;
  g.n2 = n2;
  for (int h = 1; h <= n1; ++h)
    for (int v = 1; v <= n2; ++v) g.nodes.push_back({v, h});
  for (int h = 1; h <= n1; ++h)
    for (int v = 1; v <= n2; ++v) g.edges.insert(make_virtual_edge({v, h}, {v % n2 + 1, h}, LinkClass::v_link));
  for (int v = 1; v <= n2; ++v) {
    if (!h_links_on(classify_region(v, b))) continue;
    for (int h = 1; h < n1; ++h) g.edges.insert(make_virtual_edge({v, h}, {v, h + 1}, LinkClass::h_link));
  }
  return g;
}

bool is_connected(const VirtualGraph& g) {
  if (g.nodes.empty()) return true;
  std::map<VirtualAddress, std::vector<VirtualAddress>> adj;
  for (const auto& e : g.edges) {
    adj[e.a].push_back(e.b);
    adj[e.b].push_back(e.a);
  }
  std::set<VirtualAddress> seen{g.nodes.front()};
  std::queue<VirtualAddress> frontier;
  frontier.push(g.nodes.front());
  while (!frontier.empty()) {
    const auto cur = frontier.front();
    frontier.pop();
    for (const auto& next : adj[cur])
      if (seen.insert(next).second) frontier.push(next);
  }
  return seen.size() == g.nodes.size();
}

std::string to_string(VnMethod m) {
  switch (m) {
    case VnMethod::grd1: return "grd1";
    case VnMethod::grd2: return "grd2";
    case VnMethod::csd: return "csd";
  }
  return "?";
}

VnMethod parse_vn_method(const std::string& s) {
  if (s == "grd1") return VnMethod::grd1;
  if (s == "grd2") return VnMethod::grd2;
  if (s == "csd") return VnMethod::csd;
  throw ConfigError("method", "expected grd1, grd2 or csd, got '" + s + "'");
}

VnMapper::VnMapper(ConstellationConfig config, DivisionConfig division, VnMethod method, double min_elevation)
    : config_(std::move(config)), division_(std::move(division)), method_(method), min_elevation_(min_elevation) {
  if (method_ != VnMethod::csd) grid_.emplace(config_, division_);
}

VnMapper::Mapping VnMapper::map(double t, const std::vector<SatelliteState>& states) const {
  Mapping m;
  if (method_ == VnMethod::csd) {
    m.address_of.reserve(states.size());
    for (const auto& s : states) m.address_of.emplace_back(csd_map(s, config_, division_));
    return m;
  }
  const auto variant = method_ == VnMethod::grd1 ? GrdVariant::intra_only : GrdVariant::inter_plane;
  auto a = grd_assign(*grid_, variant, t, min_elevation_, states);
  m.address_of = std::move(a.address_of);
  m.conflicts = a.conflicts;
  return m;
}

MappedInstance map_snapshot(const std::vector<IslEdge>& edges, const VnMapper& mapper, double t,
                            const std::vector<SatelliteState>& states) {
  MappedInstance out;
  out.mapping = mapper.map(t, states);
  const int n2 = mapper.config().n2;
  for (const auto& e : edges) {
    if (!e.active) continue;
    const auto& a = out.mapping.address_of[static_cast<std::size_t>(satellite_index(e.a, n2))];
    const auto& b = out.mapping.address_of[static_cast<std::size_t>(satellite_index(e.b, n2))];
    if (!a || !b) continue;
    out.edges.insert(make_virtual_edge(*a, *b, e.kind == LinkKind::v_isl ? LinkClass::v_link : LinkClass::h_link));
  }
  return out;
}

int seam_column(double t, const GrdGrid& grid) {
  const int n1 = grid.config().n1;
  // The grid turns eastward under the fixed plane fan; every plane spacing of
  // rotation moves the seam one boundary west.
  const long steps = static_cast<long>(std::floor(kEarthRotationRate * t / grid.config().plane_spacing() + 0.5));
  return static_cast<int>(((n1 - 1 - steps) % n1 + n1) % n1) + 1;
}

std::string to_string(ChangeKind c) { return c == ChangeKind::added ? "ADDED" : "REMOVED"; }

std::string to_string(EventCause c) {
  switch (c) {
    case EventCause::polar: return "POLAR";
    case EventCause::seam_drift: return "SEAM_DRIFT";
    case EventCause::async_switch: return "ASYNC_SWITCH";
    case EventCause::coverage_loss: return "COVERAGE_LOSS";
    case EventCause::handover: return "HANDOVER";
  }
  return "?";
}

std::vector<double> staticness_times(const ConstellationConfig& config, const DivisionConfig& division,
                                     double duration, int samples, bool include_switching_epochs) {
  std::vector<double> times;
  if (samples < 2) throw ConfigError("samples", "need at least 2 samples");
  for (int i = 0; i < samples; ++i) times.push_back(duration * i / (samples - 1));
  if (include_switching_epochs) {
    const double period = config.period();
    const double x0 =
        wrap_two_pi(initial_phase(config, {1, 1}) - cell_reference_phase(1, division, config)) / config.slot_spacing();
    for (long k = static_cast<long>(std::ceil(x0 - kBoundaryTolerance));; ++k) {
      const double t = (static_cast<double>(k) - x0) * period / config.n2;
      if (t > duration) break;
      if (t >= 0.0) times.push_back(t);
    }
  }
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end(), [](double a, double b) { return std::abs(a - b) < 1e-9; }),
              times.end());
  return times;
}

namespace {

struct SampleView {
  double t = 0.0;
  std::set<VirtualEdge> edges;
  std::map<VirtualAddress, int> sat_of;  // address -> satellite index
  std::vector<char> polar;               // instantaneous, by satellite index
  int seam = 0;
};

EventCause classify(const VirtualEdge& e, const SampleView& prev, const SampleView& cur, VnMethod method) {
  auto covered = [](const SampleView& s, VirtualAddress a) { return s.sat_of.count(a) > 0; };
  for (auto a : {e.a, e.b})
    if (!covered(prev, a) || !covered(cur, a)) return EventCause::coverage_loss;
  if (e.kind == LinkClass::h_link && method == VnMethod::grd2 && prev.seam != cur.seam) return EventCause::seam_drift;

  auto polar_of = [](const SampleView& s, VirtualAddress a) { return s.polar[static_cast<std::size_t>(s.sat_of.at(a))]; };
  if (e.kind == LinkClass::h_link) {
    if (polar_of(prev, e.a) != polar_of(prev, e.b) || polar_of(cur, e.a) != polar_of(cur, e.b))
      return EventCause::async_switch;
    if (polar_of(prev, e.a) != polar_of(cur, e.a) || polar_of(prev, e.b) != polar_of(cur, e.b))
      return EventCause::polar;
  }
  if (prev.sat_of.at(e.a) != cur.sat_of.at(e.a) || prev.sat_of.at(e.b) != cur.sat_of.at(e.b))
    return EventCause::handover;
  return EventCause::polar;
}

}  // namespace

StaticnessReport staticness_report(const ConstellationConfig& config, VnMethod method, IslMode mode, double duration,
                                   int samples, const StaticnessOptions& options) {
  config.validate();
  if (!(duration > 0.0)) throw ConfigError("duration_s", "duration must be positive");
  const DivisionConfig division = options.division.value_or(DivisionConfig::matched(config, mode));
  const ShutoffPolicy policy = options.policy.value_or(method == VnMethod::csd ? ShutoffPolicy::row_synchronized
                                                                               : ShutoffPolicy::per_satellite);
  const VnMapper mapper(config, division, method, options.min_elevation);

  StaticnessReport report;
  report.method = method;
  report.mode = mode;
  report.duration = duration;
  report.requested_samples = samples;
  for (auto c : {EventCause::polar, EventCause::seam_drift, EventCause::async_switch, EventCause::coverage_loss,
                 EventCause::handover})
    report.events_by_cause[c] = 0;

  std::optional<VirtualGraph> reference;
  if (method == VnMethod::csd) reference = build_static_graph(config.n1, config.n2, mode_boundaries(config, mode));

  const auto times = staticness_times(config, division, duration, samples, options.include_switching_epochs);
  std::optional<SampleView> prev;
  for (double t : times) {
    const auto states = propagate_all(config, t);
    const auto edges = snapshot_edges(config, mode, division, t, policy);
    auto instance = map_snapshot(edges, mapper, t, states);
    report.mapping_conflicts += instance.mapping.conflicts;

    SampleView cur;
    cur.t = t;
    cur.edges = std::move(instance.edges);
    cur.polar.resize(states.size());
    for (std::size_t i = 0; i < states.size(); ++i) {
      cur.polar[i] = in_polar_region(states[i].lat, config.polar_threshold);
      if (const auto& a = instance.mapping.address_of[i]) cur.sat_of.emplace(*a, static_cast<int>(i));
    }
    if (method == VnMethod::grd2) {
      cur.seam = seam_column(t, *mapper.grid());
      if (report.seam_column_history.empty() || report.seam_column_history.back().second != cur.seam)
        report.seam_column_history.emplace_back(t, cur.seam);
    }
    if (reference && cur.edges != reference->edges) ++report.reference_mismatch_samples;

    if (prev) {
      auto record = [&](const VirtualEdge& e, ChangeKind kind) {
        const auto cause = classify(e, *prev, cur, method);
        report.events.push_back({t, e, kind, cause});
        ++report.events_by_cause[cause];
      };
      std::vector<VirtualEdge> diff;
      std::set_difference(prev->edges.begin(), prev->edges.end(), cur.edges.begin(), cur.edges.end(),
                          std::back_inserter(diff));
      for (const auto& e : diff) record(e, ChangeKind::removed);
      diff.clear();
      std::set_difference(cur.edges.begin(), cur.edges.end(), prev->edges.begin(), prev->edges.end(),
                          std::back_inserter(diff));
      for (const auto& e : diff) record(e, ChangeKind::added);
    }
    prev = std::move(cur);
  }
  report.samples = static_cast<int>(times.size());
  report.event_count = static_cast<int>(report.events.size());
  return report;
}

}  // namespace csdvn
