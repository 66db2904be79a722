#pragma once

// The static CSD virtual graph, relabelling of physical snapshots through a
// VN method, and topology-change accounting over time.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "csdvn/isl_topology.hpp"
#include "csdvn/vn_division.hpp"

namespace csdvn {

enum class LinkClass { v_link, h_link };

struct VirtualEdge {
  VirtualAddress a;  // a < b
  VirtualAddress b;
  LinkClass kind = LinkClass::v_link;

  friend auto operator<=>(const VirtualEdge&, const VirtualEdge&) = default;
};

VirtualEdge make_virtual_edge(VirtualAddress x, VirtualAddress y, LinkClass kind);

struct VirtualGraph {
  int n1 = 0;
  int n2 = 0;
  std::vector<VirtualAddress> nodes;
  std::set<VirtualEdge> edges;

  std::size_t count(LinkClass kind) const;
};

VirtualGraph build_static_graph(int n1, int n2, const RegionBoundaries& b);

/// Breadth-first reachability over the undirected edge set.
bool is_connected(const VirtualGraph& g);

enum class VnMethod { grd1, grd2, csd };
std::string to_string(VnMethod m);
VnMethod parse_vn_method(const std::string& s);

/// Satellite-to-address mapping of one VN method over time.
class VnMapper {
 public:
  VnMapper(ConstellationConfig config, DivisionConfig division, VnMethod method, double min_elevation = 0.0);

  VnMethod method() const { return method_; }
  const ConstellationConfig& config() const { return config_; }
  const DivisionConfig& division() const { return division_; }
  const std::optional<GrdGrid>& grid() const { return grid_; }

  struct Mapping {
    std::vector<std::optional<VirtualAddress>> address_of;  // by satellite_index; nullopt = NO_COVER
    int conflicts = 0;
  };
  Mapping map(double t, const std::vector<SatelliteState>& states) const;

 private:
  ConstellationConfig config_;
  DivisionConfig division_;
  VnMethod method_;
  double min_elevation_;
  std::optional<GrdGrid> grid_;
};

struct MappedInstance {
  std::set<VirtualEdge> edges;
  VnMapper::Mapping mapping;
};

/// Relabels the active physical edges by the mapper's addresses at time t;
/// edges touching an unmapped (NO_COVER) satellite are dropped.
MappedInstance map_snapshot(const std::vector<IslEdge>& edges, const VnMapper& mapper, double t,
                            const std::vector<SatelliteState>& states);

/// Column c (1..n1) such that the inertially fixed seam lies on the virtual
/// boundary between columns c and c+1 of the Earth-fixed grid (c = n1 is the
/// n1|1 boundary).
int seam_column(double t, const GrdGrid& grid);

enum class ChangeKind { added, removed };
enum class EventCause { polar, seam_drift, async_switch, coverage_loss, handover };
std::string to_string(ChangeKind c);
std::string to_string(EventCause c);

struct TopologyEvent {
  double t = 0.0;
  VirtualEdge edge;
  ChangeKind change = ChangeKind::added;
  EventCause cause = EventCause::polar;
};

struct StaticnessOptions {
  double min_elevation = 0.0;
  bool include_switching_epochs = true;
  /// Shut-off rule for the physical links; defaults to row-synchronized for
  /// CSD and per-satellite for the GRD variants.
  std::optional<ShutoffPolicy> policy;
  /// Division override; defaults to the one matched to the ISL mode.
  std::optional<DivisionConfig> division;
};

struct StaticnessReport {
  VnMethod method = VnMethod::csd;
  IslMode mode = IslMode::optimized;
  double duration = 0.0;
  int samples = 0;            // snapshots evaluated, epochs included
  int requested_samples = 0;
  int event_count = 0;
  std::map<EventCause, int> events_by_cause;
  std::vector<std::pair<double, int>> seam_column_history;  // GRD2 only, on change
  int mapping_conflicts = 0;
  int reference_mismatch_samples = 0;  // CSD only: samples differing from the static graph
  std::vector<TopologyEvent> events;
};

/// Sample times: `samples` evenly spaced over [0, duration] plus, optionally,
/// every instant at which satellite (1,1) crosses a cell boundary.
std::vector<double> staticness_times(const ConstellationConfig& config, const DivisionConfig& division,
                                     double duration, int samples, bool include_switching_epochs);

StaticnessReport staticness_report(const ConstellationConfig& config, VnMethod method, IslMode mode, double duration,
                                   int samples, const StaticnessOptions& options = {});

}  // namespace csdvn
