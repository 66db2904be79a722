#pragma once

// Min-cost max-flow by successive shortest augmenting paths (Dijkstra on
// reduced costs with Johnson potentials), and single-source shortest paths.

#include <algorithm>
#include <cstddef>
#include <limits>
#include <queue>
#include <utility>
#include <vector>

namespace csdvn {

template <typename Cap, typename Cost>
class MinCostFlow {
 public:
  struct Arc {
    int from;
    int to;
    Cap capacity;
    Cap flow;
    Cost cost;
    Cap residual() const { return capacity - flow; }
  };

  explicit MinCostFlow(int nodes) : adj_(static_cast<std::size_t>(nodes)) {}

  int node_count() const { return static_cast<int>(adj_.size()); }

  /// Adds a directed arc; returns its id. Costs must be non-negative.
  int add_arc(int from, int to, Cap capacity, Cost cost) {
    const int id = static_cast<int>(arcs_.size());
    arcs_.push_back({from, to, capacity, Cap{}, cost});
    arcs_.push_back({to, from, Cap{}, Cap{}, -cost});
    adj_[static_cast<std::size_t>(from)].push_back(id);
    adj_[static_cast<std::size_t>(to)].push_back(id + 1);
    return id;
  }

  const Arc& arc(int id) const { return arcs_[static_cast<std::size_t>(id)]; }
  int arc_count() const { return static_cast<int>(arcs_.size()); }

  struct Result {
    Cap flow{};
    Cost cost{};
  };

  Result solve(int source, int sink, Cap epsilon = Cap{}) {
    const auto n = adj_.size();
    std::vector<Cost> potential(n, Cost{});
    std::vector<Cost> dist(n);
    std::vector<int> via(n);
    Result total;
    while (true) {
      std::fill(dist.begin(), dist.end(), kInf);
      std::fill(via.begin(), via.end(), -1);
      using Item = std::pair<Cost, int>;
      std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
      dist[static_cast<std::size_t>(source)] = Cost{};
      pq.push({Cost{}, source});
      while (!pq.empty()) {
        const auto [d, u] = pq.top();
        pq.pop();
        if (d > dist[static_cast<std::size_t>(u)]) continue;
        for (int id : adj_[static_cast<std::size_t>(u)]) {
          const Arc& a = arcs_[static_cast<std::size_t>(id)];
          if (a.residual() <= epsilon) continue;
          const Cost reduced = a.cost + potential[static_cast<std::size_t>(u)] - potential[static_cast<std::size_t>(a.to)];
          const Cost nd = d + std::max(reduced, Cost{});  // clamp rounding noise
          if (nd < dist[static_cast<std::size_t>(a.to)]) {
            dist[static_cast<std::size_t>(a.to)] = nd;
            via[static_cast<std::size_t>(a.to)] = id;
            pq.push({nd, a.to});
          }
        }
      }
      if (via[static_cast<std::size_t>(sink)] < 0) break;
      for (std::size_t v = 0; v < n; ++v)
        if (dist[v] < kInf) potential[v] += dist[v];

      Cap push = std::numeric_limits<Cap>::max();
      for (int v = sink; v != source;) {
        const Arc& a = arcs_[static_cast<std::size_t>(via[static_cast<std::size_t>(v)])];
        push = std::min(push, a.residual());
        v = a.from;
      }
      for (int v = sink; v != source;) {
        const int id = via[static_cast<std::size_t>(v)];
        arcs_[static_cast<std::size_t>(id)].flow += push;
        arcs_[static_cast<std::size_t>(id ^ 1)].flow -= push;
        total.cost += push * arcs_[static_cast<std::size_t>(id)].cost;
        v = arcs_[static_cast<std::size_t>(id)].from;
      }
      total.flow += push;
    }
    return total;
  }

 private:
  static constexpr Cost kInf = std::numeric_limits<Cost>::max();
  std::vector<Arc> arcs_;
  std::vector<std::vector<int>> adj_;
};

struct WeightedArc {
  int to;
  double weight;
};

using Adjacency = std::vector<std::vector<WeightedArc>>;

/// Dijkstra distances from `source`; unreachable nodes hold +infinity.
std::vector<double> shortest_distances(const Adjacency& adj, int source);

}  // namespace csdvn
