#ifndef STYLEMIX_SOLVER_MAX_FLOW_HPP
#define STYLEMIX_SOLVER_MAX_FLOW_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <queue>
#include <vector>

namespace stylemix {

/// Dinic max-flow over integer capacities. Deterministic for a fixed edge
/// insertion order.
class FlowNetwork {
public:
  using Capacity = std::int64_t;
  static constexpr Capacity kInfinite = std::numeric_limits<Capacity>::max() / 4;

  explicit FlowNetwork(std::size_t nodes) : adj_(nodes) {}

  std::size_t num_nodes() const noexcept { return adj_.size(); }

  /// Returns an edge handle usable with flow().
  std::size_t add_edge(std::size_t from, std::size_t to, Capacity cap) {
    const std::size_t id = edges_.size();
    edges_.push_back({to, cap, 0});
    adj_[from].push_back(id);
    edges_.push_back({from, 0, 0});
    adj_[to].push_back(id + 1);
    return id;
  }

  Capacity flow(std::size_t edge) const { return edges_[edge].flow; }
  Capacity capacity(std::size_t edge) const { return edges_[edge].cap; }

  Capacity max_flow(std::size_t source, std::size_t sink) {
    Capacity total = 0;
    while (build_levels(source, sink)) {
      cursor_.assign(adj_.size(), 0);
      while (Capacity pushed = augment(source, sink, kInfinite))
        total += pushed;
    }
    return total;
  }

  /// Nodes reachable from `source` through residual capacity; after
  /// max_flow() this is the source side of a minimum cut.
  std::vector<bool> residual_reachable(std::size_t source) const {
    std::vector<bool> seen(adj_.size(), false);
    std::vector<std::size_t> stack{source};
    seen[source] = true;
    while (!stack.empty()) {
      const auto u = stack.back();
      stack.pop_back();
      for (auto id : adj_[u]) {
        const auto &e = edges_[id];
        if (!seen[e.to] && e.cap - e.flow > 0) {
          seen[e.to] = true;
          stack.push_back(e.to);
        }
      }
    }
    return seen;
  }

private:
  struct Edge {
    std::size_t to;
    Capacity cap;
    Capacity flow;
  };

  bool build_levels(std::size_t source, std::size_t sink) {
    level_.assign(adj_.size(), -1);
    std::queue<std::size_t> queue;
    level_[source] = 0;
    queue.push(source);
    while (!queue.empty()) {
      const auto u = queue.front();
      queue.pop();
      for (auto id : adj_[u]) {
        const auto &e = edges_[id];
        if (level_[e.to] < 0 && e.cap - e.flow > 0) {
          level_[e.to] = level_[u] + 1;
          queue.push(e.to);
        }
      }
    }
    return level_[sink] >= 0;
  }

  Capacity augment(std::size_t u, std::size_t sink, Capacity limit) {
    if (u == sink)
      return limit;
    for (auto &i = cursor_[u]; i < adj_[u].size(); ++i) {
      const auto id = adj_[u][i];
      auto &e = edges_[id];
      if (level_[e.to] != level_[u] + 1 || e.cap - e.flow <= 0)
        continue;
      const Capacity pushed = augment(e.to, sink, std::min(limit, e.cap - e.flow));
      if (pushed > 0) {
        e.flow += pushed;
        edges_[id ^ 1].flow -= pushed;
        return pushed;
      }
    }
    return 0;
  }

  std::vector<std::vector<std::size_t>> adj_;
  std::vector<Edge> edges_;
  std::vector<int> level_;
  std::vector<std::size_t> cursor_;
};

/**
 * Feasible circulation with per-edge lower and upper bounds, reduced to a
 * single max-flow between an added super source and super sink.
 */
class BoundedCirculation {
public:
  using Capacity = FlowNetwork::Capacity;

  explicit BoundedCirculation(std::size_t nodes) : nodes_(nodes), excess_(nodes, 0) {}

  std::size_t add_edge(std::size_t from, std::size_t to, Capacity lower,
                       Capacity upper) {
    specs_.push_back({from, to, lower, upper});
    excess_[to] += lower;
    excess_[from] -= lower;
    return specs_.size() - 1;
  }

  /// True when every lower bound can be met. Any bound with lower > upper
  /// makes the circulation infeasible.
  bool solve() {
    network_ = FlowNetwork(nodes_ + 2);
    super_source_ = nodes_;
    super_sink_ = nodes_ + 1;
    handles_.clear();
    bool bounds_ok = true;
    for (const auto &e : specs_) {
      if (e.lower > e.upper)
        bounds_ok = false;
      handles_.push_back(
          network_.add_edge(e.from, e.to, std::max<Capacity>(0, e.upper - e.lower)));
    }
    required_ = 0;
    for (std::size_t v = 0; v < nodes_; ++v) {
      if (excess_[v] > 0) {
        network_.add_edge(super_source_, v, excess_[v]);
        required_ += excess_[v];
      } else if (excess_[v] < 0) {
        network_.add_edge(v, super_sink_, -excess_[v]);
      }
    }
    achieved_ = network_.max_flow(super_source_, super_sink_);
    return bounds_ok && achieved_ == required_;
  }

  Capacity flow(std::size_t edge) const {
    return specs_[edge].lower + network_.flow(handles_[edge]);
  }

  /// Total lower-bound demand that could not be routed.
  Capacity deficit() const { return required_ - achieved_; }

  /// Node side of a violated Hoffman cut: lower bounds entering the side
  /// exceed upper bounds leaving it. Meaningful only after a failed solve().
  std::vector<bool> cut_side() const {
    auto seen = network_.residual_reachable(super_source_);
    seen.resize(nodes_);
    return seen;
  }

  /// (sum of lower bounds into side, sum of upper bounds out of side).
  std::pair<Capacity, Capacity> cut_totals(const std::vector<bool> &side) const {
    Capacity in_lower = 0;
    Capacity out_upper = 0;
    for (const auto &e : specs_) {
      if (!side[e.from] && side[e.to])
        in_lower += e.lower;
      if (side[e.from] && !side[e.to])
        out_upper = out_upper >= FlowNetwork::kInfinite || e.upper >= FlowNetwork::kInfinite
                        ? FlowNetwork::kInfinite
                        : out_upper + e.upper;
    }
    return {in_lower, out_upper};
  }

private:
  struct Spec {
    std::size_t from;
    std::size_t to;
    Capacity lower;
    Capacity upper;
  };

  std::size_t nodes_;
  std::vector<Capacity> excess_;
  std::vector<Spec> specs_;
  std::vector<std::size_t> handles_;
  FlowNetwork network_{0};
  std::size_t super_source_ = 0;
  std::size_t super_sink_ = 0;
  Capacity required_ = 0;
  Capacity achieved_ = 0;
};

} // namespace stylemix

#endif // STYLEMIX_SOLVER_MAX_FLOW_HPP
