#ifndef PROBMETRICS_MAXFLOW_HPP
#define PROBMETRICS_MAXFLOW_HPP

// Exact maximum flow over rational capacities: Edmonds-Karp with BFS
// augmenting paths.  Termination does not depend on capacity values, and
// arc order is the insertion order, so runs are fully deterministic.

#include <cstddef>
#include <queue>
#include <vector>

#include "probmetrics/rational.hpp"

namespace probmetrics {

class FlowNetwork {
 public:
  explicit FlowNetwork(std::size_t nodes) : heads_(nodes) {}

  std::size_t node_count() const { return heads_.size(); }

  // Returns an arc id usable with flow() after max_flow has run.
  std::size_t add_arc(std::size_t from, std::size_t to, const Rat& capacity) {
    if (from >= heads_.size() || to >= heads_.size())
      throw ValidationError("flow network: arc endpoint out of range");
    if (from == to) throw ValidationError("flow network: self-loops not allowed");
    if (capacity < 0) throw ValidationError("flow network: negative capacity");
    std::size_t id = arcs_.size();
    arcs_.push_back({to, capacity, Rat(0)});
    heads_[from].push_back(id);
    arcs_.push_back({from, Rat(0), Rat(0)});  // residual twin
    heads_[to].push_back(id + 1);
    return id;
  }

  Rat max_flow(std::size_t source, std::size_t sink) {
    if (source >= heads_.size() || sink >= heads_.size() || source == sink)
      throw ValidationError("flow network: bad source/sink");
    source_ = source;
    Rat total = 0;
    std::vector<std::size_t> parent_arc(heads_.size());
    while (true) {
      std::vector<char> seen(heads_.size(), 0);
      std::queue<std::size_t> q;
      q.push(source);
      seen[source] = 1;
      while (!q.empty() && !seen[sink]) {
        std::size_t u = q.front();
        q.pop();
        for (std::size_t id : heads_[u]) {
          const Arc& a = arcs_[id];
          if (seen[a.to] || a.capacity - a.flow <= 0) continue;
          seen[a.to] = 1;
          parent_arc[a.to] = id;
          q.push(a.to);
        }
      }
      if (!seen[sink]) break;
      Rat push = arcs_[parent_arc[sink]].capacity - arcs_[parent_arc[sink]].flow;
      for (std::size_t v = sink; v != source;) {
        const Arc& a = arcs_[parent_arc[v]];
        push = rat_min(push, a.capacity - a.flow);
        v = arcs_[parent_arc[v] ^ 1].to;
      }
      for (std::size_t v = sink; v != source;) {
        std::size_t id = parent_arc[v];
        arcs_[id].flow += push;
        arcs_[id ^ 1].flow -= push;
        v = arcs_[id ^ 1].to;
      }
      total += push;
    }
    ran_ = true;
    return total;
  }

  // Net flow on a forward arc (nonnegative after max_flow).
  const Rat& flow(std::size_t arc_id) const { return arcs_.at(arc_id).flow; }

  // Nodes reachable from the source in the residual graph; the complement
  // boundary is a minimum cut.  Valid after max_flow.
  std::vector<bool> min_cut_source_side() const {
    if (!ran_) throw ValidationError("flow network: min cut queried before max_flow");
    std::vector<bool> side(heads_.size(), false);
    std::queue<std::size_t> q;
    q.push(source_);
    side[source_] = true;
    while (!q.empty()) {
      std::size_t u = q.front();
      q.pop();
      for (std::size_t id : heads_[u]) {
        const Arc& a = arcs_[id];
        if (!side[a.to] && a.capacity - a.flow > 0) {
          side[a.to] = true;
          q.push(a.to);
        }
      }
    }
    return side;
  }

 private:
  struct Arc {
    std::size_t to;
    Rat capacity;
    Rat flow;
  };

  std::vector<Arc> arcs_;                       // forward at even ids, twin at odd
  std::vector<std::vector<std::size_t>> heads_;
  std::size_t source_ = 0;
  bool ran_ = false;
};

}  // namespace probmetrics

#endif  // PROBMETRICS_MAXFLOW_HPP
