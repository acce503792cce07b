#pragma once

#include <vector>

#include "pgs/rational.hpp"

namespace pgs {

/// Edmonds-Karp max flow with exact rational capacities. Graphs here are
/// tiny bipartite transportation instances, so the O(VE^2) bound is moot.
class MaxFlow {
 public:
  explicit MaxFlow(int num_nodes) : adj_(num_nodes) {}

  /// Returns an edge handle usable with flow_on().
  int add_edge(int from, int to, Rat cap);

  Rat run(int source, int sink);
  Rat flow_on(int edge) const;

 private:
  struct Edge {
    int to;
    Rat cap;
    int rev;  // index of reverse edge in adj_[to]
  };
  std::vector<std::vector<Edge>> adj_;
  std::vector<std::pair<int, int>> handles_;  // (node, index into adj_[node])
  std::vector<Rat> original_cap_;
};

}  // namespace pgs
