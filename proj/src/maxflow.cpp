#include "pgs/maxflow.hpp"

#include <deque>

namespace pgs {

int MaxFlow::add_edge(int from, int to, Rat cap) {
  adj_[from].push_back({to, cap, static_cast<int>(adj_[to].size())});
  adj_[to].push_back({from, Rat(0), static_cast<int>(adj_[from].size()) - 1});
  handles_.emplace_back(from, static_cast<int>(adj_[from].size()) - 1);
  original_cap_.push_back(cap);
  return static_cast<int>(handles_.size()) - 1;
}

Rat MaxFlow::run(int source, int sink) {
  Rat total(0);
  for (;;) {
    // BFS for a shortest augmenting path.
    std::vector<std::pair<int, int>> pred(adj_.size(), {-1, -1});
    std::deque<int> queue{source};
    pred[source] = {source, 0};
    while (!queue.empty() && pred[sink].first < 0) {
      int u = queue.front();
      queue.pop_front();
      for (size_t k = 0; k < adj_[u].size(); ++k) {
        const Edge& e = adj_[u][k];
        if (pred[e.to].first < 0 && sgn(e.cap) > 0) {
          pred[e.to] = {u, static_cast<int>(k)};
          queue.push_back(e.to);
        }
      }
    }
    if (pred[sink].first < 0) return total;

    Rat bottleneck;
    bool first = true;
    for (int v = sink; v != source;) {
      auto [u, k] = pred[v];
      const Edge& e = adj_[u][k];
      if (first || e.cap < bottleneck) bottleneck = e.cap;
      first = false;
      v = u;
    }
    for (int v = sink; v != source;) {
      auto [u, k] = pred[v];
      Edge& e = adj_[u][k];
      e.cap -= bottleneck;
      adj_[e.to][e.rev].cap += bottleneck;
      v = u;
    }
    total += bottleneck;
  }
}

Rat MaxFlow::flow_on(int edge) const {
  auto [node, k] = handles_.at(edge);
  return original_cap_.at(edge) - adj_[node][k].cap;
}

}  // namespace pgs
