#include "pgs/lifting.hpp"

#include <algorithm>
#include <map>

#include "pgs/maxflow.hpp"
#include "pgs/simplex.hpp"

namespace pgs {

Rat WeightFunction::weight(int left, int right) const {
  for (auto& [l, r, w] : entries)
    if (l == left && r == right) return w;
  return Rat(0);
}

WeightFunction WeightFunction::transpose() const {
  WeightFunction out;
  for (auto& [l, r, w] : entries) out.entries.emplace_back(r, l, w);
  std::sort(out.entries.begin(), out.entries.end());
  return out;
}

bool check_weight_function(const RelationTable& r, const Distribution& left,
                           const Distribution& right,
                           const WeightFunction& w) {
  std::map<int, Rat> row, col;
  for (auto& [l, t, v] : w.entries) {
    if (sgn(v) < 0) return false;
    if (sgn(v) == 0) continue;
    if (!r.contains(l, t)) return false;
    row[l] += v;
    col[t] += v;
  }
  for (auto& [l, v] : row)
    if (v != left.mass(l)) return false;
  for (auto& [l, v] : left.entries())
    if (row[l] != v) return false;
  for (auto& [t, v] : col)
    if (v != right.mass(t)) return false;
  for (auto& [t, v] : right.entries())
    if (col[t] != v) return false;
  return true;
}

std::optional<WeightFunction> lift_check(const RelationTable& r,
                                         const Distribution& left,
                                         const Distribution& right) {
  const auto& ls = left.entries();
  const auto& rs = right.entries();
  // Nodes: 0 source, 1 sink, then left support, then right support.
  MaxFlow net(2 + static_cast<int>(ls.size() + rs.size()));
  std::map<int, int> rnode;
  for (size_t j = 0; j < rs.size(); ++j) {
    int node = 2 + static_cast<int>(ls.size() + j);
    rnode[rs[j].first] = node;
    net.add_edge(node, 1, rs[j].second);
  }
  std::vector<std::tuple<int, int, int>> mid;  // (edge handle, left, right)
  for (size_t i = 0; i < ls.size(); ++i) {
    int node = 2 + static_cast<int>(i);
    net.add_edge(0, node, ls[i].second);
    for (auto& [t, node_t] : rnode)
      if (r.contains(ls[i].first, t))
        mid.emplace_back(net.add_edge(node, node_t, Rat(1)), ls[i].first, t);
  }

  if (net.run(0, 1) != 1) return std::nullopt;

  WeightFunction w;
  for (auto& [edge, l, t] : mid) {
    Rat f = net.flow_on(edge);
    if (sgn(f) > 0) w.entries.emplace_back(l, t, f);
  }
  std::sort(w.entries.begin(), w.entries.end());
  if (!check_weight_function(r, left, right, w))
    throw SolverError("lift_check: solver produced an invalid witness");
  return w;
}

bool check_forward_witness(const ForwardRelationTable& table,
                           const Distribution& left, const Distribution& right,
                           const ForwardLiftWitness& witness) {
  Rat total(0);
  std::map<int, Rat> left_acc, right_acc;
  for (const auto& term : witness.terms) {
    if (sgn(term.p) < 0) return false;
    if (term.table_index < 0 ||
        term.table_index >= static_cast<int>(table.pairs.size()))
      return false;
    const auto& [s, theta] = table.pairs[term.table_index];
    if (s != term.left_state) return false;
    total += term.p;
    left_acc[s] += term.p;
    for (auto& [t, q] : theta.entries()) right_acc[t] += term.p * q;
  }
  if (total != 1) return false;
  for (auto& [s, v] : left_acc)
    if (v != left.mass(s)) return false;
  for (auto& [s, v] : left.entries())
    if (left_acc[s] != v) return false;
  for (auto& [t, v] : right_acc)
    if (v != right.mass(t)) return false;
  for (auto& [t, v] : right.entries())
    if (right_acc[t] != v) return false;
  return true;
}

std::optional<ForwardLiftWitness> forward_lift_check(
    const ForwardRelationTable& table, const Distribution& left,
    const Distribution& right) {
  // One variable q_i per usable table pair (those whose left state carries
  // mass); zero-probability states never enter the system.
  std::vector<int> usable;
  for (size_t i = 0; i < table.pairs.size(); ++i)
    if (sgn(left.mass(table.pairs[i].first)) > 0)
      usable.push_back(static_cast<int>(i));

  EqSystem sys(static_cast<int>(usable.size()));

  // Left marginals: sum of q over pairs rooted at s equals left(s).
  for (auto& [s, mass] : left.entries()) {
    std::vector<std::pair<int, Rat>> coeffs;
    for (size_t v = 0; v < usable.size(); ++v)
      if (table.pairs[usable[v]].first == s)
        coeffs.emplace_back(static_cast<int>(v), Rat(1));
    if (coeffs.empty()) return std::nullopt;  // s unrelated, infeasible
    sys.add_row(coeffs, mass);
  }

  // Right image: sum q_i * Theta_i(t) equals right(t), including t that only
  // appear in some Theta_i (forced to zero there).
  std::map<int, std::vector<std::pair<int, Rat>>> by_target;
  for (size_t v = 0; v < usable.size(); ++v)
    for (auto& [t, q] : table.pairs[usable[v]].second.entries())
      by_target[t].emplace_back(static_cast<int>(v), q);
  for (auto& [t, mass] : right.entries())
    by_target[t];  // ensure a row exists even with no covering pair
  for (auto& [t, coeffs] : by_target) sys.add_row(coeffs, right.mass(t));

  auto x = simplex_feasible(sys);
  if (!x) return std::nullopt;

  ForwardLiftWitness witness;
  for (size_t v = 0; v < usable.size(); ++v)
    if (sgn((*x)[v]) > 0)
      witness.terms.push_back(
          {(*x)[v], table.pairs[usable[v]].first, usable[v]});
  if (!check_forward_witness(table, left, right, witness))
    throw SolverError("forward_lift_check: solver produced an invalid witness");
  return witness;
}

WeightFunction mix_weight_functions(const std::vector<WeightFunction>& ws,
                                    const std::vector<Rat>& ps) {
  std::map<std::pair<int, int>, Rat> acc;
  for (size_t i = 0; i < ws.size(); ++i)
    for (auto& [l, t, v] : ws[i].entries) acc[{l, t}] += ps[i] * v;
  WeightFunction out;
  for (auto& [key, v] : acc)
    if (sgn(v) > 0) out.entries.emplace_back(key.first, key.second, v);
  return out;
}

std::vector<Distribution> decompose_left(
    const WeightFunction& w, const Distribution& right,
    const std::vector<Distribution>& parts) {
  std::vector<Distribution> out;
  for (const auto& part : parts) {
    std::map<int, Rat> acc;
    for (auto& [l, t, v] : w.entries) {
      Rat denom = right.mass(t);
      if (sgn(denom) > 0) acc[l] += v * part.mass(t) / denom;
    }
    std::vector<std::pair<int, Rat>> entries(acc.begin(), acc.end());
    out.push_back(Distribution::make(std::move(entries)));
  }
  return out;
}

WeightFunction compose_weight_functions(const WeightFunction& w1,
                                        const WeightFunction& w2,
                                        const Distribution& mid) {
  std::map<std::pair<int, int>, Rat> acc;
  for (auto& [s, t, v1] : w1.entries)
    for (auto& [t2, u, v2] : w2.entries) {
      if (t != t2) continue;
      Rat denom = mid.mass(t);
      if (sgn(denom) > 0) acc[{s, u}] += v1 * v2 / denom;
    }
  WeightFunction out;
  for (auto& [key, v] : acc)
    if (sgn(v) > 0) out.entries.emplace_back(key.first, key.second, v);
  return out;
}

}  // namespace pgs
