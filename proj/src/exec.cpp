#include "pgs/exec.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "pgs/simcheck.hpp"
#include "pgs/simplex.hpp"

namespace pgs {

std::vector<int> ExecutionTree::history(int node) const {
  std::vector<int> hist;
  for (int at = node; at >= 0; at = nodes[at].parent)
    hist.push_back(nodes[at].state);
  std::reverse(hist.begin(), hist.end());
  return hist;
}

int ExecutionTree::find(const std::vector<int>& hist) const {
  if (hist.empty()) return -1;
  int at = -1;
  auto [begin, end] = level_bounds[0];
  for (int i = begin; i < end; ++i)
    if (nodes[i].state == hist[0]) at = i;
  if (at < 0) return -1;
  for (size_t k = 1; k < hist.size(); ++k) {
    int next = -1;
    for (int c : nodes[at].children)
      if (nodes[c].state == hist[k]) next = c;
    if (next < 0) return -1;
    at = next;
  }
  return at;
}

Distribution ExecutionTree::level_margin(int depth) const {
  std::map<int, Rat> acc;
  auto [begin, end] = level_bounds.at(depth);
  for (int i = begin; i < end; ++i) acc[nodes[i].state] += nodes[i].mass;
  std::vector<std::pair<int, Rat>> entries(acc.begin(), acc.end());
  return Distribution::make(std::move(entries));
}

std::vector<std::pair<int, Rat>> ExecutionTree::level_nodes(int depth) const {
  std::vector<std::pair<int, Rat>> out;
  auto [begin, end] = level_bounds.at(depth);
  for (int i = begin; i < end; ++i) out.emplace_back(i, nodes[i].mass);
  return out;
}

ExecutionTree build_execution(const Pgs& g, const HistoryStrategy& strat_i,
                              const HistoryStrategy& strat_ii,
                              const Distribution& from, int horizon,
                              size_t node_budget) {
  for (int s : from.support())
    if (s < 0 || s >= g.num_states())
      throw ExecError("initial distribution references an unknown state");
  if (horizon < 0) throw ExecError("horizon must be nonnegative");

  ExecutionTree tree;
  tree.model = &g;
  tree.root = from;
  tree.horizon = horizon;
  tree.strategies_memoryless =
      strat_i.is_memoryless() && strat_ii.is_memoryless();

  for (auto& [s, p] : from.entries())
    tree.nodes.push_back({-1, s, 0, p, {}});
  tree.level_bounds.emplace_back(0, static_cast<int>(tree.nodes.size()));

  for (int depth = 0; depth < horizon; ++depth) {
    auto [begin, end] = tree.level_bounds[depth];
    for (int at = begin; at < end; ++at) {
      std::vector<int> hist = tree.history(at);
      Distribution step = joint_step(g, tree.nodes[at].state,
                                     strat_i.move(hist), strat_ii.move(hist));
      for (auto& [t, p] : step.entries()) {
        if (tree.nodes.size() >= node_budget)
          throw ExecError("execution exceeds the node budget of " +
                          std::to_string(node_budget) + " nodes at depth " +
                          std::to_string(depth + 1));
        tree.nodes[at].children.push_back(static_cast<int>(tree.nodes.size()));
        tree.nodes.push_back({at, t, depth + 1, tree.nodes[at].mass * p, {}});
      }
    }
    tree.level_bounds.emplace_back(end, static_cast<int>(tree.nodes.size()));
  }

  if (tree.strategies_memoryless) {
    const Level1Strategy& si = *strat_i.memoryless_strategy();
    const Level1Strategy& sii = *strat_ii.memoryless_strategy();
    tree.chain_edge.assign(g.num_states(),
                           std::vector<char>(g.num_states(), 0));
    for (int s = 0; s < g.num_states(); ++s)
      for (int t : joint_step(g, s, si.at(s), sii.at(s)).support())
        tree.chain_edge[s][t] = 1;
  }
  return tree;
}

Rat cone_probability(const ExecutionTree& tree, const std::vector<int>& hist) {
  if (hist.empty()) throw ExecError("empty history");
  for (int s : hist)
    if (s < 0 || s >= tree.model->num_states())
      throw ExecError("history references an unknown state");
  if (static_cast<int>(hist.size()) - 1 > tree.horizon)
    throw ExecError("history longer than the materialized horizon");
  int node = tree.find(hist);
  return node < 0 ? Rat(0) : tree.nodes[node].mass;
}

// ---------------------------------------------------------------------------
// Exact path probabilities

namespace {

// States from which the target is reachable through allowed states, under
// the given edge relation. Backward closure from the target set.
std::vector<char> can_reach(const std::vector<std::vector<char>>& edge,
                            const std::vector<char>& allowed,
                            const std::vector<char>& target) {
  const int n = static_cast<int>(target.size());
  std::vector<char> reach = target;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int u = 0; u < n; ++u) {
      if (reach[u] || !allowed[u]) continue;
      for (int v = 0; v < n; ++v)
        if (edge[u][v] && reach[v]) {
          reach[u] = 1;
          changed = true;
          break;
        }
    }
  }
  return reach;
}

std::vector<std::vector<char>> model_edges(const Pgs& g) {
  std::vector<std::vector<char>> edge(g.num_states(),
                                      std::vector<char>(g.num_states(), 0));
  for (int s = 0; s < g.num_states(); ++s)
    for (int a = 0; a < g.num_actions(Player::I); ++a)
      for (int b = 0; b < g.num_actions(Player::II); ++b)
        for (int t : g.delta(s, a, b).support()) edge[s][t] = 1;
  return edge;
}

PathProbability until_probability(const ExecutionTree& tree,
                                  const PathQuery& q, int horizon) {
  const long levels = q.bound >= 0 ? q.bound : horizon;
  if (levels > tree.horizon)
    throw ExecError("query needs depth " + std::to_string(levels) +
                    " but the tree only reaches " +
                    std::to_string(tree.horizon));

  PathProbability out;
  out.lower = 0;

  // First-passage classification level by level. Masses are absolute cone
  // probabilities; the decomposition records the conditional split.
  std::vector<std::pair<int, Rat>> cont;  // (node, absolute mass)
  Rat entering(1);
  auto classify_level = [&](const std::vector<std::pair<int, Rat>>& frontier) {
    TripleDecomposition::Level lvl;
    lvl.alpha_continue = lvl.alpha_sat = lvl.alpha_fail = 0;
    std::vector<std::pair<int, Rat>> next_cont;
    Rat sat_abs(0), cont_abs(0), fail_abs(0);
    std::vector<std::pair<int, Rat>> sat_nodes, cont_nodes, fail_nodes;
    for (auto& [node, mass] : frontier) {
      int s = tree.nodes[node].state;
      if (q.rhs[s]) {
        sat_abs += mass;
        sat_nodes.emplace_back(node, mass);
      } else if (q.lhs[s]) {
        cont_abs += mass;
        cont_nodes.emplace_back(node, mass);
      } else {
        fail_abs += mass;
        fail_nodes.emplace_back(node, mass);
      }
    }
    if (sgn(entering) > 0) {
      lvl.alpha_sat = sat_abs / entering;
      lvl.alpha_continue = cont_abs / entering;
      lvl.alpha_fail = fail_abs / entering;
      auto normalize = [](std::vector<std::pair<int, Rat>>& nodes, Rat total) {
        if (sgn(total) == 0) {
          nodes.clear();
          return;
        }
        for (auto& [n, m] : nodes) m /= total;
      };
      normalize(sat_nodes, sat_abs);
      normalize(cont_nodes, cont_abs);
      normalize(fail_nodes, fail_abs);
      lvl.sat_nodes = std::move(sat_nodes);
      lvl.continue_nodes = std::move(cont_nodes);
      lvl.fail_nodes = std::move(fail_nodes);
    }
    out.decomposition.levels.push_back(std::move(lvl));
    out.lower += sat_abs;
    cont = std::move(next_cont);
    for (auto& [node, mass] : out.decomposition.levels.back().continue_nodes)
      cont.emplace_back(node, mass * cont_abs);
    entering = cont_abs;
  };

  classify_level(tree.level_nodes(0));
  for (long depth = 1; depth <= levels && !cont.empty(); ++depth) {
    std::vector<std::pair<int, Rat>> frontier;
    for (auto& [node, mass] : cont)
      for (int c : tree.nodes[node].children)
        frontier.emplace_back(c, tree.nodes[c].mass);
    classify_level(frontier);
  }

  if (q.bound >= 0) {
    out.upper = out.lower;
    return out;
  }

  // Undecided mass at the horizon, minus the provably dead part: states with
  // no path to the target through allowed states (under the fixed strategies
  // when both are memoryless, under any play otherwise).
  std::vector<char> allowed(q.lhs.size());
  for (size_t s = 0; s < q.lhs.size(); ++s) allowed[s] = q.lhs[s] && !q.rhs[s];
  std::vector<char> alive =
      tree.strategies_memoryless
          ? can_reach(tree.chain_edge, allowed, q.rhs)
          : can_reach(model_edges(*tree.model), allowed, q.rhs);
  Rat undecided(0);
  for (auto& [node, mass] : cont)
    if (alive[tree.nodes[node].state]) undecided += mass;
  out.upper = out.lower + undecided;
  return out;
}

}  // namespace

PathProbability exact_path_probability(const ExecutionTree& tree,
                                       const PathQuery& q, int horizon) {
  if (horizon > tree.horizon)
    throw ExecError("horizon exceeds the materialized tree");
  switch (q.kind) {
    case PathFormula::Kind::Next: {
      if (tree.horizon < 1) throw ExecError("next needs a depth-1 tree");
      PathProbability out;
      Rat mass(0);
      for (auto& [node, m] : tree.level_nodes(1))
        if (q.rhs[tree.nodes[node].state]) mass += m;
      out.lower = out.upper = mass;
      TripleDecomposition::Level lvl;
      lvl.alpha_sat = mass;
      lvl.alpha_fail = 1 - mass;
      lvl.alpha_continue = 0;
      out.decomposition.levels.push_back(lvl);
      return out;
    }
    case PathFormula::Kind::Until:
      return until_probability(tree, q, horizon);
    case PathFormula::Kind::Release: {
      // P(l R r) = 1 - P(!l U !r); bounds swap around the complement.
      PathProbability dual = until_probability(tree, q.negated(), horizon);
      PathProbability out;
      out.lower = 1 - dual.upper;
      out.upper = 1 - dual.lower;
      out.decomposition = dual.decomposition;
      return out;
    }
  }
  throw std::logic_error("bad path kind");
}

// ---------------------------------------------------------------------------
// Monte Carlo

namespace {

int sample_from(const Distribution& d, SplitMix64& rng) {
  Rat u(mpz_class(rng.next()), mpz_class(1) << 64);
  u.canonicalize();
  Rat acc(0);
  for (auto& [id, p] : d.entries()) {
    acc += p;
    if (u < acc) return id;
  }
  return d.entries().back().first;
}

bool play_satisfies(const std::vector<int>& states, const PathQuery& q,
                    long limit) {
  switch (q.kind) {
    case PathFormula::Kind::Next:
      return states.size() > 1 && q.rhs[states[1]];
    case PathFormula::Kind::Until: {
      long last = std::min<long>(limit, static_cast<long>(states.size()) - 1);
      for (long i = 0; i <= last; ++i) {
        if (q.rhs[states[i]]) return true;
        if (!q.lhs[states[i]]) return false;
      }
      return false;
    }
    case PathFormula::Kind::Release:
      return !play_satisfies(states, q.negated(), limit);
  }
  return false;
}

}  // namespace

MonteCarloResult monte_carlo_path_probability(
    const Pgs& g, const HistoryStrategy& strat_i,
    const HistoryStrategy& strat_ii, const Distribution& from,
    const PathQuery& q, long samples, int horizon, std::uint64_t seed) {
  if (samples < 1) throw ExecError("need at least one sample");
  MonteCarloResult res;
  res.samples = samples;
  res.seed = seed;
  res.horizon = horizon;
  SplitMix64 rng = SplitMix64(seed).split(0x6d63);

  long limit = q.bound >= 0 ? std::min<long>(q.bound, horizon) : horizon;
  for (long n = 0; n < samples; ++n) {
    std::vector<int> states{sample_from(from, rng)};
    for (int step = 0; step < horizon; ++step) {
      Distribution d = joint_step(g, states.back(), strat_i.move(states),
                                  strat_ii.move(states));
      states.push_back(sample_from(d, rng));
    }
    if (play_satisfies(states, q, limit)) ++res.hits;
  }

  const double z = 1.959963984540054;  // 95% two-sided normal quantile
  double n = static_cast<double>(samples);
  double p = static_cast<double>(res.hits) / n;
  double denom = 1 + z * z / n;
  double center = (p + z * z / (2 * n)) / denom;
  double half =
      z * std::sqrt(p * (1 - p) / n + z * z / (4 * n * n)) / denom;
  res.estimate = p;
  res.ci_low = std::max(0.0, center - half);
  res.ci_high = std::min(1.0, center + half);
  return res;
}

// ---------------------------------------------------------------------------
// Strategy transfer (level-by-level construction)

namespace {

struct LevelNode {
  int parent;
  int state;
  Rat mass;
};

// Collapses a history strategy at one level into per-state mixed moves,
// conditioned on the level's history distribution. Off-support states fall
// back to the previous collapse ("repeat last mixed move").
Level1Strategy collapse_level(const Pgs& g, const HistoryStrategy& strat,
                              const std::vector<std::vector<LevelNode>>& levels,
                              int depth, const Level1Strategy& fallback) {
  std::map<int, std::vector<std::pair<Rat, std::vector<int>>>> by_state;
  const auto& level = levels[depth];
  for (size_t idx = 0; idx < level.size(); ++idx) {
    std::vector<int> hist;
    int at = static_cast<int>(idx), d = depth;
    for (; d >= 0; --d) {
      hist.push_back(levels[d][at].state);
      at = levels[d][at].parent;
    }
    std::reverse(hist.begin(), hist.end());
    by_state[level[idx].state].emplace_back(level[idx].mass, std::move(hist));
  }

  Level1Strategy out = fallback;
  for (auto& [s, entries] : by_state) {
    Rat total(0);
    for (auto& [m, hist] : entries) total += m;
    if (sgn(total) == 0) continue;
    std::map<int, Rat> acc;
    for (auto& [m, hist] : entries) {
      MixedMove mv = strat.move(hist);
      for (auto& [a, p] : mv.entries()) acc[a] += (m / total) * p;
    }
    std::vector<std::pair<int, Rat>> move(acc.begin(), acc.end());
    out.moves[s] = Distribution::make(std::move(move));
  }
  return out;
}

Distribution margin_of(const std::vector<LevelNode>& level) {
  std::map<int, Rat> acc;
  for (const auto& node : level) acc[node.state] += node.mass;
  std::vector<std::pair<int, Rat>> entries(acc.begin(), acc.end());
  return Distribution::make(std::move(entries));
}

}  // namespace

HistoryStrategy TransferResult::prot_right() const {
  return HistoryStrategy::level_table(prot_levels_right);
}
HistoryStrategy TransferResult::anti_left() const {
  return HistoryStrategy::level_table(anti_levels_left);
}

TransferResult transfer_strategies(const Pgs& left, const Pgs& right,
                                   const ForwardRelationTable& rf,
                                   const Distribution& from_left,
                                   const Distribution& from_right,
                                   const HistoryStrategy& prot_left,
                                   const HistoryStrategy& anti_right,
                                   int horizon, Player protagonist) {
  TransferResult out;
  const Player anti = protagonist == Player::I ? Player::II : Player::I;

  std::vector<std::vector<LevelNode>> llevels{{}}, rlevels{{}};
  for (auto& [s, p] : from_left.entries()) llevels[0].push_back({-1, s, p});
  for (auto& [t, p] : from_right.entries()) rlevels[0].push_back({-1, t, p});

  // Off-support fallbacks start from the strategies' own singleton-history
  // moves and then repeat the last collapsed move.
  Level1Strategy collapsed_left, collapsed_right;
  for (int s = 0; s < left.num_states(); ++s)
    collapsed_left.moves.push_back(prot_left.move({s}));
  for (int t = 0; t < right.num_states(); ++t)
    collapsed_right.moves.push_back(anti_right.move({t}));

  Distribution lmargin = from_left, rmargin = from_right;
  SimOptions lp_opts;

  for (int depth = 0; depth <= horizon; ++depth) {
    auto witness = forward_lift_check(rf, lmargin, rmargin);
    if (!witness)
      throw SolverError(
          "transfer_strategies: level " + std::to_string(depth) +
          " margins are not related by the forward table; the table was not "
          "a forward simulation for the constructed moves");
    out.certificate.push_back({lmargin, rmargin, *witness});
    if (depth == horizon) break;

    collapsed_left =
        collapse_level(left, prot_left, llevels, depth, collapsed_left);
    collapsed_right =
        collapse_level(right, anti_right, rlevels, depth, collapsed_right);

    // Per witness pair: transfer the protagonist move (stage A), then build
    // the pair's response to the actual antagonist level (stage B) as the
    // product mixture of the certificate's pure-assignment responses.
    std::map<int, std::vector<std::pair<Rat, MixedMove>>> anti_mix_left;
    std::map<int, std::vector<std::pair<Rat, MixedMove>>> prot_mix_right;
    std::map<int, Rat> next_left_acc, next_right_acc;
    Distribution next_left, next_right;
    {
      for (const auto& term : witness->terms) {
        const Distribution& theta = rf.pairs[term.table_index].second;
        auto cert =
            local_forward_step(left, right, term.left_state, theta, rf,
                               protagonist, collapsed_left.at(term.left_state),
                               lp_opts);
        if (!cert)
          throw SolverError(
              "transfer_strategies: pair (" +
              left.states[term.left_state] +
              ", ...) fails its forward condition for the collapsed mixed "
              "move; verify the table first");

        // Product weights of the actual antagonist level over the pure
        // assignments enumerated by the certificate.
        const auto support = theta.support();
        std::vector<std::pair<Rat, const ForwardCertificate::Response*>> mix;
        for (const auto& resp : cert->responses) {
          Rat w(1);
          for (size_t i = 0; i < support.size(); ++i)
            w *= collapsed_right.at(support[i]).mass(resp.assignment[i]);
          if (sgn(w) > 0) mix.emplace_back(w, &resp);
        }

        std::map<int, Rat> yacc;
        for (auto& [w, resp] : mix)
          for (auto& [b, p] : resp->anti_move_left.entries())
            yacc[b] += w * p;
        std::vector<std::pair<int, Rat>> yentries(yacc.begin(), yacc.end());
        MixedMove y = Distribution::make(std::move(yentries));

        anti_mix_left[term.left_state].emplace_back(term.p, y);
        for (auto& [t, ci] : cert->prot_moves_right)
          prot_mix_right[t].emplace_back(term.p * theta.mass(t), ci);

        Distribution lstep = joint_step_roles(
            left, term.left_state, protagonist,
            collapsed_left.at(term.left_state), y);
        for (auto& [u, p] : lstep.entries()) next_left_acc[u] += term.p * p;
        std::vector<Distribution> parts;
        std::vector<Rat> ws;
        for (auto& [t, ci] : cert->prot_moves_right) {
          parts.push_back(joint_step_roles(right, t, protagonist, ci,
                                           collapsed_right.at(t)));
          ws.push_back(theta.mass(t));
        }
        Distribution rstep = convex_combine(parts, ws);
        for (auto& [u, p] : rstep.entries()) next_right_acc[u] += term.p * p;
      }
      std::vector<std::pair<int, Rat>> le(next_left_acc.begin(),
                                          next_left_acc.end());
      std::vector<std::pair<int, Rat>> re(next_right_acc.begin(),
                                          next_right_acc.end());
      next_left = Distribution::make(std::move(le));
      next_right = Distribution::make(std::move(re));
    }

    // Assemble the level strategies: mass-weighted mixtures per state, with
    // the repeat-last fallback off support.
    Level1Strategy anti_level =
        out.anti_levels_left.empty()
            ? Level1Strategy::uniform(left, anti)
            : out.anti_levels_left.back();
    for (auto& [s, parts] : anti_mix_left) {
      Rat total(0);
      for (auto& [w, m] : parts) total += w;
      std::map<int, Rat> acc;
      for (auto& [w, m] : parts)
        for (auto& [b, p] : m.entries()) acc[b] += (w / total) * p;
      std::vector<std::pair<int, Rat>> entries(acc.begin(), acc.end());
      anti_level.moves[s] = Distribution::make(std::move(entries));
    }
    Level1Strategy prot_level =
        out.prot_levels_right.empty()
            ? Level1Strategy::uniform(right, protagonist)
            : out.prot_levels_right.back();
    for (auto& [t, parts] : prot_mix_right) {
      Rat total(0);
      for (auto& [w, m] : parts) total += w;
      if (sgn(total) == 0) continue;
      std::map<int, Rat> acc;
      for (auto& [w, m] : parts)
        for (auto& [a, p] : m.entries()) acc[a] += (w / total) * p;
      std::vector<std::pair<int, Rat>> entries(acc.begin(), acc.end());
      prot_level.moves[t] = Distribution::make(std::move(entries));
    }
    out.anti_levels_left.push_back(anti_level);
    out.prot_levels_right.push_back(prot_level);

    // Grow both executions one level and check the margins match the
    // construction exactly.
    std::vector<LevelNode> lnext, rnext;
    for (size_t idx = 0; idx < llevels[depth].size(); ++idx) {
      std::vector<int> hist;
      int at = static_cast<int>(idx);
      for (int d = depth; d >= 0; --d) {
        hist.push_back(llevels[d][at].state);
        at = llevels[d][at].parent;
      }
      std::reverse(hist.begin(), hist.end());
      Distribution step = joint_step_roles(
          left, hist.back(), protagonist, prot_left.move(hist),
          anti_level.at(hist.back()));
      for (auto& [t, p] : step.entries())
        lnext.push_back({static_cast<int>(idx), t,
                         llevels[depth][idx].mass * p});
    }
    for (size_t idx = 0; idx < rlevels[depth].size(); ++idx) {
      std::vector<int> hist;
      int at = static_cast<int>(idx);
      for (int d = depth; d >= 0; --d) {
        hist.push_back(rlevels[d][at].state);
        at = rlevels[d][at].parent;
      }
      std::reverse(hist.begin(), hist.end());
      Distribution step = joint_step_roles(
          right, hist.back(), protagonist, prot_level.at(hist.back()),
          anti_right.move(hist));
      for (auto& [t, p] : step.entries())
        rnext.push_back({static_cast<int>(idx), t,
                         rlevels[depth][idx].mass * p});
    }
    llevels.push_back(std::move(lnext));
    rlevels.push_back(std::move(rnext));

    if (!(margin_of(llevels.back()) == next_left) ||
        !(margin_of(rlevels.back()) == next_right))
      throw SolverError(
          "transfer_strategies: execution margins diverged from the "
          "construction (internal error)");
    lmargin = next_left;
    rmargin = next_right;
  }
  return out;
}

}  // namespace pgs
