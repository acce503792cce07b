#include "pgs/model.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace pgs {

namespace {

int index_of(const std::vector<std::string>& v, const std::string& name) {
  for (size_t i = 0; i < v.size(); ++i)
    if (v[i] == name) return static_cast<int>(i);
  return -1;
}

}  // namespace

int Pgs::state_id(const std::string& name) const {
  return index_of(states, name);
}
int Pgs::prop_id(const std::string& name) const {
  return index_of(props, name);
}
int Pgs::action_id(Player p, const std::string& name) const {
  return index_of(action_names(p), name);
}

bool Pgs::has_label(int s, int prop) const {
  const auto& l = labels[s];
  return std::binary_search(l.begin(), l.end(), prop);
}

std::vector<std::string> Pgs::label_key(int s) const {
  std::vector<std::string> key;
  for (int p : labels[s]) key.push_back(props[p]);
  std::sort(key.begin(), key.end());
  return key;
}

Pgs validate_model(const RawModel& raw) {
  Pgs g;
  if (raw.actions_i.empty() || raw.actions_ii.empty())
    throw ModelError("both players need a nonempty action alphabet");
  if (raw.states.empty()) throw ModelError("model has no states");

  auto check_unique = [](const std::vector<std::string>& v,
                         const std::string& what) {
    std::set<std::string> seen;
    for (const auto& name : v) {
      if (name.empty() || !seen.insert(name).second)
        throw ModelError("duplicate or empty " + what + " '" + name + "'");
    }
  };
  g.actions_i = raw.actions_i;
  g.actions_ii = raw.actions_ii;
  g.props = raw.props;
  check_unique(g.actions_i, "player I action");
  check_unique(g.actions_ii, "player II action");
  check_unique(g.props, "proposition");

  for (const auto& st : raw.states) g.states.push_back(st.name);
  check_unique(g.states, "state");

  g.labels.resize(g.states.size());
  for (size_t s = 0; s < raw.states.size(); ++s) {
    for (const auto& prop : raw.states[s].labels) {
      int p = g.prop_id(prop);
      if (p < 0)
        throw ModelError("state '" + raw.states[s].name +
                         "' references unknown proposition '" + prop + "'");
      g.labels[s].push_back(p);
    }
    std::sort(g.labels[s].begin(), g.labels[s].end());
    g.labels[s].erase(std::unique(g.labels[s].begin(), g.labels[s].end()),
                      g.labels[s].end());
  }

  g.initial = g.state_id(raw.initial);
  if (g.initial < 0)
    throw ModelError("unknown initial state '" + raw.initial + "'");

  const int ns = g.num_states();
  const int na = g.num_actions(Player::I);
  const int nb = g.num_actions(Player::II);

  // Transition lines are applied most-specific-last: an explicit (s,a,b)
  // entry overrides wildcard lines regardless of order; two entries of equal
  // specificity for the same triple are an error.
  struct Cell {
    int rank = -1;  // number of non-wildcard action positions
    int line = 0;
    std::optional<Distribution> dist;
  };
  std::vector<Cell> table(static_cast<size_t>(ns) * na * nb);
  auto cell = [&](int s, int a, int b) -> Cell& {
    return table[(static_cast<size_t>(s) * na + a) * nb + b];
  };

  for (const auto& tr : raw.transitions) {
    int s = g.state_id(tr.state);
    if (s < 0)
      throw ModelError("transition from unknown state '" + tr.state + "'");
    std::vector<int> as, bs;
    if (tr.action_i == "*")
      for (int a = 0; a < na; ++a) as.push_back(a);
    else {
      int a = g.action_id(Player::I, tr.action_i);
      if (a < 0)
        throw ModelError("unknown player I action '" + tr.action_i + "'");
      as.push_back(a);
    }
    if (tr.action_ii == "*")
      for (int b = 0; b < nb; ++b) bs.push_back(b);
    else {
      int b = g.action_id(Player::II, tr.action_ii);
      if (b < 0)
        throw ModelError("unknown player II action '" + tr.action_ii + "'");
      bs.push_back(b);
    }
    int rank = (tr.action_i != "*") + (tr.action_ii != "*");

    std::vector<std::pair<int, Rat>> entries;
    for (const auto& [succ, prob] : tr.successors) {
      int t = g.state_id(succ);
      if (t < 0)
        throw ModelError("transition to unknown state '" + succ + "'");
      auto q = rat_parse(prob);
      if (!q) throw ModelError("bad probability '" + prob + "'");
      entries.emplace_back(t, *q);
    }
    auto dist = Distribution::try_make(entries);
    if (!dist)
      throw ModelError("distribution from '" + tr.state +
                       "' does not sum to 1 (line " +
                       std::to_string(tr.line) + ")");

    for (int a : as)
      for (int b : bs) {
        Cell& c = cell(s, a, b);
        if (c.rank == rank)
          throw ModelError("duplicate transition for (" + tr.state + ", " +
                           g.actions_i[a] + ", " + g.actions_ii[b] +
                           ") at lines " + std::to_string(c.line) + " and " +
                           std::to_string(tr.line));
        if (c.rank < rank) {
          c.rank = rank;
          c.line = tr.line;
          c.dist = *dist;
        }
      }
  }

  g.delta_.reserve(table.size());
  for (int s = 0; s < ns; ++s)
    for (int a = 0; a < na; ++a)
      for (int b = 0; b < nb; ++b) {
        const Cell& c = cell(s, a, b);
        if (!c.dist)
          throw ModelError("missing transition for (" + g.states[s] + ", " +
                           g.actions_i[a] + ", " + g.actions_ii[b] + ")");
        g.delta_.push_back(*c.dist);
      }
  return g;
}

Level1Strategy Level1Strategy::uniform(const Pgs& g, Player p) {
  int n = g.num_actions(p);
  std::vector<std::pair<int, Rat>> entries;
  for (int a = 0; a < n; ++a) entries.emplace_back(a, rat(1, n));
  MixedMove m = Distribution::make(entries);
  Level1Strategy s;
  s.moves.assign(g.num_states(), m);
  return s;
}

Level1Strategy Level1Strategy::pure(const Pgs& g, Player p, int action) {
  (void)p;
  Level1Strategy s;
  s.moves.assign(g.num_states(), Distribution::point(action));
  return s;
}

HistoryStrategy HistoryStrategy::memoryless(Level1Strategy s) {
  HistoryStrategy h;
  h.kind_ = Kind::Memoryless;
  h.levels_.push_back(std::move(s));
  return h;
}

HistoryStrategy HistoryStrategy::level_table(
    std::vector<Level1Strategy> levels) {
  if (levels.empty()) throw ModelError("level_table: empty table");
  HistoryStrategy h;
  h.kind_ = Kind::Table;
  h.horizon_ = -1;
  h.levels_ = std::move(levels);
  return h;
}

HistoryStrategy HistoryStrategy::rule(
    std::function<MixedMove(const std::vector<int>&)> fn, int horizon) {
  HistoryStrategy h;
  h.kind_ = Kind::Rule;
  h.fn_ = std::move(fn);
  h.horizon_ = horizon;
  return h;
}

MixedMove HistoryStrategy::move(const std::vector<int>& history) const {
  if (history.empty()) throw ModelError("strategy queried on empty history");
  switch (kind_) {
    case Kind::Memoryless:
      return levels_[0].at(history.back());
    case Kind::Table: {
      size_t level = history.size() - 1;
      if (level >= levels_.size()) level = levels_.size() - 1;
      return levels_[level].at(history.back());
    }
    case Kind::Rule:
      return fn_(history);
  }
  throw ModelError("unreachable");
}

bool Play::valid_in(const Pgs& g) const {
  if (states.empty() || states.size() != joint_actions.size() + 1)
    return false;
  for (size_t i = 0; i < joint_actions.size(); ++i) {
    auto [a, b] = joint_actions[i];
    if (sgn(g.delta(states[i], a, b).mass(states[i + 1])) <= 0) return false;
  }
  return true;
}

Distribution joint_step(const Pgs& g, int s, const MixedMove& move_i,
                        const MixedMove& move_ii) {
  std::map<int, Rat> acc;
  for (auto& [a, pa] : move_i.entries())
    for (auto& [b, pb] : move_ii.entries()) {
      Rat w = pa * pb;
      for (auto& [t, pt] : g.delta(s, a, b).entries()) acc[t] += w * pt;
    }
  std::vector<std::pair<int, Rat>> entries(acc.begin(), acc.end());
  return Distribution::make(std::move(entries));
}

Distribution lifted_step(const Pgs& g, const Distribution& from,
                         const Level1Strategy& strat_i,
                         const Level1Strategy& strat_ii) {
  std::map<int, Rat> acc;
  for (auto& [s, ps] : from.entries()) {
    Distribution step = joint_step(g, s, strat_i.at(s), strat_ii.at(s));
    for (auto& [t, pt] : step.entries()) acc[t] += ps * pt;
  }
  std::vector<std::pair<int, Rat>> entries(acc.begin(), acc.end());
  return Distribution::make(std::move(entries));
}

Level1Strategy mix_strategies(const std::vector<Level1Strategy>& strategies,
                              const std::vector<Rat>& weights) {
  if (strategies.empty() || strategies.size() != weights.size())
    throw ModelError("mix_strategies: length mismatch");
  size_t ns = strategies[0].moves.size();
  Level1Strategy out;
  out.moves.reserve(ns);
  for (size_t s = 0; s < ns; ++s) {
    std::vector<Distribution> parts;
    for (const auto& strat : strategies) parts.push_back(strat.moves.at(s));
    out.moves.push_back(convex_combine(parts, weights));
  }
  return out;
}

ReweightedMix reweighted_mix(const std::vector<Level1Strategy>& strategies,
                             const std::vector<Rat>& weights,
                             const std::vector<Distribution>& dists) {
  if (strategies.empty() || strategies.size() != weights.size() ||
      strategies.size() != dists.size())
    throw ModelError("reweighted_mix: length mismatch");
  size_t ns = strategies[0].moves.size();
  ReweightedMix out;
  out.strategy.moves.reserve(ns);
  for (size_t s = 0; s < ns; ++s) {
    Rat denom(0);
    for (size_t i = 0; i < weights.size(); ++i)
      denom += weights[i] * dists[i].mass(static_cast<int>(s));
    if (sgn(denom) == 0) {
      out.strategy.moves.push_back(strategies[0].moves.at(s));
      out.unconstrained.push_back(static_cast<int>(s));
      continue;
    }
    std::vector<Distribution> parts;
    std::vector<Rat> local;
    for (size_t i = 0; i < weights.size(); ++i) {
      parts.push_back(strategies[i].moves.at(s));
      local.push_back(weights[i] * dists[i].mass(static_cast<int>(s)) / denom);
    }
    out.strategy.moves.push_back(convex_combine(parts, local));
  }
  return out;
}

}  // namespace pgs
