#include "pgs/modelcheck.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace pgs {

PathQuery PathQuery::next(std::vector<char> target) {
  PathQuery q;
  q.kind = PathFormula::Kind::Next;
  q.rhs = std::move(target);
  return q;
}

PathQuery PathQuery::until(std::vector<char> lhs, std::vector<char> rhs,
                           long bound) {
  PathQuery q;
  q.kind = PathFormula::Kind::Until;
  q.lhs = std::move(lhs);
  q.rhs = std::move(rhs);
  q.bound = bound;
  return q;
}

PathQuery PathQuery::release(std::vector<char> lhs, std::vector<char> rhs,
                             long bound) {
  PathQuery q;
  q.kind = PathFormula::Kind::Release;
  q.lhs = std::move(lhs);
  q.rhs = std::move(rhs);
  q.bound = bound;
  return q;
}

namespace {
std::vector<char> complement(const std::vector<char>& set) {
  std::vector<char> out(set.size());
  for (size_t i = 0; i < set.size(); ++i) out[i] = !set[i];
  return out;
}
}  // namespace

PathQuery PathQuery::negated() const {
  switch (kind) {
    case PathFormula::Kind::Next:
      return next(complement(rhs));
    case PathFormula::Kind::Until:
      return release(complement(lhs), complement(rhs), bound);
    case PathFormula::Kind::Release:
      return until(complement(lhs), complement(rhs), bound);
  }
  throw std::logic_error("bad path kind");
}

// ---------------------------------------------------------------------------
// Quantitative predecessor

namespace {

// Expected continuation value under a pure joint action.
Rat expectation(const Pgs& g, int s, int a, int b, const std::vector<Rat>& f) {
  Rat e(0);
  for (auto& [t, p] : g.delta(s, a, b).entries()) e += p * f[t];
  return e;
}

Rat ppre_state_exact(const Pgs& g, Coalition coal, int s,
                     const std::vector<Rat>& f) {
  const int na = g.num_actions(Player::I), nb = g.num_actions(Player::II);
  if (coal == Coalition::None || coal == Coalition::Both) {
    bool want_max = coal == Coalition::Both;
    Rat best;
    bool first = true;
    for (int a = 0; a < na; ++a)
      for (int b = 0; b < nb; ++b) {
        Rat e = expectation(g, s, a, b, f);
        if (first || (want_max ? e > best : e < best)) best = e;
        first = false;
      }
    return best;
  }
  bool prot_i = coal == Coalition::I;
  int rows = prot_i ? na : nb, cols = prot_i ? nb : na;
  std::vector<std::vector<Rat>> m(rows, std::vector<Rat>(cols));
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      m[r][c] = prot_i ? expectation(g, s, r, c, f)
                       : expectation(g, s, c, r, f);
  return solve_matrix_game_exact(m).value;
}

std::vector<Rat> to_rats(const std::vector<double>& f) {
  std::vector<Rat> out;
  out.reserve(f.size());
  for (double v : f) out.push_back(rat_of_double(v));
  return out;
}

std::vector<Rat> indicator_rats(const std::vector<char>& set) {
  std::vector<Rat> out;
  out.reserve(set.size());
  for (char c : set) out.push_back(Rat(c ? 1 : 0));
  return out;
}

}  // namespace

std::vector<Rat> ppre_exact(const Pgs& g, Coalition a,
                            const std::vector<Rat>& f) {
  std::vector<Rat> out(g.num_states());
  for (int s = 0; s < g.num_states(); ++s)
    out[s] = ppre_state_exact(g, a, s, f);
  return out;
}

ValueFunction ppre(const Pgs& g, Coalition a, const std::vector<double>& f) {
  std::vector<Rat> exact = ppre_exact(g, a, to_rats(f));
  ValueFunction vf;
  vf.iterations = 1;
  for (const Rat& v : exact)
    vf.values.push_back(std::clamp(rat_double(v), 0.0, 1.0));
  return vf;
}

// ---------------------------------------------------------------------------
// Fixed points

namespace {

// One unfolding step; operands are the resolved state sets. Until combines
// rhs | (lhs & Ppre), release combines rhs & (lhs | Ppre), with max/min as
// the quantitative connectives.
std::vector<Rat> unfold_step_exact(const Pgs& g, Coalition a, bool until,
                                   const std::vector<char>& lhs,
                                   const std::vector<char>& rhs,
                                   const std::vector<Rat>& f) {
  std::vector<Rat> pre = ppre_exact(g, a, f);
  std::vector<Rat> out(g.num_states());
  for (int s = 0; s < g.num_states(); ++s) {
    if (until)
      out[s] = rhs[s] ? Rat(1) : (lhs[s] ? pre[s] : Rat(0));
    else
      out[s] = rhs[s] ? (lhs[s] ? Rat(1) : pre[s]) : Rat(0);
  }
  return out;
}

std::vector<Rat> seed_exact(const Pgs& g, const std::vector<char>& rhs) {
  return indicator_rats(rhs);
}

}  // namespace

std::vector<Rat> value_of_exact(const Pgs& g, Coalition a,
                                const PathQuery& q) {
  if (q.kind == PathFormula::Kind::Next)
    return ppre_exact(g, a, indicator_rats(q.rhs));
  if (q.bound < 0)
    throw ModelError("value_of_exact handles next and bounded operators only");
  bool until = q.kind == PathFormula::Kind::Until;
  std::vector<Rat> f = seed_exact(g, q.rhs);
  for (long k = 0; k < q.bound; ++k)
    f = unfold_step_exact(g, a, until, q.lhs, q.rhs, f);
  return f;
}

ValueFunction value_of(const Pgs& g, Coalition a, const PathQuery& q,
                       const CheckOptions& opts) {
  ValueFunction vf;
  if (q.kind == PathFormula::Kind::Next) {
    vf = ppre(g, a, std::vector<double>(q.rhs.begin(), q.rhs.end()));
    return vf;
  }
  bool until = q.kind == PathFormula::Kind::Until;

  // Small bounded operators run in exact rationals end-to-end.
  if (q.bound >= 0 && q.bound <= opts.exact_bound_max) {
    std::vector<Rat> f = value_of_exact(g, a, q);
    for (const Rat& v : f) vf.values.push_back(rat_double(v));
    vf.iterations = q.bound;
    return vf;
  }

  // Seeded with the bounded-0 value (the rhs indicator); iteration n is the
  // n-step bounded value, nondecreasing toward the least fixed point for
  // until and nonincreasing toward the greatest for release.
  std::vector<Rat> f = seed_exact(g, q.rhs);
  long cap = q.bound >= 0 ? q.bound : opts.max_iters;
  double residual = 0;
  long n = 0;
  bool converged = q.bound >= 0;
  while (n < cap) {
    std::vector<Rat> next = unfold_step_exact(g, a, until, q.lhs, q.rhs, f);
    residual = 0;
    for (size_t s = 0; s < next.size(); ++s)
      residual = std::max(residual,
                          std::abs(rat_double(next[s]) - rat_double(f[s])));
    // Round to double between iterations: keeps rational sizes bounded and
    // makes the iterate sequence identical to a double-valued iteration.
    for (auto& v : next) v = rat_of_double(rat_double(v));
    f = std::move(next);
    ++n;
    if (q.bound < 0 && residual < opts.eps_vi) {
      converged = true;
      break;
    }
  }
  if (q.bound < 0 && n >= cap && residual >= opts.eps_vi) converged = false;

  for (const Rat& v : f)
    vf.values.push_back(std::clamp(rat_double(v), 0.0, 1.0));
  vf.residual = residual;
  vf.iterations = n;
  vf.converged = converged;
  return vf;
}

// ---------------------------------------------------------------------------
// PATL satisfaction

namespace {

struct Tri {
  std::vector<Verdict> v;
};

class Evaluator {
 public:
  Evaluator(const Pgs& g, const CheckOptions& opts) : g_(g), opts_(opts) {}

  Tri eval(const StateFormulaPtr& f) {
    const int ns = g_.num_states();
    Tri out;
    out.v.resize(ns);
    switch (f->kind) {
      case StateFormula::Kind::True:
        std::fill(out.v.begin(), out.v.end(), Verdict::Sat);
        return out;
      case StateFormula::Kind::False:
        std::fill(out.v.begin(), out.v.end(), Verdict::Unsat);
        return out;
      case StateFormula::Kind::Prop: {
        int p = g_.prop_id(f->prop);
        if (p < 0)
          throw ModelError("formula references unknown proposition '" +
                           f->prop + "'");
        for (int s = 0; s < ns; ++s)
          out.v[s] = g_.has_label(s, p) ? Verdict::Sat : Verdict::Unsat;
        return out;
      }
      case StateFormula::Kind::Not: {
        Tri in = eval(f->lhs);
        for (int s = 0; s < ns; ++s)
          out.v[s] = in.v[s] == Verdict::Sat     ? Verdict::Unsat
                     : in.v[s] == Verdict::Unsat ? Verdict::Sat
                                                 : Verdict::Uncertain;
        return out;
      }
      case StateFormula::Kind::And:
      case StateFormula::Kind::Or: {
        Tri a = eval(f->lhs), b = eval(f->rhs);
        bool conj = f->kind == StateFormula::Kind::And;
        for (int s = 0; s < ns; ++s) {
          Verdict dominate = conj ? Verdict::Unsat : Verdict::Sat;
          Verdict neutral = conj ? Verdict::Sat : Verdict::Unsat;
          if (a.v[s] == dominate || b.v[s] == dominate)
            out.v[s] = dominate;
          else if (a.v[s] == neutral && b.v[s] == neutral)
            out.v[s] = neutral;
          else
            out.v[s] = Verdict::Uncertain;
        }
        return out;
      }
      case StateFormula::Kind::Strategic:
        return eval_strategic(f);
    }
    throw std::logic_error("bad formula kind");
  }

  bool nonattainment_note = false;
  bool any_unconverged = false;

 private:
  // Splits a three-valued set into a pessimistic (Sat only) and optimistic
  // (Sat or Uncertain) indicator; the fixed-point value is monotone in its
  // argument sets, so these bracket the true value.
  static void split(const Tri& t, std::vector<char>& lo,
                    std::vector<char>& hi, bool& uncertain) {
    lo.resize(t.v.size());
    hi.resize(t.v.size());
    for (size_t s = 0; s < t.v.size(); ++s) {
      lo[s] = t.v[s] == Verdict::Sat;
      hi[s] = t.v[s] != Verdict::Unsat;
      if (t.v[s] == Verdict::Uncertain) uncertain = true;
    }
  }

  Tri eval_strategic(const StateFormulaPtr& f) {
    Cmp cmp = f->cmp;
    Rat alpha = f->threshold;
    PathFormulaPtr path = f->path;
    if (!cmp_is_lower_bound(cmp)) {
      Dualized d = dualize(cmp, alpha, path);
      cmp = d.cmp;
      alpha = d.threshold;
      path = d.path;
    }

    bool uncertain_args = false;
    std::vector<char> llo, lhi, rlo, rhi;
    if (path->kind != PathFormula::Kind::Next)
      split(eval(path->lhs), llo, lhi, uncertain_args);
    split(eval(path->rhs), rlo, rhi, uncertain_args);

    auto mk_query = [&](bool hi) {
      std::vector<char> l = hi ? lhi : llo, r = hi ? rhi : rlo;
      switch (path->kind) {
        case PathFormula::Kind::Next:
          return PathQuery::next(std::move(r));
        case PathFormula::Kind::Until:
          return PathQuery::until(std::move(l), std::move(r), path->bound);
        case PathFormula::Kind::Release:
          return PathQuery::release(std::move(l), std::move(r), path->bound);
      }
      throw std::logic_error("bad path kind");
    };

    const int ns = g_.num_states();
    Tri out;
    out.v.resize(ns);

    bool exact = path->kind == PathFormula::Kind::Next ||
                 (path->bound >= 0 && path->bound <= opts_.exact_bound_max);
    if (exact) {
      std::vector<Rat> vlo = value_of_exact(g_, f->coalition, mk_query(false));
      std::vector<Rat> vhi =
          uncertain_args ? value_of_exact(g_, f->coalition, mk_query(true))
                         : vlo;
      for (int s = 0; s < ns; ++s) {
        bool sat = cmp == Cmp::Gt ? vlo[s] > alpha : vlo[s] >= alpha;
        bool viol = !(cmp == Cmp::Gt ? vhi[s] > alpha : vhi[s] >= alpha);
        out.v[s] = sat ? Verdict::Sat
                       : (viol ? Verdict::Unsat : Verdict::Uncertain);
      }
      return out;
    }

    ValueFunction flo = value_of(g_, f->coalition, mk_query(false), opts_);
    ValueFunction fhi =
        uncertain_args ? value_of(g_, f->coalition, mk_query(true), opts_)
                       : flo;
    any_unconverged |= !flo.converged || !fhi.converged;
    if (path->kind == PathFormula::Kind::Until && path->bound < 0 &&
        cmp == Cmp::Ge)
      nonattainment_note = true;

    double a = rat_double(alpha), band = opts_.band();
    for (int s = 0; s < ns; ++s) {
      if (flo.values[s] - a > band)
        out.v[s] = Verdict::Sat;
      else if (a - fhi.values[s] > band)
        out.v[s] = Verdict::Unsat;
      else
        out.v[s] = Verdict::Uncertain;
    }
    return out;
  }

  const Pgs& g_;
  const CheckOptions& opts_;
};

}  // namespace

SatResult patl_sat(const Pgs& g, const StateFormulaPtr& f,
                   const CheckOptions& opts) {
  Evaluator ev(g, opts);
  Tri t = ev.eval(f);
  SatResult res;
  res.verdicts = std::move(t.v);
  res.nonattainment_note = ev.nonattainment_note;
  res.any_unconverged = ev.any_unconverged;
  if (res.nonattainment_note)
    res.notes.push_back(
        "unbounded until compared with >=: the supremum may not be attained, "
        "a verdict at the exact threshold is reported as uncertain");
  if (res.any_unconverged)
    res.notes.push_back("value iteration hit the iteration cap; verdicts use "
                        "the last iterate");
  return res;
}

std::pair<PathQuery, bool> resolve_path_query(const Pgs& g,
                                              const PathFormulaPtr& path,
                                              const CheckOptions& opts) {
  Evaluator ev(g, opts);
  bool uncertain = false;
  auto crisp = [&](const StateFormulaPtr& f) {
    Tri t = ev.eval(f);
    std::vector<char> set(t.v.size());
    for (size_t s = 0; s < t.v.size(); ++s) {
      set[s] = t.v[s] == Verdict::Sat;
      if (t.v[s] == Verdict::Uncertain) uncertain = true;
    }
    return set;
  };
  PathQuery q;
  switch (path->kind) {
    case PathFormula::Kind::Next:
      q = PathQuery::next(crisp(path->rhs));
      break;
    case PathFormula::Kind::Until:
      q = PathQuery::until(crisp(path->lhs), crisp(path->rhs), path->bound);
      break;
    case PathFormula::Kind::Release:
      q = PathQuery::release(crisp(path->lhs), crisp(path->rhs), path->bound);
      break;
  }
  return {q, uncertain};
}

// ---------------------------------------------------------------------------
// Strategy extraction

namespace {

struct GameMoves {
  Rat value;
  MixedMove move_i, move_ii;
};

// Solves the one-shot game at s over continuation values f and returns both
// players' moves in model action space.
GameMoves state_game(const Pgs& g, Coalition coal, int s,
                     const std::vector<Rat>& f) {
  const int na = g.num_actions(Player::I), nb = g.num_actions(Player::II);
  GameMoves out;
  if (coal == Coalition::None || coal == Coalition::Both) {
    bool want_max = coal == Coalition::Both;
    int best_a = 0, best_b = 0;
    Rat best;
    bool first = true;
    for (int a = 0; a < na; ++a)
      for (int b = 0; b < nb; ++b) {
        Rat e = expectation(g, s, a, b, f);
        if (first || (want_max ? e > best : e < best)) {
          best = e;
          best_a = a;
          best_b = b;
        }
        first = false;
      }
    out.value = best;
    out.move_i = Distribution::point(best_a);
    out.move_ii = Distribution::point(best_b);
    return out;
  }
  bool prot_i = coal == Coalition::I;
  int rows = prot_i ? na : nb, cols = prot_i ? nb : na;
  std::vector<std::vector<Rat>> m(rows, std::vector<Rat>(cols));
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      m[r][c] =
          prot_i ? expectation(g, s, r, c, f) : expectation(g, s, c, r, f);
  GameSolutionExact sol = solve_matrix_game_exact(m);
  out.value = sol.value;
  std::vector<std::pair<int, Rat>> row_entries, col_entries;
  for (int r = 0; r < rows; ++r)
    if (sgn(sol.row_strategy[r]) > 0) row_entries.emplace_back(r, sol.row_strategy[r]);
  for (int c = 0; c < cols; ++c)
    if (sgn(sol.col_strategy[c]) > 0) col_entries.emplace_back(c, sol.col_strategy[c]);
  MixedMove row = Distribution::make(row_entries);
  MixedMove col = Distribution::make(col_entries);
  out.move_i = prot_i ? row : col;
  out.move_ii = prot_i ? col : row;
  return out;
}

Level1Strategy strategy_level(const Pgs& g, Coalition coal,
                              const std::vector<Rat>& f, Player player) {
  Level1Strategy out;
  for (int s = 0; s < g.num_states(); ++s) {
    GameMoves moves = state_game(g, coal, s, f);
    out.moves.push_back(player == Player::I ? moves.move_i : moves.move_ii);
  }
  return out;
}

// Best-response value of a fixed protagonist level: collapse the matrix by
// the protagonist's mixed move and let the antagonist (the rest of the
// players) pick the pure minimizer.
std::vector<Rat> fixed_row_min(const Pgs& g, Coalition coal,
                               const Level1Strategy& strat_i,
                               const Level1Strategy& strat_ii,
                               const std::vector<Rat>& f) {
  std::vector<Rat> out(g.num_states());
  const int na = g.num_actions(Player::I), nb = g.num_actions(Player::II);
  for (int s = 0; s < g.num_states(); ++s) {
    if (coal == Coalition::Both) {
      out[s] = 0;
      for (auto& [a, pa] : strat_i.at(s).entries())
        for (auto& [b, pb] : strat_ii.at(s).entries())
          out[s] += pa * pb * expectation(g, s, a, b, f);
      continue;
    }
    Rat best;
    bool first = true;
    if (coal == Coalition::None) {
      for (int a = 0; a < na; ++a)
        for (int b = 0; b < nb; ++b) {
          Rat e = expectation(g, s, a, b, f);
          if (first || e < best) best = e;
          first = false;
        }
    } else {
      bool prot_i = coal == Coalition::I;
      const MixedMove& mine =
          prot_i ? strat_i.at(s) : strat_ii.at(s);
      int opp_count = prot_i ? nb : na;
      for (int o = 0; o < opp_count; ++o) {
        Rat e(0);
        for (auto& [a, pa] : mine.entries())
          e += pa * (prot_i ? expectation(g, s, a, o, f)
                            : expectation(g, s, o, a, f));
        if (first || e < best) best = e;
        first = false;
      }
    }
    out[s] = best;
  }
  return out;
}

std::vector<Rat> combine(const Pgs& g, bool until, const std::vector<char>& lhs,
                         const std::vector<char>& rhs,
                         const std::vector<Rat>& pre) {
  std::vector<Rat> out(g.num_states());
  for (int s = 0; s < g.num_states(); ++s) {
    if (until)
      out[s] = rhs[s] ? Rat(1) : (lhs[s] ? pre[s] : Rat(0));
    else
      out[s] = rhs[s] ? (lhs[s] ? Rat(1) : pre[s]) : Rat(0);
  }
  return out;
}

}  // namespace

HistoryStrategy StrategyCertificate::strategy(Player p) const {
  const auto& levels = p == Player::I ? levels_i : levels_ii;
  if (memoryless) return HistoryStrategy::memoryless(levels.at(0));
  return HistoryStrategy::level_table(levels);
}

StrategyCertificate extract_strategy(const Pgs& g, Coalition a,
                                     const PathQuery& q, double eps,
                                     const CheckOptions& opts) {
  StrategyCertificate cert;
  cert.coalition = a;
  bool until = q.kind == PathFormula::Kind::Until;

  if (q.kind == PathFormula::Kind::Next) {
    std::vector<Rat> f0 = indicator_rats(q.rhs);
    cert.levels_i.push_back(strategy_level(g, a, f0, Player::I));
    cert.levels_ii.push_back(strategy_level(g, a, f0, Player::II));
    std::vector<Rat> got =
        fixed_row_min(g, a, cert.levels_i[0], cert.levels_ii[0], f0);
    std::vector<Rat> val = ppre_exact(g, a, f0);
    for (int s = 0; s < g.num_states(); ++s) {
      cert.guaranteed.push_back(rat_double(got[s]));
      cert.computed_value.push_back(rat_double(val[s]));
    }
    cert.kind = StrategyCertificate::Opt::Optimal;
    return cert;
  }

  if (q.bound >= 0) {
    // Depth-k table: level j plays the game toward the (k-1-j)-step value.
    cert.memoryless = false;
    std::vector<std::vector<Rat>> iters{indicator_rats(q.rhs)};
    for (long k = 0; k < q.bound; ++k)
      iters.push_back(
          unfold_step_exact(g, a, until, q.lhs, q.rhs, iters.back()));
    long k = q.bound;
    if (k == 0) {
      cert.levels_i.push_back(Level1Strategy::uniform(g, Player::I));
      cert.levels_ii.push_back(Level1Strategy::uniform(g, Player::II));
    }
    for (long j = 0; j < k; ++j) {
      const std::vector<Rat>& target = iters[k - 1 - j];
      cert.levels_i.push_back(strategy_level(g, a, target, Player::I));
      cert.levels_ii.push_back(strategy_level(g, a, target, Player::II));
    }
    // Backward-induction best response against the protagonist table.
    std::vector<Rat> guar = indicator_rats(q.rhs);
    for (long j = k - 1; j >= 0; --j)
      guar = combine(g, until, q.lhs, q.rhs,
                     fixed_row_min(g, a, cert.levels_i[j], cert.levels_ii[j],
                                   guar));
    for (int s = 0; s < g.num_states(); ++s) {
      cert.guaranteed.push_back(rat_double(guar[s]));
      cert.computed_value.push_back(rat_double(iters[k][s]));
    }
    cert.kind = StrategyCertificate::Opt::Optimal;
    return cert;
  }

  // Unbounded: converge first, then extract memoryless moves from the
  // fixed-point games. Release admits optimal memoryless strategies; until
  // only eps-optimal ones.
  ValueFunction vf = value_of(g, a, q, opts);
  if (!vf.converged)
    throw UnconvergedError(
        "value iteration did not converge within the cap (residual " +
        std::to_string(vf.residual) + "); refusing to extract a strategy");
  if (until && eps <= 0)
    throw ModelError("unbounded until requires eps > 0");

  std::vector<Rat> f = to_rats(vf.values);
  cert.levels_i.push_back(strategy_level(g, a, f, Player::I));
  cert.levels_ii.push_back(strategy_level(g, a, f, Player::II));

  // Exact best response to the extracted memoryless protagonist: iterate
  // the one-sided operator to convergence (double-rounded between steps).
  std::vector<Rat> guar = indicator_rats(q.rhs);
  for (long n = 0; n < opts.max_iters; ++n) {
    std::vector<Rat> next =
        combine(g, until, q.lhs, q.rhs,
                fixed_row_min(g, a, cert.levels_i[0], cert.levels_ii[0], guar));
    double residual = 0;
    for (size_t s = 0; s < next.size(); ++s)
      residual = std::max(residual, std::abs(rat_double(next[s]) -
                                             rat_double(guar[s])));
    for (auto& v : next) v = rat_of_double(rat_double(v));
    guar = std::move(next);
    if (residual < opts.eps_vi) break;
  }
  for (int s = 0; s < g.num_states(); ++s) {
    cert.guaranteed.push_back(rat_double(guar[s]));
    cert.computed_value.push_back(vf.values[s]);
  }
  cert.kind = until ? StrategyCertificate::Opt::EpsOptimal
                    : StrategyCertificate::Opt::Optimal;
  cert.eps = until ? eps : 0;
  return cert;
}

DeterminacyReport determinacy_check(const Pgs& g, Coalition a,
                                    const PathQuery& q,
                                    const CheckOptions& opts) {
  DeterminacyReport rep;
  rep.protagonist = value_of(g, a, q, opts);
  rep.antagonist = value_of(g, coalition_complement(a), q.negated(), opts);
  for (int s = 0; s < g.num_states(); ++s)
    rep.max_deviation =
        std::max(rep.max_deviation,
                 std::abs(rep.protagonist.values[s] +
                          rep.antagonist.values[s] - 1.0));
  return rep;
}

}  // namespace pgs
