#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pgs/logic.hpp"
#include "pgs/matrix_game.hpp"
#include "pgs/model.hpp"

namespace pgs {

struct UnconvergedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CheckOptions {
  double eps_vi = 1e-9;
  long max_iters = 100000;
  /// Bounded operators up to this bound are evaluated in exact rationals.
  long exact_bound_max = 16;
  unsigned long long seed = 1;

  /// Three-valued comparison band around thresholds.
  double band() const { return 10 * eps_vi; }
};

/// Per-state values in [0,1] plus convergence diagnostics. The residual is
/// the sup-norm change of the last iteration; an unconverged result is
/// always flagged, never silently returned.
struct ValueFunction {
  std::vector<double> values;
  double residual = 0;
  long iterations = 0;
  bool converged = true;
};

/// Path formula with its state arguments already resolved to state sets.
struct PathQuery {
  PathFormula::Kind kind = PathFormula::Kind::Until;
  long bound = -1;                // -1 = unbounded; ignored for Next
  std::vector<char> lhs, rhs;    // indicators over states; Next uses rhs

  static PathQuery next(std::vector<char> target);
  static PathQuery until(std::vector<char> lhs, std::vector<char> rhs,
                         long bound);
  static PathQuery release(std::vector<char> lhs, std::vector<char> rhs,
                           long bound);
  PathQuery negated() const;
};

/// Quantitative predecessor: per state, the value of the one-shot matrix
/// game over expected continuation values. Coalition None minimizes over
/// pure joint actions, Both maximizes; I and II solve the game with the
/// protagonist as row player.
ValueFunction ppre(const Pgs& g, Coalition a, const std::vector<double>& f);
std::vector<Rat> ppre_exact(const Pgs& g, Coalition a,
                            const std::vector<Rat>& f);

/// Fixed-point evaluation of <A>psi per Appendix-style unfoldings: one ppre
/// for next, exactly k unfoldings for bounded operators, value iteration
/// from the bounded-0 seed for unbounded until (least fixed point) and
/// release (greatest fixed point).
ValueFunction value_of(const Pgs& g, Coalition a, const PathQuery& q,
                       const CheckOptions& opts = {});

/// Exact-rational route for next/bounded operators.
std::vector<Rat> value_of_exact(const Pgs& g, Coalition a, const PathQuery& q);

enum class Verdict { Sat, Unsat, Uncertain };

struct SatResult {
  std::vector<Verdict> verdicts;
  /// Attached when an unbounded until was compared with >=; the supremum
  /// may not be attained, so a >= threshold at the exact value can be
  /// unachievable.
  bool nonattainment_note = false;
  bool any_unconverged = false;
  std::vector<std::string> notes;
};

/// Three-valued PATL satisfaction: satisfied/violated only when the value
/// clears the threshold with margin > band; boundary states are reported
/// as uncertain rather than guessed. Bounded operators with small bounds
/// are decided exactly and never land in the band.
SatResult patl_sat(const Pgs& g, const StateFormulaPtr& f,
                   const CheckOptions& opts = {});

struct StrategyCertificate {
  Coalition coalition;
  bool memoryless = true;
  /// Memoryless: one level. Bounded: level j answers histories of length
  /// j+1. Both players' extracted strategies are kept (protagonist
  /// maximizes, antagonist minimizes).
  std::vector<Level1Strategy> levels_i, levels_ii;
  /// Best-response value of the extracted protagonist strategy, per state
  /// (what the strategy actually guarantees against any counterplay).
  std::vector<double> guaranteed;
  enum class Opt { Optimal, EpsOptimal } kind = Opt::Optimal;
  double eps = 0;
  std::vector<double> computed_value;

  HistoryStrategy strategy(Player p) const;
};

/// Strategy extraction per the fixed-point construction; eps only matters
/// for unbounded until (where only eps-optimal strategies exist). Throws
/// UnconvergedError when the underlying value iteration hit its cap.
StrategyCertificate extract_strategy(const Pgs& g, Coalition a,
                                     const PathQuery& q, double eps,
                                     const CheckOptions& opts = {});

struct DeterminacyReport {
  ValueFunction protagonist;  // <A> psi
  ValueFunction antagonist;   // <complement(A)> not psi
  double max_deviation = 0;   // max_s |p(s) + a(s) - 1|
};

DeterminacyReport determinacy_check(const Pgs& g, Coalition a,
                                    const PathQuery& q,
                                    const CheckOptions& opts = {});

/// Resolves a path formula's state arguments against a model via patl_sat.
/// Uncertain states resolve pessimistically (treated as unsatisfied) and
/// are reported in the second member.
std::pair<PathQuery, bool> resolve_path_query(const Pgs& g,
                                              const PathFormulaPtr& path,
                                              const CheckOptions& opts = {});

}  // namespace pgs
