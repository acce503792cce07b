#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "pgs/rational.hpp"

namespace pgs {

enum class Cmp { Lt, Gt, Le, Ge };

/// The paper's '~' on comparison symbols: swaps < with > and <= with >=.
Cmp flip_cmp(Cmp c);
bool cmp_is_lower_bound(Cmp c);  // > or >=
bool cmp_strict(Cmp c);          // > or <
std::string cmp_str(Cmp c);

/// Coalitions are restricted to the two-player reduction.
enum class Coalition { None, I, II, Both };
Coalition coalition_complement(Coalition c);
bool coalition_subset(Coalition sub, Coalition super);
std::string coalition_str(Coalition c);

struct StateFormula;
using StateFormulaPtr = std::shared_ptr<const StateFormula>;

struct PathFormula;
using PathFormulaPtr = std::shared_ptr<const PathFormula>;

/// Path formulas: next, until, release; bound -1 means unbounded. F/G sugar
/// desugars to until/release with true/false operands.
struct PathFormula {
  enum class Kind { Next, Until, Release };
  Kind kind;
  StateFormulaPtr lhs;  // unused for Next
  StateFormulaPtr rhs;
  long bound = -1;  // Next ignores; -1 = unbounded
};

struct StateFormula {
  enum class Kind { True, False, Prop, Not, And, Or, Strategic };
  Kind kind;
  std::string prop;          // Prop
  StateFormulaPtr lhs, rhs;  // Not uses lhs only
  Coalition coalition = Coalition::None;
  Cmp cmp = Cmp::Ge;
  Rat threshold;
  PathFormulaPtr path;
  int pos = -1;  // source position, -1 when synthesized
};

StateFormulaPtr f_true();
StateFormulaPtr f_false();
StateFormulaPtr f_prop(std::string name);
/// Folds double negation and constant operands.
StateFormulaPtr f_not(StateFormulaPtr f);
StateFormulaPtr f_and(StateFormulaPtr a, StateFormulaPtr b);
StateFormulaPtr f_or(StateFormulaPtr a, StateFormulaPtr b);
/// Strategic operator; a release body is rewritten into until through the
/// comparison duality, so release never appears under a strategic node.
StateFormulaPtr f_strategic(Coalition coal, Cmp cmp, Rat threshold,
                            PathFormulaPtr path);

PathFormulaPtr p_next(StateFormulaPtr f);
PathFormulaPtr p_until(StateFormulaPtr lhs, StateFormulaPtr rhs, long bound);
PathFormulaPtr p_release(StateFormulaPtr lhs, StateFormulaPtr rhs, long bound);

bool formulas_equal(const StateFormulaPtr& a, const StateFormulaPtr& b);
bool paths_equal(const PathFormulaPtr& a, const PathFormulaPtr& b);

struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, int pos)
      : std::runtime_error(msg), pos(pos) {}
  int pos;
};

/// Concrete grammar (ASCII canonical, a few unicode aliases accepted):
///   state := or; or := and ('|' and)*; and := unary ('&' unary)*
///   unary := '!' unary | 'true' | 'false' | ident | '(' state ')' | strat
///   strat := ('<<I>>'|'<<II>>'|'<<I,II>>'|'<<>>') '[' cmp number ']' path
///   path  := 'X' unary | ('F'|'G') bound? unary
///          | operand ('U'|'R') bound? operand | '(' path ')'
///   bound := '<=' integer
/// Thresholds are decimals or num/den rationals in [0,1].
StateFormulaPtr parse_state_formula(const std::string& text);
PathFormulaPtr parse_path_formula(const std::string& text);

std::string to_string(const StateFormulaPtr& f);
std::string to_string(const PathFormulaPtr& p);

/// Negation of a path formula, pushed to state level by the until/release
/// duality.
PathFormulaPtr negate_path(const PathFormulaPtr& p);

/// Lemma-1 dual of a strategic annotation: (cmp, a, psi) becomes
/// (~cmp, 1-a, not psi). Involutive.
struct Dualized {
  Cmp cmp;
  Rat threshold;
  PathFormulaPtr path;
};
Dualized dualize(Cmp cmp, const Rat& threshold, const PathFormulaPtr& path);

struct FragmentTag {
  enum class Kind { APatl, LIPlus, Full };
  Kind kind;
  Coalition coalition = Coalition::None;  // for APatl

  bool operator==(const FragmentTag&) const = default;
};

/// Reports every fragment the formula belongs to. A-PATL(A): negations only
/// on propositions, coalitions within A, comparisons in {>, >=}, unbounded
/// until restricted to '>'. L_I^+ allows negation anywhere with coalitions
/// within {I}.
std::vector<FragmentTag> classify_fragment(const StateFormulaPtr& f,
                                           Coalition a);

}  // namespace pgs
