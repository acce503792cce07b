#pragma once

#include <vector>

#include "pgs/rational.hpp"

namespace pgs {

/// One-shot zero-sum game; the row player maximizes.
struct MatrixGame {
  std::vector<std::vector<double>> payoff;  // rectangular, nonempty
};

struct GameSolution {
  double value = 0;
  std::vector<double> row_strategy, col_strategy;
};

struct GameSolutionExact {
  Rat value;
  std::vector<Rat> row_strategy, col_strategy;
};

/// Exact maximin value and optimal mixed strategies. Vector games and 2x2
/// games short-circuit to closed forms; everything else goes through the
/// LP. Strategies are re-verified against the matrix before return, so a
/// solver bug turns into a loud failure instead of a wrong value.
GameSolutionExact solve_matrix_game_exact(
    const std::vector<std::vector<Rat>>& m);

/// The LP route without shortcuts (primal simplex, Bland pivot). Exposed so
/// tests can cross-check it against the 2x2 closed form.
GameSolutionExact solve_matrix_game_lp(const std::vector<std::vector<Rat>>& m);

/// Double facade over the exact solve. Returned strategies satisfy
/// min over pure columns of the row payoff >= value - 1e-12 and dually.
GameSolution matrix_game_value(const MatrixGame& game);

}  // namespace pgs
