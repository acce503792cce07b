#include "pgs/matrix_game.hpp"

#include <algorithm>

#include "pgs/simplex.hpp"

namespace pgs {

namespace {

void verify_solution(const std::vector<std::vector<Rat>>& m,
                     const GameSolutionExact& sol) {
  const size_t rows = m.size(), cols = m[0].size();
  Rat sum_r(0), sum_c(0);
  for (const Rat& x : sol.row_strategy) {
    if (sgn(x) < 0) throw SolverError("matrix game: negative row weight");
    sum_r += x;
  }
  for (const Rat& y : sol.col_strategy) {
    if (sgn(y) < 0) throw SolverError("matrix game: negative col weight");
    sum_c += y;
  }
  if (sum_r != 1 || sum_c != 1)
    throw SolverError("matrix game: strategies do not sum to 1");
  for (size_t j = 0; j < cols; ++j) {
    Rat payoff(0);
    for (size_t i = 0; i < rows; ++i) payoff += sol.row_strategy[i] * m[i][j];
    if (payoff < sol.value)
      throw SolverError("matrix game: row strategy misses the value");
  }
  for (size_t i = 0; i < rows; ++i) {
    Rat payoff(0);
    for (size_t j = 0; j < cols; ++j) payoff += m[i][j] * sol.col_strategy[j];
    if (payoff > sol.value)
      throw SolverError("matrix game: column strategy misses the value");
  }
}

std::vector<Rat> pure(size_t n, size_t at) {
  std::vector<Rat> v(n, Rat(0));
  v[at] = 1;
  return v;
}

}  // namespace

GameSolutionExact solve_matrix_game_lp(const std::vector<std::vector<Rat>>& m) {
  const size_t rows = m.size(), cols = m[0].size();
  // Shift entries positive so the game value is positive; then
  // max 1.z st M'z <= 1 solves the column player's normalized problem and
  // the row duals recover the row strategy.
  Rat shift = m[0][0];
  for (const auto& row : m)
    for (const Rat& e : row) shift = std::min(shift, e);
  shift = Rat(1) - shift;

  std::vector<std::vector<Rat>> shifted(rows, std::vector<Rat>(cols));
  for (size_t i = 0; i < rows; ++i)
    for (size_t j = 0; j < cols; ++j) shifted[i][j] = m[i][j] + shift;

  LpSolution lp = simplex_max(shifted, std::vector<Rat>(rows, Rat(1)),
                              std::vector<Rat>(cols, Rat(1)));
  if (sgn(lp.value) <= 0) throw SolverError("matrix game: degenerate LP");

  GameSolutionExact sol;
  Rat inv = 1 / lp.value;
  sol.value = inv - shift;
  sol.col_strategy.resize(cols);
  for (size_t j = 0; j < cols; ++j) sol.col_strategy[j] = lp.x[j] * inv;
  sol.row_strategy.resize(rows);
  for (size_t i = 0; i < rows; ++i) sol.row_strategy[i] = lp.row_duals[i] * inv;
  verify_solution(m, sol);
  return sol;
}

GameSolutionExact solve_matrix_game_exact(
    const std::vector<std::vector<Rat>>& m) {
  if (m.empty() || m[0].empty()) throw SolverError("matrix game: empty matrix");
  const size_t rows = m.size(), cols = m[0].size();
  GameSolutionExact sol;

  if (rows == 1) {
    size_t best = 0;
    for (size_t j = 1; j < cols; ++j)
      if (m[0][j] < m[0][best]) best = j;
    sol = {m[0][best], pure(1, 0), pure(cols, best)};
    verify_solution(m, sol);
    return sol;
  }
  if (cols == 1) {
    size_t best = 0;
    for (size_t i = 1; i < rows; ++i)
      if (m[i][0] > m[best][0]) best = i;
    sol = {m[best][0], pure(rows, best), pure(1, 0)};
    verify_solution(m, sol);
    return sol;
  }
  if (rows == 2 && cols == 2) {
    // Saddle point first, otherwise the closed form for fully mixed play.
    for (size_t i = 0; i < 2; ++i)
      for (size_t j = 0; j < 2; ++j) {
        bool col_max = m[i][j] >= m[1 - i][j];
        bool row_min = m[i][j] <= m[i][1 - j];
        if (col_max && row_min) {
          sol = {m[i][j], pure(2, i), pure(2, j)};
          verify_solution(m, sol);
          return sol;
        }
      }
    const Rat &a = m[0][0], &b = m[0][1], &c = m[1][0], &d = m[1][1];
    Rat den = a - b - c + d;
    Rat x0 = (d - c) / den, y0 = (d - b) / den;
    sol.value = (a * d - b * c) / den;
    sol.row_strategy = {x0, 1 - x0};
    sol.col_strategy = {y0, 1 - y0};
    verify_solution(m, sol);
    return sol;
  }
  return solve_matrix_game_lp(m);
}

GameSolution matrix_game_value(const MatrixGame& game) {
  const auto& payoff = game.payoff;
  if (payoff.empty() || payoff[0].empty())
    throw SolverError("matrix game: empty matrix");
  std::vector<std::vector<Rat>> m(payoff.size());
  for (size_t i = 0; i < payoff.size(); ++i) {
    if (payoff[i].size() != payoff[0].size())
      throw SolverError("matrix game: ragged matrix");
    for (double e : payoff[i]) m[i].push_back(rat_of_double(e));
  }
  GameSolutionExact exact = solve_matrix_game_exact(m);

  GameSolution sol;
  sol.value = rat_double(exact.value);
  for (const Rat& x : exact.row_strategy)
    sol.row_strategy.push_back(rat_double(x));
  for (const Rat& y : exact.col_strategy)
    sol.col_strategy.push_back(rat_double(y));

  // Double-precision re-verification of the published contract.
  for (size_t j = 0; j < payoff[0].size(); ++j) {
    double p = 0;
    for (size_t i = 0; i < payoff.size(); ++i)
      p += sol.row_strategy[i] * payoff[i][j];
    if (p < sol.value - 1e-12)
      throw SolverError("matrix game: row re-verification failed");
  }
  for (size_t i = 0; i < payoff.size(); ++i) {
    double p = 0;
    for (size_t j = 0; j < payoff[0].size(); ++j)
      p += payoff[i][j] * sol.col_strategy[j];
    if (p > sol.value + 1e-12)
      throw SolverError("matrix game: column re-verification failed");
  }
  return sol;
}

}  // namespace pgs
