#include "pgs/simplex.hpp"

namespace pgs {

void EqSystem::add_row(const std::vector<std::pair<int, Rat>>& coeffs,
                       Rat rhs) {
  std::vector<Rat> row(num_vars_, Rat(0));
  for (auto& [var, c] : coeffs) {
    if (var < 0 || var >= num_vars_) throw SolverError("bad variable index");
    row[var] += c;
  }
  rows_.push_back(std::move(row));
  rhs_.push_back(std::move(rhs));
}

namespace {

// Dense tableau: rows 0..m-1 are constraints, the extra row holds reduced
// costs (maximization form: pivot while some reduced cost is positive).
// Bland's rule on both the entering and leaving choices; exact rationals, so
// termination is guaranteed and there are no tolerance decisions anywhere.
class Tableau {
 public:
  Tableau(int m, int cols) : m_(m), cols_(cols), cells_((m + 1) * cols, Rat(0)) {}

  Rat& at(int i, int j) { return cells_[i * cols_ + j]; }
  const Rat& at(int i, int j) const { return cells_[i * cols_ + j]; }
  int obj_row() const { return m_; }

  void pivot(int row, int col) {
    Rat p = at(row, col);
    for (int j = 0; j < cols_; ++j) at(row, j) /= p;
    for (int i = 0; i <= m_; ++i) {
      if (i == row) continue;
      Rat f = at(i, col);
      if (sgn(f) == 0) continue;
      for (int j = 0; j < cols_; ++j) at(i, j) -= f * at(row, j);
    }
  }

  // Runs primal simplex over the given eligible columns. Returns false when
  // an entering column proved the problem unbounded.
  bool run(std::vector<int>& basis, int num_pivot_cols, int rhs_col) {
    long pivots = 0;
    for (;;) {
      if (++pivots > 200000)
        throw SolverError("simplex exceeded the pivot budget");
      int enter = -1;
      for (int j = 0; j < num_pivot_cols; ++j) {
        if (sgn(at(m_, j)) > 0) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;
      int leave = -1;
      Rat best;
      for (int i = 0; i < m_; ++i) {
        if (sgn(at(i, enter)) <= 0) continue;
        Rat ratio = at(i, rhs_col) / at(i, enter);
        if (leave < 0 || ratio < best ||
            (ratio == best && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
      basis[leave] = enter;
    }
  }

 private:
  int m_, cols_;
  std::vector<Rat> cells_;
};

}  // namespace

std::optional<std::vector<Rat>> simplex_feasible(const EqSystem& sys) {
  const int m = sys.num_rows();
  const int n = sys.num_vars();
  const int rhs = n + m;  // columns: structural, artificial, rhs
  Tableau t(m, rhs + 1);
  for (int i = 0; i < m; ++i) {
    int flip = sgn(sys.rhs(i)) < 0 ? -1 : 1;
    for (int j = 0; j < n; ++j) t.at(i, j) = flip * sys.row(i)[j];
    t.at(i, n + i) = 1;
    t.at(i, rhs) = flip * sys.rhs(i);
  }
  // Maximize -(sum of artificials); reduced costs start as column sums.
  for (int j = 0; j <= rhs; ++j) {
    if (j >= n && j < rhs) continue;
    Rat sum(0);
    for (int i = 0; i < m; ++i) sum += t.at(i, j);
    t.at(t.obj_row(), j) = sum;
  }

  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) basis[i] = n + i;
  // Artificials never re-enter: pivot only over structural columns.
  if (!t.run(basis, n, rhs)) throw SolverError("phase 1 unbounded");

  if (sgn(t.at(t.obj_row(), rhs)) != 0) return std::nullopt;
  std::vector<Rat> x(n, Rat(0));
  for (int i = 0; i < m; ++i)
    if (basis[i] < n) x[basis[i]] = t.at(i, rhs);
  return x;
}

LpSolution simplex_max(const std::vector<std::vector<Rat>>& a,
                       const std::vector<Rat>& b, const std::vector<Rat>& c) {
  const int m = static_cast<int>(a.size());
  const int n = static_cast<int>(c.size());
  for (const Rat& bi : b)
    if (sgn(bi) < 0) throw SolverError("simplex_max requires b >= 0");
  const int rhs = n + m;
  Tableau t(m, rhs + 1);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) t.at(i, j) = a[i][j];
    t.at(i, n + i) = 1;
    t.at(i, rhs) = b[i];
  }
  for (int j = 0; j < n; ++j) t.at(t.obj_row(), j) = c[j];

  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) basis[i] = n + i;
  if (!t.run(basis, n + m, rhs)) throw SolverError("LP unbounded");

  LpSolution sol;
  // The objective row's rhs cell accumulates the negated objective.
  sol.value = -t.at(t.obj_row(), rhs);
  sol.x.assign(n, Rat(0));
  for (int i = 0; i < m; ++i)
    if (basis[i] < n) sol.x[basis[i]] = t.at(i, rhs);
  sol.row_duals.resize(m);
  for (int i = 0; i < m; ++i) sol.row_duals[i] = -t.at(t.obj_row(), n + i);
  return sol;
}

}  // namespace pgs
