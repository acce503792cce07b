#pragma once

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "pgs/rational.hpp"

namespace pgs {

struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Equality-constrained system A x = b with x >= 0, built row by row from
/// sparse coefficient lists.
class EqSystem {
 public:
  explicit EqSystem(int num_vars) : num_vars_(num_vars) {}

  void add_row(const std::vector<std::pair<int, Rat>>& coeffs, Rat rhs);

  int num_vars() const { return num_vars_; }
  int num_rows() const { return static_cast<int>(rows_.size()); }
  const std::vector<Rat>& row(int i) const { return rows_[i]; }
  const Rat& rhs(int i) const { return rhs_[i]; }

 private:
  int num_vars_;
  std::vector<std::vector<Rat>> rows_;
  std::vector<Rat> rhs_;
};

/// Exact phase-1 simplex (Bland's rule). Returns a feasible point or nullopt
/// when the system has none.
std::optional<std::vector<Rat>> simplex_feasible(const EqSystem& sys);

struct LpSolution {
  Rat value;
  std::vector<Rat> x;
  std::vector<Rat> row_duals;  // one per constraint row
};

/// Exact primal simplex for max c.x subject to A x <= b, x >= 0, with b >= 0
/// (the all-slack basis is feasible). Throws on unbounded problems.
LpSolution simplex_max(const std::vector<std::vector<Rat>>& a,
                       const std::vector<Rat>& b, const std::vector<Rat>& c);

}  // namespace pgs
