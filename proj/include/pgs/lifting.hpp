#pragma once

#include <optional>
#include <tuple>
#include <vector>

#include "pgs/distribution.hpp"
#include "pgs/relation.hpp"

namespace pgs {

/// Coupling between two distributions: w(s,t) > 0 only on related pairs,
/// rows sum to the left distribution, columns to the right one.
struct WeightFunction {
  std::vector<std::tuple<int, int, Rat>> entries;  // (left, right, weight)

  Rat weight(int left, int right) const;
  WeightFunction transpose() const;
};

/// Membership test for the weight-function lifting of a state relation:
/// decides whether left R-bar right, returning a witness coupling. Solved
/// exactly as bipartite transportation feasibility (max flow equals one).
/// Every witness is re-verified by check_weight_function before return.
std::optional<WeightFunction> lift_check(const RelationTable& r,
                                         const Distribution& left,
                                         const Distribution& right);

/// Independent witness checker: the three weight-function conditions,
/// verified exactly. Deliberately knows nothing about the flow solver.
bool check_weight_function(const RelationTable& r, const Distribution& left,
                           const Distribution& right,
                           const WeightFunction& w);

/// Witness for the forward lifting: an index list (p_i, s_i, table pair i)
/// with sum p_i = 1, sum p_i * point(s_i) = left, sum p_i * Theta_i = right.
struct ForwardLiftWitness {
  struct Term {
    Rat p;
    int left_state;
    int table_index;
  };
  std::vector<Term> terms;
};

/// Membership test for the forward lifting of a state-to-distribution
/// relation; exact linear feasibility (rational simplex phase 1), witness
/// re-verified by check_forward_witness before return.
std::optional<ForwardLiftWitness> forward_lift_check(
    const ForwardRelationTable& table, const Distribution& left,
    const Distribution& right);

bool check_forward_witness(const ForwardRelationTable& table,
                           const Distribution& left, const Distribution& right,
                           const ForwardLiftWitness& witness);

/// Convex combination of couplings (witnesses the lifted mixture).
WeightFunction mix_weight_functions(const std::vector<WeightFunction>& ws,
                                    const std::vector<Rat>& ps);

/// Given a coupling w for (left, right) and a decomposition of right into
/// sum p_i * parts[i], produces the matching decomposition of left:
/// left_i(s) = sum_t w(s,t) * parts[i](t) / right(t).
std::vector<Distribution> decompose_left(const WeightFunction& w,
                                         const Distribution& right,
                                         const std::vector<Distribution>& parts);

/// Transitivity composition: w(s,u) = sum_t w1(s,t) * w2(t,u) / mid(t).
WeightFunction compose_weight_functions(const WeightFunction& w1,
                                        const WeightFunction& w2,
                                        const Distribution& mid);

}  // namespace pgs
