#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pgs/lifting.hpp"
#include "pgs/model.hpp"
#include "pgs/modelcheck.hpp"
#include "pgs/relation.hpp"
#include "pgs/rng.hpp"

namespace pgs {

struct ExecError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Node of a probabilistic execution: a finite history, its last state, and
/// its cone probability (exact).
struct ExecNode {
  int parent = -1;  // -1 for roots
  int state = 0;
  int depth = 0;
  Rat mass;
  std::vector<int> children;
};

/// Depth-bounded unfolding of a strategy pair from an initial distribution.
/// Histories are explicit (a tree, not a DAG); node masses along any level
/// sum to exactly one.
class ExecutionTree {
 public:
  const Pgs* model = nullptr;
  Distribution root;
  int horizon = 0;
  std::vector<ExecNode> nodes;                    // level by level
  std::vector<std::pair<int, int>> level_bounds;  // [begin, end) per depth
  bool strategies_memoryless = false;
  /// Positive-mass transitions of the induced chain when both strategies
  /// are memoryless; used to prune provably dead mass in bounds.
  std::vector<std::vector<char>> chain_edge;

  std::vector<int> history(int node) const;
  /// -1 when the history is absent (zero mass or beyond horizon).
  int find(const std::vector<int>& hist) const;
  /// Distribution over last states at a level.
  Distribution level_margin(int depth) const;
  /// Distribution over nodes of a level (node index to mass).
  std::vector<std::pair<int, Rat>> level_nodes(int depth) const;
};

ExecutionTree build_execution(const Pgs& g, const HistoryStrategy& strat_i,
                              const HistoryStrategy& strat_ii,
                              const Distribution& from, int horizon,
                              size_t node_budget = 1000000);

/// Cone probability of a history: the product along the recursion. Histories
/// through zero-mass edges return zero; unknown state names are the caller's
/// problem (ids are validated).
Rat cone_probability(const ExecutionTree& tree, const std::vector<int>& hist);

/// Per-level split into continue / satisfied / failed parts, the maximal
/// triple sequence of the bounded-unfolding characterization. Masses are
/// conditional: alpha_{i,l} is relative to the mass that continued past
/// level i-1.
struct TripleDecomposition {
  struct Level {
    Rat alpha_continue, alpha_sat, alpha_fail;
    /// Node-indexed conditional distributions; empty when alpha is zero.
    std::vector<std::pair<int, Rat>> continue_nodes, sat_nodes, fail_nodes;
  };
  std::vector<Level> levels;
};

struct PathProbability {
  Rat lower, upper;
  TripleDecomposition decomposition;
};

/// Exact satisfaction probability of a path query with proposition-level
/// arguments. Bounded queries are exact (lower == upper); unbounded ones
/// report the satisfied mass and the mass still undecided at the horizon,
/// after moving provably dead continue mass (no path to the target through
/// allowed states, under the fixed strategies when memoryless) to failed.
PathProbability exact_path_probability(const ExecutionTree& tree,
                                       const PathQuery& q, int horizon);

struct MonteCarloResult {
  double estimate = 0;
  double ci_low = 0, ci_high = 1;  // Wilson 95% interval
  long hits = 0;
  long samples = 0;
  std::uint64_t seed = 0;
  int horizon = 0;
};

/// Seeded i.i.d. play sampling; deterministic given the seed (rational CDF
/// inversion, no floating-point in the sampling path). Unbounded queries
/// are evaluated on the horizon-truncated play.
MonteCarloResult monte_carlo_path_probability(
    const Pgs& g, const HistoryStrategy& strat_i,
    const HistoryStrategy& strat_ii, const Distribution& from,
    const PathQuery& q, long samples, int horizon, std::uint64_t seed);

/// Output of the level-by-level strategy transfer across a verified forward
/// simulation: the constructed right-hand protagonist and left-hand
/// antagonist level tables, plus a per-level certificate relating the two
/// executions' state margins by forward lifting.
struct TransferResult {
  std::vector<Level1Strategy> prot_levels_right;
  std::vector<Level1Strategy> anti_levels_left;
  struct LevelCert {
    Distribution left_margin, right_margin;
    ForwardLiftWitness witness;
  };
  std::vector<LevelCert> certificate;  // levels 0..horizon
  HistoryStrategy prot_right() const;
  HistoryStrategy anti_left() const;
};

/// Level-by-level construction: given left-protagonist and right-antagonist
/// strategies and an initial pair related by the (verified) forward table,
/// builds the matching right-protagonist and left-antagonist strategies so
/// that the two depth-h executions are related level by level. Infeasibility
/// of an internal step means the table was not actually a forward
/// simulation and raises SolverError.
TransferResult transfer_strategies(const Pgs& left, const Pgs& right,
                                   const ForwardRelationTable& rf,
                                   const Distribution& from_left,
                                   const Distribution& from_right,
                                   const HistoryStrategy& prot_left,
                                   const HistoryStrategy& anti_right,
                                   int horizon, Player protagonist = Player::I);

}  // namespace pgs
