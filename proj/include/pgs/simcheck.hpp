#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pgs/lifting.hpp"
#include "pgs/model.hpp"
#include "pgs/relation.hpp"
#include "pgs/rng.hpp"

namespace pgs {

/// joint_step with explicit protagonist/antagonist roles: when the
/// protagonist is player II the move arguments are swapped back into the
/// model's (I, II) order.
Distribution joint_step_roles(const Pgs& g, int s, Player protagonist,
                              const MixedMove& prot_move,
                              const MixedMove& anti_move);

struct SimOptions {
  /// Sampled mixed protagonist moves per pair trying to falsify the mixed
  /// condition on top of the exact pure-move decision.
  int refute_samples = 64;
  std::uint64_t seed = 1;
  /// Cap on antagonist pure assignments enumerated per forward pair.
  long max_assignments = 4096;
};

/// Certificate for one pair and one protagonist move: the witness move in
/// the right structure and, per pure antagonist choice there, the
/// responding move in the left structure plus the weight-function coupling
/// of the two successor distributions.
struct LocalCertificate {
  MixedMove prot_move_right;
  struct Response {
    MixedMove anti_move_left;
    WeightFunction coupling;
  };
  std::vector<Response> responses;  // indexed by antagonist pure action
};

/// Decides the one-step simulation condition at (s, s') for one fixed
/// protagonist move (a pure action or a sampled mixed move): one exact
/// linear feasibility problem whose variables are the right-hand
/// protagonist move and, per pure antagonist action, a left-hand response
/// move plus a weight function over r-pairs. Antagonist quantification over
/// mixed moves reduces to pure actions by convexity of the lifting.
std::optional<LocalCertificate> local_sim_step(const Pgs& left,
                                               const Pgs& right, int s,
                                               int s_right,
                                               const RelationTable& r,
                                               Player protagonist,
                                               const MixedMove& prot_move);

struct LocalResult {
  bool ok = false;
  int failing_action = -1;       // pure protagonist action that failed
  bool mixed_refuted = false;    // a sampled mixed move failed
  std::vector<LocalCertificate> certificates;  // one per pure action when ok
};

/// Runs local_sim_step over every pure protagonist action (the decided
/// condition) and over sampled mixed moves (the refutation pass).
LocalResult local_sim_condition(const Pgs& left, const Pgs& right, int s,
                                int s_right, const RelationTable& r,
                                Player protagonist, const SimOptions& opts,
                                SplitMix64& rng);

/// Greatest relation closed under the local condition, starting from label
/// equality; pairs are re-examined in sorted order until a full round makes
/// no deletion.
RelationTable compute_simulation(const Pgs& left, const Pgs& right,
                                 Player protagonist,
                                 const SimOptions& opts = {});

/// A candidate relation is a simulation iff every pair passes the local
/// condition with the relation itself as the lifting target.
struct VerifyResult {
  bool ok = true;
  int fail_left = -1, fail_right = -1;
  int failing_action = -1;
  std::string reason;
};
VerifyResult verify_simulation(const Pgs& left, const Pgs& right,
                               const RelationTable& r, Player protagonist,
                               const SimOptions& opts = {});

/// Pairs must pass the local condition in both directions each round;
/// symmetric when both structures coincide.
RelationTable compute_bisimulation(const Pgs& left, const Pgs& right,
                                   Player protagonist,
                                   const SimOptions& opts = {});

/// Certificate for the forward condition at (s, target): per-state witness
/// moves on the target's support and responses per pure antagonist
/// assignment.
struct ForwardCertificate {
  std::vector<std::pair<int, MixedMove>> prot_moves_right;  // per support state
  struct Response {
    std::vector<int> assignment;  // antagonist pure action per support state
    MixedMove anti_move_left;
    ForwardLiftWitness witness;
  };
  std::vector<Response> responses;
};

enum class ForwardFailure { None, LabelMismatch, StepInfeasible };

struct ForwardLocalResult {
  bool ok = false;
  ForwardFailure failure = ForwardFailure::None;
  int failing_action = -1;
  std::vector<ForwardCertificate> certificates;
};

/// Forward condition for one fixed protagonist move.
std::optional<ForwardCertificate> local_forward_step(
    const Pgs& left, const Pgs& right, int s, const Distribution& target,
    const ForwardRelationTable& rf, Player protagonist,
    const MixedMove& prot_move, const SimOptions& opts = {});

/// Forward condition over all pure protagonist actions; label mismatches
/// are reported distinctly from step infeasibility.
ForwardLocalResult local_forward_condition(const Pgs& left, const Pgs& right,
                                           int s, const Distribution& target,
                                           const ForwardRelationTable& rf,
                                           Player protagonist,
                                           const SimOptions& opts = {});

struct ForwardVerifyResult {
  bool ok = true;
  int failing_pair = -1;  // index into the table
  ForwardFailure failure = ForwardFailure::None;
  int failing_action = -1;
  std::string reason;
};

/// Checks every pair of a candidate forward relation against the table
/// itself; on success the table is a probabilistic alternating forward
/// simulation (under the pure-move protagonist condition).
ForwardVerifyResult verify_forward_simulation(const Pgs& left,
                                              const Pgs& right,
                                              const ForwardRelationTable& rf,
                                              Player protagonist,
                                              const SimOptions& opts = {});

/// Lemma-11 embedding: (s, t) becomes (s, point(t)).
ForwardRelationTable embed_sim_as_forward(const RelationTable& r);

/// Bounded heuristic search for a forward simulation candidate: seeds pairs
/// from label equality and n-step successor distributions (n <= 3), then
/// prunes to a verifiable subset. Not a decision procedure.
ForwardRelationTable suggest_forward_candidates(const Pgs& left,
                                                const Pgs& right,
                                                Player protagonist,
                                                int max_depth = 3);

}  // namespace pgs
