#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pgs/distribution.hpp"

namespace pgs {

enum class Player { I, II };

struct ModelError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Raw model description as it comes out of the text parser; ids are names,
/// nothing has been checked yet.
struct RawModel {
  std::vector<std::string> actions_i, actions_ii;
  std::vector<std::string> props;
  struct State {
    std::string name;
    std::vector<std::string> labels;
  };
  std::vector<State> states;
  std::string initial;
  struct Trans {
    std::string state, action_i, action_ii;  // "*" = wildcard
    std::vector<std::pair<std::string, std::string>> successors;  // name:prob
    int line = 0;
  };
  std::vector<Trans> transitions;
};

/// Two-player probabilistic game structure. States, actions and propositions
/// are interned strings; every index below refers to insertion order. The
/// transition table is total by construction (validate_model rejects gaps).
/// Immutable after construction.
class Pgs {
 public:
  std::vector<std::string> states, actions_i, actions_ii, props;
  std::vector<std::vector<int>> labels;  // per state, sorted prop ids
  int initial = 0;

  int num_states() const { return static_cast<int>(states.size()); }
  int num_actions(Player p) const {
    return static_cast<int>(p == Player::I ? actions_i.size()
                                           : actions_ii.size());
  }
  const std::vector<std::string>& action_names(Player p) const {
    return p == Player::I ? actions_i : actions_ii;
  }

  const Distribution& delta(int s, int a, int b) const {
    return delta_[(static_cast<size_t>(s) * actions_i.size() + a) *
                      actions_ii.size() +
                  b];
  }

  int state_id(const std::string& name) const;  // -1 if unknown
  int prop_id(const std::string& name) const;
  int action_id(Player p, const std::string& name) const;

  bool has_label(int s, int prop) const;
  bool labels_equal(int s, const Pgs& other, int t) const {
    return label_key(s) == other.label_key(t);
  }
  /// Canonical label set as prop names (labels compare across structures by
  /// name, not by id).
  std::vector<std::string> label_key(int s) const;

  friend Pgs validate_model(const RawModel& raw);

 private:
  std::vector<Distribution> delta_;  // [s][a][b] flattened
};

/// Checks the raw description: known references, totality of the transition
/// table, and each row a genuine distribution. Action availability is the
/// model author's business (unavailable actions are aliased to available
/// ones); the validator only enforces totality.
Pgs validate_model(const RawModel& raw);

/// A mixed move: distribution over one player's actions.
using MixedMove = Distribution;

/// Per-state mixed move for one player.
struct Level1Strategy {
  std::vector<MixedMove> moves;

  const MixedMove& at(int state) const { return moves.at(state); }
  static Level1Strategy uniform(const Pgs& g, Player p);
  static Level1Strategy pure(const Pgs& g, Player p, int action);
};

/// History-dependent strategy: finite state sequences to mixed moves.
/// Realized as a memoryless wrapper, a per-level table, or a programmatic
/// rule with a declared horizon.
class HistoryStrategy {
 public:
  static HistoryStrategy memoryless(Level1Strategy s);
  /// levels[k] answers histories of length k+1; histories beyond the table
  /// reuse the last level.
  static HistoryStrategy level_table(std::vector<Level1Strategy> levels);
  static HistoryStrategy rule(
      std::function<MixedMove(const std::vector<int>&)> fn, int horizon);

  MixedMove move(const std::vector<int>& history) const;
  bool is_memoryless() const { return kind_ == Kind::Memoryless; }
  const Level1Strategy* memoryless_strategy() const {
    return kind_ == Kind::Memoryless ? &levels_[0] : nullptr;
  }
  /// -1 when total on all histories.
  int horizon() const { return horizon_; }

 private:
  enum class Kind { Memoryless, Table, Rule };
  Kind kind_ = Kind::Memoryless;
  std::vector<Level1Strategy> levels_;
  std::function<MixedMove(const std::vector<int>&)> fn_;
  int horizon_ = -1;
};

/// Alternating sequence s0 a1 s1 a2 ... ; every step must have positive mass.
struct Play {
  std::vector<int> states;
  std::vector<std::pair<int, int>> joint_actions;  // (action_i, action_ii)

  bool valid_in(const Pgs& g) const;
  size_t length() const { return joint_actions.size(); }
};

/// One joint step from s: sum over joint actions of
/// move_i(a) * move_ii(b) * delta(s,a,b). Exact.
Distribution joint_step(const Pgs& g, int s, const MixedMove& move_i,
                        const MixedMove& move_ii);

/// Lift of joint_step to a state distribution with per-state strategies.
Distribution lifted_step(const Pgs& g, const Distribution& from,
                         const Level1Strategy& strat_i,
                         const Level1Strategy& strat_ii);

/// Pointwise mixture of level-1 strategies.
Level1Strategy mix_strategies(const std::vector<Level1Strategy>& strategies,
                              const std::vector<Rat>& weights);

struct ReweightedMix {
  Level1Strategy strategy;
  /// States where the combined mass sum(p_i * dist_i(s)) was zero; the move
  /// there is the first strategy's move and is unconstrained.
  std::vector<int> unconstrained;
};

/// Distribution-reweighted mixture: result(s) is the mixture of
/// strategies[i](s) with weights p_i * dists[i](s), normalized.
ReweightedMix reweighted_mix(const std::vector<Level1Strategy>& strategies,
                             const std::vector<Rat>& weights,
                             const std::vector<Distribution>& dists);

}  // namespace pgs
