#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pgs/exec.hpp"
#include "pgs/logic.hpp"
#include "pgs/model.hpp"
#include "pgs/model_text.hpp"
#include "pgs/modelcheck.hpp"
#include "pgs/relation.hpp"
#include "pgs/simcheck.hpp"

#include "json.hpp"

namespace pgs {

using Json = nlohmann::ordered_json;

/// Exit codes: 0 ok, 1 property violated, 2 input error, 3 unconverged
/// within the iteration cap.
enum ExitCode { kOk = 0, kViolated = 1, kInputError = 2, kUnconverged = 3 };

struct CommandResult {
  Json report;
  int exit_code = kOk;
};

struct CommonOptions {
  CheckOptions check;
  SimOptions sim;
  int horizon = 20;
  std::size_t node_budget = 1000000;
  bool timing = false;
};

/// Report envelope shared by all commands; deterministic given inputs and
/// seeds (timing is only attached when explicitly requested).
Json report_envelope(const std::string& command, const CommonOptions& opts);

CommandResult cmd_check(const std::string& model_path,
                        const std::string& formula,
                        const std::optional<std::string>& state,
                        const CommonOptions& opts);

CommandResult cmd_value(const std::string& model_path,
                        const std::string& coalition,
                        const std::string& path_formula,
                        const CommonOptions& opts);

CommandResult cmd_sim(const std::string& model_a, const std::string& model_b,
                      const std::string& player, const std::string& mode,
                      const CommonOptions& opts);

CommandResult cmd_fwdsim(const std::string& model_a, const std::string& model_b,
                         const std::string& relation_path,
                         const std::string& player, const CommonOptions& opts);

CommandResult cmd_gen(const GenOptions& gen,
                      const std::optional<std::string>& out_path);

struct PreserveOptions {
  std::string mode = "forward";  // forward | bisim
  std::optional<std::string> formulas_path;
  int random_depth = 2;
  int random_count = 50;
  std::uint64_t seed = 1;
};

CommandResult cmd_preserve(const std::string& model_a,
                           const std::string& model_b,
                           const std::string& relation_path,
                           const std::string& player,
                           const PreserveOptions& popts,
                           const CommonOptions& opts);

// ---------------------------------------------------------------------------
// Preservation harness (library surface, used by cmd_preserve and tests)

struct PreserveOutcome {
  int checked = 0;
  int skipped_uncertain = 0;
  int skipped_fragment = 0;
  struct Violation {
    std::string formula;
    std::string left_verdict, right_verdict;
  };
  std::vector<Violation> violations;
};

/// Theorem-1 style check: for each formula in the coalition's fragment,
/// left |= phi must imply right |= phi (biconditional when `biconditional`).
/// Uncertain verdicts on either side are skipped and counted.
PreserveOutcome preserve_check(const Pgs& left, const Distribution& from_left,
                               const Pgs& right,
                               const Distribution& from_right,
                               const std::vector<StateFormulaPtr>& formulas,
                               bool biconditional, const CheckOptions& opts);

/// Verdict of "distribution satisfies": every support state Sat; any Unsat
/// makes it Unsat; otherwise Uncertain.
Verdict distribution_sat(const SatResult& sat, const Distribution& d);

/// Random formula samplers, grammar-directed and seeded.
std::vector<StateFormulaPtr> sample_a_patl_formulas(
    const std::vector<std::string>& props, Coalition coalition, int depth,
    int count, std::uint64_t seed);
std::vector<StateFormulaPtr> sample_l_i_plus_formulas(
    const std::vector<std::string>& props, int depth, int count,
    std::uint64_t seed);

namespace harness {

/// Splits one state into two copies with identical outgoing rows; incoming
/// mass is divided between the copies. The map copy -> original is a
/// functional simulation both ways (a bisimulation witness by duplication).
struct SplitModel {
  Pgs model;
  int original_state;  // in the source model
  int copy_state;      // index of the added copy in the split model
  /// copy/original correspondence as a relation split -> source
  RelationTable projection;
};
SplitModel split_state(const Pgs& g, int state, const Rat& share);

/// Coin-delay gadget pair: the left structure commits to one of n coin
/// states that then randomize; the right structure randomizes immediately
/// into outcome-committed states. Related by a genuinely forward (not
/// plain) simulation.
struct GadgetPair {
  Pgs left, right;
  ForwardRelationTable relation;  // verified by construction
};
GadgetPair coin_delay_gadget(int coins, int outcomes, std::uint64_t seed);

}  // namespace harness

}  // namespace pgs
