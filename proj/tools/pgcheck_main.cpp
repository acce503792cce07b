#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "pgs/cli.hpp"

namespace {

using pgs::CommandResult;
using pgs::CommonOptions;

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->fallthrough();
  cmd->add_option("--tol", opts.check.eps_vi, "value-iteration residual");
  cmd->add_option("--max-iters", opts.check.max_iters, "iteration cap");
  cmd->add_option("--seed", opts.check.seed, "seed for all sampling");
  cmd->add_option("--horizon", opts.horizon, "execution horizon");
  cmd->add_option("--node-budget", opts.node_budget, "execution node budget");
  cmd->add_option("--refute", opts.sim.refute_samples,
                  "mixed-move refutation samples per pair");
  cmd->add_flag("--timing", opts.timing, "attach wall-clock timing");
}

int emit(const CommandResult& res, bool json) {
  if (json || !res.report.contains("results")) {
    std::cout << res.report.dump(2) << "\n";
    return res.exit_code;
  }
  // Compact human-readable rendering; --json prints the full report.
  if (res.report.contains("error")) {
    std::cout << "error: " << res.report["error"].get<std::string>() << "\n";
    return res.exit_code;
  }
  const auto& results = res.report["results"];
  for (auto it = results.begin(); it != results.end(); ++it)
    std::cout << it.key() << ": " << it.value().dump() << "\n";
  if (res.report.contains("notes"))
    for (const auto& note : res.report["notes"])
      std::cout << "note: " << note.get<std::string>() << "\n";
  return res.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pgcheck: PATL model checking and probabilistic alternating "
               "simulation for two-player probabilistic game structures"};
  app.require_subcommand(1);
  bool json = false;
  app.add_flag("--json", json, "emit the full JSON report");

  CommonOptions opts;

  std::string model, model_b, formula, state, coalition = "I", player = "I";
  std::string mode = "sim", relation;

  auto* check = app.add_subcommand("check", "decide a PATL state formula");
  check->add_option("model", model)->required();
  check->add_option("formula", formula)->required();
  check->add_option("--state", state, "query one state (default: initial)");
  add_common(check, opts);

  auto* value = app.add_subcommand("value", "coalition value of a path formula");
  value->add_option("model", model)->required();
  value->add_option("coalition", coalition)->required();
  value->add_option("formula", formula)->required();
  add_common(value, opts);

  auto* sim = app.add_subcommand("sim", "greatest (bi)simulation");
  sim->add_option("model_a", model)->required();
  sim->add_option("model_b", model_b)->required();
  sim->add_option("--player", player, "protagonist (I or II)");
  sim->add_option("--mode", mode, "sim or bisim");
  add_common(sim, opts);

  auto* fwdsim = app.add_subcommand("fwdsim", "verify a forward simulation");
  fwdsim->add_option("model_a", model)->required();
  fwdsim->add_option("model_b", model_b)->required();
  fwdsim->add_option("--relation", relation)->required();
  fwdsim->add_option("--player", player, "protagonist (I or II)");
  bool verify = true;
  fwdsim->add_flag("--verify,!--no-verify", verify,
                   "run verification (default)");
  add_common(fwdsim, opts);

  pgs::GenOptions gen_opts;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "generate a seeded random model");
  gen->fallthrough();
  gen->add_option("--states", gen_opts.states);
  gen->add_option("--actions", gen_opts.actions);
  gen->add_option("--props", gen_opts.props);
  gen->add_option("--seed", gen_opts.seed);
  gen->add_option("-o,--out", gen_out, "write the model here");

  pgs::PreserveOptions popts;
  auto* preserve =
      app.add_subcommand("preserve", "test fragment preservation across a "
                                     "verified relation");
  preserve->add_option("model_a", model)->required();
  preserve->add_option("model_b", model_b)->required();
  preserve->add_option("--relation", relation)->required();
  preserve->add_option("--player", player, "protagonist (I or II)");
  preserve->add_option("--mode", popts.mode, "forward or bisim");
  preserve->add_option("--formulas", popts.formulas_path,
                       "formula file (.patl, one per line)");
  preserve->add_option("--depth", popts.random_depth, "random formula depth");
  preserve->add_option("--count", popts.random_count, "random formula count");
  preserve->add_option("--formula-seed", popts.seed, "random formula seed");
  add_common(preserve, opts);

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed())
      return emit(pgs::cmd_check(model, formula,
                                 state.empty()
                                     ? std::nullopt
                                     : std::make_optional(state),
                                 opts),
                  json);
    if (value->parsed())
      return emit(pgs::cmd_value(model, coalition, formula, opts), json);
    if (sim->parsed())
      return emit(pgs::cmd_sim(model, model_b, player, mode, opts), json);
    if (fwdsim->parsed())
      return emit(pgs::cmd_fwdsim(model, model_b, relation, player, opts),
                  json);
    if (gen->parsed()) {
      CommandResult res = pgs::cmd_gen(
          gen_opts, gen_out.empty() ? std::nullopt
                                    : std::make_optional(gen_out));
      if (res.exit_code == pgs::kOk && gen_out.empty())
        std::cout << res.report["model_text"].get<std::string>();
      else if (res.exit_code != pgs::kOk)
        std::cout << res.report.dump(2) << "\n";
      return res.exit_code;
    }
    if (preserve->parsed())
      return emit(
          pgs::cmd_preserve(model, model_b, relation, player, popts, opts),
          json);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return pgs::kInputError;
  }
  return pgs::kInputError;
}
