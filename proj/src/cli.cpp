#include "pgs/cli.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace pgs {

namespace {

std::string basename_of(const std::string& path) {
  auto slash = path.find_last_of('/');
  return slash == std::string::npos ? path : path.substr(slash + 1);
}

CommandResult input_error(const std::string& command,
                          const CommonOptions& opts,
                          const std::string& message) {
  Json rep = report_envelope(command, opts);
  rep["error"] = message;
  return {rep, kInputError};
}

std::optional<Coalition> parse_coalition(const std::string& name) {
  if (name == "I") return Coalition::I;
  if (name == "II") return Coalition::II;
  if (name == "both" || name == "I,II") return Coalition::Both;
  if (name == "none" || name.empty()) return Coalition::None;
  return std::nullopt;
}

std::optional<Player> parse_player(const std::string& name) {
  if (name == "I") return Player::I;
  if (name == "II") return Player::II;
  return std::nullopt;
}

std::string verdict_str(Verdict v) {
  switch (v) {
    case Verdict::Sat: return "satisfied";
    case Verdict::Unsat: return "violated";
    case Verdict::Uncertain: return "uncertain";
  }
  return "?";
}

Json value_function_json(const Pgs& g, const ValueFunction& vf) {
  Json values;
  for (int s = 0; s < g.num_states(); ++s) values[g.states[s]] = vf.values[s];
  Json out;
  out["values"] = values;
  out["residual"] = vf.residual;
  out["iterations"] = vf.iterations;
  out["converged"] = vf.converged;
  return out;
}

Json relation_json(const Pgs& a, const Pgs& b, const RelationTable& r) {
  return relation_to_json(r, a, b);
}

}  // namespace

Json report_envelope(const std::string& command, const CommonOptions& opts) {
  Json rep;
  rep["schema_version"] = 1;
  rep["tool"] = "pgcheck";
  rep["command"] = command;
  Json o;
  o["tol"] = opts.check.eps_vi;
  o["max_iters"] = opts.check.max_iters;
  o["seed"] = opts.check.seed;
  o["horizon"] = opts.horizon;
  o["node_budget"] = opts.node_budget;
  o["refute_samples"] = opts.sim.refute_samples;
  rep["options"] = o;
  return rep;
}

CommandResult cmd_check(const std::string& model_path,
                        const std::string& formula,
                        const std::optional<std::string>& state,
                        const CommonOptions& opts) {
  Json rep = report_envelope("check", opts);
  try {
    Pgs g = load_pgs_file(model_path);
    StateFormulaPtr f = parse_state_formula(formula);
    rep["inputs"] = {{"model", basename_of(model_path)},
                     {"formula", formula},
                     {"formula_canonical", to_string(f)}};
    int query_state = g.initial;
    if (state) {
      query_state = g.state_id(*state);
      if (query_state < 0)
        return input_error("check", opts, "unknown state '" + *state + "'");
      rep["inputs"]["state"] = *state;
    }
    SatResult sat = patl_sat(g, f, opts.check);
    Json verdicts;
    for (int s = 0; s < g.num_states(); ++s)
      verdicts[g.states[s]] = verdict_str(sat.verdicts[s]);
    rep["results"]["verdicts"] = verdicts;
    rep["results"]["queried_state"] = g.states[query_state];
    rep["results"]["verdict"] = verdict_str(sat.verdicts[query_state]);
    rep["notes"] = sat.notes;

    Verdict v = sat.verdicts[query_state];
    int code = v == Verdict::Unsat        ? kViolated
               : v == Verdict::Uncertain  ? kUnconverged
               : sat.any_unconverged      ? kUnconverged
                                          : kOk;
    return {rep, code};
  } catch (const ParseError& e) {
    return input_error("check", opts,
                       "formula parse error at position " +
                           std::to_string(e.pos) + ": " + e.what());
  } catch (const std::runtime_error& e) {
    return input_error("check", opts, e.what());
  }
}

CommandResult cmd_value(const std::string& model_path,
                        const std::string& coalition,
                        const std::string& path_formula,
                        const CommonOptions& opts) {
  Json rep = report_envelope("value", opts);
  try {
    Pgs g = load_pgs_file(model_path);
    auto coal = parse_coalition(coalition);
    if (!coal)
      return input_error("value", opts,
                         "coalition must be I, II, both or none");
    PathFormulaPtr path = parse_path_formula(path_formula);
    rep["inputs"] = {{"model", basename_of(model_path)},
                     {"coalition", coalition},
                     {"path_formula", path_formula},
                     {"path_canonical", to_string(path)}};
    auto [query, uncertain_args] = resolve_path_query(g, path, opts.check);
    ValueFunction vf = value_of(g, *coal, query, opts.check);
    rep["results"] = value_function_json(g, vf);
    if (uncertain_args)
      rep["notes"].push_back(
          "some state subformulas were boundary-uncertain; their uncertain "
          "states were treated as unsatisfied");
    if (!vf.converged)
      rep["notes"].push_back("iteration cap reached before the residual "
                             "dropped below tol (unconverged)");
    return {rep, vf.converged ? kOk : kUnconverged};
  } catch (const ParseError& e) {
    return input_error("value", opts,
                       "formula parse error at position " +
                           std::to_string(e.pos) + ": " + e.what());
  } catch (const std::runtime_error& e) {
    return input_error("value", opts, e.what());
  }
}

CommandResult cmd_sim(const std::string& model_a, const std::string& model_b,
                      const std::string& player, const std::string& mode,
                      const CommonOptions& opts) {
  Json rep = report_envelope("sim", opts);
  try {
    Pgs a = load_pgs_file(model_a);
    Pgs b = load_pgs_file(model_b);
    auto p = parse_player(player);
    if (!p) return input_error("sim", opts, "player must be I or II");
    if (mode != "sim" && mode != "bisim")
      return input_error("sim", opts, "mode must be sim or bisim");
    rep["inputs"] = {{"model_a", basename_of(model_a)},
                     {"model_b", basename_of(model_b)},
                     {"player", player},
                     {"mode", mode}};
    RelationTable r = mode == "sim"
                          ? compute_simulation(a, b, *p, opts.sim)
                          : compute_bisimulation(a, b, *p, opts.sim);
    rep["results"]["pairs"] = relation_json(a, b, r);
    rep["results"]["pair_count"] = r.size();
    rep["results"]["check_mode"] =
        "exact pure-move decision plus seeded mixed-move refutation (" +
        std::to_string(opts.sim.refute_samples) + " samples)";
    return {rep, kOk};
  } catch (const std::runtime_error& e) {
    return input_error("sim", opts, e.what());
  }
}

CommandResult cmd_fwdsim(const std::string& model_a, const std::string& model_b,
                         const std::string& relation_path,
                         const std::string& player,
                         const CommonOptions& opts) {
  Json rep = report_envelope("fwdsim", opts);
  try {
    Pgs a = load_pgs_file(model_a);
    Pgs b = load_pgs_file(model_b);
    auto p = parse_player(player);
    if (!p) return input_error("fwdsim", opts, "player must be I or II");
    std::ifstream in(relation_path);
    if (!in)
      return input_error("fwdsim", opts,
                         "cannot open relation file '" + relation_path + "'");
    nlohmann::json j = nlohmann::json::parse(in);
    ForwardRelationTable rf = forward_relation_from_json(j, a, b);
    rep["inputs"] = {{"model_a", basename_of(model_a)},
                     {"model_b", basename_of(model_b)},
                     {"relation", basename_of(relation_path)},
                     {"player", player},
                     {"pairs", rf.size()}};
    ForwardVerifyResult vr = verify_forward_simulation(a, b, rf, *p, opts.sim);
    rep["results"]["verified"] = vr.ok;
    rep["results"]["check_mode"] =
        "exact pure-move decision plus seeded mixed-move refutation (" +
        std::to_string(opts.sim.refute_samples) + " samples)";
    if (!vr.ok) {
      const auto& [ls, target] = rf.pairs[vr.failing_pair];
      Json fail;
      fail["pair_index"] = vr.failing_pair;
      fail["left_state"] = a.states[ls];
      Json tgt;
      for (auto& [t, q] : target.entries()) tgt[b.states[t]] = rat_str(q);
      fail["target"] = tgt;
      fail["failing_action"] = vr.failing_action;
      fail["reason"] = vr.reason;
      rep["results"]["failure"] = fail;
    }
    return {rep, vr.ok ? kOk : kViolated};
  } catch (const nlohmann::json::exception& e) {
    return input_error("fwdsim", opts,
                       std::string("relation JSON error: ") + e.what());
  } catch (const std::runtime_error& e) {
    return input_error("fwdsim", opts, e.what());
  }
}

CommandResult cmd_gen(const GenOptions& gen,
                      const std::optional<std::string>& out_path) {
  CommandResult res;
  Pgs g = random_model(gen);
  std::string text = write_pgs(g);
  if (out_path) {
    std::ofstream out(*out_path, std::ios::binary);
    if (!out) {
      res.report["error"] = "cannot write '" + *out_path + "'";
      res.exit_code = kInputError;
      return res;
    }
    out << text;
  }
  res.report["model_text"] = text;
  res.exit_code = kOk;
  return res;
}

// ---------------------------------------------------------------------------
// Preservation

Verdict distribution_sat(const SatResult& sat, const Distribution& d) {
  bool uncertain = false;
  for (int s : d.support()) {
    if (sat.verdicts[s] == Verdict::Unsat) return Verdict::Unsat;
    if (sat.verdicts[s] == Verdict::Uncertain) uncertain = true;
  }
  return uncertain ? Verdict::Uncertain : Verdict::Sat;
}

PreserveOutcome preserve_check(const Pgs& left, const Distribution& from_left,
                               const Pgs& right,
                               const Distribution& from_right,
                               const std::vector<StateFormulaPtr>& formulas,
                               bool biconditional, const CheckOptions& opts) {
  PreserveOutcome out;
  for (const auto& f : formulas) {
    Verdict vl = distribution_sat(patl_sat(left, f, opts), from_left);
    Verdict vr = distribution_sat(patl_sat(right, f, opts), from_right);
    if (vl == Verdict::Uncertain || vr == Verdict::Uncertain) {
      ++out.skipped_uncertain;
      continue;
    }
    ++out.checked;
    bool violation = biconditional
                         ? vl != vr
                         : (vl == Verdict::Sat && vr == Verdict::Unsat);
    if (violation)
      out.violations.push_back(
          {to_string(f), verdict_str(vl), verdict_str(vr)});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Formula samplers

namespace {

class FormulaSampler {
 public:
  FormulaSampler(std::vector<std::string> props, Coalition coalition,
                 bool l_i_plus, std::uint64_t seed)
      : props_(std::move(props)),
        coalition_(coalition),
        l_i_plus_(l_i_plus),
        rng_(SplitMix64(seed).split(0xf0)) {
    if (props_.empty()) props_.push_back("p0");
  }

  StateFormulaPtr state(int depth, int size_budget = 3) {
    std::uint64_t pick = rng_.below(8);
    if (depth <= 0 || pick < 3 || size_budget <= 0) return literal();
    if (pick < 4)
      return f_and(state(depth, size_budget - 1), literal());
    if (pick < 5)
      return f_or(state(depth, size_budget - 1), literal());
    return strategic(depth, size_budget);
  }

 private:
  StateFormulaPtr literal() {
    StateFormulaPtr p = f_prop(props_[rng_.below(props_.size())]);
    return rng_.below(3) == 0 ? f_not(p) : p;
  }

  Rat threshold() {
    // Denominator 7 keeps thresholds away from the model's dyadic and
    // small-denominator values, so boundary skips stay rare.
    return rat(1 + static_cast<long>(rng_.below(6)), 7);
  }

  StateFormulaPtr strategic(int depth, int size_budget) {
    Coalition coal = rng_.below(4) == 0 ? Coalition::None : coalition_;
    std::uint64_t body = rng_.below(4);
    Cmp cmp = rng_.below(2) ? Cmp::Gt : Cmp::Ge;
    if (l_i_plus_ && rng_.below(4) == 0)
      cmp = rng_.below(2) ? Cmp::Lt : Cmp::Le;
    StateFormulaPtr out;
    if (body == 0) {
      out = f_strategic(coal, cmp, threshold(),
                        p_next(state(depth - 1, size_budget - 1)));
    } else if (body < 3) {
      long k = 1 + static_cast<long>(rng_.below(4));
      out = f_strategic(coal, cmp, threshold(),
                        p_until(state(depth - 1, size_budget - 1),
                                state(depth - 1, size_budget - 1), k));
    } else {
      // Unbounded until only with a strict lower bound, in both fragments.
      out = f_strategic(coal, Cmp::Gt, threshold(),
                        p_until(state(depth - 1, size_budget - 1),
                                state(depth - 1, size_budget - 1), -1));
    }
    if (l_i_plus_ && rng_.below(4) == 0) out = f_not(out);
    return out;
  }

  std::vector<std::string> props_;
  Coalition coalition_;
  bool l_i_plus_;
  SplitMix64 rng_;
};

std::vector<StateFormulaPtr> sample_fragment(
    const std::vector<std::string>& props, Coalition coalition, bool l_i_plus,
    int depth, int count, std::uint64_t seed) {
  FormulaSampler sampler(props, coalition, l_i_plus, seed);
  std::vector<StateFormulaPtr> out;
  while (static_cast<int>(out.size()) < count) {
    StateFormulaPtr f = sampler.state(depth);
    auto tags = classify_fragment(f, coalition);
    bool ok = false;
    for (const auto& tag : tags)
      ok = ok || (l_i_plus ? tag.kind == FragmentTag::Kind::LIPlus
                           : tag.kind == FragmentTag::Kind::APatl);
    if (ok) out.push_back(f);
  }
  return out;
}

}  // namespace

std::vector<StateFormulaPtr> sample_a_patl_formulas(
    const std::vector<std::string>& props, Coalition coalition, int depth,
    int count, std::uint64_t seed) {
  return sample_fragment(props, coalition, false, depth, count, seed);
}

std::vector<StateFormulaPtr> sample_l_i_plus_formulas(
    const std::vector<std::string>& props, int depth, int count,
    std::uint64_t seed) {
  return sample_fragment(props, Coalition::I, true, depth, count, seed);
}

// ---------------------------------------------------------------------------
// cmd_preserve

namespace {

bool verify_bisim_candidate(const Pgs& a, const Pgs& b, const RelationTable& r,
                            Player player, const SimOptions& opts) {
  SplitMix64 rng = SplitMix64(opts.seed).split(0x62);
  RelationTable inv = r.inverse();
  for (auto& [s, t] : r.pairs()) {
    if (!a.labels_equal(s, b, t)) return false;
    if (!local_sim_condition(a, b, s, t, r, player, opts, rng).ok)
      return false;
    if (!local_sim_condition(b, a, t, s, inv, player, opts, rng).ok)
      return false;
  }
  return true;
}

}  // namespace

CommandResult cmd_preserve(const std::string& model_a,
                           const std::string& model_b,
                           const std::string& relation_path,
                           const std::string& player,
                           const PreserveOptions& popts,
                           const CommonOptions& opts) {
  Json rep = report_envelope("preserve", opts);
  try {
    Pgs a = load_pgs_file(model_a);
    Pgs b = load_pgs_file(model_b);
    auto p = parse_player(player);
    if (!p) return input_error("preserve", opts, "player must be I or II");
    if (popts.mode != "forward" && popts.mode != "bisim")
      return input_error("preserve", opts, "mode must be forward or bisim");

    std::ifstream in(relation_path);
    if (!in)
      return input_error("preserve", opts,
                         "cannot open relation file '" + relation_path + "'");
    nlohmann::json relation_json_doc = nlohmann::json::parse(in);

    rep["inputs"] = {{"model_a", basename_of(model_a)},
                     {"model_b", basename_of(model_b)},
                     {"relation", basename_of(relation_path)},
                     {"player", player},
                     {"mode", popts.mode},
                     {"formula_seed", popts.seed},
                     {"formula_depth", popts.random_depth},
                     {"formula_count", popts.random_count}};

    // The relation is verified before any preservation runs.
    Distribution from_left = Distribution::point(a.initial);
    Distribution from_right;
    bool biconditional = popts.mode == "bisim";
    if (popts.mode == "forward") {
      ForwardRelationTable rf = forward_relation_from_json(relation_json_doc, a, b);
      ForwardVerifyResult vr = verify_forward_simulation(a, b, rf, *p, opts.sim);
      rep["results"]["relation_verified"] = vr.ok;
      if (!vr.ok) {
        rep["results"]["failure"] = vr.reason;
        return {rep, kViolated};
      }
      bool found = false;
      for (auto& [s, target] : rf.pairs)
        if (s == a.initial && !found) {
          from_right = target;
          found = true;
        }
      if (!found)
        return input_error("preserve", opts,
                           "relation has no pair for the initial state");
    } else {
      RelationTable r = relation_from_json(relation_json_doc, a, b);
      bool ok = verify_bisim_candidate(a, b, r, *p, opts.sim);
      rep["results"]["relation_verified"] = ok;
      if (!ok) {
        rep["results"]["failure"] = "candidate is not a bisimulation";
        return {rep, kViolated};
      }
      int partner = -1;
      for (auto& [s, t] : r.pairs())
        if (s == a.initial && partner < 0) partner = t;
      if (partner < 0)
        return input_error("preserve", opts,
                           "relation has no pair for the initial state");
      from_right = Distribution::point(partner);
    }

    // Shared vocabulary only; the samplers draw from the intersection.
    std::vector<std::string> shared_props;
    for (const auto& prop : a.props)
      if (b.prop_id(prop) >= 0) shared_props.push_back(prop);

    std::vector<StateFormulaPtr> formulas;
    int skipped_fragment = 0;
    if (popts.formulas_path) {
      std::ifstream ff(*popts.formulas_path);
      if (!ff)
        return input_error("preserve", opts, "cannot open formulas file '" +
                                                 *popts.formulas_path + "'");
      std::string line;
      while (std::getline(ff, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos)
          line.erase(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        StateFormulaPtr f = parse_state_formula(line);
        auto tags = classify_fragment(f, biconditional ? Coalition::I : *p == Player::I ? Coalition::I : Coalition::II);
        bool ok = false;
        for (const auto& tag : tags)
          ok = ok || (biconditional ? tag.kind == FragmentTag::Kind::LIPlus
                                    : tag.kind == FragmentTag::Kind::APatl);
        if (ok)
          formulas.push_back(f);
        else
          ++skipped_fragment;
      }
    } else {
      Coalition coal = *p == Player::I ? Coalition::I : Coalition::II;
      formulas = biconditional
                     ? sample_l_i_plus_formulas(shared_props,
                                                popts.random_depth,
                                                popts.random_count, popts.seed)
                     : sample_a_patl_formulas(shared_props, coal,
                                              popts.random_depth,
                                              popts.random_count, popts.seed);
    }

    PreserveOutcome outcome = preserve_check(a, from_left, b, from_right,
                                             formulas, biconditional,
                                             opts.check);
    outcome.skipped_fragment = skipped_fragment;
    rep["results"]["formulas"] = formulas.size();
    rep["results"]["checked"] = outcome.checked;
    rep["results"]["skipped_uncertain"] = outcome.skipped_uncertain;
    rep["results"]["skipped_fragment"] = outcome.skipped_fragment;
    Json viols = Json::array();
    for (const auto& v : outcome.violations)
      viols.push_back({{"formula", v.formula},
                       {"left", v.left_verdict},
                       {"right", v.right_verdict}});
    rep["results"]["violations"] = viols;
    return {rep, outcome.violations.empty() ? kOk : kViolated};
  } catch (const ParseError& e) {
    return input_error("preserve", opts,
                       "formula parse error at position " +
                           std::to_string(e.pos) + ": " + e.what());
  } catch (const nlohmann::json::exception& e) {
    return input_error("preserve", opts,
                       std::string("relation JSON error: ") + e.what());
  } catch (const std::runtime_error& e) {
    return input_error("preserve", opts, e.what());
  }
}

// ---------------------------------------------------------------------------
// Harness constructions

namespace harness {

SplitModel split_state(const Pgs& g, int state, const Rat& share) {
  if (state < 0 || state >= g.num_states())
    throw ModelError("split_state: no such state");
  if (sgn(share) < 0 || share > 1)
    throw ModelError("split_state: share must be in [0,1]");

  RawModel raw;
  raw.actions_i = g.actions_i;
  raw.actions_ii = g.actions_ii;
  raw.props = g.props;
  std::string copy_name = g.states[state] + "_copy";
  for (int s = 0; s < g.num_states(); ++s) {
    RawModel::State st;
    st.name = g.states[s];
    for (int p : g.labels[s]) st.labels.push_back(g.props[p]);
    raw.states.push_back(st);
  }
  {
    RawModel::State st;
    st.name = copy_name;
    for (int p : g.labels[state]) st.labels.push_back(g.props[p]);
    raw.states.push_back(st);
  }
  raw.initial = g.states[g.initial];

  auto add_row = [&](const std::string& from, int a, int b,
                     const Distribution& d) {
    RawModel::Trans tr;
    tr.state = from;
    tr.action_i = g.actions_i[a];
    tr.action_ii = g.actions_ii[b];
    for (auto& [t, p] : d.entries()) {
      if (t == state) {
        Rat keep = p * share, moved = p * (1 - share);
        if (sgn(keep) > 0)
          tr.successors.emplace_back(g.states[t], rat_str(keep));
        if (sgn(moved) > 0)
          tr.successors.emplace_back(copy_name, rat_str(moved));
      } else {
        tr.successors.emplace_back(g.states[t], rat_str(p));
      }
    }
    raw.transitions.push_back(tr);
  };

  for (int s = 0; s < g.num_states(); ++s)
    for (int a = 0; a < g.num_actions(Player::I); ++a)
      for (int b = 0; b < g.num_actions(Player::II); ++b)
        add_row(g.states[s], a, b, g.delta(s, a, b));
  for (int a = 0; a < g.num_actions(Player::I); ++a)
    for (int b = 0; b < g.num_actions(Player::II); ++b)
      add_row(copy_name, a, b, g.delta(state, a, b));

  SplitModel out{validate_model(raw), state, g.num_states(), {}};
  std::vector<std::pair<int, int>> pairs;
  for (int s = 0; s < g.num_states(); ++s) pairs.emplace_back(s, s);
  pairs.emplace_back(out.copy_state, state);
  out.projection = RelationTable(std::move(pairs));
  return out;
}

GadgetPair coin_delay_gadget(int coins, int outcomes, std::uint64_t seed) {
  if (coins < 1 || outcomes < 2)
    throw ModelError("coin_delay_gadget: need >= 1 coin and >= 2 outcomes");
  SplitMix64 rng = SplitMix64(seed).split(0xc01);

  // Random outcome distributions with denominator 8.
  std::vector<std::vector<Rat>> theta(coins, std::vector<Rat>(outcomes));
  for (int i = 0; i < coins; ++i) {
    const long den = 8;
    std::vector<long> w(outcomes, 0);
    for (long assigned = 0; assigned < den; ++assigned)
      w[rng.below(outcomes)] += 1;
    for (int j = 0; j < outcomes; ++j) theta[i][j] = rat(w[j], den);
  }

  RawModel la, rb;
  la.actions_i = {"a"};
  la.actions_ii = {"b"};
  rb.actions_i = {"a"};
  rb.actions_ii = {"b"};
  for (int j = 0; j < outcomes; ++j) {
    la.props.push_back("w" + std::to_string(j));
    rb.props.push_back("w" + std::to_string(j));
  }
  la.props.push_back("mid");
  rb.props.push_back("mid");

  la.states.push_back({"r", {}});
  for (int i = 0; i < coins; ++i)
    la.states.push_back({"c" + std::to_string(i + 1), {"mid"}});
  for (int j = 0; j < outcomes; ++j)
    la.states.push_back({"o" + std::to_string(j), {"w" + std::to_string(j)}});
  la.initial = "r";
  {
    RawModel::Trans tr{"r", "a", "b", {}, 0};
    for (int i = 0; i < coins; ++i)
      tr.successors.emplace_back("c" + std::to_string(i + 1),
                                 rat_str(rat(1, coins)));
    la.transitions.push_back(tr);
  }
  for (int i = 0; i < coins; ++i) {
    RawModel::Trans tr{"c" + std::to_string(i + 1), "a", "b", {}, 0};
    for (int j = 0; j < outcomes; ++j)
      if (sgn(theta[i][j]) > 0)
        tr.successors.emplace_back("o" + std::to_string(j),
                                   rat_str(theta[i][j]));
    la.transitions.push_back(tr);
  }
  for (int j = 0; j < outcomes; ++j)
    la.transitions.push_back(
        {"o" + std::to_string(j), "*", "*",
         {{"o" + std::to_string(j), "1"}}, 0});

  rb.states.push_back({"r", {}});
  for (int i = 0; i < coins; ++i)
    for (int j = 0; j < outcomes; ++j)
      if (sgn(theta[i][j]) > 0)
        rb.states.push_back({"d" + std::to_string(i + 1) + "_" +
                                 std::to_string(j),
                             {"mid"}});
  for (int j = 0; j < outcomes; ++j)
    rb.states.push_back({"o" + std::to_string(j), {"w" + std::to_string(j)}});
  rb.initial = "r";
  {
    RawModel::Trans tr{"r", "a", "b", {}, 0};
    for (int i = 0; i < coins; ++i)
      for (int j = 0; j < outcomes; ++j)
        if (sgn(theta[i][j]) > 0)
          tr.successors.emplace_back(
              "d" + std::to_string(i + 1) + "_" + std::to_string(j),
              rat_str(theta[i][j] / coins));
    rb.transitions.push_back(tr);
  }
  for (int i = 0; i < coins; ++i)
    for (int j = 0; j < outcomes; ++j)
      if (sgn(theta[i][j]) > 0)
        rb.transitions.push_back(
            {"d" + std::to_string(i + 1) + "_" + std::to_string(j), "a", "b",
             {{"o" + std::to_string(j), "1"}}, 0});
  for (int j = 0; j < outcomes; ++j)
    rb.transitions.push_back(
        {"o" + std::to_string(j), "*", "*",
         {{"o" + std::to_string(j), "1"}}, 0});

  GadgetPair out{validate_model(la), validate_model(rb), {}};

  // r maps to point(r'); each coin to the distribution over its committed
  // states; outcomes to their twins.
  out.relation.pairs.emplace_back(out.left.state_id("r"),
                                  Distribution::point(out.right.state_id("r")));
  for (int i = 0; i < coins; ++i) {
    std::vector<std::pair<int, Rat>> entries;
    for (int j = 0; j < outcomes; ++j)
      if (sgn(theta[i][j]) > 0)
        entries.emplace_back(out.right.state_id("d" + std::to_string(i + 1) +
                                                "_" + std::to_string(j)),
                             theta[i][j]);
    out.relation.pairs.emplace_back(
        out.left.state_id("c" + std::to_string(i + 1)),
        Distribution::make(entries));
  }
  for (int j = 0; j < outcomes; ++j)
    out.relation.pairs.emplace_back(
        out.left.state_id("o" + std::to_string(j)),
        Distribution::point(out.right.state_id("o" + std::to_string(j))));
  return out;
}

}  // namespace harness

}  // namespace pgs
