#include "pgs/simcheck.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "pgs/simplex.hpp"

namespace pgs {

Distribution joint_step_roles(const Pgs& g, int s, Player protagonist,
                              const MixedMove& prot_move,
                              const MixedMove& anti_move) {
  return protagonist == Player::I ? joint_step(g, s, prot_move, anti_move)
                                  : joint_step(g, s, anti_move, prot_move);
}

namespace {

Player other(Player p) { return p == Player::I ? Player::II : Player::I; }

MixedMove sample_mixed_move(int num_actions, SplitMix64& rng) {
  std::vector<long> weights(num_actions);
  long total = 0;
  for (auto& w : weights) {
    w = static_cast<long>(rng.below(16)) + 1;
    total += w;
  }
  std::vector<std::pair<int, Rat>> entries;
  for (int a = 0; a < num_actions; ++a)
    entries.emplace_back(a, rat(weights[a], total));
  return Distribution::make(entries);
}

std::vector<int> union_of_supports(const std::vector<Distribution>& dists) {
  std::set<int> states;
  for (const auto& d : dists)
    for (auto& [t, p] : d.entries()) states.insert(t);
  return std::vector<int>(states.begin(), states.end());
}

MixedMove move_from_solution(const std::vector<Rat>& x, int offset, int n) {
  std::vector<std::pair<int, Rat>> entries;
  for (int i = 0; i < n; ++i)
    if (sgn(x[offset + i]) > 0) entries.emplace_back(i, x[offset + i]);
  return Distribution::make(entries);
}

}  // namespace

std::optional<LocalCertificate> local_sim_step(const Pgs& left,
                                               const Pgs& right, int s,
                                               int s_right,
                                               const RelationTable& r,
                                               Player protagonist,
                                               const MixedMove& prot_move) {
  const Player anti = other(protagonist);
  const int n_prot_r = right.num_actions(protagonist);
  const int n_anti_l = left.num_actions(anti);
  const int n_anti_r = right.num_actions(anti);

  // Left steps per pure antagonist action; right steps per pure move pair.
  std::vector<Distribution> left_step(n_anti_l);
  for (int b = 0; b < n_anti_l; ++b)
    left_step[b] = joint_step_roles(left, s, protagonist, prot_move,
                                    Distribution::point(b));
  std::vector<int> left_states = union_of_supports(left_step);

  std::vector<std::vector<Distribution>> right_step(n_prot_r);
  for (int a = 0; a < n_prot_r; ++a) {
    right_step[a].resize(n_anti_r);
    for (int b = 0; b < n_anti_r; ++b)
      right_step[a][b] =
          joint_step_roles(right, s_right, protagonist,
                           Distribution::point(a), Distribution::point(b));
  }

  // Variable layout: x (right protagonist move), then per right antagonist
  // action: y (left response move) followed by w (coupling on r-edges).
  int var_count = n_prot_r;
  std::vector<int> y_offset(n_anti_r), w_offset(n_anti_r);
  std::vector<std::vector<std::pair<int, int>>> edges(n_anti_r);
  std::vector<std::vector<int>> right_states(n_anti_r);
  for (int bp = 0; bp < n_anti_r; ++bp) {
    y_offset[bp] = var_count;
    var_count += n_anti_l;
    std::vector<Distribution> col;
    for (int a = 0; a < n_prot_r; ++a) col.push_back(right_step[a][bp]);
    right_states[bp] = union_of_supports(col);
    w_offset[bp] = var_count;
    for (int u : left_states)
      for (int t : right_states[bp])
        if (r.contains(u, t)) edges[bp].emplace_back(u, t);
    var_count += static_cast<int>(edges[bp].size());
  }

  EqSystem sys(var_count);
  {
    std::vector<std::pair<int, Rat>> coeffs;
    for (int a = 0; a < n_prot_r; ++a) coeffs.emplace_back(a, Rat(1));
    sys.add_row(coeffs, Rat(1));
  }
  for (int bp = 0; bp < n_anti_r; ++bp) {
    std::vector<std::pair<int, Rat>> simplex_row;
    for (int b = 0; b < n_anti_l; ++b)
      simplex_row.emplace_back(y_offset[bp] + b, Rat(1));
    sys.add_row(simplex_row, Rat(1));

    // Row marginals: coupling mass at u equals the left step's mass there.
    for (int u : left_states) {
      std::vector<std::pair<int, Rat>> coeffs;
      for (size_t e = 0; e < edges[bp].size(); ++e)
        if (edges[bp][e].first == u)
          coeffs.emplace_back(w_offset[bp] + static_cast<int>(e), Rat(1));
      for (int b = 0; b < n_anti_l; ++b) {
        Rat mass = left_step[b].mass(u);
        if (sgn(mass) != 0) coeffs.emplace_back(y_offset[bp] + b, -mass);
      }
      sys.add_row(coeffs, Rat(0));
    }
    // Column marginals against the right step.
    for (int t : right_states[bp]) {
      std::vector<std::pair<int, Rat>> coeffs;
      for (size_t e = 0; e < edges[bp].size(); ++e)
        if (edges[bp][e].second == t)
          coeffs.emplace_back(w_offset[bp] + static_cast<int>(e), Rat(1));
      for (int a = 0; a < n_prot_r; ++a) {
        Rat mass = right_step[a][bp].mass(t);
        if (sgn(mass) != 0) coeffs.emplace_back(a, -mass);
      }
      sys.add_row(coeffs, Rat(0));
    }
  }

  auto x = simplex_feasible(sys);
  if (!x) return std::nullopt;

  LocalCertificate cert;
  cert.prot_move_right = move_from_solution(*x, 0, n_prot_r);
  for (int bp = 0; bp < n_anti_r; ++bp) {
    LocalCertificate::Response resp;
    resp.anti_move_left = move_from_solution(*x, y_offset[bp], n_anti_l);
    for (size_t e = 0; e < edges[bp].size(); ++e) {
      Rat v = (*x)[w_offset[bp] + static_cast<int>(e)];
      if (sgn(v) > 0)
        resp.coupling.entries.emplace_back(edges[bp][e].first,
                                           edges[bp][e].second, v);
    }
    // Re-verify the coupling independently of the LP.
    Distribution l = joint_step_roles(left, s, protagonist, prot_move,
                                      resp.anti_move_left);
    Distribution rd = joint_step_roles(right, s_right, protagonist,
                                       cert.prot_move_right,
                                       Distribution::point(bp));
    if (!check_weight_function(r, l, rd, resp.coupling))
      throw SolverError("local_sim_step: invalid certificate from solver");
    cert.responses.push_back(std::move(resp));
  }
  return cert;
}

LocalResult local_sim_condition(const Pgs& left, const Pgs& right, int s,
                                int s_right, const RelationTable& r,
                                Player protagonist, const SimOptions& opts,
                                SplitMix64& rng) {
  LocalResult res;
  const int n_prot_l = left.num_actions(protagonist);
  for (int a = 0; a < n_prot_l; ++a) {
    auto cert = local_sim_step(left, right, s, s_right, r, protagonist,
                               Distribution::point(a));
    if (!cert) {
      res.failing_action = a;
      return res;
    }
    res.certificates.push_back(std::move(*cert));
  }
  for (int k = 0; k < opts.refute_samples; ++k) {
    MixedMove mixed = sample_mixed_move(n_prot_l, rng);
    if (!local_sim_step(left, right, s, s_right, r, protagonist, mixed)) {
      res.mixed_refuted = true;
      return res;
    }
  }
  res.ok = true;
  return res;
}

RelationTable compute_simulation(const Pgs& left, const Pgs& right,
                                 Player protagonist, const SimOptions& opts) {
  RelationTable r = label_equal_pairs(left, right);
  SplitMix64 rng = SplitMix64(opts.seed).split(0x51);
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<std::pair<int, int>> doomed;
    for (auto& [s, t] : r.pairs()) {
      if (!local_sim_condition(left, right, s, t, r, protagonist, opts, rng)
               .ok)
        doomed.emplace_back(s, t);
    }
    for (auto& [s, t] : doomed) r.erase(s, t);
    changed = !doomed.empty();
  }
  return r;
}

VerifyResult verify_simulation(const Pgs& left, const Pgs& right,
                               const RelationTable& r, Player protagonist,
                               const SimOptions& opts) {
  VerifyResult out;
  SplitMix64 rng = SplitMix64(opts.seed).split(0x52);
  for (auto& [s, t] : r.pairs()) {
    if (!left.labels_equal(s, right, t)) {
      out = {false, s, t, -1, "label mismatch"};
      return out;
    }
    LocalResult lr =
        local_sim_condition(left, right, s, t, r, protagonist, opts, rng);
    if (!lr.ok) {
      out = {false, s, t, lr.failing_action,
             lr.mixed_refuted ? "sampled mixed move refuted the pair"
                              : "local condition infeasible"};
      return out;
    }
  }
  return out;
}

RelationTable compute_bisimulation(const Pgs& left, const Pgs& right,
                                   Player protagonist,
                                   const SimOptions& opts) {
  RelationTable r = label_equal_pairs(left, right);
  SplitMix64 rng = SplitMix64(opts.seed).split(0x53);
  bool changed = true;
  while (changed) {
    changed = false;
    RelationTable inv = r.inverse();
    std::vector<std::pair<int, int>> doomed;
    for (auto& [s, t] : r.pairs()) {
      bool fwd =
          local_sim_condition(left, right, s, t, r, protagonist, opts, rng)
              .ok;
      bool bwd = fwd && local_sim_condition(right, left, t, s, inv,
                                            protagonist, opts, rng)
                            .ok;
      if (!fwd || !bwd) doomed.emplace_back(s, t);
    }
    for (auto& [s, t] : doomed) r.erase(s, t);
    changed = !doomed.empty();
  }
  return r;
}

// ---------------------------------------------------------------------------
// Forward condition

std::optional<ForwardCertificate> local_forward_step(
    const Pgs& left, const Pgs& right, int s, const Distribution& target,
    const ForwardRelationTable& rf, Player protagonist,
    const MixedMove& prot_move, const SimOptions& opts) {
  const Player anti = other(protagonist);
  const int n_prot_r = right.num_actions(protagonist);
  const int n_anti_l = left.num_actions(anti);
  const int n_anti_r = right.num_actions(anti);
  const std::vector<int> support = target.support();
  const int k = static_cast<int>(support.size());

  long assignments = 1;
  for (int i = 0; i < k; ++i) {
    assignments *= n_anti_r;
    if (assignments > opts.max_assignments)
      throw SolverError(
          "forward condition: antagonist assignment space exceeds cap");
  }

  std::vector<Distribution> left_step(n_anti_l);
  for (int b = 0; b < n_anti_l; ++b)
    left_step[b] = joint_step_roles(left, s, protagonist, prot_move,
                                    Distribution::point(b));
  std::vector<int> left_states = union_of_supports(left_step);

  // Usable table pairs: left state can carry mass after the step.
  std::vector<int> usable;
  for (size_t j = 0; j < rf.pairs.size(); ++j)
    if (std::binary_search(left_states.begin(), left_states.end(),
                           rf.pairs[j].first))
      usable.push_back(static_cast<int>(j));

  // right_move_step[t_idx][a][b] = step of support state t under (a, b).
  std::vector<std::vector<std::vector<Distribution>>> rstep(k);
  for (int i = 0; i < k; ++i) {
    rstep[i].assign(n_prot_r, std::vector<Distribution>(n_anti_r));
    for (int a = 0; a < n_prot_r; ++a)
      for (int b = 0; b < n_anti_r; ++b)
        rstep[i][a][b] =
            joint_step_roles(right, support[i], protagonist,
                             Distribution::point(a), Distribution::point(b));
  }

  // Variables: c(t_idx, a) per support state, then per assignment sigma a
  // response move y and forward-lift weights q over usable pairs.
  int var_count = k * n_prot_r;
  auto c_var = [&](int t_idx, int a) { return t_idx * n_prot_r + a; };
  std::vector<int> y_offset(assignments), q_offset(assignments);
  for (long sig = 0; sig < assignments; ++sig) {
    y_offset[sig] = var_count;
    var_count += n_anti_l;
    q_offset[sig] = var_count;
    var_count += static_cast<int>(usable.size());
  }

  EqSystem sys(var_count);
  for (int i = 0; i < k; ++i) {
    std::vector<std::pair<int, Rat>> coeffs;
    for (int a = 0; a < n_prot_r; ++a) coeffs.emplace_back(c_var(i, a), Rat(1));
    sys.add_row(coeffs, Rat(1));
  }

  std::vector<std::vector<int>> sigma_of(assignments, std::vector<int>(k));
  for (long sig = 0; sig < assignments; ++sig) {
    long rest = sig;
    for (int i = 0; i < k; ++i) {
      sigma_of[sig][i] = static_cast<int>(rest % n_anti_r);
      rest /= n_anti_r;
    }
    const std::vector<int>& sigma = sigma_of[sig];

    std::vector<std::pair<int, Rat>> srow;
    for (int b = 0; b < n_anti_l; ++b)
      srow.emplace_back(y_offset[sig] + b, Rat(1));
    sys.add_row(srow, Rat(1));

    // Left marginals of the forward-lift weights.
    for (int u : left_states) {
      std::vector<std::pair<int, Rat>> coeffs;
      for (size_t v = 0; v < usable.size(); ++v)
        if (rf.pairs[usable[v]].first == u)
          coeffs.emplace_back(q_offset[sig] + static_cast<int>(v), Rat(1));
      for (int b = 0; b < n_anti_l; ++b) {
        Rat mass = left_step[b].mass(u);
        if (sgn(mass) != 0) coeffs.emplace_back(y_offset[sig] + b, -mass);
      }
      sys.add_row(coeffs, Rat(0));
    }

    // Right image: weights push through the table targets and must equal
    // the lifted step of the target distribution.
    std::set<int> targets;
    for (size_t v = 0; v < usable.size(); ++v)
      for (auto& [t, p] : rf.pairs[usable[v]].second.entries())
        targets.insert(t);
    for (int i = 0; i < k; ++i)
      for (int a = 0; a < n_prot_r; ++a)
        for (auto& [t, p] : rstep[i][a][sigma[i]].entries()) targets.insert(t);

    for (int t : targets) {
      std::vector<std::pair<int, Rat>> coeffs;
      for (size_t v = 0; v < usable.size(); ++v) {
        Rat mass = rf.pairs[usable[v]].second.mass(t);
        if (sgn(mass) != 0)
          coeffs.emplace_back(q_offset[sig] + static_cast<int>(v), mass);
      }
      for (int i = 0; i < k; ++i) {
        Rat scale = target.mass(support[i]);
        for (int a = 0; a < n_prot_r; ++a) {
          Rat mass = rstep[i][a][sigma[i]].mass(t);
          if (sgn(mass) != 0)
            coeffs.emplace_back(c_var(i, a), -scale * mass);
        }
      }
      sys.add_row(coeffs, Rat(0));
    }
  }

  auto x = simplex_feasible(sys);
  if (!x) return std::nullopt;

  ForwardCertificate cert;
  for (int i = 0; i < k; ++i)
    cert.prot_moves_right.emplace_back(
        support[i], move_from_solution(*x, c_var(i, 0), n_prot_r));

  for (long sig = 0; sig < assignments; ++sig) {
    ForwardCertificate::Response resp;
    resp.assignment = sigma_of[sig];
    resp.anti_move_left = move_from_solution(*x, y_offset[sig], n_anti_l);
    for (size_t v = 0; v < usable.size(); ++v) {
      Rat val = (*x)[q_offset[sig] + static_cast<int>(v)];
      if (sgn(val) > 0)
        resp.witness.terms.push_back(
            {val, rf.pairs[usable[v]].first, usable[v]});
    }
    // Independent re-verification of this response.
    Distribution l = joint_step_roles(left, s, protagonist, prot_move,
                                      resp.anti_move_left);
    std::vector<Distribution> parts;
    std::vector<Rat> weights;
    for (int i = 0; i < k; ++i) {
      const MixedMove& ci = cert.prot_moves_right[i].second;
      parts.push_back(joint_step_roles(
          right, support[i], protagonist, ci,
          Distribution::point(resp.assignment[i])));
      weights.push_back(target.mass(support[i]));
    }
    Distribution rd = convex_combine(parts, weights);
    if (!check_forward_witness(rf, l, rd, resp.witness))
      throw SolverError("local_forward_step: invalid certificate from solver");
    cert.responses.push_back(std::move(resp));
  }
  return cert;
}

ForwardLocalResult local_forward_condition(const Pgs& left, const Pgs& right,
                                           int s, const Distribution& target,
                                           const ForwardRelationTable& rf,
                                           Player protagonist,
                                           const SimOptions& opts) {
  ForwardLocalResult res;
  for (int t : target.support()) {
    if (!left.labels_equal(s, right, t)) {
      res.failure = ForwardFailure::LabelMismatch;
      return res;
    }
  }
  const int n_prot_l = left.num_actions(protagonist);
  for (int a = 0; a < n_prot_l; ++a) {
    auto cert = local_forward_step(left, right, s, target, rf, protagonist,
                                   Distribution::point(a), opts);
    if (!cert) {
      res.failure = ForwardFailure::StepInfeasible;
      res.failing_action = a;
      return res;
    }
    res.certificates.push_back(std::move(*cert));
  }
  res.ok = true;
  return res;
}

ForwardVerifyResult verify_forward_simulation(const Pgs& left,
                                              const Pgs& right,
                                              const ForwardRelationTable& rf,
                                              Player protagonist,
                                              const SimOptions& opts) {
  ForwardVerifyResult out;
  SplitMix64 rng = SplitMix64(opts.seed).split(0x54);
  const int n_prot_l = left.num_actions(protagonist);
  // Labels first (the condition's precondition), so a wrong-label target is
  // reported on its own pair rather than as a downstream infeasibility.
  for (size_t idx = 0; idx < rf.pairs.size(); ++idx) {
    const auto& [s, target] = rf.pairs[idx];
    for (int t : target.support()) {
      if (!left.labels_equal(s, right, t)) {
        out.ok = false;
        out.failing_pair = static_cast<int>(idx);
        out.failure = ForwardFailure::LabelMismatch;
        out.reason = "label mismatch with the target support";
        return out;
      }
    }
  }
  for (size_t idx = 0; idx < rf.pairs.size(); ++idx) {
    const auto& [s, target] = rf.pairs[idx];
    ForwardLocalResult lr =
        local_forward_condition(left, right, s, target, rf, protagonist, opts);
    if (!lr.ok) {
      out.ok = false;
      out.failing_pair = static_cast<int>(idx);
      out.failure = lr.failure;
      out.failing_action = lr.failing_action;
      out.reason = lr.failure == ForwardFailure::LabelMismatch
                       ? "label mismatch with the target support"
                       : "forward step condition infeasible";
      return out;
    }
    for (int k = 0; k < opts.refute_samples; ++k) {
      MixedMove mixed = sample_mixed_move(n_prot_l, rng);
      if (!local_forward_step(left, right, s, target, rf, protagonist, mixed,
                              opts)) {
        out.ok = false;
        out.failing_pair = static_cast<int>(idx);
        out.failure = ForwardFailure::StepInfeasible;
        out.failing_action = -1;
        out.reason = "sampled mixed protagonist move refuted the pair";
        return out;
      }
    }
  }
  return out;
}

ForwardRelationTable embed_sim_as_forward(const RelationTable& r) {
  ForwardRelationTable out;
  for (auto& [s, t] : r.pairs())
    out.pairs.emplace_back(s, Distribution::point(t));
  return out;
}

ForwardRelationTable suggest_forward_candidates(const Pgs& left,
                                                const Pgs& right,
                                                Player protagonist,
                                                int max_depth) {
  // Candidate targets: point distributions plus uniform-play successor
  // images up to max_depth steps. Labels gate everything.
  ForwardRelationTable cands;
  Level1Strategy ui = Level1Strategy::uniform(right, Player::I);
  Level1Strategy uii = Level1Strategy::uniform(right, Player::II);
  for (int t = 0; t < right.num_states(); ++t) {
    std::vector<Distribution> images{Distribution::point(t)};
    for (int d = 0; d < max_depth; ++d)
      images.push_back(lifted_step(right, images.back(), ui, uii));
    for (int s = 0; s < left.num_states(); ++s) {
      for (const auto& image : images) {
        bool labels_ok = true;
        for (int u : image.support())
          labels_ok = labels_ok && left.labels_equal(s, right, u);
        if (!labels_ok) continue;
        bool dup = false;
        for (auto& [s2, img2] : cands.pairs)
          if (s2 == s && img2 == image) dup = true;
        if (!dup) cands.pairs.emplace_back(s, image);
      }
    }
  }
  // Greatest-fixpoint style pruning over the finite candidate set.
  SimOptions opts;
  opts.refute_samples = 0;
  bool changed = true;
  while (changed && !cands.pairs.empty()) {
    changed = false;
    ForwardRelationTable next;
    for (auto& [s, target] : cands.pairs) {
      if (local_forward_condition(left, right, s, target, cands, protagonist,
                                  opts)
              .ok)
        next.pairs.emplace_back(s, target);
      else
        changed = true;
    }
    cands = std::move(next);
  }
  return cands;
}

}  // namespace pgs
