#include "doctest.h"

#include <cmath>

#include "helpers.hpp"
#include "pgs/matrix_game.hpp"
#include "pgs/modelcheck.hpp"

using namespace pgs;
using namespace pgs::test;

namespace {

std::vector<char> prop_set(const Pgs& g, const std::string& prop) {
  std::vector<char> out(g.num_states(), 0);
  int p = g.prop_id(prop);
  for (int s = 0; s < g.num_states(); ++s) out[s] = g.has_label(s, p);
  return out;
}

std::vector<char> all(const Pgs& g, bool value) {
  return std::vector<char>(g.num_states(), value);
}

PathQuery eventually(const Pgs& g, const std::string& prop, long bound = -1) {
  return PathQuery::until(all(g, true), prop_set(g, prop), bound);
}

// Closed-form 2x2 maximin, independent of the production solver: checks all
// four pure pairs for a saddle, otherwise uses the mixed formula.
Rat closed_form_2x2(const std::vector<std::vector<Rat>>& m) {
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      if (m[i][j] >= m[1 - i][j] && m[i][j] <= m[i][1 - j]) return m[i][j];
  return (m[0][0] * m[1][1] - m[0][1] * m[1][0]) /
         (m[0][0] - m[0][1] - m[1][0] + m[1][1]);
}

}  // namespace

TEST_CASE("matrix game closed forms") {
  GameSolution c = matrix_game_value({{{0.3}}});
  CHECK(c.value == doctest::Approx(0.3).epsilon(1e-15));

  GameSolution coin = matrix_game_value({{{1, 0}, {0, 1}}});
  CHECK(coin.value == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(coin.row_strategy[0] == doctest::Approx(0.5));
  CHECK(coin.col_strategy[0] == doctest::Approx(0.5));

  // The one-step game of the reachability example at v = 1/2.
  GameSolution step = matrix_game_value({{{1, 0.5}, {0, 1}}});
  CHECK(step.value == doctest::Approx(2.0 / 3).epsilon(1e-12));

  GameSolution saddle = matrix_game_value({{{1, 1}, {0, 0}}});
  CHECK(saddle.value == 1.0);
  CHECK(saddle.row_strategy[0] == 1.0);
}

TEST_CASE("LP route matches the 2x2 closed form") {
  SplitMix64 rng(71);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::vector<Rat>> m(2, std::vector<Rat>(2));
    for (auto& row : m)
      for (auto& cell : row)
        cell = rat(static_cast<long>(rng.below(17)), 16);
    GameSolutionExact lp = solve_matrix_game_lp(m);
    CHECK(lp.value == closed_form_2x2(m));
  }
}

TEST_CASE("LP route on larger games is certified") {
  SplitMix64 rng(73);
  for (int trial = 0; trial < 30; ++trial) {
    int rows = 2 + static_cast<int>(rng.below(3));
    int cols = 2 + static_cast<int>(rng.below(3));
    std::vector<std::vector<Rat>> m(rows, std::vector<Rat>(cols));
    for (auto& row : m)
      for (auto& cell : row)
        cell = rat(static_cast<long>(rng.below(13)), 12);
    // verify_solution runs inside; reaching here means certified.
    GameSolutionExact sol = solve_matrix_game_exact(m);
    CHECK(sol.value >= 0);
    CHECK(sol.value <= 1);
  }
}

TEST_CASE("ppre on the reachability example") {
  Pgs g = fig1();
  int s0 = g.state_id("s0"), s1 = g.state_id("s1"), s2 = g.state_id("s2");

  // Conservation.
  ValueFunction ones = ppre(g, Coalition::I, std::vector<double>(3, 1.0));
  for (double v : ones.values) CHECK(v == 1.0);

  std::vector<double> ind(3, 0.0);
  ind[s2] = 1.0;
  ValueFunction pre = ppre(g, Coalition::I, ind);
  CHECK(pre.values[s0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(pre.values[s1] == 0.0);
  CHECK(pre.values[s2] == 1.0);

  // Absorbing state keeps its value under every coalition.
  for (Coalition c : {Coalition::None, Coalition::I, Coalition::II,
                      Coalition::Both}) {
    std::vector<double> f{0.25, 0.5, 0.75};
    ValueFunction out = ppre(g, c, f);
    CHECK(out.values[s1] == doctest::Approx(0.5));
    CHECK(out.values[s2] == doctest::Approx(0.75));
  }
}

TEST_CASE("ppre is monotone") {
  SplitMix64 rng(79);
  for (int seed = 1; seed <= 4; ++seed) {
    Pgs g = small_random_model(seed, 4, 2, 1);
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<double> f, gup;
      for (int s = 0; s < g.num_states(); ++s) {
        double base = static_cast<double>(rng.below(100)) / 100.0;
        double bump = static_cast<double>(rng.below(100)) / 400.0;
        f.push_back(base);
        gup.push_back(std::min(1.0, base + bump));
      }
      for (Coalition c : {Coalition::None, Coalition::I, Coalition::II,
                          Coalition::Both}) {
        ValueFunction lo = ppre(g, c, f), hi = ppre(g, c, gup);
        for (int s = 0; s < g.num_states(); ++s)
          CHECK(lo.values[s] <= hi.values[s] + 1e-12);
      }
    }
  }
}

TEST_CASE("bounded reachability values are exact") {
  Pgs g = fig1();
  int s0 = g.state_id("s0");
  for (long k = 0; k <= 6; ++k) {
    std::vector<Rat> v = value_of_exact(g, Coalition::I, eventually(g, "phi", k));
    CHECK(v[s0] == rat(k, k + 1));
  }
  // The float route agrees on small bounds (it delegates to the exact one).
  ValueFunction vf = value_of(g, Coalition::I, eventually(g, "phi", 6));
  CHECK(vf.values[s0] == doctest::Approx(6.0 / 7).epsilon(1e-15));
}

TEST_CASE("value iteration iterates follow the harmonic law") {
  Pgs g = fig1();
  int s0 = g.state_id("s0");
  CheckOptions opts;
  for (long n : {1L, 2L, 10L, 50L}) {
    opts.max_iters = n;
    ValueFunction vf = value_of(g, Coalition::I, eventually(g, "phi"), opts);
    CHECK(vf.iterations == n);
    CHECK_FALSE(vf.converged);
    CHECK(std::abs(vf.values[s0] - double(n) / double(n + 1)) < 1e-9);
  }
}

TEST_CASE("unbounded fixed points on the reachability example") {
  Pgs g = fig1();
  int s0 = g.state_id("s0");
  CheckOptions opts;

  ValueFunction reach = value_of(g, Coalition::I, eventually(g, "phi"), opts);
  CHECK(reach.converged);
  CHECK(reach.values[s0] > 0.9999);
  CHECK(reach.values[s0] < 1.0);

  // The dual safety value collapses to zero.
  std::vector<char> not_phi = prop_set(g, "phi");
  for (auto& c : not_phi) c = !c;
  PathQuery safety = PathQuery::release(all(g, false), not_phi, -1);
  ValueFunction safe = value_of(g, Coalition::II, safety, opts);
  CHECK(safe.converged);
  CHECK(safe.values[s0] < 1e-4);

  // Monotone approach from both sides.
  CheckOptions probe;
  double prev = -1;
  for (long n : {1L, 5L, 25L}) {
    probe.max_iters = n;
    double v = value_of(g, Coalition::I, eventually(g, "phi"), probe).values[s0];
    CHECK(v >= prev);
    prev = v;
  }
  prev = 2;
  for (long n : {1L, 5L, 25L}) {
    probe.max_iters = n;
    double v = value_of(g, Coalition::II, safety, probe).values[s0];
    CHECK(v <= prev);
    prev = v;
  }
}

TEST_CASE("patl_sat boundary semantics") {
  Pgs g = fig1();
  int s0 = g.state_id("s0"), s2 = g.state_id("s2");

  SatResult yes = patl_sat(g, parse_state_formula("<<I>>[>0.9] F phi"));
  CHECK(yes.verdicts[s0] == Verdict::Sat);

  SatResult no = patl_sat(g, parse_state_formula("<<I>>[>=1] F phi"));
  CHECK(no.verdicts[s0] == Verdict::Unsat);
  CHECK(no.nonattainment_note);

  SatResult prop = patl_sat(g, parse_state_formula("phi"));
  CHECK(prop.verdicts[s2] == Verdict::Sat);
  CHECK(prop.verdicts[s0] == Verdict::Unsat);

  // Bounded operators decide exactly even at the threshold.
  SatResult exact = patl_sat(g, parse_state_formula("<<I>>[>=3/4] F<=3 phi"));
  CHECK(exact.verdicts[s0] == Verdict::Sat);
  SatResult strict = patl_sat(g, parse_state_formula("<<I>>[>3/4] F<=3 phi"));
  CHECK(strict.verdicts[s0] == Verdict::Unsat);
}

TEST_CASE("semantic duality of strategic formulas") {
  // sat-sets of <<A>>[cmp a] psi and its dual agree away from the band.
  SplitMix64 rng(83);
  const char* bodies[] = {"X p0", "(p0 U<=2 !p0)", "(p0 U !p0)"};
  const char* cmps[] = {">", ">=", "<", "<="};
  for (int seed = 1; seed <= 3; ++seed) {
    Pgs g = small_random_model(seed, 3, 2, 1);
    for (const char* body : bodies)
      for (const char* cmp : cmps) {
        long num = 1 + static_cast<long>(rng.below(6));
        std::string formula = std::string("<<I>>[") + cmp +
                              std::to_string(num) + "/7] " + body;
        auto f = parse_state_formula(formula);
        Dualized d = dualize(f->cmp, f->threshold, f->path);
        auto fd = f_strategic(f->coalition, d.cmp, d.threshold, d.path);
        SatResult a = patl_sat(g, f), b = patl_sat(g, fd);
        for (int s = 0; s < g.num_states(); ++s) {
          if (a.verdicts[s] == Verdict::Uncertain ||
              b.verdicts[s] == Verdict::Uncertain)
            continue;
          CHECK(a.verdicts[s] == b.verdicts[s]);
        }
      }
  }
}

TEST_CASE("strategy extraction on the reachability example") {
  Pgs g = fig1();
  int s0 = g.state_id("s0");

  StrategyCertificate eps =
      extract_strategy(g, Coalition::I, eventually(g, "phi"), 0.1);
  CHECK(eps.kind == StrategyCertificate::Opt::EpsOptimal);
  CHECK(eps.memoryless);
  // Mostly toward the goal, achieving at least 0.9 against any counterplay.
  CHECK(eps.levels_i[0].at(s0).mass(0) > rat(9, 10));
  CHECK(eps.guaranteed[s0] >= 0.9);
  CHECK(eps.guaranteed[s0] <= eps.computed_value[s0] + 1e-9);

  StrategyCertificate bounded =
      extract_strategy(g, Coalition::I, eventually(g, "phi", 3), 0);
  CHECK(bounded.kind == StrategyCertificate::Opt::Optimal);
  CHECK_FALSE(bounded.memoryless);
  CHECK(bounded.levels_i.size() == 3);
  CHECK(bounded.guaranteed[s0] == doctest::Approx(0.75).epsilon(1e-12));

  // Safety over the whole space is trivially optimal with value one.
  PathQuery safe_true = PathQuery::release(all(g, false), all(g, true), -1);
  StrategyCertificate safety =
      extract_strategy(g, Coalition::I, safe_true, 0);
  CHECK(safety.kind == StrategyCertificate::Opt::Optimal);
  for (double v : safety.guaranteed) CHECK(v == doctest::Approx(1.0));

  // Unconverged value functions are refused.
  CheckOptions tight;
  tight.max_iters = 3;
  CHECK_THROWS_AS(
      extract_strategy(g, Coalition::I, eventually(g, "phi"), 0.1, tight),
      UnconvergedError);
}

TEST_CASE("determinacy on the reachability example and random models") {
  Pgs g = fig1();
  DeterminacyReport rep =
      determinacy_check(g, Coalition::I, eventually(g, "phi"));
  CHECK(rep.max_deviation < 2e-9);

  // psi = true: both sides are exact.
  PathQuery tautology = PathQuery::until(all(g, true), all(g, true), -1);
  DeterminacyReport triv = determinacy_check(g, Coalition::I, tautology);
  CHECK(triv.max_deviation == 0.0);

  for (int seed = 1; seed <= 3; ++seed) {
    Pgs r = small_random_model(seed, 4, 2, 1);
    DeterminacyReport d =
        determinacy_check(r, Coalition::I, eventually(r, "p0"));
    CHECK(d.protagonist.converged);
    CHECK(d.antagonist.converged);
    CHECK(d.max_deviation < 1e-6);
  }
}

TEST_CASE("resolve_path_query flags uncertain subformulas") {
  Pgs g = fig1();
  auto path = parse_path_formula("F phi");
  auto [q, uncertain] = resolve_path_query(g, path);
  CHECK_FALSE(uncertain);
  CHECK(q.rhs[g.state_id("s2")]);
  CHECK_FALSE(q.rhs[g.state_id("s0")]);
}
