#include "doctest.h"

#include <cmath>
#include <fstream>
#include <map>

#include "helpers.hpp"
#include "pgs/exec.hpp"
#include "pgs/simcheck.hpp"

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

HistoryStrategy fig1_memoryless(const Pgs& g, Player p, const Rat& toward) {
  Level1Strategy strat;
  MixedMove move = Distribution::make({{0, toward}, {1, 1 - toward}});
  strat.moves.assign(g.num_states(), move);
  return HistoryStrategy::memoryless(strat);
}

// Brute-force oracle: enumerate depth-h histories and add up the mass of
// those satisfying the until query. Independent of the tree machinery.
Rat enumerate_until(const Pgs& g, const HistoryStrategy& si,
                    const HistoryStrategy& sii, const Distribution& from,
                    const PathQuery& q, int depth) {
  Rat total(0);
  struct Item {
    std::vector<int> hist;
    Rat mass;
  };
  std::vector<Item> frontier;
  for (auto& [s, p] : from.entries()) frontier.push_back({{s}, p});
  for (int level = 0; level <= depth; ++level) {
    std::vector<Item> next;
    for (auto& item : frontier) {
      int s = item.hist.back();
      if (q.rhs[s]) {
        total += item.mass;
        continue;
      }
      if (!q.lhs[s]) continue;
      if (level == depth) continue;
      Distribution step =
          joint_step(g, s, si.move(item.hist), sii.move(item.hist));
      for (auto& [t, p] : step.entries()) {
        Item child{item.hist, item.mass * p};
        child.hist.push_back(t);
        next.push_back(std::move(child));
      }
    }
    frontier = std::move(next);
  }
  return total;
}

}  // namespace

TEST_CASE("build_execution shapes") {
  Pgs g = fig1();
  HistoryStrategy si = fig1_memoryless(g, Player::I, rat(1, 2));
  HistoryStrategy sii = fig1_memoryless(g, Player::II, rat(1, 2));
  Distribution from = Distribution::point(g.state_id("s0"));

  ExecutionTree root_only = build_execution(g, si, sii, from, 0);
  CHECK(root_only.nodes.size() == 1);
  CHECK(root_only.level_bounds.size() == 1);

  ExecutionTree one = build_execution(g, si, sii, from, 1);
  Distribution margin = one.level_margin(1);
  CHECK(margin.mass(g.state_id("s2")) == rat(1, 2));
  CHECK(margin.mass(g.state_id("s0")) == rat(1, 4));
  CHECK(margin.mass(g.state_id("s1")) == rat(1, 4));

  // Point strategies on this deterministic table give a single path.
  HistoryStrategy pi = fig1_memoryless(g, Player::I, Rat(1));
  HistoryStrategy pii = fig1_memoryless(g, Player::II, Rat(1));
  ExecutionTree path = build_execution(g, pi, pii, from, 5);
  for (size_t d = 0; d < path.level_bounds.size(); ++d)
    CHECK(path.level_bounds[d].second - path.level_bounds[d].first == 1);

  CHECK_THROWS_AS(build_execution(g, si, sii, from, 30, 50), ExecError);
}

TEST_CASE("level masses always sum to one") {
  SplitMix64 rng(91);
  for (int seed = 1; seed <= 3; ++seed) {
    Pgs g = small_random_model(seed, 3, 2, 1);
    HistoryStrategy si =
        HistoryStrategy::memoryless(random_level1(g, Player::I, rng));
    HistoryStrategy sii =
        HistoryStrategy::memoryless(random_level1(g, Player::II, rng));
    ExecutionTree tree =
        build_execution(g, si, sii, Distribution::point(0), 4);
    for (int d = 0; d <= 4; ++d) {
      Rat total(0);
      for (auto& [node, mass] : tree.level_nodes(d)) total += mass;
      CHECK(total == 1);
    }
  }
}

TEST_CASE("cone probabilities") {
  Pgs g = fig1();
  int s0 = g.state_id("s0"), s1 = g.state_id("s1"), s2 = g.state_id("s2");
  HistoryStrategy si = fig1_memoryless(g, Player::I, rat(1, 2));
  HistoryStrategy sii = fig1_memoryless(g, Player::II, rat(1, 2));
  ExecutionTree tree =
      build_execution(g, si, sii, Distribution::point(s0), 3);

  CHECK(cone_probability(tree, {s0}) == 1);
  CHECK(cone_probability(tree, {s0, s0, s2}) == rat(1, 8));
  // Histories through zero-mass edges are absent: mass zero.
  CHECK(cone_probability(tree, {s0, s1, s2}) == 0);
  CHECK_THROWS_AS(cone_probability(tree, {s0, 99}), ExecError);
  CHECK_THROWS_AS(cone_probability(tree, {}), ExecError);
}

TEST_CASE("exact path probability on the reachability example") {
  Pgs g = fig1();
  int s0 = g.state_id("s0");
  HistoryStrategy si = fig1_memoryless(g, Player::I, rat(1, 2));
  HistoryStrategy sii = fig1_memoryless(g, Player::II, rat(1, 2));
  ExecutionTree tree =
      build_execution(g, si, sii, Distribution::point(s0), 12);

  PathQuery reach = PathQuery::until(all(g, true), prop_set(g, "phi"), -1);

  // Bounded probabilities follow the geometric closed form.
  for (int h = 1; h <= 5; ++h) {
    PathQuery bounded = reach;
    bounded.bound = h;
    PathProbability pp = exact_path_probability(tree, bounded, h);
    Rat expect = rat(2, 3) * (1 - rat(1, 1) / (1 << (2 * h)));
    CHECK(pp.lower == expect);
    CHECK(pp.upper == expect);
  }

  // Unbounded bounds bracket 2/3 with the 4^-h gap.
  for (int h : {4, 8, 12}) {
    PathProbability pp = exact_path_probability(tree, reach, h);
    CHECK(pp.upper - pp.lower == rat(1, 1) / (1 << (2 * h)));
    CHECK(pp.lower <= rat(2, 3));
    CHECK(rat(2, 3) <= pp.upper);
  }

  // Next with an everywhere-true target.
  PathQuery next_true = PathQuery::next(all(g, true));
  CHECK(exact_path_probability(tree, next_true, 1).lower == 1);
}

TEST_CASE("triple decomposition bookkeeping") {
  Pgs g = fig1();
  HistoryStrategy si = fig1_memoryless(g, Player::I, rat(1, 2));
  HistoryStrategy sii = fig1_memoryless(g, Player::II, rat(1, 2));
  ExecutionTree tree =
      build_execution(g, si, sii, Distribution::point(g.state_id("s0")), 6);
  PathQuery reach = PathQuery::until(all(g, true), prop_set(g, "phi"), -1);
  PathProbability pp = exact_path_probability(tree, reach, 6);

  Rat sat_total(0), run(1);
  for (const auto& lvl : pp.decomposition.levels) {
    // Conditional masses of the three parts sum to one.
    CHECK(lvl.alpha_continue + lvl.alpha_sat + lvl.alpha_fail == 1);
    // Supports are pairwise disjoint by construction: nodes appear once.
    std::map<int, int> seen;
    for (auto& [n, m] : lvl.continue_nodes) seen[n]++;
    for (auto& [n, m] : lvl.sat_nodes) seen[n]++;
    for (auto& [n, m] : lvl.fail_nodes) seen[n]++;
    for (auto& [n, count] : seen) CHECK(count == 1);
    sat_total += run * lvl.alpha_sat;
    run *= lvl.alpha_continue;
  }
  CHECK(sat_total == pp.lower);
}

TEST_CASE("exact equals enumeration on random instances") {
  SplitMix64 rng(97);
  for (int seed = 1; seed <= 4; ++seed) {
    Pgs g = small_random_model(seed, 3, 2, 1);
    HistoryStrategy si =
        HistoryStrategy::memoryless(random_level1(g, Player::I, rng));
    HistoryStrategy sii =
        HistoryStrategy::memoryless(random_level1(g, Player::II, rng));
    Distribution from = Distribution::point(0);
    ExecutionTree tree = build_execution(g, si, sii, from, 5);
    for (long k = 0; k <= 5; ++k) {
      PathQuery q = PathQuery::until(prop_set(g, "p0"),
                                     [&] {
                                       auto v = prop_set(g, "p0");
                                       for (auto& c : v) c = !c;
                                       return v;
                                     }(),
                                     k);
      PathProbability pp = exact_path_probability(tree, q, 5);
      CHECK(pp.lower == enumerate_until(g, si, sii, from, q, k));
      CHECK(pp.lower == pp.upper);
    }
  }
}

TEST_CASE("release dualizes inside exact_path_probability") {
  Pgs g = fig1();
  HistoryStrategy si = fig1_memoryless(g, Player::I, rat(1, 2));
  HistoryStrategy sii = fig1_memoryless(g, Player::II, rat(1, 2));
  ExecutionTree tree =
      build_execution(g, si, sii, Distribution::point(g.state_id("s0")), 6);
  std::vector<char> not_phi = prop_set(g, "phi");
  for (auto& c : not_phi) c = !c;
  // G(!phi) for h steps = 1 - (F<=h phi).
  PathQuery safety = PathQuery::release(all(g, false), not_phi, 6);
  PathQuery reach = PathQuery::until(all(g, true), prop_set(g, "phi"), 6);
  PathProbability ps = exact_path_probability(tree, safety, 6);
  PathProbability pr = exact_path_probability(tree, reach, 6);
  CHECK(ps.lower == 1 - pr.upper);
  CHECK(ps.upper == 1 - pr.lower);
}

TEST_CASE("strategy certificates agree with exact evaluation") {
  // For next and bounded until, the extracted pair of strategies achieves
  // exactly the computed game value (checked by exact tree evaluation).
  for (int seed = 1; seed <= 3; ++seed) {
    Pgs g = small_random_model(seed, 3, 2, 1);
    std::vector<char> target = prop_set(g, "p0");
    std::vector<char> lhs = all(g, true);
    for (long k : {1L, 2L, 3L}) {
      PathQuery q = PathQuery::until(lhs, target, k);
      StrategyCertificate cert = extract_strategy(g, Coalition::I, q, 0);
      ExecutionTree tree =
          build_execution(g, cert.strategy(Player::I),
                          cert.strategy(Player::II), Distribution::point(0),
                          static_cast<int>(k));
      PathProbability pp = exact_path_probability(tree, q, static_cast<int>(k));
      CHECK(std::abs(rat_double(pp.lower) - cert.computed_value[0]) < 1e-9);
    }
  }
}

TEST_CASE("monte carlo estimation") {
  Pgs g = fig1();
  int s0 = g.state_id("s0");
  HistoryStrategy si = fig1_memoryless(g, Player::I, rat(1, 2));
  HistoryStrategy sii = fig1_memoryless(g, Player::II, rat(1, 2));
  Distribution from = Distribution::point(s0);

  // True everywhere: exactly one regardless of seed.
  PathQuery taut = PathQuery::until(all(g, true), all(g, true), -1);
  MonteCarloResult one =
      monte_carlo_path_probability(g, si, sii, from, taut, 500, 10, 42);
  CHECK(one.estimate == 1.0);
  CHECK(one.hits == 500);

  PathQuery reach = PathQuery::until(all(g, true), prop_set(g, "phi"), 10);
  MonteCarloResult a =
      monte_carlo_path_probability(g, si, sii, from, reach, 20000, 10, 7);
  MonteCarloResult b =
      monte_carlo_path_probability(g, si, sii, from, reach, 20000, 10, 7);
  CHECK(a.hits == b.hits);  // determinism
  ExecutionTree tree = build_execution(g, si, sii, from, 10);
  double exact = rat_double(exact_path_probability(tree, reach, 10).lower);
  CHECK(a.ci_low <= exact);
  CHECK(exact <= a.ci_high);
}

TEST_CASE("transfer across the identity embedding mirrors the play") {
  // G = G', identity relation: the construction reproduces the original
  // executions level by level.
  Pgs g = fig1();
  SplitMix64 rng(101);
  RelationTable ident(
      {{0, 0}, {1, 1}, {2, 2}});
  ForwardRelationTable rf = embed_sim_as_forward(ident);
  Distribution from = Distribution::point(g.state_id("s0"));
  HistoryStrategy prot =
      HistoryStrategy::memoryless(random_level1(g, Player::I, rng));
  HistoryStrategy anti =
      HistoryStrategy::memoryless(random_level1(g, Player::II, rng));

  TransferResult tr =
      transfer_strategies(g, g, rf, from, from, prot, anti, 3);
  REQUIRE(tr.certificate.size() == 4);
  for (const auto& cert : tr.certificate) {
    CHECK(cert.left_margin == cert.right_margin);
    CHECK(check_forward_witness(rf, cert.left_margin, cert.right_margin,
                                cert.witness));
  }
  // The two executions coincide.
  ExecutionTree left = build_execution(g, prot, tr.anti_left(), from, 3);
  ExecutionTree right = build_execution(g, tr.prot_right(), anti, from, 3);
  for (int d = 0; d <= 3; ++d)
    CHECK(left.level_margin(d) == right.level_margin(d));
}

TEST_CASE("transfer across the coin-delay pair") {
  Pgs a = fig2a(), b = fig2b();
  ForwardRelationTable rf;
  {
    std::ifstream in(data_path("fig2rel.json"));
    nlohmann::json j = nlohmann::json::parse(in);
    rf = forward_relation_from_json(j, a, b);
  }
  Distribution from_a = Distribution::point(a.state_id("s1"));
  Distribution from_b = Distribution::point(b.state_id("u1"));
  HistoryStrategy prot =
      HistoryStrategy::memoryless(Level1Strategy::pure(a, Player::I, 0));
  HistoryStrategy anti =
      HistoryStrategy::memoryless(Level1Strategy::pure(b, Player::II, 0));

  TransferResult tr =
      transfer_strategies(a, b, rf, from_a, from_b, prot, anti, 2);
  REQUIRE(tr.certificate.size() == 3);
  for (const auto& cert : tr.certificate)
    CHECK(check_forward_witness(rf, cert.left_margin, cert.right_margin,
                                cert.witness));
  // After two steps both margins sit on the outcome twins.
  Distribution l2 = tr.certificate[2].left_margin;
  CHECK(l2.mass(a.state_id("h")) == rat(1, 2));
  CHECK(l2.mass(a.state_id("t")) == rat(1, 2));
  Distribution r2 = tr.certificate[2].right_margin;
  CHECK(r2.mass(b.state_id("h")) == rat(1, 2));
  CHECK(r2.mass(b.state_id("t")) == rat(1, 2));
}
