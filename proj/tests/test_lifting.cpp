#include "doctest.h"

#include <map>

#include "helpers.hpp"
#include "pgs/lifting.hpp"

using namespace pgs;
using namespace pgs::test;

namespace {

// Builds a random feasible lifting instance by drawing the witness first
// and reading off its marginals; the relation is the witness support plus
// optional noise pairs.
struct LiftInstance {
  RelationTable relation;
  Distribution left, right;
  WeightFunction witness;
};

LiftInstance random_feasible(SplitMix64& rng, int left_n = 4, int right_n = 4) {
  LiftInstance inst;
  long den = 4 + static_cast<long>(rng.below(12));
  std::map<std::pair<int, int>, long> cells;
  for (long i = 0; i < den; ++i)
    cells[{static_cast<int>(rng.below(left_n)),
           static_cast<int>(rng.below(right_n))}] += 1;
  std::map<int, Rat> lacc, racc;
  std::vector<std::pair<int, int>> pairs;
  for (auto& [cell, w] : cells) {
    inst.witness.entries.emplace_back(cell.first, cell.second, rat(w, den));
    pairs.push_back(cell);
    lacc[cell.first] += rat(w, den);
    racc[cell.second] += rat(w, den);
  }
  // Noise pairs that carry no witness mass.
  for (int extra = 0; extra < 3; ++extra)
    pairs.emplace_back(static_cast<int>(rng.below(left_n)),
                       static_cast<int>(rng.below(right_n)));
  inst.relation = RelationTable(pairs);
  inst.left = Distribution::make({lacc.begin(), lacc.end()});
  inst.right = Distribution::make({racc.begin(), racc.end()});
  return inst;
}

Distribution point(int id) { return Distribution::point(id); }

}  // namespace

TEST_CASE("lift_check basics") {
  // Identity relation with equal distributions: diagonal witness.
  RelationTable ident({{0, 0}, {1, 1}, {2, 2}});
  Distribution d = Distribution::make({{0, rat(1, 3)}, {1, rat(2, 3)}});
  auto w = lift_check(ident, d, d);
  REQUIRE(w);
  CHECK(w->weight(0, 0) == rat(1, 3));
  CHECK(w->weight(1, 1) == rat(2, 3));

  // Point-to-point is forced by the marginals.
  RelationTable r({{0, 1}});
  CHECK(lift_check(r, point(0), point(1)));
  CHECK_FALSE(lift_check(r, point(0), point(0)));

  // The two-by-two transportation example.
  Distribution st = Distribution::make({{0, rat(1, 2)}, {1, rat(1, 2)}});
  Distribution uv = Distribution::make({{10, rat(1, 2)}, {11, rat(1, 2)}});
  RelationTable r2({{0, 10}, {1, 10}, {1, 11}});
  auto w2 = lift_check(r2, st, uv);
  REQUIRE(w2);
  CHECK(check_weight_function(r2, st, uv, *w2));
  CHECK(w2->weight(0, 10) == rat(1, 2));
  CHECK(w2->weight(1, 11) == rat(1, 2));

  RelationTable r3({{0, 10}});
  CHECK_FALSE(lift_check(r3, point(0), uv));
}

TEST_CASE("weight function checker rejects bad witnesses") {
  RelationTable r({{0, 0}, {1, 1}});
  Distribution d = Distribution::make({{0, rat(1, 2)}, {1, rat(1, 2)}});
  WeightFunction good;
  good.entries = {{0, 0, rat(1, 2)}, {1, 1, rat(1, 2)}};
  CHECK(check_weight_function(r, d, d, good));

  WeightFunction off_relation;
  off_relation.entries = {{0, 1, rat(1, 2)}, {1, 0, rat(1, 2)}};
  CHECK_FALSE(check_weight_function(r, d, d, off_relation));

  WeightFunction bad_marginal;
  bad_marginal.entries = {{0, 0, rat(1, 4)}, {1, 1, rat(3, 4)}};
  CHECK_FALSE(check_weight_function(r, d, d, bad_marginal));
}

TEST_CASE("inverse property of lifting") {
  SplitMix64 rng(41);
  for (int trial = 0; trial < 60; ++trial) {
    LiftInstance inst = random_feasible(rng);
    auto w = lift_check(inst.relation, inst.left, inst.right);
    REQUIRE(w);
    auto winv = lift_check(inst.relation.inverse(), inst.right, inst.left);
    REQUIRE(winv);
    // Transposes witness each other.
    CHECK(check_weight_function(inst.relation.inverse(), inst.right, inst.left,
                                w->transpose()));
    CHECK(check_weight_function(inst.relation, inst.left, inst.right,
                                winv->transpose()));
  }
  // Infeasible instances stay infeasible under inversion.
  RelationTable r({{0, 10}});
  Distribution uv = Distribution::make({{10, rat(1, 2)}, {11, rat(1, 2)}});
  CHECK_FALSE(lift_check(r, point(0), uv));
  CHECK_FALSE(lift_check(r.inverse(), uv, point(0)));
}

TEST_CASE("convex closure of lifting") {
  SplitMix64 rng(43);
  for (int trial = 0; trial < 40; ++trial) {
    LiftInstance a = random_feasible(rng), b = random_feasible(rng);
    RelationTable joined(
        [&] {
          auto pairs = a.relation.pairs();
          auto more = b.relation.pairs();
          pairs.insert(pairs.end(), more.begin(), more.end());
          return pairs;
        }());
    Rat p = rat(1 + static_cast<long>(rng.below(7)), 8);
    Distribution left = convex_combine({a.left, b.left}, {p, 1 - p});
    Distribution right = convex_combine({a.right, b.right}, {p, 1 - p});
    WeightFunction mixed =
        mix_weight_functions({a.witness, b.witness}, {p, 1 - p});
    CHECK(check_weight_function(joined, left, right, mixed));
    CHECK(lift_check(joined, left, right));
  }
}

TEST_CASE("decomposition of lifted pairs") {
  SplitMix64 rng(47);
  for (int trial = 0; trial < 40; ++trial) {
    LiftInstance inst = random_feasible(rng);
    auto w = lift_check(inst.relation, inst.left, inst.right);
    REQUIRE(w);

    // Random two-way split of the right side.
    const auto& entries = inst.right.entries();
    std::map<int, Rat> r1, r2;
    for (auto& [t, mass] : entries) {
      Rat share = rat(static_cast<long>(rng.below(5)), 4);
      r1[t] = mass * share;
      r2[t] = mass * (1 - share);
    }
    Rat p1(0), p2(0);
    for (auto& [t, m] : r1) p1 += m;
    for (auto& [t, m] : r2) p2 += m;
    if (sgn(p1) == 0 || sgn(p2) == 0) continue;
    std::vector<std::pair<int, Rat>> e1, e2;
    for (auto& [t, m] : r1) e1.emplace_back(t, m / p1);
    for (auto& [t, m] : r2) e2.emplace_back(t, m / p2);
    std::vector<Distribution> parts{Distribution::make(e1),
                                    Distribution::make(e2)};

    std::vector<Distribution> lefts = decompose_left(*w, inst.right, parts);
    // Mixture reconstructs the left side and each component lifts.
    CHECK(convex_combine(lefts, {p1, p2}) == inst.left);
    CHECK(lift_check(inst.relation, lefts[0], parts[0]));
    CHECK(lift_check(inst.relation, lefts[1], parts[1]));
  }
}

TEST_CASE("composition witnesses transitivity") {
  SplitMix64 rng(53);
  for (int trial = 0; trial < 40; ++trial) {
    // left -R1- mid -R2- right, built from two feasible instances sharing
    // the middle distribution.
    LiftInstance first = random_feasible(rng);
    // Build the second instance on top of first.right by splitting its mass.
    LiftInstance second;
    long den = 4 + static_cast<long>(rng.below(8));
    std::map<std::pair<int, int>, Rat> cells;
    for (auto& [t, mass] : first.right.entries()) {
      // Split this middle state's mass across right states.
      long parts = 1 + rng.below(2);
      for (long i = 0; i < parts; ++i)
        cells[{t, static_cast<int>(rng.below(4))}] += mass / parts;
    }
    std::map<int, Rat> racc;
    std::vector<std::pair<int, int>> pairs;
    for (auto& [cell, wgt] : cells) {
      second.witness.entries.emplace_back(cell.first, cell.second, wgt);
      pairs.push_back(cell);
      racc[cell.second] += wgt;
    }
    second.relation = RelationTable(pairs);
    second.left = first.right;
    second.right = Distribution::make({racc.begin(), racc.end()});

    WeightFunction composed =
        compose_weight_functions(first.witness, second.witness, first.right);
    RelationTable composed_rel =
        compose_relations(first.relation, second.relation);
    CHECK(check_weight_function(composed_rel, first.left, second.right,
                                composed));
  }
}

TEST_CASE("compose_relations basics") {
  RelationTable r({{0, 1}, {2, 3}});
  RelationTable ident({{1, 1}, {3, 3}});
  CHECK(compose_relations(r, ident) == r);
  RelationTable ab({{0, 1}});
  RelationTable bc({{1, 2}});
  CHECK(compose_relations(ab, bc) == RelationTable({{0, 2}}));
}

TEST_CASE("forward lift basics") {
  // Point left with the pair present.
  ForwardRelationTable table;
  Distribution theta = Distribution::make({{5, rat(1, 2)}, {6, rat(1, 2)}});
  table.pairs.emplace_back(0, theta);
  auto w = forward_lift_check(table, point(0), theta);
  REQUIRE(w);
  CHECK(w->terms.size() == 1);
  CHECK(w->terms[0].p == 1);
  CHECK(w->terms[0].left_state == 0);

  // The two-coin table: {s3 -> uniform(u2,u3), s5 -> uniform(u4,u5)}.
  ForwardRelationTable coins;
  coins.pairs.emplace_back(
      0, Distribution::make({{10, rat(1, 2)}, {11, rat(1, 2)}}));
  coins.pairs.emplace_back(
      1, Distribution::make({{12, rat(1, 2)}, {13, rat(1, 2)}}));
  Distribution left = Distribution::make({{0, rat(1, 2)}, {1, rat(1, 2)}});
  Distribution uniform4 = Distribution::make(
      {{10, rat(1, 4)}, {11, rat(1, 4)}, {12, rat(1, 4)}, {13, rat(1, 4)}});
  auto w2 = forward_lift_check(coins, left, uniform4);
  REQUIRE(w2);
  CHECK(check_forward_witness(coins, left, uniform4, *w2));

  // Mass on u4/u5 cannot vanish.
  CHECK_FALSE(forward_lift_check(coins, left, point(10)));
}

namespace {

// Random feasible forward instances, again witness-first.
struct ForwardInstance {
  ForwardRelationTable table;
  Distribution left, right;
  ForwardLiftWitness witness;
};

ForwardInstance random_forward(SplitMix64& rng) {
  ForwardInstance inst;
  int pairs = 2 + static_cast<int>(rng.below(3));
  std::vector<int> rids{10, 11, 12, 13, 14};
  for (int j = 0; j < pairs; ++j)
    inst.table.pairs.emplace_back(static_cast<int>(rng.below(4)),
                                  random_distribution(rids, rng));
  long den = 4 + static_cast<long>(rng.below(8));
  std::vector<long> w(pairs, 0);
  for (long i = 0; i < den; ++i) w[rng.below(pairs)] += 1;
  std::map<int, Rat> lacc, racc;
  for (int j = 0; j < pairs; ++j) {
    if (w[j] == 0) continue;
    Rat p = rat(w[j], den);
    inst.witness.terms.push_back({p, inst.table.pairs[j].first, j});
    lacc[inst.table.pairs[j].first] += p;
    for (auto& [t, q] : inst.table.pairs[j].second.entries())
      racc[t] += p * q;
  }
  inst.left = Distribution::make({lacc.begin(), lacc.end()});
  inst.right = Distribution::make({racc.begin(), racc.end()});
  return inst;
}

}  // namespace

TEST_CASE("forward lifting convex closure and decomposition") {
  SplitMix64 rng(59);
  for (int trial = 0; trial < 40; ++trial) {
    ForwardInstance a = random_forward(rng);
    ForwardInstance b = random_forward(rng);
    // Convex closure over a joint table.
    ForwardRelationTable joined = a.table;
    int offset = static_cast<int>(joined.pairs.size());
    for (auto& pr : b.table.pairs) joined.pairs.push_back(pr);
    Rat p = rat(1 + static_cast<long>(rng.below(7)), 8);
    Distribution left = convex_combine({a.left, b.left}, {p, 1 - p});
    Distribution right = convex_combine({a.right, b.right}, {p, 1 - p});
    ForwardLiftWitness mixed;
    for (auto& t : a.witness.terms)
      mixed.terms.push_back({t.p * p, t.left_state, t.table_index});
    for (auto& t : b.witness.terms)
      mixed.terms.push_back(
          {t.p * (1 - p), t.left_state, t.table_index + offset});
    CHECK(check_forward_witness(joined, left, right, mixed));
    CHECK(forward_lift_check(joined, left, right));

    // Decomposition: split the left side of a feasible instance and find
    // matching splits of the right side.
    auto w = forward_lift_check(a.table, a.left, a.right);
    REQUIRE(w);
    const auto& terms = w->terms;
    if (terms.size() < 2) continue;
    // Split the witness terms into two groups.
    Rat p1(0);
    std::vector<char> in_first(terms.size());
    for (size_t i = 0; i < terms.size(); ++i) {
      in_first[i] = rng.below(2) == 0;
      if (in_first[i]) p1 += terms[i].p;
    }
    if (sgn(p1) == 0 || p1 == 1) continue;
    std::map<int, Rat> l1, l2, r1, r2;
    for (size_t i = 0; i < terms.size(); ++i) {
      Rat share = in_first[i] ? Rat(terms[i].p / p1)
                              : Rat(terms[i].p / (1 - p1));
      auto& lacc = in_first[i] ? l1 : l2;
      auto& racc = in_first[i] ? r1 : r2;
      lacc[terms[i].left_state] += share;
      for (auto& [t, q] : a.table.pairs[terms[i].table_index].second.entries())
        racc[t] += share * q;
    }
    Distribution left1 = Distribution::make({l1.begin(), l1.end()});
    Distribution left2 = Distribution::make({l2.begin(), l2.end()});
    Distribution right1 = Distribution::make({r1.begin(), r1.end()});
    Distribution right2 = Distribution::make({r2.begin(), r2.end()});
    CHECK(convex_combine({left1, left2}, {p1, 1 - p1}) == a.left);
    CHECK(convex_combine({right1, right2}, {p1, 1 - p1}) == a.right);
    CHECK(forward_lift_check(a.table, left1, right1));
    CHECK(forward_lift_check(a.table, left2, right2));
  }
}

TEST_CASE("relation json round trip") {
  Pgs a = fig2a(), b = fig2b();
  RelationTable r = label_equal_pairs(a, b);
  auto j = relation_to_json(r, a, b);
  CHECK(relation_from_json(j, a, b) == r);

  ForwardRelationTable ft;
  ft.pairs.emplace_back(a.state_id("s3"),
                        Distribution::make({{b.state_id("u2"), rat(1, 2)},
                                            {b.state_id("u3"), rat(1, 2)}}));
  auto jf = forward_relation_to_json(ft, a, b);
  ForwardRelationTable back = forward_relation_from_json(jf, a, b);
  REQUIRE(back.pairs.size() == 1);
  CHECK(back.pairs[0].first == ft.pairs[0].first);
  CHECK(back.pairs[0].second == ft.pairs[0].second);
}
