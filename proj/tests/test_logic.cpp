#include "doctest.h"

#include "helpers.hpp"
#include "pgs/logic.hpp"

using namespace pgs;

namespace {

bool has_tag(const std::vector<FragmentTag>& tags, FragmentTag::Kind kind) {
  for (const auto& t : tags)
    if (t.kind == kind) return true;
  return false;
}

}  // namespace

TEST_CASE("parse strategic until") {
  auto f = parse_state_formula("<<I>>[>0.9] (true U phi)");
  REQUIRE(f->kind == StateFormula::Kind::Strategic);
  CHECK(f->coalition == Coalition::I);
  CHECK(f->cmp == Cmp::Gt);
  CHECK(f->threshold == rat(9, 10));
  REQUIRE(f->path->kind == PathFormula::Kind::Until);
  CHECK(f->path->bound == -1);
  CHECK(f->path->lhs->kind == StateFormula::Kind::True);
  CHECK(f->path->rhs->prop == "phi");
}

TEST_CASE("parse full-coalition next") {
  auto f = parse_state_formula("<<I,II>>[>=1/2] X p");
  REQUIRE(f->kind == StateFormula::Kind::Strategic);
  CHECK(f->coalition == Coalition::Both);
  CHECK(f->cmp == Cmp::Ge);
  CHECK(f->threshold == rat(1, 2));
  CHECK(f->path->kind == PathFormula::Kind::Next);
  CHECK(f->path->rhs->prop == "p");
}

TEST_CASE("strategic release desugars through the duality") {
  auto f = parse_state_formula("<<I>>[>=0.5] (p R q)");
  CHECK(to_string(f) == "<<I>>[<=1/2] (!p U !q)");
  auto expected = f_strategic(Coalition::I, Cmp::Le, rat(1, 2),
                              p_until(f_not(f_prop("p")), f_not(f_prop("q")),
                                      -1));
  CHECK(formulas_equal(f, expected));
}

TEST_CASE("sugar and bounds") {
  auto f = parse_state_formula("<<II>>[<3/4] F<=5 p");
  REQUIRE(f->path->kind == PathFormula::Kind::Until);
  CHECK(f->path->bound == 5);
  CHECK(f->path->lhs->kind == StateFormula::Kind::True);

  // G desugars to release, which a strategic context dualizes to until.
  auto g = parse_state_formula("<<I>>[>=3/4] G p");
  REQUIRE(g->path->kind == PathFormula::Kind::Until);
  CHECK(g->cmp == Cmp::Le);
  CHECK(g->threshold == rat(1, 4));

  // Bare path formulas keep release.
  auto path = parse_path_formula("G !phi");
  CHECK(path->kind == PathFormula::Kind::Release);
  CHECK(path->lhs->kind == StateFormula::Kind::False);

  auto bounded = parse_path_formula("p U<=3 q");
  CHECK(bounded->bound == 3);
}

TEST_CASE("booleans, precedence, parens") {
  auto f = parse_state_formula("!a & b | c");
  CHECK(to_string(f) == "!a & b | c");
  CHECK(f->kind == StateFormula::Kind::Or);
  CHECK(f->lhs->kind == StateFormula::Kind::And);

  auto g = parse_state_formula("!(a | b) & c");
  CHECK(g->kind == StateFormula::Kind::And);
  CHECK(g->lhs->kind == StateFormula::Kind::Not);

  // Double negation folds away.
  CHECK(formulas_equal(parse_state_formula("!!a"), f_prop("a")));
  CHECK(formulas_equal(parse_state_formula("!true"), f_false()));
}

TEST_CASE("unicode aliases") {
  auto f = parse_state_formula("⟨⟨I⟩⟩[≥1/2] ◇ p");
  CHECK(f->kind == StateFormula::Kind::Strategic);
  CHECK(f->cmp == Cmp::Ge);
  REQUIRE(f->path->kind == PathFormula::Kind::Until);
  auto g = parse_state_formula("a ∧ ¬ b");
  CHECK(g->kind == StateFormula::Kind::And);
}

TEST_CASE("parse errors carry positions") {
  CHECK_THROWS_AS(parse_state_formula("<<I>>[>2] X p"), ParseError);
  CHECK_THROWS_AS(parse_state_formula("p &"), ParseError);
  CHECK_THROWS_AS(parse_state_formula("<<III>>[>0] X p"), ParseError);
  CHECK_THROWS_AS(parse_state_formula("p q"), ParseError);
  CHECK_THROWS_AS(parse_path_formula("p"), ParseError);
  try {
    parse_state_formula("p & & q");
  } catch (const ParseError& e) {
    CHECK(e.pos == 4);
  }
}

TEST_CASE("print-parse round trip is a normalization fixpoint") {
  const char* cases[] = {
      "<<I>>[>0.9] (true U phi)",
      "<<I,II>>[>=1/2] X p",
      "<<>>[<1/3] (a U<=7 b & c)",
      "!p & (q | !r)",
      "<<II>>[>7/16] X (p | <<I>>[>=2/7] (p U q))",
  };
  for (const char* text : cases) {
    auto f = parse_state_formula(text);
    auto g = parse_state_formula(to_string(f));
    CHECK(formulas_equal(f, g));
    CHECK(to_string(f) == to_string(g));
  }
}

TEST_CASE("dualize examples") {
  // (>=, 3/4, F phi) becomes (<=, 1/4, G !phi).
  auto diamond = p_until(f_true(), f_prop("phi"), -1);
  Dualized d = dualize(Cmp::Ge, rat(3, 4), diamond);
  CHECK(d.cmp == Cmp::Le);
  CHECK(d.threshold == rat(1, 4));
  REQUIRE(d.path->kind == PathFormula::Kind::Release);
  CHECK(d.path->lhs->kind == StateFormula::Kind::False);
  CHECK(formulas_equal(d.path->rhs, f_not(f_prop("phi"))));

  // Involution.
  Dualized dd = dualize(d.cmp, d.threshold, d.path);
  CHECK(dd.cmp == Cmp::Ge);
  CHECK(dd.threshold == rat(3, 4));
  CHECK(paths_equal(dd.path, diamond));

  Dualized boundary = dualize(Cmp::Gt, Rat(0), p_next(f_prop("p")));
  CHECK(boundary.cmp == Cmp::Lt);
  CHECK(boundary.threshold == 1);
  CHECK(formulas_equal(boundary.path->rhs, f_not(f_prop("p"))));
}

TEST_CASE("fragment classification") {
  Coalition a = Coalition::I;

  auto strict = parse_state_formula("<<I>>[>0.5] (p U q)");
  auto tags = classify_fragment(strict, a);
  CHECK(has_tag(tags, FragmentTag::Kind::APatl));
  CHECK(has_tag(tags, FragmentTag::Kind::LIPlus));
  CHECK(has_tag(tags, FragmentTag::Kind::Full));

  // Unbounded until with >= is outside A-PATL but inside L_I^+.
  auto weak = parse_state_formula("<<I>>[>=0.5] (p U q)");
  tags = classify_fragment(weak, a);
  CHECK_FALSE(has_tag(tags, FragmentTag::Kind::APatl));
  CHECK(has_tag(tags, FragmentTag::Kind::LIPlus));

  // Negation above proposition level.
  auto negated = parse_state_formula("!(<<I>>[>0.5] X p)");
  tags = classify_fragment(negated, a);
  CHECK_FALSE(has_tag(tags, FragmentTag::Kind::APatl));
  CHECK(has_tag(tags, FragmentTag::Kind::LIPlus));

  // Bounded until with >= stays in A-PATL.
  auto bounded = parse_state_formula("<<I>>[>=0.5] (p U<=3 q)");
  CHECK(has_tag(classify_fragment(bounded, a), FragmentTag::Kind::APatl));

  // Coalition II is outside both I-fragments.
  auto wrong_player = parse_state_formula("<<II>>[>0.5] X p");
  tags = classify_fragment(wrong_player, a);
  CHECK_FALSE(has_tag(tags, FragmentTag::Kind::APatl));
  CHECK_FALSE(has_tag(tags, FragmentTag::Kind::LIPlus));
  CHECK(has_tag(classify_fragment(wrong_player, Coalition::II),
                FragmentTag::Kind::APatl));

  // Upper-bound comparisons leave A-PATL.
  auto upper = parse_state_formula("<<I>>[<=0.5] X p");
  CHECK_FALSE(has_tag(classify_fragment(upper, a), FragmentTag::Kind::APatl));
  CHECK(has_tag(classify_fragment(upper, a), FragmentTag::Kind::LIPlus));

  // Literals and disjunction are fine in A-PATL.
  auto literals = parse_state_formula("!p | q & r");
  CHECK(has_tag(classify_fragment(literals, a), FragmentTag::Kind::APatl));
}
