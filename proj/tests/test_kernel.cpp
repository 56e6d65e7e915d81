#include <doctest.h>

#include <algorithm>

#include "sequitur/matching.hpp"
#include "support.hpp"

using namespace sequitur;
using sequitur::test::builtin;
using sequitur::test::goal;
using sequitur::test::schema;

namespace {

ContextExpr ctx(std::vector<Formula> fs) { return ContextExpr({}, std::move(fs)); }

}  // namespace

TEST_CASE("formula size counts nodes") {
  const auto& ll = builtin("ll");
  CHECK(formula_size(Formula::atom("a")) == 1);
  CHECK(formula_size(parse_formula(builtin("lk"), "p and q")) == 3);
  CHECK(formula_size(parse_formula(ll, "a^ par b^")) == 3);
}

TEST_CASE("dual is an involution through the table") {
  const auto& ll = builtin("ll");
  Formula f = parse_formula(ll, "(a tensor bang b^) with top");
  Formula d = dual(f, ll.signature);
  CHECK(d == parse_formula(ll, "(a^ par quest b) plus zero"));
  CHECK(dual(d, ll.signature) == f);
  CHECK_THROWS_AS(dual(parse_formula(builtin("lk"), "p and q"), builtin("lk").signature),
                  KernelError);
}

TEST_CASE("subst_apply replaces variables") {
  const auto& lk = builtin("lk");
  Substitution s;
  s.bind("A", Formula::atom("p"));
  s.bind("B", Formula::atom("q"));
  CHECK(subst_apply(s, parse_formula(lk, "A and B"), lk.signature) ==
        parse_formula(lk, "p and q"));

  Sequent q = schema(lk, "(G |- D, A)");
  CHECK(subst_apply(Substitution{}, q, lk.signature) == q);

  Substitution t;
  t.bind("G", ctx({Formula::atom("p"), Formula::atom("q")}));
  t.bind("D", ContextExpr{});
  t.bind("A", Formula::atom("p"));
  CHECK(subst_apply(t, q, lk.signature) == goal(lk, "(p, q |- p)"));
}

TEST_CASE("subst_apply enforces guards") {
  const auto& s4 = builtin("s4");
  Sequent q = schema(s4, "(box G |- A)");
  Substitution ok;
  ok.bind("G", ctx({parse_formula(s4, "box p")}));
  ok.bind("A", Formula::atom("p"));
  CHECK(subst_apply(ok, q, s4.signature) == goal(s4, "(box p |- p)"));
  Substitution bad = ok;
  bad.bind("G", ctx({Formula::atom("p")}));
  CHECK_THROWS_AS(subst_apply(bad, q, s4.signature), GuardViolation);
}

TEST_CASE("subst_compose chains bindings") {
  const auto& lk = builtin("lk");
  Substitution s1, s2;
  s1.bind("A", Formula::var("B'"));
  s2.bind("B'", Formula::atom("p"));
  CHECK(subst_apply(subst_compose(s1, s2, lk.signature), Formula::var("A"), lk.signature) ==
        Formula::atom("p"));
  CHECK(subst_compose(s1, Substitution{}, lk.signature) == s1);

  Substitution c1, c2;
  c1.bind("G", ContextExpr({ContextVar{"D'", std::nullopt}}, {Formula::atom("p")}));
  c2.bind("D'", ctx({Formula::atom("q")}));
  Substitution c = subst_compose(c1, c2, lk.signature);
  CHECK(*c.context("G") == ctx({Formula::atom("p"), Formula::atom("q")}));

  Substitution x1, x2;
  x1.bind("A", Formula::atom("p"));
  x2.bind("A", Formula::atom("q"));
  CHECK_THROWS_AS(subst_compose(x1, x2, lk.signature), ConflictingBinding);
}

TEST_CASE("match_sequent: andR conclusion") {
  const auto& lk = builtin("lk");
  auto ms = match_sequent(lk.rule("andR").conclusion, goal(lk, "(p, q |- p and q)"),
                          lk.signature);
  REQUIRE(ms.size() == 1);
  CHECK(*ms[0].context("G") == ctx({Formula::atom("p"), Formula::atom("q")}));
  CHECK(ms[0].context("D")->empty());
  CHECK(*ms[0].formula("A") == Formula::atom("p"));
  CHECK(*ms[0].formula("B") == Formula::atom("q"));
}

TEST_CASE("match_sequent: tensor splits the linear context four ways") {
  const auto& ll = builtin("ll");
  auto ms = match_sequent(ll.rule("tensor").conclusion, goal(ll, "(|- . ; p, q, p tensor q)"),
                          ll.signature);
  CHECK(ms.size() == 4);
  for (const auto& m : ms) {
    CHECK(*m.formula("A") == Formula::atom("p"));
    CHECK(*m.formula("B") == Formula::atom("q"));
  }
}

TEST_CASE("match_sequent: duplicate occurrences collapse") {
  const auto& lk = builtin("lk");
  auto ms = match_sequent(lk.rule("init").conclusion, goal(lk, "(q, q |- q)"), lk.signature);
  REQUIRE(ms.size() == 1);
  CHECK(*ms[0].formula("p") == Formula::atom("q"));
  CHECK(*ms[0].context("G") == ctx({Formula::atom("q")}));
  CHECK(ms[0].context("D")->empty());
}

TEST_CASE("match_sequent treats target variables as rigid") {
  const auto& lk = builtin("lk");
  // The rigid A and B are opaque; init matches only on atoms.
  auto none = match_sequent(lk.rule("init").conclusion, schema(lk, "(G, A |- D, A)"),
                            lk.signature);
  CHECK(none.empty());
  auto ms = match_sequent(lk.rule("andR").conclusion, schema(lk, "(G |- D, A and B)"),
                          lk.signature);
  REQUIRE(ms.size() == 1);
  CHECK(*ms[0].context("G") == ContextExpr({ContextVar{"G", std::nullopt}}, {}));
}

TEST_CASE("unify_sequent: distinct principals") {
  const auto& lk = builtin("lk");
  Sequent a = schema(lk, "(G |- D, A and B)");
  Sequent b = rename_variables(schema(lk, "(G |- D, A or B)"), "'");
  auto cases = unify_sequent(a, b, lk.signature);
  REQUIRE(cases.size() == 1);
  CHECK(cases[0].pairings.empty());
  for (const auto& c : cases)
    CHECK(subst_apply(c.combined, a, lk.signature) == subst_apply(c.combined, b, lk.signature));
}

TEST_CASE("unify_sequent: shared principal appears") {
  const auto& lk = builtin("lk");
  Sequent a = schema(lk, "(G |- D, A)");
  Sequent b = rename_variables(a, "'");
  auto cases = unify_sequent(a, b, lk.signature);
  bool shared = std::any_of(cases.begin(), cases.end(),
                            [](const OverlapCase& c) { return c.pairings.size() == 1; });
  CHECK(shared);
  for (const auto& c : cases)
    CHECK(subst_apply(c.combined, a, lk.signature) == subst_apply(c.combined, b, lk.signature));
}

TEST_CASE("unify_sequent: no room beside bang") {
  const auto& ll = builtin("ll");
  Sequent bang = ll.rule("bang").conclusion;
  Sequent par = rename_variables(ll.rule("par").conclusion, "'");
  CHECK(unify_sequent(bang, par, ll.signature).empty());
}

TEST_CASE("matching is deterministic and insertion-order independent") {
  const auto& ll = builtin("ll");
  Sequent t1 = goal(ll, "(|- . ; p, q, p tensor q, q)");
  Sequent t2 = goal(ll, "(|- . ; q, p tensor q, q, p)");
  CHECK(t1 == t2);
  auto a = match_sequent(ll.rule("tensor").conclusion, t1, ll.signature);
  auto b = match_sequent(ll.rule("tensor").conclusion, t2, ll.signature);
  CHECK(a == b);
  CHECK(a.size() == 6);  // p goes left or right, and zero to two copies of q
}
