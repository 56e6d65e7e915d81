#include <doctest.h>

#include "sequitur/matching.hpp"
#include "sequitur/proof.hpp"
#include "support.hpp"

using namespace sequitur;
using sequitur::test::builtin;
using sequitur::test::goal;

namespace {

std::shared_ptr<const CalculusSpec> lk_ptr() {
  static auto p = std::make_shared<const CalculusSpec>(builtin("lk"));
  return p;
}

ProofTree hand_built_and_proof() {
  const auto& lk = builtin("lk");
  ProofSession s(lk_ptr(), goal(lk, "(p |- p and p)"));
  s.apply(1, "andR", 0);
  s.apply(2, "init", 0);
  s.apply(3, "init", 0);
  return s.root();
}

}  // namespace

TEST_CASE("enumerate_applications") {
  const auto& ll = builtin("ll");
  const auto& lk = builtin("lk");
  CHECK(enumerate_applications(ll, "tensor", goal(ll, "(|- . ; p, q, p tensor q)")).size() == 4);
  CHECK(enumerate_applications(lk, "andR", goal(lk, "(p |- q)")).empty());
  auto init = enumerate_applications(lk, "init", goal(lk, "(p, q |- p)"));
  REQUIRE(init.size() == 1);
  CHECK(init[0].premises.empty());
  CHECK_THROWS_AS(enumerate_applications(lk, "nope", goal(lk, "(p |- p)")), ProofError);
}

TEST_CASE("cut applications range over subformulas of the goal") {
  const auto& lk = builtin("lk");
  auto apps = enumerate_applications(lk, "cut", goal(lk, "(p and q |- q)"));
  CHECK(apps.size() == 3);  // p, q, p and q
  std::vector<Formula> only{Formula::atom("r")};
  auto one = enumerate_applications(lk, "cut", goal(lk, "(p |- q)"), &only);
  REQUIRE(one.size() == 1);
  CHECK(one[0].premises[0] == goal(lk, "(p |- q, r)"));
  CHECK(one[0].premises[1] == goal(lk, "(p, r |- q)"));

  const auto& ll = builtin("ll");
  std::vector<Formula> a{parse_formula(ll, "a tensor b")};
  auto lcut = enumerate_applications(ll, "cut", goal(ll, "(|- . ; c)"), &a);
  REQUIRE(lcut.size() == 2);
  CHECK(lcut[0].premises[1].zones[1].formulas().back() == parse_formula(ll, "a^ par b^"));
}

TEST_CASE("session: apply, complete, undo") {
  const auto& lk = builtin("lk");
  ProofSession s(lk_ptr(), goal(lk, "(p |- p and p)"));
  const ProofTree initial = s.root();
  s.apply(1, "andR", 0);
  auto open = s.openGoals();
  REQUIRE(open.size() == 2);
  CHECK(open[0]->sequent == goal(lk, "(p |- p)"));
  CHECK(open[1]->sequent == goal(lk, "(p |- p)"));
  CHECK(open[0]->goalId == 2);
  CHECK(open[1]->goalId == 3);

  s.apply(2, "init", 0);
  CHECK(s.openGoals().size() == 1);
  CHECK(s.goal(3) != nullptr);  // untouched goal keeps its id
  s.apply(3, "init", 0);
  CHECK(s.complete());

  s.undo();
  s.undo();
  s.undo();
  CHECK(s.root() == initial);
  s.undo();
  CHECK(s.root() == initial);

  s.apply(1, "andR", 0);
  const ProofTree mid = s.root();
  s.apply(4, "init", 0);
  s.undo();
  CHECK(s.root() == mid);
  s.undo();
  try {
    s.apply(4, "init", 0);
    FAIL("expected StaleGoal");
  } catch (const ProofError& e) {
    CHECK(e.code() == "StaleGoal");
  }
  try {
    s.apply(1, "orR", 0);
    FAIL("expected IllegalApplication");
  } catch (const ProofError& e) {
    CHECK(e.code() == "IllegalApplication");
  }
}

TEST_CASE("check_proof") {
  const auto& lk = builtin("lk");
  ProofTree t = hand_built_and_proof();
  CHECK(check_proof(lk, t).accepted);

  ProofTree bad = t;
  bad.children[1].sequent = goal(lk, "(q |- p)");
  ProofVerdict v = check_proof(lk, bad);
  CHECK_FALSE(v.accepted);
  CHECK(v.path == std::vector<std::size_t>{1});

  ProofTree open = t;
  open.children[0] = ProofTree{open.children[0].sequent, {}, {}, {}, GoalStatus::Open, 9};
  v = check_proof(lk, open);
  CHECK_FALSE(v.accepted);
  CHECK(v.code == "OpenGoal");
  CHECK(v.path == std::vector<std::size_t>{0});
}

TEST_CASE("bounded_search examples") {
  const auto& lk = builtin("lk");
  auto t = bounded_search(lk, goal(lk, "(p |- p)"), 1);
  REQUIRE(t);
  CHECK(t->children.empty());
  CHECK(*t->rule == "init");

  CHECK_FALSE(bounded_search(lk, goal(lk, "(p |- q)"), 5));

  // Identity leaves on strictly smaller formulas.
  Sequent g = goal(lk, "(a and b |- a and b)");
  auto smaller = [&](const Sequent& s) {
    for (const auto& f : s.zones[0].formulas())
      if (f.size() < 3 && s.zones[1].contains(ContextExpr({}, {f}))) return true;
    return false;
  };
  SearchOptions opt;
  opt.depth = 2;
  opt.leafAccept = smaller;
  opt.rules = {"andR", "andL"};
  auto found = search(lk, g, opt).proof;
  REQUIRE(found);
  CHECK(*found->rule == "andR");
  CHECK(check_proof(lk, *found, true).accepted);
  CHECK_FALSE(check_proof(lk, *found, false).accepted);
  REQUIRE(found->children.size() == 2);
  CHECK(*found->children[0].rule == "andL");
  CHECK(found->children[0].children[0].status == GoalStatus::Assumed);
  CHECK(found->children[0].children[0].sequent == goal(lk, "(a, b |- a)"));
}

TEST_CASE("search is sound on LK tautologies") {
  const auto& lk = builtin("lk");
  for (const char* text : {"(|- p or not p)", "(p imp q, q imp r |- p imp r)",
                           "(p and q |- q and p)", "(not (p or q) |- not p and not q)"}) {
    CAPTURE(text);
    auto t = bounded_search(lk, goal(lk, text), 6);
    REQUIRE(t);
    CHECK(check_proof(lk, *t).accepted);
  }
}

TEST_CASE("root rule restriction") {
  const auto& lk = builtin("lk");
  SearchOptions opt;
  opt.depth = 3;
  opt.rootRule = "impR";
  auto t = search(lk, goal(lk, "(p |- q imp p)"), opt).proof;
  REQUIRE(t);
  CHECK(*t->rule == "impR");
}

TEST_CASE("schematic search closes with rigid variables") {
  const auto& s4 = builtin("s4");
  Sequent g = sequitur::test::schema(s4, "(box G, box p |- D, box p)");
  auto t = bounded_search(s4, g, 3);
  REQUIRE(t);
  CHECK(check_proof(s4, *t).accepted);
}
