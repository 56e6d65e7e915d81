#include <doctest.h>

#include "support.hpp"

using namespace sequitur;
using sequitur::test::builtin;

namespace {

const char* kFragment =
    "zone L left weaken contract\n"
    "zone R right weaken contract\n"
    "conn and 2 \"#1 \\wedge #2\" prec 3\n"
    "axiom init : (G, p |- D, p)\n"
    "rule andR \"\\wedge_R\" : (G |- D, A) (G |- D, B) => (G |- D, A and B)\n"
    "rule andL : (G, A, B |- D) => (G, A and B |- D)\n";

std::vector<Diagnostic> diagnostics_of(const std::string& text) {
  try {
    parse_calculus(text);
  } catch (const CalculusError& e) {
    return e.diagnostics();
  }
  return {};
}

}  // namespace

TEST_CASE("LK fragment parses field by field") {
  CalculusSpec c = parse_calculus(kFragment);
  REQUIRE(c.zones.size() == 2);
  CHECK(c.zones[0].name == "L");
  CHECK(c.zones[0].side == Side::Antecedent);
  CHECK(c.zones[1].side == Side::Succedent);
  CHECK(c.zones[1].weakening);
  CHECK(c.signature.connectives().size() == 1);
  CHECK(c.signature.at("and").arity == 2);
  REQUIRE(c.rules.size() == 3);
  CHECK(c.rules[0].kind == RuleKind::Axiom);
  CHECK(c.rules[1].premises.size() == 2);
  CHECK(c.rules[1].label == "\\wedge_R");
  CHECK(c.rules[2].premises.size() == 1);
  CHECK(c.identityRule == "init");
  REQUIRE(c.rules[1].principal);
  CHECK(c.rules[1].principal->zone == 1);
  CHECK_FALSE(c.rules[0].principal);
}

TEST_CASE("empty text is a parse error at 1:1") {
  auto ds = diagnostics_of("");
  REQUIRE(ds.size() == 1);
  CHECK(ds[0].code == "ParseError");
  CHECK(ds[0].line == 1);
  CHECK(ds[0].column == 1);
}

TEST_CASE("unbound premise variable is rejected") {
  auto ds = diagnostics_of(std::string(kFragment) + "rule bad: (G |- A) => (G |- D)\n");
  REQUIRE(ds.size() == 1);
  CHECK(ds[0].code == "UnboundPremiseVariable");
  CHECK(ds[0].message.find("UnboundPremiseVariable(A)") != std::string::npos);
  CHECK(ds[0].line == 7);
}

TEST_CASE("diagnostics carry spans inside the input") {
  struct Bad {
    const char* extra;
    const char* code;
  };
  for (const Bad& b : {Bad{"rule andR : (G |- D, A) => (G |- D, A and A)", "DuplicateRuleName"},
                       Bad{"rule x : (G |- D, A) => (G |- D, A or A)", "UnknownConnective"},
                       Bad{"rule x : (G |- D, A) => (G |- D, and A)", "ArityMismatch"},
                       Bad{"rule x : (G |- D, A) => (G, A and A |- D, A and A)",
                           "AmbiguousPrincipal"},
                       Bad{"rule x : (G |- D) => (G |- D, A", "ParseError"},
                       Bad{"frobnicate", "ParseError"}}) {
    CAPTURE(b.extra);
    auto ds = diagnostics_of(std::string(kFragment) + b.extra + "\n");
    REQUIRE(ds.size() == 1);
    CHECK(ds[0].code == b.code);
    CHECK(ds[0].line == 7);
    CHECK(ds[0].column >= 1);
    CHECK(ds[0].column <= std::string(b.extra).size() + 1);
  }
}

TEST_CASE("missing identity rule") {
  auto ds = diagnostics_of(
      "zone L left\nzone R right\nrule r : (G |- D) => (G |- D, G2)\n");
  REQUIRE_FALSE(ds.empty());
  ds = diagnostics_of("zone R right\nconn one 0 \"1\"\naxiom one : (|- one)\n");
  REQUIRE(ds.size() == 1);
  CHECK(ds[0].code == "MissingIdentityRule");
}

TEST_CASE("duality must be an involution") {
  auto ds = diagnostics_of(
      "zone R right\nconn aa 0 \"a\"\nconn bb 0 \"b\"\nconn cc 0 \"c\"\n"
      "dual aa bb\ndual aa cc\naxiom init : (|- p, p^)\n");
  REQUIRE(ds.size() == 1);
  CHECK(ds[0].code == "DualConflict");
  CHECK(ds[0].line == 6);
}

TEST_CASE("built-in calculi parse without diagnostics") {
  CHECK(builtin("lk").rules.size() == 10);
  CHECK(builtin("ll").rules.size() == 13);
  CHECK(builtin("s4").rules.size() == 12);
  CHECK(builtin("ll").oneSided());
  CHECK(builtin("ll").signature.hasDuals());
}

TEST_CASE("canonical printer is a fixed point") {
  for (const char* name : {"lk", "ll", "s4"}) {
    CAPTURE(name);
    const CalculusSpec& c = builtin(name);
    std::string printed = print_calculus(c);
    std::string again = print_calculus(parse_calculus(printed));
    CHECK(printed == again);
  }
  CHECK(print_rule(builtin("lk"), builtin("lk").rule("andR")) ==
        "rule andR \"\\wedge_R\" : (G |- D, A) (G |- D, B) => (G |- D, A and B)");
  CHECK(print_rule(builtin("ll"), builtin("ll").rule("tensor")) ==
        "rule tensor \"\\otimes\" : (|- G ; D1, A) (|- G ; D2, B) => (|- G ; D1, D2, A tensor B)");
}

TEST_CASE("formula printing uses minimal parentheses") {
  const auto& lk = builtin("lk");
  for (const char* text : {"p and q or r", "p and (q or r)", "p imp q imp r", "(p imp q) imp r",
                           "not (p and q)", "not not p", "p and (q and r)"}) {
    CAPTURE(text);
    Formula f = parse_formula(lk, text);
    CHECK(print_formula(lk, f) == text);
    CHECK(parse_formula(lk, print_formula(lk, f)) == f);
  }
}

TEST_CASE("validate_cut") {
  const auto& lk = builtin("lk");
  CutDescriptor d = validate_cut(lk, "cut");
  CHECK(d.cutVar == "A");
  CHECK(d.leftSide == Side::Succedent);
  CHECK(d.rightSide == Side::Antecedent);
  CHECK_FALSE(d.dualLinked);
  CHECK_THROWS_AS(validate_cut(lk, "andR"), NotACut);

  CutDescriptor l = validate_cut(builtin("ll"), "cut");
  CHECK(l.cutVar == "A");
  CHECK(l.dualLinked);
  CHECK(l.left.zone == 1);
  CHECK(l.right.zone == 1);
}

TEST_CASE("goal syntax distinguishes atoms from atom variables") {
  const auto& lk = builtin("lk");
  CHECK(parse_formula(lk, "p", GoalSyntax::Goal).kind() == Formula::Kind::Atom);
  CHECK(parse_formula(lk, "p", GoalSyntax::Schema).kind() == Formula::Kind::AtomVar);
  CHECK(parse_formula(lk, "foo", GoalSyntax::Schema).kind() == Formula::Kind::Atom);
  CHECK(parse_formula(lk, "A1", GoalSyntax::Goal).kind() == Formula::Kind::FormulaVar);
  CHECK_THROWS_AS(parse_sequent(lk, "(p |- q"), CalculusError);
  CHECK_THROWS_AS(parse_sequent(lk, "(p |- q) x"), CalculusError);
}
