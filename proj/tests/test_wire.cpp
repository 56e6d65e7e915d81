#include "doctest.h"
#include "sequitur/wire.hpp"
#include "support.hpp"

using namespace sequitur;
using namespace sequitur::test;

TEST_CASE("reports round-trip losslessly") {
  const auto& lk = builtin("lk");
  const auto& ll = builtin("ll");
  const std::vector<std::pair<const CalculusSpec*, CheckReport>> reports = {
      {&lk, check_cut_elimination(lk, "cut", 4)},
      {&ll, check_identity_expansion(ll, 3)},
      {&ll, check_weakening_admissibility(ll)},
      {&ll, check_permutability(ll, "par", "tensor", 2)},
  };
  for (const auto& [calc, r] : reports) {
    const Json j = report_to_wire(*calc, r);
    const CheckReport back = report_from_wire(Json::parse(dump(j)));
    CHECK(back == r);
    CHECK(dump(report_to_wire(*calc, back)) == dump(j));
  }
}

TEST_CASE("wire report carries summary and LaTeX") {
  const auto& lk = builtin("lk");
  const auto r = check_identity_expansion(lk, 2);
  const Json j = report_to_wire(lk, r);
  CHECK(j["summary"]["proved"] == 4);
  CHECK(j["summary"]["total"] == 4);
  CHECK(j["cases"][0]["witnesses"][0]["latex"]["derivation"].get<std::string>() ==
        render_proof(lk, r.cases[0].witnesses[0].derivation));
}

TEST_CASE("session trees round-trip") {
  const auto& lk = builtin("lk");
  ProofSession s(std::make_shared<const CalculusSpec>(lk), goal(lk, "(p, q |- p and q)"));
  s.apply(s.openGoals()[0]->goalId, "andR", 0);
  const ProofTree t = s.root();
  CHECK(tree_from_wire(to_wire(lk, t)) == t);
  const Formula f = parse_formula(lk, "A' imp not p", GoalSyntax::Schema);
  CHECK(formula_from_wire(to_wire(lk, f)) == f);
}

TEST_CASE("malformed wire input") {
  CHECK_THROWS_AS(formula_from_wire(Json::parse(R"({"kind":"atom"})")), WireError);
  CHECK_THROWS_AS(formula_from_wire(Json::parse(R"({"kind":"blob","name":"p"})")), WireError);
  CHECK_THROWS_AS(report_from_wire(Json::parse("[]")), WireError);
}

TEST_CASE("calculus and application encodings") {
  const auto& ll = builtin("ll");
  const Json c = calculus_to_wire(ll);
  CHECK(c["rules"].size() == ll.rules.size());
  CHECK(c["rules"][0]["name"] == "init");
  const Sequent g = goal(ll, "(|- . ; p, q, p tensor q)");
  const auto apps = enumerate_applications(ll, "tensor", g);
  REQUIRE(apps.size() == 4);
  const Json a = application_to_wire(ll, g, 2, apps[2]);
  CHECK(a["index"] == 2);
  CHECK(a["premises"].size() == 2);
  CHECK(a["latex"].get<std::string>().rfind("\\infer[\\otimes]", 0) == 0);
  CHECK(sequent_from_wire(a["premises"][0]) == apps[2].premises[0]);
}
