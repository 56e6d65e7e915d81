#include <algorithm>

#include "doctest.h"
#include "sequitur/metatheory.hpp"
#include "support.hpp"

using namespace sequitur;
using namespace sequitur::test;

namespace {

const CaseResult* find_case(const CheckReport& r, const std::string& id) {
  for (const auto& c : r.cases)
    if (c.id == id) return &c;
  return nullptr;
}

void all_witnesses_check(const CalculusSpec& calc, const CheckReport& r) {
  for (const auto& c : r.cases)
    for (const auto& w : c.witnesses) {
      INFO(r.property << " " << c.id);
      CHECK(witness_checks(calc, w));
    }
}

bool same(const CheckReport& a, const CheckReport& b) {
  if (a.cases.size() != b.cases.size() || a.notes != b.notes) return false;
  for (std::size_t i = 0; i < a.cases.size(); ++i) {
    const auto& x = a.cases[i];
    const auto& y = b.cases[i];
    if (x.id != y.id || x.status != y.status || x.notes != y.notes ||
        x.description != y.description || x.witnesses.size() != y.witnesses.size())
      return false;
    for (std::size_t k = 0; k < x.witnesses.size(); ++k)
      if (!(x.witnesses[k].derivation == y.witnesses[k].derivation) ||
          x.witnesses[k].before != y.witnesses[k].before)
        return false;
  }
  return true;
}

std::size_t formulas_in(const Sequent& s, std::size_t zone) {
  return s.zones[zone].formulas().size();
}

}  // namespace

TEST_CASE("identity expansion on LK") {
  const auto& lk = builtin("lk");
  const auto r = check_identity_expansion(lk, 2);
  CHECK(r.cases.size() == 4);
  CHECK(r.summary().allProved());
  for (const char* c : {"and", "or", "imp", "not"}) {
    const CaseResult* cr = find_case(r, c);
    REQUIRE(cr);
    REQUIRE(cr->witnesses.size() == 1);
    CHECK(proof_depth(cr->witnesses[0].derivation, lk) <= 2);
  }
  all_witnesses_check(lk, r);
}

TEST_CASE("identity expansion on LL needs depth 3 for the exponentials") {
  const auto& ll = builtin("ll");
  const auto shallow = check_identity_expansion(ll, 2);
  for (const char* c : {"tensor", "par", "with", "plus"})
    CHECK(find_case(shallow, c)->status == CaseStatus::Proved);
  const auto deep = check_identity_expansion(ll, 3);
  CHECK(deep.summary().allProved());
  for (const char* c : {"bang", "quest"})
    CHECK(proof_depth(find_case(deep, c)->witnesses[0].derivation, ll) <= 3);
  all_witnesses_check(ll, deep);
}

TEST_CASE("weakening admissibility") {
  const auto& lk = builtin("lk");
  const auto r = check_weakening_admissibility(lk);
  CHECK(r.cases.size() == lk.rules.size() * 2);
  CHECK(r.summary().allProved());
  all_witnesses_check(lk, r);

  const auto& ll = builtin("ll");
  const auto l = check_weakening_admissibility(ll);
  const CaseResult* promo = find_case(l, "bang/L");
  REQUIRE(promo);
  CHECK(promo->status == CaseStatus::Unknown);
  CHECK(find_case(l, "tensor/L")->status == CaseStatus::Proved);
  CHECK(l.summary().failed == 0);
  CHECK(check_weakening_admissibility(builtin("s4")).summary().allProved());
}

TEST_CASE("invertibility") {
  const auto& lk = builtin("lk");
  for (const auto& rule : lk.rules) {
    if (rule.kind == RuleKind::Cut) continue;
    const auto r = check_invertibility(lk, rule.name, 3);
    INFO(rule.name);
    CHECK(r.summary().allProved());
    all_witnesses_check(lk, r);
  }
  const auto& ll = builtin("ll");
  CHECK_FALSE(check_invertibility(ll, "plus1", 3).summary().allProved());
  CHECK_FALSE(check_invertibility(ll, "plus2", 3).summary().allProved());
  CHECK(check_invertibility(ll, "par", 3).summary().allProved());
  CHECK(check_invertibility(ll, "with", 3).summary().allProved());
  CHECK_THROWS_AS(check_invertibility(lk, "nope", 3), ProofError);
}

TEST_CASE("permutability case counts match hand enumeration on the LK and/or fragment") {
  // Unifying a premise of ruleDown with the conclusion of ruleUp: the principal
  // formula of ruleUp either lands in ruleDown's context variable or is one of
  // the m formula variables of that premise on the same side. m + 1 cases.
  const auto& lk = builtin("lk");
  const std::vector<std::string> rules = {"andL", "andR", "orL", "orR"};
  for (const auto& up : rules)
    for (const auto& down : rules) {
      const RuleDecl& u = lk.rule(up);
      const RuleDecl& d = lk.rule(down);
      std::size_t expected = 0;
      for (const auto& p : d.premises) expected += formulas_in(p, u.principal->zone) + 1;
      const auto r = check_permutability(lk, up, down, 2);
      INFO(up << " above " << down);
      CHECK(r.cases.size() == expected);
      CHECK(r.summary().failed == 0);
      all_witnesses_check(lk, r);
    }
}

TEST_CASE("permutability on LL and S4") {
  const auto& ll = builtin("ll");
  const auto r = check_permutability(ll, "par", "tensor", 2);
  CHECK(r.summary().proved >= 2);
  all_witnesses_check(ll, r);
  const auto q = check_permutability(ll, "quest", "bang", 2);
  CHECK_FALSE(q.summary().allProved());
  const auto& s4 = builtin("s4");
  const auto n = check_permutability(s4, "andL", "boxR", 2);
  CHECK(n.cases.empty());
  CHECK(n.notes == "no interaction");
}

TEST_CASE("cut elimination on LK") {
  const auto& lk = builtin("lk");
  const auto r = check_cut_elimination(lk, "cut", 4);
  const CutDescriptor d = validate_cut(lk, "cut");
  CHECK(r.summary("principal").allProved());
  CHECK(r.summary("atomic").allProved());
  CHECK(r.summary("commutative").failed == 0);
  CHECK(r.summary("commutative").proved * 10 >= r.summary("commutative").total() * 9);
  for (const auto& c : r.cases) {
    if (c.family != "principal") continue;
    REQUIRE(c.witnesses.size() == 1);
    const auto& w = c.witnesses[0];
    REQUIRE(w.before);
    const std::size_t bound = w.before->substitution->formula(d.cutVar)->size();
    std::vector<const ProofTree*> stack{&w.derivation};
    while (!stack.empty()) {
      const ProofTree* t = stack.back();
      stack.pop_back();
      if (t->rule && lk.rule(*t->rule).kind == RuleKind::Cut)
        CHECK(t->substitution->formula(d.cutVar)->size() < bound);
      for (const auto& ch : t->children) stack.push_back(&ch);
    }
  }
  all_witnesses_check(lk, r);
}

TEST_CASE("cut elimination on LL leaves promotion open") {
  const auto& ll = builtin("ll");
  const auto r = check_cut_elimination(ll, "cut", 4);
  CHECK(r.summary().failed == 0);
  const bool promotion = std::any_of(r.cases.begin(), r.cases.end(), [](const CaseResult& c) {
    return c.family == "commutative" && c.status == CaseStatus::Unknown &&
           c.id.find("bang") != std::string::npos;
  });
  CHECK(promotion);
  all_witnesses_check(ll, r);
  CHECK_THROWS_AS(check_cut_elimination(ll, "par", 4), NotACut);
}

TEST_CASE("checkers are deterministic") {
  const auto& lk = builtin("lk");
  CHECK(same(check_cut_elimination(lk, "cut", 4), check_cut_elimination(lk, "cut", 4)));
  const auto& ll = builtin("ll");
  CHECK(same(check_identity_expansion(ll, 3), check_identity_expansion(ll, 3)));
  CHECK(same(check_invertibility(ll, "tensor", 3), check_invertibility(ll, "tensor", 3)));
}
