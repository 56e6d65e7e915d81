#include "doctest.h"
#include "oracles.hpp"
#include "sequitur/matching.hpp"
#include "sequitur/proof.hpp"
#include "support.hpp"

using namespace sequitur;
using namespace sequitur::test;

namespace {

bool eval(const Formula& f, bool p, bool q) {
  if (f.kind() == Formula::Kind::Atom) return f.name() == "p" ? p : q;
  const auto a = f.args();
  if (f.name() == "not") return !eval(a[0], p, q);
  const bool x = eval(a[0], p, q);
  const bool y = eval(a[1], p, q);
  if (f.name() == "and") return x && y;
  if (f.name() == "or") return x || y;
  return !x || y;
}

bool valid(const oracle::Ground& g) {
  for (int v = 0; v < 4; ++v) {
    bool l = true, r = false;
    for (const auto& f : g.left) l = l && eval(f, v & 1, v & 2);
    for (const auto& f : g.right) r = r || eval(f, v & 1, v & 2);
    if (l && !r) return false;
  }
  return true;
}

std::vector<Formula> lk_atoms() { return {Formula::atom("p"), Formula::atom("q")}; }

}  // namespace

TEST_CASE("ground prover agrees with truth tables") {
  const auto& lk = builtin("lk");
  oracle::GroundProver prover;
  std::size_t n = 0;
  oracle::for_each_sequent(lk, lk_atoms(), 3, 2, [&](const Sequent& s) {
    const auto g = oracle::ground_of(s);
    CHECK(prover.provable(g, 6) == valid(g));
    ++n;
  });
  CHECK(n > 1000);
}

TEST_CASE("oracle rule semantics agree with the LK file") {
  const auto& lk = builtin("lk");
  oracle::for_each_sequent(lk, lk_atoms(), 3, 2, [&](const Sequent& s) {
    for (const char* rule : {"andR", "andL", "orR", "orL", "impR", "impL", "notL", "notR"}) {
      std::set<std::vector<oracle::Ground>> engine;
      for (const auto& app : enumerate_applications(lk, rule, s)) {
        std::vector<oracle::Ground> ps;
        for (const auto& p : app.premises) ps.push_back(oracle::ground_of(p));
        engine.insert(ps);
      }
      const auto hand = oracle::lk_premises(rule, oracle::ground_of(s));
      CHECK(std::set<std::vector<oracle::Ground>>(hand.begin(), hand.end()) == engine);
    }
  });
}

TEST_CASE("formula levels count") {
  const auto& lk = builtin("lk");
  const auto levels = oracle::formula_levels(lk, lk_atoms(), 2);
  CHECK(levels[0].size() == 2);
  CHECK(levels[1].size() == 2 + 3 * 4);
  CHECK(levels[2].size() == 14 + 3 * (2 * 14 + 14 * 2));
}

TEST_CASE("brute-force matching agrees on small LK goals") {
  const auto& lk = builtin("lk");
  oracle::for_each_sequent(lk, lk_atoms(), 3, 1, [&](const Sequent& s) {
    for (const auto& r : lk.rules) {
      std::set<oracle::Binding> engine;
      for (const auto& m : match_sequent(r.conclusion, s, lk.signature))
        engine.insert(oracle::binding_of(m));
      CHECK(engine == oracle::brute_matches(r.conclusion, s));
    }
  });
}

TEST_CASE("matching agrees with brute force on LL goals with free atom negation") {
  const auto& ll = builtin("ll");
  const Formula p = Formula::atom("p"), q = Formula::atom("q");
  std::size_t goals = 0, mismatches = 0;
  oracle::for_each_sequent(
      ll, {p, q, p.withPolarity(Polarity::Negated), q.withPolarity(Polarity::Negated)}, 4, 2,
      [&](const Sequent& s) {
        ++goals;
        for (const auto& r : ll.rules) {
          const auto engine = match_sequent(r.conclusion, s, ll.signature);
          std::set<oracle::Binding> got;
          for (const auto& m : engine) got.insert(oracle::binding_of(m));
          if (got.size() != engine.size() || got != oracle::brute_matches(r.conclusion, s)) {
            if (mismatches++ == 0) FAIL_CHECK(r.name << " on " << print_sequent(ll, s));
          }
        }
      });
  CHECK(mismatches == 0);
  CHECK(goals > 1'000'000);
}
