// Brute-force reference implementations. Nothing here calls the matcher,
// the unifier or the proof search of the library.
#pragma once

#include <functional>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "sequitur/calculus.hpp"
#include "sequitur/substitution.hpp"

namespace sequitur::oracle {

// ---------------------------------------------------------------------------
// Ground formulas and sequents

/// levels[n] holds every formula over `literals` with exactly n connective
/// occurrences, for n <= maxConnectives. A negated literal costs
/// `negationCost` connectives.
inline std::vector<std::vector<Formula>> formula_levels(const CalculusSpec& calc,
                                                        const std::vector<Formula>& literals,
                                                        std::size_t maxConnectives,
                                                        std::size_t negationCost = 0) {
  std::vector<std::vector<Formula>> levels(maxConnectives + 1);
  for (const auto& l : literals) {
    const std::size_t cost = l.negated() ? negationCost : 0;
    if (cost <= maxConnectives) levels[cost].push_back(l);
  }
  for (std::size_t n = 1; n <= maxConnectives; ++n)
    for (const auto& c : calc.signature.connectives()) {
      if (c.arity == 0 && n == 1) levels[n].push_back(Formula::app(c.name, {}));
      if (c.arity == 1)
        for (const auto& a : levels[n - 1]) levels[n].push_back(Formula::app(c.name, {a}));
      if (c.arity == 2)
        for (std::size_t k = 0; k < n; ++k)
          for (const auto& a : levels[k])
            for (const auto& b : levels[n - 1 - k]) levels[n].push_back(Formula::app(c.name, {a, b}));
    }
  return levels;
}

inline std::size_t connectives_in(const Formula& f) {
  if (f.kind() != Formula::Kind::App) return 0;
  std::size_t n = 1;
  for (const auto& a : f.args()) n += connectives_in(a);
  return n;
}

/// Calls `visit` on every ground sequent with at most `maxFormulas` formula
/// occurrences and at most `maxConnectives` connective occurrences in total.
inline void for_each_sequent(const CalculusSpec& calc, const std::vector<Formula>& literals,
                             std::size_t maxFormulas, std::size_t maxConnectives,
                             const std::function<void(const Sequent&)>& visit,
                             std::size_t negationCost = 0) {
  struct Item {
    std::size_t zone;
    Formula f;
    std::size_t cost;
  };
  std::vector<Item> items;
  const auto levels = formula_levels(calc, literals, maxConnectives, negationCost);
  for (std::size_t z = 0; z < calc.zones.size(); ++z)
    for (std::size_t n = 0; n <= maxConnectives; ++n)
      for (const auto& f : levels[n]) items.push_back({z, f, n});
  std::vector<std::size_t> chosen;
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t from, std::size_t budget) {
    Sequent s;
    s.zones.resize(calc.zones.size());
    for (std::size_t i : chosen) s.zones[items[i].zone].add(items[i].f);
    visit(s);
    if (chosen.size() == maxFormulas) return;
    for (std::size_t i = from; i < items.size(); ++i) {
      if (items[i].cost > budget) continue;
      chosen.push_back(i);
      rec(i, budget - items[i].cost);
      chosen.pop_back();
    }
  };
  rec(0, maxConnectives);
}

// ---------------------------------------------------------------------------
// Matching by exhaustive assignment of target occurrences to pattern slots

struct Binding {
  std::map<std::string, Formula> formulas;
  std::map<std::string, ContextExpr> contexts;
  friend bool operator==(const Binding&, const Binding&) = default;
  friend auto operator<=>(const Binding&, const Binding&) = default;
};

inline Binding binding_of(const Substitution& s) { return {s.formulas(), s.contexts()}; }

namespace detail {

inline bool match_formula(const Formula& p, const Formula& t, std::map<std::string, Formula>& env) {
  switch (p.kind()) {
    case Formula::Kind::Atom:
      return p == t;
    case Formula::Kind::AtomVar:
    case Formula::Kind::FormulaVar: {
      if (p.kind() == Formula::Kind::AtomVar && t.kind() != Formula::Kind::Atom) return false;
      Formula value = t;
      if (p.negated()) {
        if (t.kind() != Formula::Kind::Atom || !t.negated()) return false;
        value = t.withPolarity(Polarity::Positive);
      }
      auto [it, fresh] = env.emplace(p.name(), value);
      return fresh || it->second == value;
    }
    case Formula::Kind::App: {
      if (t.kind() != Formula::Kind::App || t.name() != p.name()) return false;
      const auto pa = p.args();
      const auto ta = t.args();
      if (pa.size() != ta.size()) return false;
      for (std::size_t i = 0; i < pa.size(); ++i)
        if (!match_formula(pa[i], ta[i], env)) return false;
      return true;
    }
  }
  return false;
}

}  // namespace detail

/// All matches of `pattern` against ground `target`, as printable bindings.
inline std::set<Binding> brute_matches(const Sequent& pattern,
                                       const Sequent& target) {
  std::set<Binding> out;
  const std::size_t nz = pattern.zones.size();
  std::function<void(std::size_t, std::map<std::string, Formula>, std::map<std::string, ContextExpr>)>
      zone = [&](std::size_t z, std::map<std::string, Formula> env,
                 std::map<std::string, ContextExpr> ctx) {
        if (z == nz) {
          out.insert(Binding{std::move(env), std::move(ctx)});
          return;
        }
        const auto& slots = pattern.zones[z].formulas();
        const auto& vars = pattern.zones[z].vars();
        const auto& occ = target.zones[z].formulas();
        const std::size_t choices = slots.size() + vars.size();
        std::vector<std::size_t> pick(occ.size(), 0);
        if (choices == 0) {
          if (occ.empty()) zone(z + 1, env, ctx);
          return;
        }
        for (;;) {
          std::vector<int> used(slots.size(), -1);
          bool good = true;
          for (std::size_t i = 0; i < occ.size() && good; ++i)
            if (pick[i] < slots.size()) {
              if (used[pick[i]] >= 0) good = false;
              used[pick[i]] = static_cast<int>(i);
            }
          for (int u : used) good = good && u >= 0;
          if (good) {
            auto env2 = env;
            auto ctx2 = ctx;
            for (std::size_t s = 0; s < slots.size() && good; ++s)
              good = detail::match_formula(slots[s], occ[used[s]], env2);
            std::vector<ContextExpr> values(vars.size());
            for (std::size_t i = 0; i < occ.size() && good; ++i) {
              if (pick[i] < slots.size()) continue;
              const ContextVar& v = vars[pick[i] - slots.size()];
              if (v.guard && !(occ[i].kind() == Formula::Kind::App && occ[i].name() == *v.guard))
                good = false;
              values[pick[i] - slots.size()].add(occ[i]);
            }
            for (std::size_t k = 0; k < vars.size() && good; ++k) {
              auto [it, fresh] = ctx2.emplace(vars[k].name, values[k]);
              good = fresh || it->second == values[k];
            }
            if (good) zone(z + 1, std::move(env2), std::move(ctx2));
          }
          std::size_t i = 0;
          while (i < pick.size() && ++pick[i] == choices) pick[i++] = 0;
          if (i == pick.size()) break;
        }
      };
  zone(0, {}, {});
  return out;
}

// ---------------------------------------------------------------------------
// Ground classical provability, written directly against the G3 rules

struct Ground {
  std::multiset<Formula> left, right;
  friend bool operator<(const Ground& a, const Ground& b) {
    return std::tie(a.left, a.right) < std::tie(b.left, b.right);
  }
  friend bool operator==(const Ground&, const Ground&) = default;
};

inline Ground ground_of(const Sequent& s) {
  Ground g;
  for (const auto& f : s.zones[0].formulas()) g.left.insert(f);
  for (const auto& f : s.zones[1].formulas()) g.right.insert(f);
  return g;
}

/// Premise lists of every application of the named LK rule to `g`.
inline std::vector<std::vector<Ground>> lk_premises(const std::string& rule, const Ground& g) {
  std::vector<std::vector<Ground>> out;
  const bool leftRule = rule == "andL" || rule == "orL" || rule == "impL" || rule == "notL";
  const std::string conn = rule.substr(0, rule.size() - 1);
  const auto& side = leftRule ? g.left : g.right;
  std::set<Formula> seen;
  for (const auto& f : side) {
    if (f.kind() != Formula::Kind::App || f.name() != conn || !seen.insert(f).second) continue;
    Ground rest = g;
    auto& restSide = leftRule ? rest.left : rest.right;
    restSide.erase(restSide.find(f));
    const auto a = f.args();
    auto with = [&](std::vector<Formula> l, std::vector<Formula> r) {
      Ground p = rest;
      p.left.insert(l.begin(), l.end());
      p.right.insert(r.begin(), r.end());
      return p;
    };
    if (rule == "andR") out.push_back({with({}, {a[0]}), with({}, {a[1]})});
    if (rule == "andL") out.push_back({with({a[0], a[1]}, {})});
    if (rule == "orR") out.push_back({with({}, {a[0], a[1]})});
    if (rule == "orL") out.push_back({with({a[0]}, {}), with({a[1]}, {})});
    if (rule == "impR") out.push_back({with({a[0]}, {a[1]})});
    if (rule == "impL") out.push_back({with({}, {a[0]}), with({a[1]}, {})});
    if (rule == "notL") out.push_back({with({}, {a[0]})});
    if (rule == "notR") out.push_back({with({a[0]}, {})});
  }
  return out;
}

/// Tries every rule on every formula; no invertibility shortcuts.
class GroundProver {
 public:
  bool provable(const Ground& g, std::size_t depth) {
    for (const auto& f : g.left)
      if (f.kind() == Formula::Kind::Atom && g.right.count(f)) return true;
    if (depth == 0) return false;
    auto key = std::make_pair(g, depth);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    bool ok = false;
    for (const char* r : {"andR", "andL", "orR", "orL", "impR", "impL", "notL", "notR"}) {
      for (const auto& ps : lk_premises(r, g)) {
        ok = true;
        for (const auto& p : ps) ok = ok && provable(p, depth - 1);
        if (ok) break;
      }
      if (ok) break;
    }
    memo_[key] = ok;
    return ok;
  }

 private:
  std::map<std::pair<Ground, std::size_t>, bool> memo_;
};

}  // namespace sequitur::oracle
