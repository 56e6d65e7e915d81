#include "sequitur/matching.hpp"

#include <algorithm>
#include <functional>

namespace sequitur {

namespace {

// ---------------------------------------------------------------------------
// One-way matching against a rigid target.

bool match_formula(const Formula& pat, const Formula& tgt, Substitution& s,
                   const Signature& sig) {
  switch (pat.kind()) {
    case Formula::Kind::Atom:
      return tgt.kind() == Formula::Kind::Atom && tgt.name() == pat.name() &&
             tgt.polarity() == pat.polarity();
    case Formula::Kind::AtomVar: {
      if (tgt.kind() != Formula::Kind::Atom && tgt.kind() != Formula::Kind::AtomVar) return false;
      Formula value = pat.negated() ? tgt.withPolarity(flip(tgt.polarity())) : tgt;
      if (value.negated()) return false;
      if (const Formula* b = s.formula(pat.name())) return *b == value;
      s.bind(pat.name(), value);
      return true;
    }
    case Formula::Kind::FormulaVar: {
      Formula value = tgt;
      if (pat.negated()) {
        try {
          value = dual(tgt, sig);
        } catch (const KernelError&) {
          return false;
        }
      }
      if (const Formula* b = s.formula(pat.name())) return *b == value;
      s.bind(pat.name(), value);
      return true;
    }
    case Formula::Kind::App: {
      if (tgt.kind() != Formula::Kind::App || tgt.name() != pat.name() ||
          tgt.args().size() != pat.args().size())
        return false;
      for (std::size_t i = 0; i < pat.args().size(); ++i)
        if (!match_formula(pat.args()[i], tgt.args()[i], s, sig)) return false;
      return true;
    }
  }
  return false;
}

// Cheap necessary condition, checked before copying a substitution.
bool head_compatible(const Formula& pat, const Formula& tgt) {
  switch (pat.kind()) {
    case Formula::Kind::Atom:
    case Formula::Kind::AtomVar:
      return tgt.kind() == Formula::Kind::Atom || tgt.kind() == Formula::Kind::AtomVar;
    case Formula::Kind::FormulaVar:
      return true;
    case Formula::Kind::App:
      return tgt.kind() == Formula::Kind::App && tgt.name() == pat.name();
  }
  return false;
}

bool var_accepts(const ContextVar& v, const ContextVar& item) { return !v.guard || v.guard == item.guard; }

bool var_accepts(const ContextVar& v, const Formula& item) {
  return !v.guard || (item.kind() == Formula::Kind::App && item.name() == *v.guard);
}

class Matcher {
 public:
  Matcher(const Sequent& pattern, const Sequent& target, const Signature& sig)
      : pattern_(pattern), target_(target), sig_(sig) {}

  std::vector<Substitution> run() {
    if (pattern_.zones.size() != target_.zones.size())
      throw KernelError("pattern and target have different zone counts");
    for (std::size_t z = 0; z < pattern_.zones.size(); ++z) {
      const auto& tf = target_.zones[z].formulas();
      if (pattern_.zones[z].formulas().size() > tf.size()) return {};
      for (const auto& p : pattern_.zones[z].formulas())
        if (std::none_of(tf.begin(), tf.end(), [&](const Formula& t) { return head_compatible(p, t); }))
          return {};
    }
    zone(0, Substitution{});
    std::vector<Substitution> unique;
    unique.reserve(results_.size());
    for (auto& s : results_)
      if (std::find(unique.begin(), unique.end(), s) == unique.end()) unique.push_back(std::move(s));
    return unique;
  }

 private:
  void zone(std::size_t z, Substitution s) {
    if (z == pattern_.zones.size()) {
      results_.push_back(std::move(s));
      return;
    }
    std::vector<bool> used(target_.zones[z].formulas().size(), false);
    formulas(z, 0, used, s);
  }

  void formulas(std::size_t z, std::size_t i, std::vector<bool>& used, const Substitution& s) {
    const auto& pf = pattern_.zones[z].formulas();
    const auto& tf = target_.zones[z].formulas();
    if (i == pf.size()) {
      distribute(z, used, s);
      return;
    }
    for (std::size_t j = 0; j < tf.size(); ++j) {
      if (used[j]) continue;
      if (j > 0 && tf[j] == tf[j - 1] && !used[j - 1]) continue;
      if (!head_compatible(pf[i], tf[j])) continue;
      Substitution next = s;
      if (!match_formula(pf[i], tf[j], next, sig_)) continue;
      used[j] = true;
      formulas(z, i + 1, used, next);
      used[j] = false;
    }
  }

  void distribute(std::size_t z, const std::vector<bool>& used, const Substitution& s) {
    const ContextExpr& tz = target_.zones[z];
    std::vector<Formula> rest;
    rest.reserve(tz.formulas().size());
    for (std::size_t j = 0; j < tz.formulas().size(); ++j)
      if (!used[j]) rest.push_back(tz.formulas()[j]);
    ContextExpr remaining(tz.vars(), std::move(rest));

    std::vector<ContextVar> open;
    for (const auto& v : pattern_.zones[z].vars()) {
      if (const ContextExpr* b = s.context(v.name)) {
        if (!remaining.subtract(*b)) return;
      } else {
        open.push_back(v);
      }
    }
    if (open.empty()) {
      if (remaining.empty()) zone(z + 1, s);
      return;
    }
    const std::size_t nv = remaining.vars().size();
    const std::size_t n = remaining.itemCount();
    if (open.size() == 1) {
      for (std::size_t i = 0; i < n; ++i)
        if (!(i < nv ? var_accepts(open[0], remaining.vars()[i])
                     : var_accepts(open[0], remaining.formulas()[i - nv])))
          return;
      Substitution next = s;
      next.bind(open[0].name, std::move(remaining));
      zone(z + 1, std::move(next));
      return;
    }

    // Items: rigid variables first, then formulas. Item 0 is the least
    // significant digit of the split counter.
    std::vector<std::size_t> choice(n, 0);
    std::function<void(std::size_t)> assign = [&](std::size_t k) {
      if (k == 0) {
        std::vector<std::vector<ContextVar>> vars(open.size());
        std::vector<std::vector<Formula>> fs(open.size());
        for (std::size_t i = 0; i < n; ++i) {
          if (i < nv)
            vars[choice[i]].push_back(remaining.vars()[i]);
          else
            fs[choice[i]].push_back(remaining.formulas()[i - nv]);
        }
        Substitution next = s;
        for (std::size_t v = 0; v < open.size(); ++v)
          next.bind(open[v].name, ContextExpr(std::move(vars[v]), std::move(fs[v])));
        zone(z + 1, std::move(next));
        return;
      }
      const std::size_t item = k - 1;
      for (std::size_t v = 0; v < open.size(); ++v) {
        bool ok = item < nv ? var_accepts(open[v], remaining.vars()[item])
                            : var_accepts(open[v], remaining.formulas()[item - nv]);
        if (!ok) continue;
        choice[item] = v;
        assign(k - 1);
      }
    };
    assign(n);
  }

  const Sequent& pattern_;
  const Sequent& target_;
  const Signature& sig_;
  std::vector<Substitution> results_;
};

// ---------------------------------------------------------------------------
// Schematic unification.

bool occurs(const std::string& name, const Formula& f) {
  if (f.isVariable()) return f.name() == name;
  for (const auto& a : f.args())
    if (occurs(name, a)) return true;
  return false;
}

void extend(Substitution& s, const std::string& var, const Formula& value, const Signature& sig) {
  Substitution single;
  single.bind(var, value);
  Substitution updated;
  for (const auto& [k, v] : s.formulas()) updated.bind(k, subst_apply(single, v, sig));
  for (const auto& [k, v] : s.contexts()) updated.bind(k, subst_apply(single, v, sig));
  updated.bind(var, value);
  s = std::move(updated);
}

void extend(Substitution& s, const std::string& var, const ContextExpr& value,
            const Signature& sig) {
  Substitution single;
  single.bind(var, value);
  Substitution updated;
  for (const auto& [k, v] : s.formulas()) updated.bind(k, v);
  for (const auto& [k, v] : s.contexts()) updated.bind(k, subst_apply(single, v, sig));
  updated.bind(var, value);
  s = std::move(updated);
}

// Binds variable occurrence `v` so that it equals `t`.
bool bind_variable(const Formula& v, const Formula& t, Substitution& s, const Signature& sig) {
  Formula value = t;
  if (v.negated()) {
    try {
      value = dual(t, sig);
    } catch (const KernelError&) {
      return false;
    }
  }
  if (v.kind() == Formula::Kind::AtomVar) {
    if (value.kind() != Formula::Kind::Atom && value.kind() != Formula::Kind::AtomVar) return false;
    if (value.negated()) return false;
  }
  if (occurs(v.name(), value)) return false;
  extend(s, v.name(), value, sig);
  return true;
}

bool unify_resolved(const Formula& a, const Formula& b, Substitution& s, const Signature& sig) {
  if (a == b) return true;
  const bool av = a.isVariable();
  const bool bv = b.isVariable();
  if (av && bv && a.name() == b.name()) return false;  // same variable, opposite polarity
  if (av && bv) {
    // A formula variable may take an atom variable, never the converse.
    if (a.kind() == Formula::Kind::FormulaVar && b.kind() == Formula::Kind::AtomVar)
      return bind_variable(a, b, s, sig);
    return bind_variable(b, a, s, sig);
  }
  if (bv) return bind_variable(b, a, s, sig);
  if (av) return bind_variable(a, b, s, sig);
  if (a.kind() != Formula::Kind::App || b.kind() != Formula::Kind::App) return false;
  if (a.name() != b.name() || a.args().size() != b.args().size()) return false;
  for (std::size_t i = 0; i < a.args().size(); ++i)
    if (!unify_formula(a.args()[i], b.args()[i], s, sig)) return false;
  return true;
}

struct TaggedFormula {
  Formula formula;
  long tag;  // index into the original zone, -1 for material from a bound variable
};

struct ZoneSide {
  std::vector<ContextVar> vars;
  std::vector<TaggedFormula> formulas;
};

ZoneSide expand(const ContextExpr& zone, const Substitution& s, const Signature& sig) {
  ZoneSide out;
  for (const auto& v : zone.vars()) {
    if (const ContextExpr* b = s.context(v.name)) {
      for (const auto& w : b->vars()) out.vars.push_back(w);
      for (const auto& f : b->formulas()) out.formulas.push_back({f, -1});
    } else {
      out.vars.push_back(v);
    }
  }
  for (std::size_t i = 0; i < zone.formulas().size(); ++i)
    out.formulas.push_back({subst_apply(s, zone.formulas()[i], sig), static_cast<long>(i)});
  return out;
}

std::optional<std::optional<std::string>> combine_guards(const std::optional<std::string>& a,
                                                         const std::optional<std::string>& b) {
  if (!a) return b;
  if (!b || *a == *b) return a;
  return std::nullopt;  // incompatible
}

struct UnifyState {
  Substitution s;
  std::size_t fresh;
  std::vector<Pairing> pairings;
};

class Unifier {
 public:
  Unifier(const Sequent& left, const Sequent& right, const Signature& sig)
      : left_(left), right_(right), sig_(sig) {}

  std::vector<OverlapCase> run(const Substitution& initial, FreshNames fresh) {
    if (left_.zones.size() != right_.zones.size())
      throw KernelError("schemas have different zone counts");
    collect_variables(left_, leftVars_);
    collect_variables(right_, rightVars_);
    zone(0, UnifyState{initial, fresh.next, {}});
    std::vector<OverlapCase> unique;
    for (auto& c : results_) {
      bool dup = std::any_of(unique.begin(), unique.end(), [&](const OverlapCase& u) {
        return u.left == c.left && u.right == c.right;
      });
      if (!dup) unique.push_back(std::move(c));
    }
    return unique;
  }

 private:
  struct Assignment {
    std::vector<std::vector<Formula>> toRight;  // per right var: absorbed left formulas
    std::vector<std::vector<Formula>> toLeft;   // per left var: absorbed right formulas
  };

  void zone(std::size_t z, UnifyState st) {
    if (z == left_.zones.size()) {
      finish(std::move(st));
      return;
    }
    ZoneSide l = expand(left_.zones[z], st.s, sig_);
    ZoneSide r = expand(right_.zones[z], st.s, sig_);
    // Multiset union is cancellative: shared variables drop out.
    for (auto it = l.vars.begin(); it != l.vars.end();) {
      auto jt = std::find(r.vars.begin(), r.vars.end(), *it);
      if (jt != r.vars.end()) {
        r.vars.erase(jt);
        it = l.vars.erase(it);
      } else {
        ++it;
      }
    }
    Assignment as{std::vector<std::vector<Formula>>(r.vars.size()),
                  std::vector<std::vector<Formula>>(l.vars.size())};
    std::vector<bool> used(r.formulas.size(), false);
    leftItems(z, l, r, 0, used, as, std::move(st));
  }

  // A formula occurrence absorbed by a guarded variable must carry the guard.
  bool absorb(const std::optional<std::string>& guard, const Formula& f, UnifyState& st) {
    if (!guard) return true;
    const Connective* c = sig_.find(*guard);
    if (!c || c->arity != 1) return false;
    Formula shape = Formula::app(*guard, {Formula::var("F~" + std::to_string(st.fresh++))});
    return unify_formula(f, shape, st.s, sig_);
  }

  void leftItems(std::size_t z, const ZoneSide& l, const ZoneSide& r, std::size_t i,
                 std::vector<bool>& used, Assignment& as, const UnifyState& st) {
    if (i == l.formulas.size()) {
      rightItems(z, l, r, 0, used, as, st);
      return;
    }
    const auto& f = l.formulas[i];
    for (std::size_t j = 0; j < r.formulas.size(); ++j) {
      if (used[j]) continue;
      UnifyState next = st;
      if (!unify_formula(f.formula, r.formulas[j].formula, next.s, sig_)) continue;
      if (f.tag >= 0 && r.formulas[j].tag >= 0)
        next.pairings.push_back({z, static_cast<std::size_t>(f.tag),
                                 static_cast<std::size_t>(r.formulas[j].tag)});
      used[j] = true;
      leftItems(z, l, r, i + 1, used, as, next);
      used[j] = false;
    }
    for (std::size_t v = 0; v < r.vars.size(); ++v) {
      UnifyState next = st;
      if (!absorb(r.vars[v].guard, f.formula, next)) continue;
      as.toRight[v].push_back(f.formula);
      leftItems(z, l, r, i + 1, used, as, next);
      as.toRight[v].pop_back();
    }
  }

  void rightItems(std::size_t z, const ZoneSide& l, const ZoneSide& r, std::size_t j,
                  std::vector<bool>& used, Assignment& as, const UnifyState& st) {
    if (j == r.formulas.size()) {
      bindZone(z, l, r, as, st);
      return;
    }
    if (used[j]) {
      rightItems(z, l, r, j + 1, used, as, st);
      return;
    }
    for (std::size_t v = 0; v < l.vars.size(); ++v) {
      UnifyState next = st;
      if (!absorb(l.vars[v].guard, r.formulas[j].formula, next)) continue;
      as.toLeft[v].push_back(r.formulas[j].formula);
      rightItems(z, l, r, j + 1, used, as, next);
      as.toLeft[v].pop_back();
    }
  }

  void bindZone(std::size_t z, const ZoneSide& l, const ZoneSide& r, const Assignment& as,
                UnifyState st) {
    std::vector<ContextExpr> lc(l.vars.size());
    std::vector<ContextExpr> rc(r.vars.size());
    for (std::size_t a = 0; a < l.vars.size(); ++a) {
      for (std::size_t b = 0; b < r.vars.size(); ++b) {
        auto g = combine_guards(l.vars[a].guard, r.vars[b].guard);
        if (!g) continue;
        ContextVar shared{"S~" + std::to_string(st.fresh++), *g};
        lc[a].add(shared);
        rc[b].add(shared);
      }
    }
    for (std::size_t a = 0; a < l.vars.size(); ++a)
      for (const auto& f : as.toLeft[a]) lc[a].add(subst_apply(st.s, f, sig_));
    for (std::size_t b = 0; b < r.vars.size(); ++b)
      for (const auto& f : as.toRight[b]) rc[b].add(subst_apply(st.s, f, sig_));
    for (std::size_t a = 0; a < l.vars.size(); ++a) {
      if (!guard_accepts(l.vars[a].guard, lc[a])) return;
      extend(st.s, l.vars[a].name, lc[a], sig_);
    }
    for (std::size_t b = 0; b < r.vars.size(); ++b) {
      ContextExpr content = subst_apply(st.s, rc[b], sig_);
      if (!guard_accepts(r.vars[b].guard, content)) return;
      extend(st.s, r.vars[b].name, content, sig_);
    }
    zone(z + 1, std::move(st));
  }

  void finish(UnifyState st) {
    OverlapCase c;
    for (const auto& [k, v] : st.s.formulas()) {
      if (leftVars_.hasFormulaVar(k)) c.left.bind(k, v);
      if (rightVars_.hasFormulaVar(k)) c.right.bind(k, v);
    }
    for (const auto& [k, v] : st.s.contexts()) {
      if (leftVars_.hasContextVar(k)) c.left.bind(k, v);
      if (rightVars_.hasContextVar(k)) c.right.bind(k, v);
    }
    c.combined = std::move(st.s);
    c.pairings = std::move(st.pairings);
    c.nextFresh = st.fresh;
    results_.push_back(std::move(c));
  }

  const Sequent& left_;
  const Sequent& right_;
  const Signature& sig_;
  VariableSet leftVars_;
  VariableSet rightVars_;
  std::vector<OverlapCase> results_;
};

}  // namespace

std::vector<Substitution> match_sequent(const Sequent& pattern, const Sequent& target,
                                        const Signature& sig) {
  return Matcher(pattern, target, sig).run();
}

bool unify_formula(const Formula& a, const Formula& b, Substitution& s, const Signature& sig) {
  try {
    return unify_resolved(subst_apply(s, a, sig), subst_apply(s, b, sig), s, sig);
  } catch (const KernelError&) {
    return false;
  }
}

std::vector<OverlapCase> unify_sequent(const Sequent& left, const Sequent& right,
                                       const Signature& sig, const Substitution& initial,
                                       FreshNames fresh) {
  return Unifier(left, right, sig).run(initial, fresh);
}

}  // namespace sequitur
