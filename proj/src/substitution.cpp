#include "sequitur/substitution.hpp"

namespace sequitur {

void Substitution::bind(const std::string& var, Formula value) {
  formulas_.insert_or_assign(var, std::move(value));
}

void Substitution::bind(const std::string& contextVar, ContextExpr value) {
  contexts_.insert_or_assign(contextVar, std::move(value));
}

void Substitution::erase(const std::string& var) {
  formulas_.erase(var);
  contexts_.erase(var);
}

const Formula* Substitution::formula(const std::string& var) const {
  auto it = formulas_.find(var);
  return it == formulas_.end() ? nullptr : &it->second;
}

const ContextExpr* Substitution::context(const std::string& var) const {
  auto it = contexts_.find(var);
  return it == contexts_.end() ? nullptr : &it->second;
}

bool guard_accepts(const std::optional<std::string>& guard, const ContextExpr& value) {
  if (!guard) return true;
  for (const auto& v : value.vars())
    if (v.guard != guard) return false;
  for (const auto& f : value.formulas())
    if (f.kind() != Formula::Kind::App || f.name() != *guard) return false;
  return true;
}

Formula subst_apply(const Substitution& s, const Formula& f, const Signature& sig) {
  if (s.empty() || f.isGround()) return f;
  switch (f.kind()) {
    case Formula::Kind::Atom:
      return f;
    case Formula::Kind::AtomVar:
    case Formula::Kind::FormulaVar: {
      const Formula* b = s.formula(f.name());
      if (!b) return f;
      if (f.kind() == Formula::Kind::AtomVar && !b->isAtomic() &&
          b->kind() != Formula::Kind::FormulaVar)
        throw KernelError("atom variable '" + f.name() + "' bound to a compound formula");
      return f.negated() ? dual(*b, sig) : *b;
    }
    case Formula::Kind::App: {
      std::vector<Formula> args;
      args.reserve(f.args().size());
      for (const auto& a : f.args()) args.push_back(subst_apply(s, a, sig));
      return Formula::app(f.name(), std::move(args));
    }
  }
  return f;
}

ContextExpr subst_apply(const Substitution& s, const ContextExpr& c, const Signature& sig) {
  if (s.empty()) return c;
  ContextExpr out;
  for (const auto& v : c.vars()) {
    const ContextExpr* b = s.context(v.name);
    if (!b) {
      out.add(v);
      continue;
    }
    if (!guard_accepts(v.guard, *b))
      throw GuardViolation("context variable '" + v.name + "' guarded by '" + *v.guard +
                           "' receives non-conforming material");
    out.merge(*b);
  }
  for (const auto& f : c.formulas()) out.add(subst_apply(s, f, sig));
  return out;
}

Sequent subst_apply(const Substitution& s, const Sequent& q, const Signature& sig) {
  Sequent out;
  out.zones.reserve(q.zones.size());
  for (const auto& z : q.zones) out.zones.push_back(subst_apply(s, z, sig));
  return out;
}

Substitution subst_compose(const Substitution& s1, const Substitution& s2, const Signature& sig) {
  Substitution out;
  for (const auto& [k, v] : s1.formulas()) {
    if (const Formula* other = s2.formula(k); other && !(*other == v))
      throw ConflictingBinding("variable '" + k + "' bound differently");
    out.bind(k, subst_apply(s2, v, sig));
  }
  for (const auto& [k, v] : s1.contexts()) {
    if (const ContextExpr* other = s2.context(k); other && !(*other == v))
      throw ConflictingBinding("context variable '" + k + "' bound differently");
    out.bind(k, subst_apply(s2, v, sig));
  }
  for (const auto& [k, v] : s2.formulas())
    if (!s1.formula(k)) out.bind(k, v);
  for (const auto& [k, v] : s2.contexts())
    if (!s1.context(k)) out.bind(k, v);
  return out;
}

}  // namespace sequitur
