#pragma once

#include <map>
#include <optional>
#include <string>

#include "sequitur/formula.hpp"

namespace sequitur {

class GuardViolation : public KernelError {
 public:
  using KernelError::KernelError;
};

class ConflictingBinding : public KernelError {
 public:
  using KernelError::KernelError;
};

/// Finite map from formula/atom variables to formulas and from context
/// variables to context expressions. Application is simultaneous.
class Substitution {
 public:
  void bind(const std::string& var, Formula value);
  void bind(const std::string& contextVar, ContextExpr value);
  void erase(const std::string& var);

  const Formula* formula(const std::string& var) const;
  const ContextExpr* context(const std::string& var) const;

  const std::map<std::string, Formula>& formulas() const { return formulas_; }
  const std::map<std::string, ContextExpr>& contexts() const { return contexts_; }
  bool empty() const { return formulas_.empty() && contexts_.empty(); }

  friend bool operator==(const Substitution&, const Substitution&) = default;

 private:
  std::map<std::string, Formula> formulas_;
  std::map<std::string, ContextExpr> contexts_;
};

Formula subst_apply(const Substitution& s, const Formula& f, const Signature& sig);
ContextExpr subst_apply(const Substitution& s, const ContextExpr& c, const Signature& sig);
Sequent subst_apply(const Substitution& s, const Sequent& q, const Signature& sig);

/// Result r satisfies subst_apply(r, x) == subst_apply(s2, subst_apply(s1, x)).
/// Throws ConflictingBinding when both bind a variable differently.
Substitution subst_compose(const Substitution& s1, const Substitution& s2, const Signature& sig);

/// Checks that `value` may stand for a context variable carrying `guard`.
bool guard_accepts(const std::optional<std::string>& guard, const ContextExpr& value);

}  // namespace sequitur
