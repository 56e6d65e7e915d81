#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace sequitur {

class KernelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A connective of the object logic. `display` is a LaTeX template whose
/// slots are written #1 .. #n.
struct Connective {
  std::string name;
  std::size_t arity = 0;
  std::string display;
  std::optional<std::string> dual;
  int precedence = 0;  // binary connectives only; higher binds tighter
  bool rightAssoc = false;
};

/// Connective table of a calculus. Lookup by name.
class Signature {
 public:
  void add(Connective c);
  void setDual(const std::string& a, const std::string& b);

  const Connective* find(const std::string& name) const;
  const Connective& at(const std::string& name) const;
  const std::vector<Connective>& connectives() const { return ordered_; }
  bool hasDuals() const;

 private:
  std::vector<Connective> ordered_;
  std::map<std::string, std::size_t> index_;
};

enum class Polarity : unsigned char { Positive, Negated };

inline Polarity flip(Polarity p) {
  return p == Polarity::Positive ? Polarity::Negated : Polarity::Positive;
}

/// Immutable formula tree with shared structure. Atoms and variables carry a
/// polarity so that one-sided calculi can stay in negation normal form.
class Formula {
 public:
  enum class Kind : unsigned char { Atom, AtomVar, FormulaVar, App };

  static Formula atom(std::string name, Polarity p = Polarity::Positive);
  static Formula atomVar(std::string name, Polarity p = Polarity::Positive);
  static Formula var(std::string name, Polarity p = Polarity::Positive);
  static Formula app(std::string connective, std::vector<Formula> args);

  Kind kind() const { return node_->kind; }
  /// Atom or variable name, or the connective name of an application.
  const std::string& name() const { return node_->name; }
  Polarity polarity() const { return node_->polarity; }
  bool negated() const { return node_->polarity == Polarity::Negated; }
  std::span<const Formula> args() const { return node_->args; }
  std::size_t size() const { return node_->size; }

  bool isVariable() const {
    return kind() == Kind::AtomVar || kind() == Kind::FormulaVar;
  }
  bool isAtomic() const { return kind() == Kind::Atom || kind() == Kind::AtomVar; }
  bool isGround() const { return node_->ground; }

  Formula withPolarity(Polarity p) const;

  friend bool operator==(const Formula& a, const Formula& b);
  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b);

 private:
  struct Node {
    Kind kind;
    std::string name;
    Polarity polarity;
    std::vector<Formula> args;
    std::size_t size;
    bool ground;
  };
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// Number of nodes; atoms and variables count 1.
std::size_t formula_size(const Formula& f);

/// De Morgan dual through the signature's duality table.
Formula dual(const Formula& f, const Signature& sig);

/// Proper and improper subformulas, canonical order, without duplicates.
std::vector<Formula> subformulas(const Formula& f);

struct ContextVar {
  std::string name;
  std::optional<std::string> guard;  // unary connective name

  friend bool operator==(const ContextVar&, const ContextVar&) = default;
  friend auto operator<=>(const ContextVar&, const ContextVar&) = default;
};

/// A multiset of context variables and formulas. Both parts are kept sorted,
/// so structural equality is multiset equality.
class ContextExpr {
 public:
  ContextExpr() = default;
  ContextExpr(std::vector<ContextVar> vars, std::vector<Formula> formulas);

  const std::vector<ContextVar>& vars() const { return vars_; }
  const std::vector<Formula>& formulas() const { return formulas_; }
  bool empty() const { return vars_.empty() && formulas_.empty(); }
  std::size_t itemCount() const { return vars_.size() + formulas_.size(); }

  void add(Formula f);
  void add(ContextVar v);
  void merge(const ContextExpr& other);
  /// Removes one occurrence of every item of `other`; false if not contained.
  bool subtract(const ContextExpr& other);
  bool contains(const ContextExpr& other) const;

  friend bool operator==(const ContextExpr&, const ContextExpr&) = default;
  friend std::strong_ordering operator<=>(const ContextExpr& a, const ContextExpr& b);

 private:
  std::vector<ContextVar> vars_;
  std::vector<Formula> formulas_;
};

/// Zones in the order the calculus declares them; zone names live in the
/// calculus.
struct Sequent {
  std::vector<ContextExpr> zones;

  bool isGround() const;
  friend bool operator==(const Sequent&, const Sequent&) = default;
  friend std::strong_ordering operator<=>(const Sequent& a, const Sequent& b);
};

/// Variable occurrences, used for containment checks and renaming.
struct VariableSet {
  std::vector<std::string> formulaVars;  // formula and atom variables
  std::vector<std::string> contextVars;

  bool hasFormulaVar(const std::string& n) const;
  bool hasContextVar(const std::string& n) const;
};

void collect_variables(const Formula& f, VariableSet& out);
void collect_variables(const ContextExpr& c, VariableSet& out);
void collect_variables(const Sequent& s, VariableSet& out);

/// Appends `suffix` to every variable name.
Formula rename_variables(const Formula& f, const std::string& suffix);
ContextExpr rename_variables(const ContextExpr& c, const std::string& suffix);
Sequent rename_variables(const Sequent& s, const std::string& suffix);

}  // namespace sequitur
