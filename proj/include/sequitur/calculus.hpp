#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sequitur/formula.hpp"

namespace sequitur {

enum class Side { Antecedent, Succedent };

struct ZoneDecl {
  std::string name;
  Side side = Side::Succedent;
  bool weakening = false;
  bool contraction = false;
};

enum class RuleKind { Logical, Structural, Axiom, Cut };

const char* to_string(RuleKind k);

/// Location of a formula occurrence inside a sequent schema.
struct Occurrence {
  std::size_t zone;
  std::size_t index;  // into the zone's canonical formula list
};

struct RuleDecl {
  std::string name;
  std::string label;  // LaTeX; empty means \mathsf{name}
  RuleKind kind = RuleKind::Logical;
  std::vector<Sequent> premises;
  Sequent conclusion;
  /// The unique non-variable formula of the conclusion, when there is one.
  std::optional<Occurrence> principal;
};

struct Diagnostic {
  std::size_t line = 1;
  std::size_t column = 1;
  std::string code;  // ParseError, UnknownConnective, ArityMismatch, ...
  std::string message;
};

class CalculusError : public std::runtime_error {
 public:
  explicit CalculusError(std::vector<Diagnostic> diagnostics);
  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

class CalculusSpec {
 public:
  std::string name;
  std::vector<ZoneDecl> zones;
  Signature signature;
  std::vector<RuleDecl> rules;
  std::string identityRule;

  const RuleDecl* findRule(std::string_view rule) const;
  const RuleDecl& rule(std::string_view rule) const;
  std::optional<std::size_t> zoneIndex(std::string_view zone) const;
  std::size_t antecedentCount() const;
  bool oneSided() const { return antecedentCount() == 0; }
  /// Cut rules, in declaration order.
  std::vector<const RuleDecl*> cutRules() const;
};

/// Parses and validates calculus text. Throws CalculusError carrying every
/// diagnostic found.
CalculusSpec parse_calculus(std::string_view text);

enum class GoalSyntax {
  Schema,  // lowercase single letters are atom variables
  Goal,    // lowercase identifiers are atoms
};

/// Parses one sequent, e.g. "(p, q |- p and q)", against the zones and
/// connectives of `calculus`.
Sequent parse_sequent(const CalculusSpec& calculus, std::string_view text,
                      GoalSyntax syntax = GoalSyntax::Goal);
Formula parse_formula(const CalculusSpec& calculus, std::string_view text,
                      GoalSyntax syntax = GoalSyntax::Goal);

/// Canonical plain-text serialization: single spaces, declaration order.
std::string print_calculus(const CalculusSpec& calculus);
std::string print_rule(const CalculusSpec& calculus, const RuleDecl& rule);
std::string print_sequent(const CalculusSpec& calculus, const Sequent& s);
std::string print_formula(const CalculusSpec& calculus, const Formula& f);

/// Whether binary argument `child` of `parent` needs parentheses (left
/// argument when `isLeft`). Equal precedence only groups a connective with
/// itself, in its declared direction.
bool needs_parens(const Signature& sig, const Connective& parent, const Formula& child,
                  bool isLeft);

struct CutDescriptor {
  std::string rule;
  std::string cutVar;
  Occurrence left;   // occurrence in premise 0
  Occurrence right;  // occurrence in premise 1
  Side leftSide;
  Side rightSide;
  bool dualLinked;   // premise 1 holds the dual of the cut formula
};

class NotACut : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

CutDescriptor validate_cut(const CalculusSpec& calculus, std::string_view ruleName);

}  // namespace sequitur
