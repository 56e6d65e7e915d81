#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sequitur/calculus.hpp"
#include "sequitur/substitution.hpp"

namespace sequitur {

enum class GoalStatus { Open, Closed, Assumed };

const char* to_string(GoalStatus s);

struct ProofTree {
  Sequent sequent;
  std::optional<std::string> rule;
  std::optional<Substitution> substitution;
  std::vector<ProofTree> children;
  GoalStatus status = GoalStatus::Open;
  std::size_t goalId = 0;

  friend bool operator==(const ProofTree&, const ProofTree&) = default;
};

/// Number of open (not assumed) leaves.
std::size_t open_leaves(const ProofTree& t);
/// Longest chain of non-axiom rule applications.
std::size_t proof_depth(const ProofTree& t, const CalculusSpec& calc);

struct Application {
  std::string rule;
  Substitution substitution;
  std::vector<Sequent> premises;

  friend bool operator==(const Application&, const Application&) = default;
};

class ProofError : public std::runtime_error {
 public:
  ProofError(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

/// Every way `rule` concludes `goal`. For a cut rule the cut formula ranges
/// over `cutCandidates`, or over the subformulas of the goal when null.
std::vector<Application> enumerate_applications(const CalculusSpec& calc, const std::string& rule,
                                                const Sequent& goal,
                                                const std::vector<Formula>* cutCandidates = nullptr);

class ProofSession {
 public:
  ProofSession(std::shared_ptr<const CalculusSpec> calc, Sequent goal);

  const CalculusSpec& calculus() const { return *calc_; }
  const ProofTree& root() const { return history_.back(); }
  std::vector<const ProofTree*> openGoals() const;
  const ProofTree* goal(std::size_t goalId) const;
  bool complete() const { return open_leaves(root()) == 0; }
  std::size_t depth() const { return history_.size() - 1; }

  std::vector<Application> options(std::size_t goalId, const std::string& rule) const;
  void apply(std::size_t goalId, const Application& app);
  void apply(std::size_t goalId, const std::string& rule, std::size_t index);
  void undo();

 private:
  std::shared_ptr<const CalculusSpec> calc_;
  std::vector<ProofTree> history_;
  std::size_t nextGoalId_ = 1;
};

struct ProofVerdict {
  bool accepted = true;
  std::vector<std::size_t> path;  // child indices from the root to the failing node
  std::string code;
  std::string message;
};

/// Independent re-validation of every node. Assumed leaves are accepted only
/// when `allowAssumptions` is set.
ProofVerdict check_proof(const CalculusSpec& calc, const ProofTree& tree,
                         bool allowAssumptions = false);

using LeafAccept = std::function<bool(const Sequent&)>;

struct SearchOptions {
  std::size_t depth = 4;
  LeafAccept leafAccept;
  /// Rules to use; empty means every rule that is not a cut.
  std::vector<std::string> rules;
  /// When set, the root must be an application of this rule.
  std::optional<std::string> rootRule;
  /// Cut formulas the search may introduce. Cut rules are only tried when
  /// this is non-empty and `maxCutsPerBranch` > 0.
  std::vector<Formula> cutCandidates;
  std::size_t maxCutsPerBranch = 0;
  std::size_t nodeBudget = 2'000'000;
};

struct SearchResult {
  std::optional<ProofTree> proof;
  std::size_t nodes = 0;
  bool budgetExhausted = false;
};

SearchResult search(const CalculusSpec& calc, const Sequent& goal, const SearchOptions& options);

std::optional<ProofTree> bounded_search(const CalculusSpec& calc, const Sequent& goal,
                                        std::size_t depth, const LeafAccept& leafAccept = {});

}  // namespace sequitur
