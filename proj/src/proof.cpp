#include "sequitur/proof.hpp"

#include <algorithm>
#include <set>

#include "sequitur/matching.hpp"

namespace sequitur {

const char* to_string(GoalStatus s) {
  switch (s) {
    case GoalStatus::Open:
      return "open";
    case GoalStatus::Closed:
      return "closed";
    case GoalStatus::Assumed:
      return "assumed";
  }
  return "open";
}

std::size_t open_leaves(const ProofTree& t) {
  if (t.status == GoalStatus::Open) return 1;
  std::size_t n = 0;
  for (const auto& c : t.children) n += open_leaves(c);
  return n;
}

std::size_t proof_depth(const ProofTree& t, const CalculusSpec& calc) {
  if (!t.rule || t.status != GoalStatus::Closed) return 0;
  const RuleDecl* r = calc.findRule(*t.rule);
  std::size_t below = 0;
  for (const auto& c : t.children) below = std::max(below, proof_depth(c, calc));
  return below + (r && r->kind == RuleKind::Axiom ? 0 : 1);
}

namespace {

std::vector<Formula> goal_subformulas(const Sequent& goal) {
  std::set<Formula> all;
  for (const auto& z : goal.zones)
    for (const auto& f : z.formulas())
      for (auto& s : subformulas(f))
        all.insert(s.kind() == Formula::Kind::App ? s : s.withPolarity(Polarity::Positive));
  return {all.begin(), all.end()};
}

}  // namespace

std::vector<Application> enumerate_applications(const CalculusSpec& calc, const std::string& rule,
                                                const Sequent& goal,
                                                const std::vector<Formula>* cutCandidates) {
  const RuleDecl* r = calc.findRule(rule);
  if (!r) throw ProofError("UnknownRule", "unknown rule '" + rule + "'");
  std::vector<Application> out;
  auto matches = match_sequent(r->conclusion, goal, calc.signature);
  std::optional<std::string> cutVar;
  std::vector<Formula> owned;
  if (r->kind == RuleKind::Cut) {
    cutVar = validate_cut(calc, rule).cutVar;
    if (!cutCandidates) {
      owned = goal_subformulas(goal);
      cutCandidates = &owned;
    }
  }
  for (auto& m : matches) {
    if (cutVar) {
      for (const auto& c : *cutCandidates) {
        Substitution s = m;
        s.bind(*cutVar, c);
        Application app{rule, s, {}};
        try {
          for (const auto& p : r->premises)
            app.premises.push_back(subst_apply(s, p, calc.signature));
        } catch (const KernelError&) {
          continue;  // no dual for this candidate
        }
        out.push_back(std::move(app));
      }
      continue;
    }
    Application app{rule, m, {}};
    for (const auto& p : r->premises) app.premises.push_back(subst_apply(m, p, calc.signature));
    out.push_back(std::move(app));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Sessions

namespace {

ProofTree* find_goal(ProofTree& t, std::size_t id) {
  if (t.status == GoalStatus::Open && t.children.empty())
    return t.goalId == id ? &t : nullptr;
  for (auto& c : t.children)
    if (ProofTree* g = find_goal(c, id)) return g;
  return nullptr;
}

void collect_open(const ProofTree& t, std::vector<const ProofTree*>& out) {
  if (t.status == GoalStatus::Open) {
    out.push_back(&t);
    return;
  }
  for (const auto& c : t.children) collect_open(c, out);
}

}  // namespace

ProofSession::ProofSession(std::shared_ptr<const CalculusSpec> calc, Sequent goal)
    : calc_(std::move(calc)) {
  ProofTree root;
  root.sequent = std::move(goal);
  root.goalId = nextGoalId_++;
  history_.push_back(std::move(root));
}

std::vector<const ProofTree*> ProofSession::openGoals() const {
  std::vector<const ProofTree*> out;
  collect_open(root(), out);
  return out;
}

const ProofTree* ProofSession::goal(std::size_t goalId) const {
  return find_goal(const_cast<ProofTree&>(root()), goalId);
}

std::vector<Application> ProofSession::options(std::size_t goalId, const std::string& rule) const {
  const ProofTree* g = goal(goalId);
  if (!g) throw ProofError("StaleGoal", "goal " + std::to_string(goalId) + " is not open");
  return enumerate_applications(*calc_, rule, g->sequent);
}

void ProofSession::apply(std::size_t goalId, const Application& app) {
  const auto legal = options(goalId, app.rule);
  if (std::find(legal.begin(), legal.end(), app) == legal.end())
    throw ProofError("IllegalApplication",
                     "application of '" + app.rule + "' does not conclude goal " +
                         std::to_string(goalId));
  ProofTree next = root();
  ProofTree* g = find_goal(next, goalId);
  g->rule = app.rule;
  g->substitution = app.substitution;
  g->status = GoalStatus::Closed;
  for (const auto& p : app.premises) {
    ProofTree child;
    child.sequent = p;
    child.goalId = nextGoalId_++;
    g->children.push_back(std::move(child));
  }
  history_.push_back(std::move(next));
}

void ProofSession::apply(std::size_t goalId, const std::string& rule, std::size_t index) {
  const auto legal = options(goalId, rule);
  if (index >= legal.size())
    throw ProofError("IllegalApplication", "rule '" + rule + "' has " +
                                               std::to_string(legal.size()) +
                                               " applications; index " + std::to_string(index) +
                                               " is out of range");
  apply(goalId, legal[index]);
}

void ProofSession::undo() {
  if (history_.size() > 1) history_.pop_back();
}

// ---------------------------------------------------------------------------
// Checking

namespace {

bool check_node(const CalculusSpec& calc, const ProofTree& t, bool allowAssumptions,
                std::vector<std::size_t>& path, ProofVerdict& v) {
  auto reject = [&](std::string code, std::string message) {
    v.accepted = false;
    v.path = path;
    v.code = std::move(code);
    v.message = std::move(message);
    return false;
  };
  if (t.status == GoalStatus::Open) return reject("OpenGoal", "open goal remains");
  if (t.status == GoalStatus::Assumed) {
    if (!t.children.empty()) return reject("Malformed", "assumed node with children");
    if (!allowAssumptions) return reject("OpenGoal", "assumed leaf in a complete proof");
    return true;
  }
  if (!t.rule) return reject("Malformed", "closed node without a rule");
  const RuleDecl* r = calc.findRule(*t.rule);
  if (!r) return reject("UnknownRule", "unknown rule '" + *t.rule + "'");
  if (!t.substitution) return reject("Malformed", "closed node without a substitution");
  if (r->premises.size() != t.children.size())
    return reject("NotAnInstance", "rule '" + r->name + "' has " +
                                       std::to_string(r->premises.size()) + " premises, node has " +
                                       std::to_string(t.children.size()) + " children");
  try {
    if (subst_apply(*t.substitution, r->conclusion, calc.signature) != t.sequent)
      return reject("NotAnInstance", "sequent is not an instance of the conclusion of '" +
                                         r->name + "'");
    for (std::size_t i = 0; i < r->premises.size(); ++i)
      if (subst_apply(*t.substitution, r->premises[i], calc.signature) != t.children[i].sequent) {
        path.push_back(i);
        reject("NotAnInstance", "premise " + std::to_string(i + 1) + " of '" + r->name +
                                    "' does not match this child");
        path.pop_back();
        return false;
      }
  } catch (const KernelError& e) {
    return reject("NotAnInstance", e.what());
  }
  for (std::size_t i = 0; i < t.children.size(); ++i) {
    path.push_back(i);
    const bool ok = check_node(calc, t.children[i], allowAssumptions, path, v);
    path.pop_back();
    if (!ok) return false;
  }
  return true;
}

}  // namespace

ProofVerdict check_proof(const CalculusSpec& calc, const ProofTree& tree, bool allowAssumptions) {
  ProofVerdict v;
  std::vector<std::size_t> path;
  check_node(calc, tree, allowAssumptions, path, v);
  return v;
}

// ---------------------------------------------------------------------------
// Search

namespace {

class Searcher {
 public:
  Searcher(const CalculusSpec& calc, const SearchOptions& opt) : calc_(calc), opt_(opt) {
    for (const auto& r : calc.rules) {
      if (!opt.rules.empty() &&
          std::find(opt.rules.begin(), opt.rules.end(), r.name) == opt.rules.end())
        continue;
      if (r.kind == RuleKind::Axiom)
        axioms_.push_back(&r);
      else if (r.kind == RuleKind::Cut)
        cuts_.push_back(&r);
      else
        others_.push_back(&r);
    }
    if (opt.rootRule && !calc.findRule(*opt.rootRule))
      throw ProofError("UnknownRule", "unknown rule '" + *opt.rootRule + "'");
  }

  std::optional<ProofTree> run(const Sequent& goal, std::size_t bound) {
    branch_.clear();
    return prove(goal, bound, 0, true);
  }

  std::size_t nodes = 0;
  bool exhausted = false;

 private:
  std::optional<ProofTree> closeWith(const Sequent& s, const Application& app,
                                     std::size_t depth, std::size_t cuts, bool isCut) {
    ProofTree node;
    node.sequent = s;
    node.rule = app.rule;
    node.substitution = app.substitution;
    node.status = GoalStatus::Closed;
    for (const auto& p : app.premises) {
      auto child = prove(p, depth, cuts + (isCut ? 1 : 0), false);
      if (!child) return std::nullopt;
      node.children.push_back(std::move(*child));
    }
    return node;
  }

  std::optional<ProofTree> prove(const Sequent& s, std::size_t depth, std::size_t cuts,
                                 bool root) {
    if (++nodes > opt_.nodeBudget) {
      exhausted = true;
      return std::nullopt;
    }
    const bool rootFixed = root && opt_.rootRule;
    if (!rootFixed) {
      for (const RuleDecl* a : axioms_) {
        auto apps = enumerate_applications(calc_, a->name, s);
        if (!apps.empty()) {
          ProofTree leaf;
          leaf.sequent = s;
          leaf.rule = a->name;
          leaf.substitution = apps.front().substitution;
          leaf.status = GoalStatus::Closed;
          return leaf;
        }
      }
      if (opt_.leafAccept && opt_.leafAccept(s)) {
        ProofTree leaf;
        leaf.sequent = s;
        leaf.status = GoalStatus::Assumed;
        return leaf;
      }
    }
    if (depth == 0 || exhausted) return std::nullopt;
    if (std::find(branch_.begin(), branch_.end(), s) != branch_.end()) return std::nullopt;
    branch_.push_back(s);
    auto result = expand(s, depth, cuts, rootFixed);
    branch_.pop_back();
    return result;
  }

  std::optional<ProofTree> expand(const Sequent& s, std::size_t depth, std::size_t cuts,
                                  bool rootFixed) {
    if (rootFixed) {
      const RuleDecl& r = calc_.rule(*opt_.rootRule);
      const bool isCut = r.kind == RuleKind::Cut;
      for (const auto& app : enumerate_applications(calc_, r.name, s, candidates(isCut)))
        if (auto t = closeWith(s, app, depth - 1, cuts, isCut)) return t;
      return std::nullopt;
    }
    for (const RuleDecl* r : others_)
      for (const auto& app : enumerate_applications(calc_, r->name, s))
        if (auto t = closeWith(s, app, depth - 1, cuts, false)) return t;
    if (cuts < opt_.maxCutsPerBranch && !opt_.cutCandidates.empty())
      for (const RuleDecl* r : cuts_)
        for (const auto& app : enumerate_applications(calc_, r->name, s, &opt_.cutCandidates))
          if (auto t = closeWith(s, app, depth - 1, cuts, true)) return t;
    return std::nullopt;
  }

  const std::vector<Formula>* candidates(bool isCut) const {
    return isCut ? &opt_.cutCandidates : nullptr;
  }

  const CalculusSpec& calc_;
  const SearchOptions& opt_;
  std::vector<const RuleDecl*> axioms_, cuts_, others_;
  std::vector<Sequent> branch_;
};

}  // namespace

SearchResult search(const CalculusSpec& calc, const Sequent& goal, const SearchOptions& options) {
  SearchResult out;
  Searcher s(calc, options);
  for (std::size_t bound = 0; bound <= options.depth; ++bound) {
    out.proof = s.run(goal, bound);
    if (out.proof || s.exhausted) break;
  }
  out.nodes = s.nodes;
  out.budgetExhausted = s.exhausted;
  return out;
}

std::optional<ProofTree> bounded_search(const CalculusSpec& calc, const Sequent& goal,
                                        std::size_t depth, const LeafAccept& leafAccept) {
  SearchOptions opt;
  opt.depth = depth;
  opt.leafAccept = leafAccept;
  return search(calc, goal, opt).proof;
}

}  // namespace sequitur
