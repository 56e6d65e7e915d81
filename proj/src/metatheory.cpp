#include "sequitur/metatheory.hpp"

#include <algorithm>

#include "meta_common.hpp"

namespace sequitur {

using detail::assumed;
using detail::contains;
using detail::instance;

namespace {

constexpr std::size_t kCaseBudget = 300'000;

std::vector<std::string> non_cut_rules(const CalculusSpec& calc) {
  std::vector<std::string> out;
  for (const auto& r : calc.rules)
    if (r.kind != RuleKind::Cut) out.push_back(r.name);
  return out;
}

std::string argument_name(std::size_t i) {
  static const char* names[] = {"A", "B", "C", "E", "F", "H", "I", "J", "K"};
  if (i < std::size(names)) return names[i];
  return "A" + std::to_string(i);
}

Sequent generalize_atoms(const Sequent& s) {
  Sequent out;
  for (const auto& z : s.zones) {
    std::vector<Formula> fs;
    for (const auto& f : z.formulas())
      fs.push_back(f.kind() == Formula::Kind::AtomVar ? Formula::var(f.name(), f.polarity()) : f);
    out.zones.emplace_back(z.vars(), std::move(fs));
  }
  return out;
}

std::string search_note(const SearchResult& r, std::size_t depth) {
  std::string n = "no derivation within depth " + std::to_string(depth);
  if (r.budgetExhausted) n += " (search budget exhausted)";
  return n;
}

}  // namespace

// ---------------------------------------------------------------------------
// Identity expansion

CheckReport check_identity_expansion(const CalculusSpec& calc, std::size_t depth) {
  CheckReport report;
  report.property = "identity";
  report.calculus = calc.name;
  report.parameters = {{"depth", std::to_string(depth)}};
  if (calc.oneSided() && !calc.signature.hasDuals())
    throw MetatheoryError("MissingDualityTable",
                          "one-sided calculus '" + calc.name + "' declares no dual connectives");
  const RuleDecl& id = calc.rule(calc.identityRule);
  const Sequent pattern = generalize_atoms(id.conclusion);

  struct Slot {
    std::size_t zone;
    Polarity polarity;
  };
  std::vector<Slot> slots;
  std::string atomVar;
  for (std::size_t z = 0; z < id.conclusion.zones.size(); ++z)
    for (const auto& f : id.conclusion.zones[z].formulas())
      if (f.kind() == Formula::Kind::AtomVar && (atomVar.empty() || f.name() == atomVar)) {
        atomVar = f.name();
        slots.push_back({z, f.polarity()});
      }

  for (const auto& c : calc.signature.connectives()) {
    std::vector<Formula> args;
    for (std::size_t i = 0; i < c.arity; ++i) args.push_back(Formula::var(argument_name(i)));
    const Formula x = Formula::app(c.name, args);
    CaseResult cr;
    cr.id = c.name;
    cr.description = "identity for " + print_formula(calc, x);

    Sequent goal;
    goal.zones.resize(calc.zones.size());
    bool buildable = true;
    for (const auto& s : slots) {
      if (s.polarity == Polarity::Negated && !c.dual) {
        buildable = false;
        break;
      }
      goal.zones[s.zone].add(s.polarity == Polarity::Negated ? dual(x, calc.signature) : x);
    }
    if (!buildable) {
      cr.notes = "no dual declared for '" + c.name + "'";
      report.cases.push_back(std::move(cr));
      continue;
    }
    cr.description += ": " + print_sequent(calc, goal);

    SearchOptions opt;
    opt.depth = depth;
    opt.rules = non_cut_rules(calc);
    opt.nodeBudget = kCaseBudget;
    opt.leafAccept = [&](const Sequent& s) {
      for (const auto& m : match_sequent(pattern, s, calc.signature)) {
        const Formula* f = m.formula(atomVar);
        if (f && f->size() < x.size()) return true;
      }
      return false;
    };
    SearchResult r = search(calc, goal, opt);
    if (r.proof) {
      cr.status = CaseStatus::Proved;
      cr.notes = "closed at depth " + std::to_string(proof_depth(*r.proof, calc)) +
                 " with identities on smaller formulas";
      cr.witnesses.push_back({std::move(*r.proof), std::nullopt});
    } else {
      cr.notes = search_note(r, depth);
    }
    report.cases.push_back(std::move(cr));
  }
  return report;
}

// ---------------------------------------------------------------------------
// Weakening admissibility

namespace {

bool zone_has_var(const ContextExpr& z, const std::string& name) {
  return std::any_of(z.vars().begin(), z.vars().end(),
                     [&](const ContextVar& v) { return v.name == name; });
}

std::string fresh_formula_name(const RuleDecl& r) {
  auto kinds = detail::formula_var_kinds(r);
  std::string name = "W";
  for (int i = 1; kinds.count(name); ++i) name = "W" + std::to_string(i);
  return name;
}

CaseResult weakening_case(const CalculusSpec& calc, const RuleDecl& r, std::size_t z) {
  CaseResult cr;
  const std::string& zone = calc.zones[z].name;
  cr.id = r.name + "/" + zone;
  cr.description = "weakening of zone " + zone + " through " + r.name;
  const ContextExpr& cz = r.conclusion.zones[z];
  std::string blocking;
  for (const auto& v : cz.vars()) {
    if (v.guard) continue;
    // Every premise that keeps v keeps it unguarded in this zone and nowhere
    // else, so the extra formula follows v up by induction.
    bool follows = true, threads = true, absent = true;
    for (std::size_t i = 0; i < r.premises.size() && follows; ++i) {
      const Sequent& p = r.premises[i];
      const bool here = std::any_of(p.zones[z].vars().begin(), p.zones[z].vars().end(),
                                    [&](const ContextVar& u) { return u == v; });
      if (here) absent = false;
      if (!here) threads = false;
      for (std::size_t y = 0; y < p.zones.size(); ++y)
        if ((y != z || !here) && zone_has_var(p.zones[y], v.name)) follows = false;
      if (!follows && blocking.empty())
        blocking = "premise " + std::to_string(i + 1) + " moves " + v.name + " out of zone " + zone;
    }
    if (!follows) continue;

    const Formula w = Formula::var(fresh_formula_name(r));
    Substitution s;
    ContextExpr grown({ContextVar{v.name, std::nullopt}}, {w});
    s.bind(v.name, grown);
    Witness wit{instance(calc, r, s), instance(calc, r, Substitution{})};
    cr.status = CaseStatus::Proved;
    if (r.premises.empty())
      cr.notes = "axiom; " + v.name + " absorbs the extra formula";
    else if (threads)
      cr.notes = v.name + " threads into zone " + zone + " of every premise";
    else if (absent)
      cr.notes = v.name + " occurs in no premise";
    else
      cr.notes = v.name + " stays in zone " + zone + " of the premises that keep it";
    cr.witnesses.push_back(std::move(wit));
    return cr;
  }
  if (cz.vars().empty() ||
      std::all_of(cz.vars().begin(), cz.vars().end(), [](const ContextVar& v) { return v.guard; }))
    cr.notes = "conclusion has no unguarded context variable in zone " + zone;
  else
    cr.notes = blocking;
  return cr;
}

}  // namespace

CheckReport check_weakening_admissibility(const CalculusSpec& calc) {
  CheckReport report;
  report.property = "weakening";
  report.calculus = calc.name;
  for (const auto& r : calc.rules)
    for (std::size_t z = 0; z < calc.zones.size(); ++z)
      if (calc.zones[z].weakening) report.cases.push_back(weakening_case(calc, r, z));
  return report;
}

std::vector<bool> weakening_admissible_zones(const CalculusSpec& calc) {
  std::vector<bool> out(calc.zones.size(), false);
  for (std::size_t z = 0; z < calc.zones.size(); ++z) {
    if (!calc.zones[z].weakening) continue;
    out[z] = std::all_of(calc.rules.begin(), calc.rules.end(), [&](const RuleDecl& r) {
      return weakening_case(calc, r, z).status == CaseStatus::Proved;
    });
  }
  return out;
}

// ---------------------------------------------------------------------------
// Invertibility

CheckReport check_invertibility(const CalculusSpec& calc, const std::string& rule,
                                std::size_t depth) {
  const RuleDecl* rp = calc.findRule(rule);
  if (!rp) throw ProofError("UnknownRule", "unknown rule '" + rule + "'");
  const RuleDecl& r = *rp;
  if (r.kind != RuleKind::Axiom && (!r.principal || r.kind == RuleKind::Cut))
    throw MetatheoryError("NoPrincipal", "rule '" + rule + "' has no principal formula");
  CheckReport report;
  report.property = "invert";
  report.calculus = calc.name;
  report.parameters = {{"rule", rule}, {"depth", std::to_string(depth)}};
  if (r.kind == RuleKind::Axiom) {
    report.notes = "axiom; there are no premises to recover";
    return report;
  }
  const std::vector<bool> weak = weakening_admissible_zones(calc);

  for (std::size_t i = 0; i < r.premises.size(); ++i) {
    for (const auto& other : calc.rules) {
      if (other.kind == RuleKind::Cut) continue;
      const RuleDecl last = detail::renamed(other, "'");
      const auto cases = unify_sequent(r.conclusion, last.conclusion, calc.signature);
      for (std::size_t n = 0; n < cases.size(); ++n) {
        const OverlapCase& oc = cases[n];
        CaseResult cr;
        cr.id = "P" + std::to_string(i + 1) + "/" + other.name + "/" + std::to_string(n + 1);
        const bool shared = other.principal && detail::paired(oc, *r.principal, *other.principal);
        try {
          Substitution below = detail::pull_back(other, "'", oc.combined, calc.signature);
          ProofTree before = instance(calc, other, below);
          const Sequent goal = subst_apply(oc.combined, r.premises[i], calc.signature);
          cr.description = "premise " + std::to_string(i + 1) + " of " + r.name +
                           " when the last rule is " + other.name +
                           (shared ? " (shared principal)" : " (independent principal)") +
                           ": " + print_sequent(calc, goal);
          std::vector<Sequent> leaves;
          for (const auto& q : last.premises) {
            Sequent qs = subst_apply(oc.combined, q, calc.signature);
            if (!contains(leaves, qs)) leaves.push_back(qs);
            // Inductive hypothesis: premises of the checked rule at smaller height.
            for (const auto& m : match_sequent(r.conclusion, qs, calc.signature)) {
              Sequent image = subst_apply(m, r.premises[i], calc.signature);
              if (!contains(leaves, image)) leaves.push_back(image);
            }
          }
          SearchOptions opt;
          opt.depth = depth;
          opt.rules = non_cut_rules(calc);
          opt.nodeBudget = kCaseBudget;
          opt.leafAccept = [&](const Sequent& s) {
            return std::any_of(leaves.begin(), leaves.end(), [&](const Sequent& l) {
              return detail::weakening_of(weak, l, s);
            });
          };
          SearchResult res = search(calc, goal, opt);
          if (res.proof) {
            cr.status = CaseStatus::Proved;
            cr.notes = res.proof->children.empty() && res.proof->status == GoalStatus::Assumed
                           ? "premise is available directly"
                           : "derived at depth " + std::to_string(proof_depth(*res.proof, calc));
            cr.witnesses.push_back({std::move(*res.proof), std::move(before)});
          } else {
            cr.notes = search_note(res, depth);
          }
        } catch (const KernelError& e) {
          cr.notes = std::string("case could not be instantiated: ") + e.what();
        }
        report.cases.push_back(std::move(cr));
      }
    }
  }
  return report;
}

std::vector<std::string> invertible_rules(const CalculusSpec& calc, std::size_t depth) {
  std::vector<std::string> out;
  for (const auto& r : calc.rules) {
    if (!r.principal || r.kind == RuleKind::Cut || r.kind == RuleKind::Axiom) continue;
    if (check_invertibility(calc, r.name, depth).summary().allProved()) out.push_back(r.name);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Permutability

CheckReport check_permutability(const CalculusSpec& calc, const std::string& ruleUp,
                                const std::string& ruleDown, std::size_t depth) {
  const RuleDecl* up = calc.findRule(ruleUp);
  const RuleDecl* down = calc.findRule(ruleDown);
  if (!up) throw ProofError("UnknownRule", "unknown rule '" + ruleUp + "'");
  if (!down) throw ProofError("UnknownRule", "unknown rule '" + ruleDown + "'");
  CheckReport report;
  report.property = "permute";
  report.calculus = calc.name;
  report.parameters = {
      {"ruleUp", ruleUp}, {"ruleDown", ruleDown}, {"depth", std::to_string(depth)}};

  const RuleDecl upR = detail::renamed(*up, "'");
  for (std::size_t k = 0; k < down->premises.size(); ++k) {
    const auto cases = unify_sequent(down->premises[k], upR.conclusion, calc.signature);
    for (std::size_t n = 0; n < cases.size(); ++n) {
      const OverlapCase& oc = cases[n];
      CaseResult cr;
      cr.id = "P" + std::to_string(k + 1) + "/" + std::to_string(n + 1);
      try {
        Substitution sDown = detail::pull_back(*down, "", oc.combined, calc.signature);
        Substitution sUp = detail::pull_back(*up, "'", oc.combined, calc.signature);
        ProofTree before = instance(calc, *down, sDown);
        detail::graft(before, k, instance(calc, *up, sUp));
        const std::vector<Sequent> open = detail::assumed_leaves(before);
        const bool active = std::any_of(oc.pairings.begin(), oc.pairings.end(),
                                        [&](const Pairing& p) {
                                          return up->principal &&
                                                 p.zone == up->principal->zone &&
                                                 p.rightIndex == up->principal->index;
                                        });
        cr.description = ruleUp + " above premise " + std::to_string(k + 1) + " of " + ruleDown +
                         (active ? " (principal formula is active below)" : "") + ": " +
                         print_sequent(calc, before.sequent);
        SearchOptions opt;
        opt.depth = depth;
        opt.rules = non_cut_rules(calc);
        opt.rootRule = ruleUp;
        opt.nodeBudget = kCaseBudget;
        opt.leafAccept = [&](const Sequent& s) { return contains(open, s); };
        SearchResult res = search(calc, before.sequent, opt);
        if (res.proof) {
          cr.status = CaseStatus::Proved;
          cr.notes = "permuted; same end-sequent from the same open premises";
          cr.witnesses.push_back({std::move(*res.proof), std::move(before)});
        } else {
          cr.notes = search_note(res, depth);
          cr.witnesses.push_back({std::move(before), std::nullopt});
        }
      } catch (const KernelError& e) {
        cr.notes = std::string("case could not be instantiated: ") + e.what();
      }
      report.cases.push_back(std::move(cr));
    }
  }
  if (report.cases.empty()) report.notes = "no interaction";
  return report;
}

}  // namespace sequitur
