#include <algorithm>

#include "meta_common.hpp"
#include "sequitur/metatheory.hpp"

namespace sequitur {

using detail::assumed;
using detail::instance;

namespace {

constexpr std::size_t kCutBudget = 400'000;

// Leaves a reduct may end in: the open premises of the configuration, their
// one-step inversions by rules known to be invertible, and weakenings of
// either in zones where weakening is admissible.
class LeafClosure {
 public:
  LeafClosure(const CalculusSpec& calc, const std::vector<std::string>& invertible,
              const std::vector<bool>& weak, std::vector<Sequent> open)
      : weak_(weak), base_(std::move(open)) {
    const std::size_t n = base_.size();
    for (std::size_t i = 0; i < n; ++i)
      for (const auto& name : invertible) {
        const RuleDecl& r = calc.rule(name);
        for (const auto& m : match_sequent(r.conclusion, base_[i], calc.signature))
          for (const auto& p : r.premises) {
            Sequent s = subst_apply(m, p, calc.signature);
            if (!detail::contains(base_, s)) base_.push_back(std::move(s));
          }
      }
  }

  bool operator()(const Sequent& s) const {
    return std::any_of(base_.begin(), base_.end(),
                       [&](const Sequent& b) { return detail::weakening_of(weak_, b, s); });
  }

 private:
  const std::vector<bool>& weak_;
  std::vector<Sequent> base_;
};

bool by_contraction(const CalculusSpec& calc, const Sequent& from, const Sequent& to) {
  for (std::size_t z = 0; z < to.zones.size(); ++z) {
    if (from.zones[z] == to.zones[z]) continue;
    if (!calc.zones[z].contraction) return false;
    ContextExpr extra = from.zones[z];
    if (!extra.subtract(to.zones[z])) return false;
    for (const auto& v : extra.vars())
      if (!to.zones[z].contains(ContextExpr({v}, {}))) return false;
    for (const auto& f : extra.formulas())
      if (!to.zones[z].contains(ContextExpr({}, {f}))) return false;
  }
  return true;
}

std::vector<std::string> all_rule_names(const CalculusSpec& calc) {
  std::vector<std::string> out;
  for (const auto& r : calc.rules) out.push_back(r.name);
  return out;
}

bool introduces(const RuleDecl& r) {
  return r.principal && r.kind != RuleKind::Axiom && r.kind != RuleKind::Cut;
}

struct CutContext {
  const CalculusSpec& calc;
  const RuleDecl& cut;
  CutDescriptor d;
  std::size_t depth;
  std::vector<bool> weak;
  std::vector<std::string> invertible;
};

void commutative(const CutContext& cx, CheckReport& report) {
  const auto& calc = cx.calc;
  for (std::size_t k = 0; k < 2; ++k) {
    const Occurrence cutOcc = k == 0 ? cx.d.left : cx.d.right;
    for (const auto& other : calc.rules) {
      if (other.kind == RuleKind::Axiom || other.kind == RuleKind::Cut) continue;
      const RuleDecl last = detail::renamed(other, "'");
      const auto all = unify_sequent(cx.cut.premises[k], last.conclusion, calc.signature);
      std::vector<const OverlapCase*> kept;
      for (const auto& c : all)
        if (!other.principal || !detail::paired(c, cutOcc, *other.principal)) kept.push_back(&c);
      const std::string prefix = "P" + std::to_string(k + 1) + "/" + other.name;
      if (!all.empty() && kept.empty()) {
        CaseResult cr;
        cr.id = prefix;
        cr.family = "commutative";
        cr.description = other.name + " above premise " + std::to_string(k + 1) +
                         ": the cut formula can only be its principal formula";
        cr.notes = "requires manual argument; the cut cannot move above " + other.name;
        report.cases.push_back(std::move(cr));
        continue;
      }
      for (std::size_t n = 0; n < kept.size(); ++n) {
        const OverlapCase& oc = *kept[n];
        CaseResult cr;
        cr.id = prefix + "/" + std::to_string(n + 1);
        cr.family = "commutative";
        try {
          Substitution sCut = detail::pull_back(cx.cut, "", oc.combined, calc.signature);
          Substitution sUp = detail::pull_back(other, "'", oc.combined, calc.signature);
          ProofTree before = instance(calc, cx.cut, sCut);
          detail::graft(before, k, instance(calc, other, sUp));
          const Formula a = subst_apply(oc.combined, Formula::var(cx.d.cutVar), calc.signature);
          cr.description = other.name + " above premise " + std::to_string(k + 1) + ", cut on " +
                           print_formula(calc, a) + ": " + print_sequent(calc, before.sequent);
          SearchOptions opt;
          opt.depth = cx.depth;
          opt.rules = all_rule_names(calc);
          opt.rootRule = other.name;
          opt.cutCandidates = {a};
          opt.maxCutsPerBranch = 2;
          opt.nodeBudget = kCutBudget;
          opt.leafAccept = LeafClosure(calc, cx.invertible, cx.weak, detail::assumed_leaves(before));
          SearchResult res = search(calc, before.sequent, opt);
          if (res.proof) {
            cr.status = CaseStatus::Proved;
            cr.notes = "cut moves above " + other.name;
            cr.witnesses.push_back({std::move(*res.proof), std::move(before)});
          } else {
            cr.notes = "no reduct within depth " + std::to_string(cx.depth) +
                       (res.budgetExhausted ? " (search budget exhausted)" : "");
            cr.witnesses.push_back({std::move(before), std::nullopt});
          }
        } catch (const KernelError& e) {
          cr.notes = std::string("case could not be instantiated: ") + e.what();
        }
        report.cases.push_back(std::move(cr));
      }
    }
  }
}

void principal(const CutContext& cx, CheckReport& report) {
  const auto& calc = cx.calc;
  for (const auto& r1 : calc.rules) {
    if (!introduces(r1)) continue;
    const RuleDecl left = detail::renamed(r1, "'");
    std::vector<OverlapCase> firsts;
    for (auto& c : unify_sequent(cx.cut.premises[0], left.conclusion, calc.signature))
      if (detail::paired(c, cx.d.left, *r1.principal)) firsts.push_back(std::move(c));
    if (firsts.empty()) continue;
    for (const auto& r2 : calc.rules) {
      if (!introduces(r2)) continue;
      const RuleDecl right = detail::renamed(r2, "''");
      std::size_t n = 0;
      for (const auto& c1 : firsts) {
        for (const auto& oc : unify_sequent(cx.cut.premises[1], right.conclusion, calc.signature,
                                            c1.combined, FreshNames{c1.nextFresh})) {
          if (!detail::paired(oc, cx.d.right, *r2.principal)) continue;
          CaseResult cr;
          cr.id = r1.name + "/" + r2.name + "/" + std::to_string(++n);
          cr.family = "principal";
          try {
            Substitution sCut = detail::pull_back(cx.cut, "", oc.combined, calc.signature);
            ProofTree before = instance(calc, cx.cut, sCut);
            detail::graft(before, 0,
                          instance(calc, r1, detail::pull_back(r1, "'", oc.combined, calc.signature)));
            detail::graft(before, 1,
                          instance(calc, r2, detail::pull_back(r2, "''", oc.combined, calc.signature)));
            const Formula a =
                subst_apply(oc.combined, Formula::var(cx.d.cutVar), calc.signature);
            cr.description = "principal cut on " + print_formula(calc, a) + " between " + r1.name +
                             " and " + r2.name;
            SearchOptions opt;
            opt.depth = cx.depth;
            opt.rules = all_rule_names(calc);
            for (const auto& s : subformulas(a))
              if (s.size() < a.size()) opt.cutCandidates.push_back(s);
            opt.maxCutsPerBranch = 2;
            opt.nodeBudget = kCutBudget;
            opt.leafAccept =
                LeafClosure(calc, cx.invertible, cx.weak, detail::assumed_leaves(before));
            SearchResult res = search(calc, before.sequent, opt);
            if (res.proof) {
              cr.status = CaseStatus::Proved;
              cr.notes = "reduced to cuts on proper subformulas";
              cr.witnesses.push_back({std::move(*res.proof), std::move(before)});
            } else {
              cr.notes = "no reduct within depth " + std::to_string(cx.depth) +
                         (res.budgetExhausted ? " (search budget exhausted)" : "");
              cr.witnesses.push_back({std::move(before), std::nullopt});
            }
          } catch (const KernelError& e) {
            cr.notes = std::string("case could not be instantiated: ") + e.what();
          }
          report.cases.push_back(std::move(cr));
        }
      }
    }
  }
}

void atomic(const CutContext& cx, CheckReport& report) {
  const auto& calc = cx.calc;
  const RuleDecl& id = calc.rule(calc.identityRule);
  const RuleDecl idR = detail::renamed(id, "'");
  std::vector<Occurrence> atoms;
  for (std::size_t z = 0; z < id.conclusion.zones.size(); ++z) {
    const auto& fs = id.conclusion.zones[z].formulas();
    for (std::size_t i = 0; i < fs.size(); ++i)
      if (fs[i].kind() == Formula::Kind::AtomVar) atoms.push_back({z, i});
  }
  for (std::size_t k = 0; k < 2; ++k) {
    const Occurrence cutOcc = k == 0 ? cx.d.left : cx.d.right;
    std::size_t n = 0;
    for (const auto& oc : unify_sequent(cx.cut.premises[k], idR.conclusion, calc.signature)) {
      if (std::none_of(atoms.begin(), atoms.end(),
                       [&](const Occurrence& o) { return detail::paired(oc, cutOcc, o); }))
        continue;
      CaseResult cr;
      cr.id = "P" + std::to_string(k + 1) + "/" + id.name + "/" + std::to_string(++n);
      cr.family = "atomic";
      try {
        Substitution sCut = detail::pull_back(cx.cut, "", oc.combined, calc.signature);
        ProofTree before = instance(calc, cx.cut, sCut);
        detail::graft(before, k,
                      instance(calc, id, detail::pull_back(id, "'", oc.combined, calc.signature)));
        const Sequent& end = before.sequent;
        const Sequent& other = before.children[1 - k].sequent;
        const Formula a = subst_apply(oc.combined, Formula::var(cx.d.cutVar), calc.signature);
        cr.description = id.name + " as premise " + std::to_string(k + 1) + ", cut on " +
                         print_formula(calc, a) + ": " + print_sequent(calc, end);
        const std::string which = "premise " + std::to_string(2 - k);
        if (end == other)
          cr.notes = "conclusion equals " + which;
        else if (by_contraction(calc, other, end))
          cr.notes = "conclusion follows from " + which + " by contraction";
        else if (detail::weakening_of(cx.weak, other, end))
          cr.notes = "conclusion follows from " + which + " by weakening";
        if (!cr.notes.empty()) {
          cr.status = CaseStatus::Proved;
          cr.witnesses.push_back({assumed(end), std::move(before)});
        } else {
          cr.notes = "conclusion is not obtained from " + which;
          cr.witnesses.push_back({std::move(before), std::nullopt});
        }
      } catch (const KernelError& e) {
        cr.notes = std::string("case could not be instantiated: ") + e.what();
      }
      report.cases.push_back(std::move(cr));
    }
  }
}

}  // namespace

CheckReport check_cut_elimination(const CalculusSpec& calc, const std::string& cutRule,
                                  std::size_t depth) {
  if (!calc.findRule(cutRule)) throw ProofError("UnknownRule", "unknown rule '" + cutRule + "'");
  CutContext cx{calc, calc.rule(cutRule), validate_cut(calc, cutRule), depth,
                weakening_admissible_zones(calc), invertible_rules(calc)};
  CheckReport report;
  report.property = "cut";
  report.calculus = calc.name;
  report.parameters = {{"rule", cutRule}, {"depth", std::to_string(depth)}};
  commutative(cx, report);
  principal(cx, report);
  atomic(cx, report);
  return report;
}

}  // namespace sequitur
