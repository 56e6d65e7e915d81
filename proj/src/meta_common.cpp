#include "meta_common.hpp"

#include <algorithm>

namespace sequitur {

const char* to_string(CaseStatus s) {
  switch (s) {
    case CaseStatus::Proved:
      return "proved";
    case CaseStatus::Failed:
      return "failed";
    case CaseStatus::Unknown:
      return "unknown";
  }
  return "unknown";
}

CaseSummary CheckReport::summary() const {
  CaseSummary s;
  for (const auto& c : cases) {
    if (c.status == CaseStatus::Proved) ++s.proved;
    if (c.status == CaseStatus::Failed) ++s.failed;
    if (c.status == CaseStatus::Unknown) ++s.unknown;
  }
  return s;
}

CaseSummary CheckReport::summary(const std::string& family) const {
  CaseSummary s;
  for (const auto& c : cases) {
    if (c.family != family) continue;
    if (c.status == CaseStatus::Proved) ++s.proved;
    if (c.status == CaseStatus::Failed) ++s.failed;
    if (c.status == CaseStatus::Unknown) ++s.unknown;
  }
  return s;
}

std::vector<std::string> CheckReport::families() const {
  std::vector<std::string> out;
  for (const auto& c : cases)
    if (!c.family.empty() && std::find(out.begin(), out.end(), c.family) == out.end())
      out.push_back(c.family);
  return out;
}

bool witness_checks(const CalculusSpec& calc, const Witness& w) {
  if (!check_proof(calc, w.derivation, true).accepted) return false;
  return !w.before || check_proof(calc, *w.before, true).accepted;
}

namespace detail {

RuleDecl renamed(const RuleDecl& r, const std::string& suffix) {
  RuleDecl out = r;
  out.conclusion = rename_variables(r.conclusion, suffix);
  for (auto& p : out.premises) p = rename_variables(p, suffix);
  return out;
}

namespace {

void walk(const Formula& f, std::map<std::string, Formula::Kind>& out) {
  if (f.isVariable()) {
    out.emplace(f.name(), f.kind());
    return;
  }
  for (const auto& a : f.args()) walk(a, out);
}

void walk(const Sequent& s, std::map<std::string, Formula::Kind>& out) {
  for (const auto& z : s.zones)
    for (const auto& f : z.formulas()) walk(f, out);
}

}  // namespace

std::map<std::string, Formula::Kind> formula_var_kinds(const RuleDecl& r) {
  std::map<std::string, Formula::Kind> out;
  walk(r.conclusion, out);
  for (const auto& p : r.premises) walk(p, out);
  return out;
}

Substitution pull_back(const RuleDecl& original, const std::string& suffix,
                       const Substitution& combined, const Signature& sig) {
  Substitution out;
  for (const auto& [name, kind] : formula_var_kinds(original)) {
    Formula v = kind == Formula::Kind::AtomVar ? Formula::atomVar(name + suffix)
                                               : Formula::var(name + suffix);
    out.bind(name, subst_apply(combined, v, sig));
  }
  VariableSet vs;
  collect_variables(original.conclusion, vs);
  for (const auto& p : original.premises) collect_variables(p, vs);
  for (const auto& name : vs.contextVars) {
    ContextExpr v({ContextVar{name + suffix, std::nullopt}}, {});
    out.bind(name, subst_apply(combined, v, sig));
  }
  return out;
}

ProofTree assumed(const Sequent& s) {
  ProofTree t;
  t.sequent = s;
  t.status = GoalStatus::Assumed;
  return t;
}

ProofTree instance(const CalculusSpec& calc, const RuleDecl& r, const Substitution& s) {
  ProofTree t;
  t.sequent = subst_apply(s, r.conclusion, calc.signature);
  t.rule = r.name;
  t.substitution = s;
  t.status = GoalStatus::Closed;
  for (const auto& p : r.premises) t.children.push_back(assumed(subst_apply(s, p, calc.signature)));
  return t;
}

void graft(ProofTree& node, std::size_t index, ProofTree child) {
  node.children.at(index) = std::move(child);
}

namespace {
void leaves_into(const ProofTree& t, std::vector<Sequent>& out) {
  if (t.status == GoalStatus::Assumed) out.push_back(t.sequent);
  for (const auto& c : t.children) leaves_into(c, out);
}
}  // namespace

std::vector<Sequent> assumed_leaves(const ProofTree& t) {
  std::vector<Sequent> out;
  leaves_into(t, out);
  return out;
}

bool contains(const std::vector<Sequent>& v, const Sequent& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

bool weakening_of(const std::vector<bool>& weak, const Sequent& from, const Sequent& to) {
  for (std::size_t z = 0; z < to.zones.size(); ++z) {
    if (from.zones[z] == to.zones[z]) continue;
    if (!weak[z] || !to.zones[z].contains(from.zones[z])) return false;
  }
  return true;
}

bool paired(const OverlapCase& c, const Occurrence& left, const Occurrence& right) {
  return std::any_of(c.pairings.begin(), c.pairings.end(), [&](const Pairing& p) {
    return p.zone == left.zone && left.zone == right.zone && p.leftIndex == left.index &&
           p.rightIndex == right.index;
  });
}

}  // namespace detail
}  // namespace sequitur
