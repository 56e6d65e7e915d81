#include "sequitur/formula.hpp"

#include <algorithm>

namespace sequitur {

void Signature::add(Connective c) {
  if (index_.count(c.name)) throw KernelError("duplicate connective '" + c.name + "'");
  index_.emplace(c.name, ordered_.size());
  ordered_.push_back(std::move(c));
}

void Signature::setDual(const std::string& a, const std::string& b) {
  auto ia = index_.find(a);
  auto ib = index_.find(b);
  if (ia == index_.end() || ib == index_.end())
    throw KernelError("dual of unknown connective");
  ordered_[ia->second].dual = b;
  ordered_[ib->second].dual = a;
}

const Connective* Signature::find(const std::string& name) const {
  auto it = index_.find(name);
  return it == index_.end() ? nullptr : &ordered_[it->second];
}

const Connective& Signature::at(const std::string& name) const {
  const Connective* c = find(name);
  if (!c) throw KernelError("unknown connective '" + name + "'");
  return *c;
}

bool Signature::hasDuals() const {
  return std::any_of(ordered_.begin(), ordered_.end(),
                     [](const Connective& c) { return c.dual.has_value(); });
}

Formula Formula::atom(std::string name, Polarity p) {
  return Formula(std::make_shared<const Node>(Node{Kind::Atom, std::move(name), p, {}, 1, true}));
}

Formula Formula::atomVar(std::string name, Polarity p) {
  return Formula(
      std::make_shared<const Node>(Node{Kind::AtomVar, std::move(name), p, {}, 1, false}));
}

Formula Formula::var(std::string name, Polarity p) {
  return Formula(
      std::make_shared<const Node>(Node{Kind::FormulaVar, std::move(name), p, {}, 1, false}));
}

Formula Formula::app(std::string connective, std::vector<Formula> args) {
  std::size_t size = 1;
  bool ground = true;
  for (const auto& a : args) {
    size += a.size();
    ground = ground && a.isGround();
  }
  return Formula(std::make_shared<const Node>(
      Node{Kind::App, std::move(connective), Polarity::Positive, std::move(args), size, ground}));
}

Formula Formula::withPolarity(Polarity p) const {
  if (kind() == Kind::App) throw KernelError("polarity on a compound formula");
  if (p == polarity()) return *this;
  return Formula(std::make_shared<const Node>(
      Node{kind(), name(), p, {}, 1, node_->ground}));
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  return (a <=> b) == std::strong_ordering::equal;
}

std::strong_ordering operator<=>(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.size() <=> b.size(); c != 0) return c;
  if (auto c = a.kind() <=> b.kind(); c != 0) return c;
  if (auto c = a.name().compare(b.name()) <=> 0; c != 0) return c;
  if (auto c = a.polarity() <=> b.polarity(); c != 0) return c;
  auto aa = a.args();
  auto ba = b.args();
  for (std::size_t i = 0; i < aa.size() && i < ba.size(); ++i) {
    if (auto c = aa[i] <=> ba[i]; c != 0) return c;
  }
  return aa.size() <=> ba.size();
}

std::size_t formula_size(const Formula& f) { return f.size(); }

Formula dual(const Formula& f, const Signature& sig) {
  if (f.kind() != Formula::Kind::App) return f.withPolarity(flip(f.polarity()));
  const Connective& c = sig.at(f.name());
  if (!c.dual) throw KernelError("connective '" + c.name + "' has no declared dual");
  std::vector<Formula> args;
  args.reserve(f.args().size());
  for (const auto& a : f.args()) args.push_back(dual(a, sig));
  return Formula::app(*c.dual, std::move(args));
}

namespace {
void collect_subformulas(const Formula& f, std::vector<Formula>& out) {
  out.push_back(f);
  for (const auto& a : f.args()) collect_subformulas(a, out);
}
}  // namespace

std::vector<Formula> subformulas(const Formula& f) {
  std::vector<Formula> out;
  collect_subformulas(f, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ContextExpr::ContextExpr(std::vector<ContextVar> vars, std::vector<Formula> formulas)
    : vars_(std::move(vars)), formulas_(std::move(formulas)) {
  std::sort(vars_.begin(), vars_.end());
  std::sort(formulas_.begin(), formulas_.end());
}

void ContextExpr::add(Formula f) {
  formulas_.insert(std::upper_bound(formulas_.begin(), formulas_.end(), f), std::move(f));
}

void ContextExpr::add(ContextVar v) {
  vars_.insert(std::upper_bound(vars_.begin(), vars_.end(), v), std::move(v));
}

void ContextExpr::merge(const ContextExpr& other) {
  for (const auto& v : other.vars_) add(v);
  for (const auto& f : other.formulas_) add(f);
}

namespace {
template <class T>
bool multiset_subtract(std::vector<T>& from, const std::vector<T>& what) {
  std::vector<T> out;
  out.reserve(from.size());
  std::size_t j = 0;
  for (std::size_t i = 0; i < from.size(); ++i) {
    if (j < what.size() && from[i] == what[j]) {
      ++j;
      continue;
    }
    if (j < what.size() && what[j] < from[i]) return false;
    out.push_back(from[i]);
  }
  if (j != what.size()) return false;
  from = std::move(out);
  return true;
}
}  // namespace

bool ContextExpr::subtract(const ContextExpr& other) {
  auto vars = vars_;
  auto formulas = formulas_;
  if (!multiset_subtract(vars, other.vars_) || !multiset_subtract(formulas, other.formulas_))
    return false;
  vars_ = std::move(vars);
  formulas_ = std::move(formulas);
  return true;
}

bool ContextExpr::contains(const ContextExpr& other) const {
  ContextExpr copy = *this;
  return copy.subtract(other);
}

std::strong_ordering operator<=>(const ContextExpr& a, const ContextExpr& b) {
  if (auto c = std::lexicographical_compare_three_way(a.vars_.begin(), a.vars_.end(),
                                                      b.vars_.begin(), b.vars_.end());
      c != 0)
    return c;
  return std::lexicographical_compare_three_way(a.formulas_.begin(), a.formulas_.end(),
                                                b.formulas_.begin(), b.formulas_.end());
}

bool Sequent::isGround() const {
  for (const auto& z : zones) {
    if (!z.vars().empty()) return false;
    for (const auto& f : z.formulas())
      if (!f.isGround()) return false;
  }
  return true;
}

std::strong_ordering operator<=>(const Sequent& a, const Sequent& b) {
  return std::lexicographical_compare_three_way(a.zones.begin(), a.zones.end(), b.zones.begin(),
                                                b.zones.end());
}

namespace {
void push_unique(std::vector<std::string>& v, const std::string& s) {
  if (std::find(v.begin(), v.end(), s) == v.end()) v.push_back(s);
}
}  // namespace

bool VariableSet::hasFormulaVar(const std::string& n) const {
  return std::find(formulaVars.begin(), formulaVars.end(), n) != formulaVars.end();
}

bool VariableSet::hasContextVar(const std::string& n) const {
  return std::find(contextVars.begin(), contextVars.end(), n) != contextVars.end();
}

void collect_variables(const Formula& f, VariableSet& out) {
  if (f.isVariable()) {
    push_unique(out.formulaVars, f.name());
    return;
  }
  for (const auto& a : f.args()) collect_variables(a, out);
}

void collect_variables(const ContextExpr& c, VariableSet& out) {
  for (const auto& v : c.vars()) push_unique(out.contextVars, v.name);
  for (const auto& f : c.formulas()) collect_variables(f, out);
}

void collect_variables(const Sequent& s, VariableSet& out) {
  for (const auto& z : s.zones) collect_variables(z, out);
}

Formula rename_variables(const Formula& f, const std::string& suffix) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      return f;
    case Formula::Kind::AtomVar:
      return Formula::atomVar(f.name() + suffix, f.polarity());
    case Formula::Kind::FormulaVar:
      return Formula::var(f.name() + suffix, f.polarity());
    case Formula::Kind::App: {
      std::vector<Formula> args;
      for (const auto& a : f.args()) args.push_back(rename_variables(a, suffix));
      return Formula::app(f.name(), std::move(args));
    }
  }
  return f;
}

ContextExpr rename_variables(const ContextExpr& c, const std::string& suffix) {
  std::vector<ContextVar> vars;
  for (const auto& v : c.vars()) vars.push_back({v.name + suffix, v.guard});
  std::vector<Formula> formulas;
  for (const auto& f : c.formulas()) formulas.push_back(rename_variables(f, suffix));
  return ContextExpr(std::move(vars), std::move(formulas));
}

Sequent rename_variables(const Sequent& s, const std::string& suffix) {
  Sequent out;
  for (const auto& z : s.zones) out.zones.push_back(rename_variables(z, suffix));
  return out;
}

}  // namespace sequitur
