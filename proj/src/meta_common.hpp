#pragma once

// Helpers shared by the metatheory checkers. Not part of the public API.

#include <map>
#include <string>
#include <vector>

#include "sequitur/matching.hpp"
#include "sequitur/metatheory.hpp"

namespace sequitur::detail {

RuleDecl renamed(const RuleDecl& r, const std::string& suffix);

/// Formula and atom variables of a rule, with their kind.
std::map<std::string, Formula::Kind> formula_var_kinds(const RuleDecl& r);

/// Substitution over the variables of `original` equivalent to applying
/// `combined` to the copy renamed with `suffix`.
Substitution pull_back(const RuleDecl& original, const std::string& suffix,
                       const Substitution& combined, const Signature& sig);

ProofTree assumed(const Sequent& s);

/// Rule instance whose premises are assumed leaves.
ProofTree instance(const CalculusSpec& calc, const RuleDecl& r, const Substitution& s);

/// Replaces the assumed leaf at child `index` of `node`.
void graft(ProofTree& node, std::size_t index, ProofTree child);

std::vector<Sequent> assumed_leaves(const ProofTree& t);

bool contains(const std::vector<Sequent>& v, const Sequent& s);

/// `to` equals `from` up to extra material in zones flagged in `weak`.
bool weakening_of(const std::vector<bool>& weak, const Sequent& from, const Sequent& to);

/// True when the unifier identified occurrence `left` of the left schema with
/// occurrence `right` of the right schema.
bool paired(const OverlapCase& c, const Occurrence& left, const Occurrence& right);

}  // namespace sequitur::detail
