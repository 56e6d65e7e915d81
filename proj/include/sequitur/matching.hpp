#pragma once

#include <cstddef>
#include <vector>

#include "sequitur/substitution.hpp"

namespace sequitur {

/// All substitutions s with subst_apply(s, pattern) == target.
///
/// Variables in `target` are rigid: they behave as opaque constants and are
/// never bound. A rigid context variable is moved as a whole, never split.
/// Results are deduplicated and ordered by principal position (pattern
/// formulas matched against target formulas in canonical order), then by
/// context split in counter order (item i's choice is digit i).
std::vector<Substitution> match_sequent(const Sequent& pattern, const Sequent& target,
                                        const Signature& sig);

/// Two formula occurrences identified by a unifier: formula `leftIndex` of
/// zone `zone` in the left schema and formula `rightIndex` of the same zone
/// in the right schema (indices into the canonical formula lists).
struct Pairing {
  std::size_t zone;
  std::size_t leftIndex;
  std::size_t rightIndex;
  friend bool operator==(const Pairing&, const Pairing&) = default;
};

struct OverlapCase {
  Substitution left;      // restricted to the left schema's variables
  Substitution right;     // restricted to the right schema's variables
  Substitution combined;  // idempotent, covers both sides and fresh variables
  std::vector<Pairing> pairings;
  std::size_t nextFresh = 0;
};

/// Source of fresh variable names for the unifier. Fresh context variables
/// are named "S~k", fresh formula variables "F~k".
struct FreshNames {
  std::size_t next = 1;
};

/// Finite complete set of overlaps between two schemas with disjoint
/// variables. Context-variable/context-variable overlaps introduce a shared
/// fresh variable; formula occurrences are either identified or absorbed by a
/// context variable on the other side. `initial` is applied to both sides
/// first; its bindings are carried into `combined`.
std::vector<OverlapCase> unify_sequent(const Sequent& left, const Sequent& right,
                                       const Signature& sig, const Substitution& initial = {},
                                       FreshNames fresh = {});

/// Syntactic most-general unifier of two formulas, extending `s` (kept
/// idempotent). Returns false when no unifier exists.
bool unify_formula(const Formula& a, const Formula& b, Substitution& s, const Signature& sig);

}  // namespace sequitur
