#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sequitur/proof.hpp"

namespace sequitur {

enum class CaseStatus { Proved, Failed, Unknown };

const char* to_string(CaseStatus s);

/// A derivation with assumed leaves, or a transformation when `before` is set.
struct Witness {
  ProofTree derivation;
  std::optional<ProofTree> before;

  friend bool operator==(const Witness&, const Witness&) = default;
};

struct CaseResult {
  std::string id;
  std::string family;  // empty unless the property splits into families
  std::string description;
  CaseStatus status = CaseStatus::Unknown;
  std::vector<Witness> witnesses;
  std::string notes;

  friend bool operator==(const CaseResult&, const CaseResult&) = default;
};

struct CaseSummary {
  std::size_t proved = 0;
  std::size_t failed = 0;
  std::size_t unknown = 0;
  std::size_t total() const { return proved + failed + unknown; }
  bool allProved() const { return failed == 0 && unknown == 0; }
};

struct CheckReport {
  std::string property;
  std::string calculus;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::vector<CaseResult> cases;
  std::string notes;

  CaseSummary summary() const;
  CaseSummary summary(const std::string& family) const;
  /// Family names in first-appearance order.
  std::vector<std::string> families() const;

  friend bool operator==(const CheckReport&, const CheckReport&) = default;
};

class MetatheoryError : public std::runtime_error {
 public:
  MetatheoryError(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

CheckReport check_identity_expansion(const CalculusSpec& calc, std::size_t depth = 2);

CheckReport check_weakening_admissibility(const CalculusSpec& calc);

CheckReport check_invertibility(const CalculusSpec& calc, const std::string& rule,
                                std::size_t depth = 3);

CheckReport check_permutability(const CalculusSpec& calc, const std::string& ruleUp,
                                const std::string& ruleDown, std::size_t depth = 2);

CheckReport check_cut_elimination(const CalculusSpec& calc, const std::string& cutRule,
                                  std::size_t depth = 4);

/// Zones in which every rule passes the weakening criterion.
std::vector<bool> weakening_admissible_zones(const CalculusSpec& calc);

/// Rules whose invertibility report is all-proved (cut rules excluded).
std::vector<std::string> invertible_rules(const CalculusSpec& calc, std::size_t depth = 3);

/// check_proof with assumptions allowed, on the derivation and on `before`.
bool witness_checks(const CalculusSpec& calc, const Witness& w);

}  // namespace sequitur
