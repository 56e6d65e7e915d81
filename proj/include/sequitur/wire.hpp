#pragma once

#include <stdexcept>
#include <string>

#include "json.hpp"
#include "sequitur/latex.hpp"
#include "sequitur/metatheory.hpp"
#include "sequitur/proof.hpp"

namespace sequitur {

using Json = nlohmann::ordered_json;

/// Malformed JSON input.
class WireError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Structural encodings. Decoders ignore the "text" and "latex" fields that
// encoders attach for display.
Json to_wire(const CalculusSpec& calc, const Formula& f);
Json to_wire(const CalculusSpec& calc, const ContextExpr& c);
Json to_wire(const CalculusSpec& calc, const Sequent& s);
Json to_wire(const CalculusSpec& calc, const Substitution& s);
Json to_wire(const CalculusSpec& calc, const ProofTree& t);

Formula formula_from_wire(const Json& j);
ContextExpr context_from_wire(const Json& j);
Sequent sequent_from_wire(const Json& j);
Substitution substitution_from_wire(const Json& j);
ProofTree tree_from_wire(const Json& j);

/// Report with summary and a LaTeX rendering of every witness.
Json report_to_wire(const CalculusSpec& calc, const CheckReport& r, const RenderOptions& opts = {});
CheckReport report_from_wire(const Json& j);

Json calculus_to_wire(const CalculusSpec& calc, const RenderOptions& opts = {});
Json application_to_wire(const CalculusSpec& calc, const Sequent& goal, std::size_t index,
                         const Application& app, const RenderOptions& opts = {});
Json diagnostics_to_wire(const std::vector<Diagnostic>& ds);

/// Two-space indented dump with a trailing newline.
std::string dump(const Json& j);

}  // namespace sequitur
