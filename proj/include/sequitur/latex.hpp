#pragma once

#include <string>

#include "sequitur/calculus.hpp"
#include "sequitur/metatheory.hpp"
#include "sequitur/proof.hpp"

namespace sequitur {

enum class MacroStyle { Infer, Bussproofs };

struct RenderOptions {
  MacroStyle macroStyle = MacroStyle::Infer;
  std::string zoneSeparator = ";";
  std::string turnstile = "\\vdash";
};

/// G2 -> \Gamma_{2}, S~1 -> \Sigma_{1}, A' -> A'.
std::string render_variable(const std::string& name);

std::string render_formula(const CalculusSpec& calc, const Formula& f,
                           const RenderOptions& opts = {});
std::string render_context(const CalculusSpec& calc, const ContextExpr& c,
                           const RenderOptions& opts = {});
std::string render_sequent(const CalculusSpec& calc, const Sequent& s,
                           const RenderOptions& opts = {});
std::string render_rule(const CalculusSpec& calc, const RuleDecl& r, const RenderOptions& opts = {});
std::string render_proof(const CalculusSpec& calc, const ProofTree& t,
                         const RenderOptions& opts = {});
std::string render_report(const CalculusSpec& calc, const CheckReport& report,
                          const RenderOptions& opts = {});

/// Wraps a fragment into a standalone article.
std::string latex_document(const std::string& body, const RenderOptions& opts = {});

/// Escapes text for use outside math mode.
std::string latex_escape(const std::string& text);

}  // namespace sequitur
