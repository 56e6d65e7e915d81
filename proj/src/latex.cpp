#include "sequitur/latex.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace sequitur {

namespace {

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::string sans(const std::string& name) {
  std::string out;
  for (char c : name) {
    if (c == '_') out += "\\_";
    else out += c;
  }
  return "\\mathsf{" + out + "}";
}

// Stem, then digits as a subscript, then primes.
std::string render_name(const std::string& name) {
  const auto tilde = name.find('~');
  if (tilde != std::string::npos) {
    const std::string stem = name.substr(0, tilde);
    const std::string base = stem == "S" ? "\\Sigma" : stem;
    return base + "_{" + name.substr(tilde + 1) + "}";
  }
  std::size_t i = 0;
  while (i < name.size() && std::isalpha(static_cast<unsigned char>(name[i]))) ++i;
  std::size_t j = i;
  while (j < name.size() && std::isdigit(static_cast<unsigned char>(name[j]))) ++j;
  const std::string stem = name.substr(0, i);
  const std::string digits = name.substr(i, j - i);
  const std::string rest = name.substr(j);
  std::string out;
  if (stem == "G")
    out = "\\Gamma";
  else if (stem == "D")
    out = "\\Delta";
  else if (stem.size() == 1)
    out = stem;
  else
    out = "\\mathit{" + stem + "}";
  if (!digits.empty()) out += "_{" + digits + "}";
  for (char c : rest) out += c == '_' ? std::string("\\_") : std::string(1, c);
  return out;
}

std::string fill(const Connective& c, const std::vector<std::string>& args) {
  if (c.display.empty()) {
    std::string out = sans(c.name);
    if (!args.empty()) out += "(" + join(args, ", ") + ")";
    return out;
  }
  std::string out;
  const std::string& t = c.display;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] == '#' && i + 1 < t.size() && std::isdigit(static_cast<unsigned char>(t[i + 1]))) {
      std::size_t j = i + 1;
      while (j < t.size() && std::isdigit(static_cast<unsigned char>(t[j]))) ++j;
      const std::size_t slot = std::stoul(t.substr(i + 1, j - i - 1));
      if (slot >= 1 && slot <= args.size()) out += args[slot - 1];
      i = j - 1;
    } else {
      out += t[i];
    }
  }
  return out;
}

bool is_binary(const Formula& f) {
  return f.kind() == Formula::Kind::App && f.args().size() == 2;
}

std::string formula(const CalculusSpec& calc, const Formula& f) {
  if (f.kind() != Formula::Kind::App) {
    std::string base = render_name(f.name());
    if (!f.negated()) return base;
    if (base.find('\'') != std::string::npos) base = "{" + base + "}";
    return base + "^\\bot";
  }
  const Connective& c = calc.signature.at(f.name());
  std::vector<std::string> args;
  const auto fa = f.args();
  for (std::size_t i = 0; i < fa.size(); ++i) {
    std::string a = formula(calc, fa[i]);
    bool paren = false;
    if (fa.size() == 2) paren = needs_parens(calc.signature, c, fa[i], i == 0);
    if (fa.size() == 1) paren = is_binary(fa[i]);
    args.push_back(paren ? "(" + a + ")" : a);
  }
  return fill(c, args);
}

std::string context_var(const CalculusSpec& calc, const ContextVar& v) {
  const std::string name = render_name(v.name);
  if (!v.guard) return name;
  return fill(calc.signature.at(*v.guard), {name});
}

std::string label_of(const CalculusSpec& calc, const std::string& rule) {
  const RuleDecl* r = calc.findRule(rule);
  if (r && !r->label.empty()) return r->label;
  return sans(rule);
}

void infer_tree(const CalculusSpec& calc, const ProofTree& t, const RenderOptions& opts,
                std::string& out) {
  const std::string s = render_sequent(calc, t.sequent, opts);
  if (!t.rule) {
    out += t.status == GoalStatus::Open ? "\\deduce{" + s + "}{\\vdots}" : s;
    return;
  }
  out += "\\infer[" + label_of(calc, *t.rule) + "]{" + s + "}{";
  for (std::size_t i = 0; i < t.children.size(); ++i) {
    if (i) out += " & ";
    infer_tree(calc, t.children[i], opts, out);
  }
  out += "}";
}

void bussproofs_tree(const CalculusSpec& calc, const ProofTree& t, const RenderOptions& opts,
                     std::vector<std::string>& out) {
  static const char* const kInf[] = {"\\UnaryInfC", "\\UnaryInfC", "\\BinaryInfC",
                                     "\\TrinaryInfC", "\\QuaternaryInfC", "\\QuinaryInfC"};
  const std::string s = "$" + render_sequent(calc, t.sequent, opts) + "$";
  if (!t.rule) {
    if (t.status == GoalStatus::Open) {
      out.push_back("\\AxiomC{$\\vdots$}");
      out.push_back("\\noLine");
      out.push_back("\\UnaryInfC{" + s + "}");
    } else {
      out.push_back("\\AxiomC{" + s + "}");
    }
    return;
  }
  if (t.children.size() > 5)
    throw KernelError("bussproofs supports at most five premises per inference");
  for (const auto& c : t.children) bussproofs_tree(calc, c, opts, out);
  if (t.children.empty()) out.push_back("\\AxiomC{}");
  out.push_back("\\RightLabel{$" + label_of(calc, *t.rule) + "$}");
  out.push_back(std::string(kInf[t.children.size()]) + "{" + s + "}");
}

std::string title(const std::string& property) {
  if (property == "identity") return "Identity expansion";
  if (property == "weakening") return "Weakening admissibility";
  if (property == "invert") return "Invertibility";
  if (property == "permute") return "Permutability";
  if (property == "cut") return "Cut elimination";
  return property;
}

std::string display(const std::string& body, const RenderOptions& opts) {
  if (opts.macroStyle == MacroStyle::Bussproofs) return body + "\n";
  return "\\[\n" + body + "\n\\]\n";
}

}  // namespace

std::string render_variable(const std::string& name) { return render_name(name); }

std::string render_formula(const CalculusSpec& calc, const Formula& f, const RenderOptions&) {
  return formula(calc, f);
}

std::string render_context(const CalculusSpec& calc, const ContextExpr& c,
                           const RenderOptions&) {
  std::vector<std::string> parts;
  for (const auto& v : c.vars()) parts.push_back(context_var(calc, v));
  std::vector<std::pair<std::size_t, std::string>> fs;
  for (const auto& f : c.formulas()) fs.emplace_back(f.size(), formula(calc, f));
  std::sort(fs.begin(), fs.end());
  for (auto& [size, text] : fs) parts.push_back(std::move(text));
  return join(parts, ", ");
}

std::string render_sequent(const CalculusSpec& calc, const Sequent& s, const RenderOptions& opts) {
  const std::size_t nAnte = calc.antecedentCount();
  const std::string sep = " " + opts.zoneSeparator + " ";
  auto side = [&](std::size_t from, std::size_t to) {
    std::vector<std::string> zones;
    for (std::size_t z = from; z < to && z < s.zones.size(); ++z) {
      const std::string c = render_context(calc, s.zones[z], opts);
      zones.push_back(c.empty() ? "\\cdot" : c);
    }
    return join(zones, sep);
  };
  bool anteEmpty = true;
  for (std::size_t z = 0; z < nAnte && z < s.zones.size(); ++z)
    anteEmpty = anteEmpty && s.zones[z].empty();
  const std::string succ = side(nAnte, s.zones.size());
  if (anteEmpty) return opts.turnstile + " " + succ;
  return side(0, nAnte) + " " + opts.turnstile + " " + succ;
}

std::string render_rule(const CalculusSpec& calc, const RuleDecl& r, const RenderOptions& opts) {
  ProofTree t;
  t.sequent = r.conclusion;
  t.rule = r.name;
  t.status = GoalStatus::Closed;
  for (const auto& p : r.premises) {
    ProofTree c;
    c.sequent = p;
    c.status = GoalStatus::Assumed;
    t.children.push_back(std::move(c));
  }
  return render_proof(calc, t, opts);
}

std::string render_proof(const CalculusSpec& calc, const ProofTree& t, const RenderOptions& opts) {
  if (opts.macroStyle == MacroStyle::Infer) {
    std::string out;
    infer_tree(calc, t, opts, out);
    return out;
  }
  std::vector<std::string> lines{"\\begin{prooftree}"};
  bussproofs_tree(calc, t, opts, lines);
  lines.push_back("\\end{prooftree}");
  return join(lines, "\n");
}

std::string render_report(const CalculusSpec& calc, const CheckReport& report,
                          const RenderOptions& opts) {
  std::ostringstream os;
  const CaseSummary sum = report.summary();
  os << "\\section*{" << latex_escape(title(report.property)) << ": "
     << latex_escape(report.calculus) << "}\n";
  if (!report.parameters.empty()) {
    std::vector<std::string> ps;
    for (const auto& [k, v] : report.parameters) ps.push_back(latex_escape(k + " = " + v));
    os << "Parameters: " << join(ps, ", ") << ".\n\n";
  }
  os << "Cases: " << sum.proved << " proved, " << sum.failed << " failed, " << sum.unknown
     << " unknown.\n";
  if (!report.notes.empty()) os << "\n" << latex_escape(report.notes) << "\n";
  std::string family;
  for (const auto& c : report.cases) {
    if (!c.family.empty() && c.family != family) {
      family = c.family;
      os << "\n\\subsection*{" << latex_escape(family) << "}\n";
    }
    os << "\n\\paragraph{" << latex_escape(c.id) << " (" << to_string(c.status) << ")}\n";
    if (!c.description.empty()) os << "\\texttt{" << latex_escape(c.description) << "}\n";
    if (!c.notes.empty()) os << "\n" << latex_escape(c.notes) << "\n";
    for (const auto& w : c.witnesses) {
      if (w.before) {
        os << display(render_proof(calc, *w.before, opts), opts);
        os << display("\\Downarrow", {});
      }
      os << display(render_proof(calc, w.derivation, opts), opts);
    }
  }
  return os.str();
}

std::string latex_document(const std::string& body, const RenderOptions& opts) {
  std::string out =
      "\\documentclass{article}\n"
      "\\usepackage{amsmath,amssymb,stmaryrd}\n";
  out += opts.macroStyle == MacroStyle::Bussproofs ? "\\usepackage{bussproofs}\n"
                                                    : "\\usepackage{proof}\n";
  out += "\\begin{document}\n" + body;
  if (!body.empty() && body.back() != '\n') out += "\n";
  out += "\\end{document}\n";
  return out;
}

std::string latex_escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '\\': out += "\\textbackslash{}"; break;
      case '{': out += "\\{"; break;
      case '}': out += "\\}"; break;
      case '$': out += "\\$"; break;
      case '&': out += "\\&"; break;
      case '#': out += "\\#"; break;
      case '_': out += "\\_"; break;
      case '%': out += "\\%"; break;
      case '^': out += "\\textasciicircum{}"; break;
      case '~': out += "\\textasciitilde{}"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace sequitur
