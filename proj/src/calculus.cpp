#include "sequitur/calculus.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace sequitur {

const char* to_string(RuleKind k) {
  switch (k) {
    case RuleKind::Logical:
      return "logical";
    case RuleKind::Structural:
      return "structural";
    case RuleKind::Axiom:
      return "axiom";
    case RuleKind::Cut:
      return "cut";
  }
  return "logical";
}

namespace {
std::string join_diagnostics(const std::vector<Diagnostic>& ds) {
  std::ostringstream os;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    if (i) os << "\n";
    os << ds[i].line << ":" << ds[i].column << ": " << ds[i].code << ": " << ds[i].message;
  }
  return os.str();
}
}  // namespace

CalculusError::CalculusError(std::vector<Diagnostic> diagnostics)
    : std::runtime_error(join_diagnostics(diagnostics)), diagnostics_(std::move(diagnostics)) {}

const RuleDecl* CalculusSpec::findRule(std::string_view rule) const {
  for (const auto& r : rules)
    if (r.name == rule) return &r;
  return nullptr;
}

const RuleDecl& CalculusSpec::rule(std::string_view rule) const {
  const RuleDecl* r = findRule(rule);
  if (!r) throw std::out_of_range("unknown rule '" + std::string(rule) + "'");
  return *r;
}

std::optional<std::size_t> CalculusSpec::zoneIndex(std::string_view zone) const {
  for (std::size_t i = 0; i < zones.size(); ++i)
    if (zones[i].name == zone) return i;
  return std::nullopt;
}

std::size_t CalculusSpec::antecedentCount() const {
  return static_cast<std::size_t>(std::count_if(
      zones.begin(), zones.end(), [](const ZoneDecl& z) { return z.side == Side::Antecedent; }));
}

std::vector<const RuleDecl*> CalculusSpec::cutRules() const {
  std::vector<const RuleDecl*> out;
  for (const auto& r : rules)
    if (r.kind == RuleKind::Cut) out.push_back(&r);
  return out;
}

namespace {

// ---------------------------------------------------------------------------
// Lexing

enum class Tok { Ident, String, Number, Punct, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t column;
};

struct Failure {
  Diagnostic diagnostic;
};

[[noreturn]] void fail(std::size_t line, std::size_t column, std::string code, std::string msg) {
  throw Failure{Diagnostic{line, column, std::move(code), std::move(msg)}};
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_' || c == '\'';
}

std::vector<Token> lex(std::string_view text, std::size_t line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    const std::size_t col = i + 1;
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
    } else if (c == '#' || c == '%') {
      break;
    } else if (c == '"') {
      std::size_t j = text.find('"', i + 1);
      if (j == std::string_view::npos) fail(line, col, "ParseError", "unterminated string");
      out.push_back({Tok::String, std::string(text.substr(i + 1, j - i - 1)), col});
      i = j + 1;
    } else if (ident_start(c)) {
      std::size_t j = i;
      while (j < text.size() && ident_char(text[j])) ++j;
      out.push_back({Tok::Ident, std::string(text.substr(i, j - i)), col});
      i = j;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      out.push_back({Tok::Number, std::string(text.substr(i, j - i)), col});
      i = j;
    } else if (text.substr(i, 2) == "|-" || text.substr(i, 2) == "=>") {
      out.push_back({Tok::Punct, std::string(text.substr(i, 2)), col});
      i += 2;
    } else if (text.substr(i, 2) == "\xC2\xB7") {  // middle dot
      out.push_back({Tok::Punct, ".", col});
      i += 2;
    } else if (std::string_view("(),;:^.").find(c) != std::string_view::npos) {
      out.push_back({Tok::Punct, std::string(1, c), col});
      ++i;
    } else {
      fail(line, col, "ParseError", std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back({Tok::End, "", text.size() + 1});
  return out;
}

enum class IdentClass { Context, FormulaVar, AtomVar, Atom, Invalid };

IdentClass classify(const std::string& name, GoalSyntax syntax) {
  auto tail_is_index = [&](std::size_t from) {
    return std::all_of(name.begin() + static_cast<long>(from), name.end(), [](char c) {
      return std::isdigit(static_cast<unsigned char>(c)) || c == '\'';
    });
  };
  const char c = name[0];
  if (c == 'G' || c == 'D') return IdentClass::Context;
  if (std::isupper(static_cast<unsigned char>(c)))
    return tail_is_index(1) ? IdentClass::FormulaVar : IdentClass::Invalid;
  if (tail_is_index(1) && syntax == GoalSyntax::Schema) return IdentClass::AtomVar;
  return IdentClass::Atom;
}

// ---------------------------------------------------------------------------
// Sequent and formula parsing over one token stream

class TermParser {
 public:
  TermParser(const CalculusSpec& spec, const std::vector<Token>& toks, std::size_t& pos,
             std::size_t line, GoalSyntax syntax)
      : spec_(spec), toks_(toks), pos_(pos), line_(line), syntax_(syntax) {}

  Sequent sequent() {
    expect("(");
    Sequent s;
    const std::size_t nAnte = spec_.antecedentCount();
    const std::size_t nSucc = spec_.zones.size() - nAnte;
    side(s, nAnte, "|-");
    side(s, nSucc, ")");
    return s;
  }

  Formula formula(int minPrec = 0) {
    Formula lhs = unary();
    for (;;) {
      const Token& t = peek();
      if (t.kind != Tok::Ident) break;
      const Connective* c = spec_.signature.find(t.text);
      if (!c) fail(line_, t.column, "UnknownConnective", "unknown connective '" + t.text + "'");
      if (c->arity != 2)
        fail(line_, t.column, "ArityMismatch",
             "connective '" + t.text + "' used infix but has arity " + std::to_string(c->arity));
      if (c->precedence < minPrec) break;
      ++pos_;
      Formula rhs = formula(c->rightAssoc ? c->precedence : c->precedence + 1);
      lhs = Formula::app(c->name, {lhs, rhs});
    }
    return lhs;
  }

  const Token& peek() const { return toks_[pos_]; }
  bool at(const char* punct) const {
    return peek().kind == Tok::Punct && peek().text == punct;
  }
  void expect(const char* punct) {
    if (!at(punct))
      fail(line_, peek().column, "ParseError",
           std::string("expected '") + punct + "'" +
               (peek().kind == Tok::End ? " before end of line" : ", found '" + peek().text + "'"));
    ++pos_;
  }

 private:
  void side(Sequent& s, std::size_t zoneCount, const char* terminator) {
    if (zoneCount == 0) {
      if (!at(terminator))
        fail(line_, peek().column, "ParseError",
             std::string("this calculus has no zones before '") + terminator + "'");
      ++pos_;
      return;
    }
    for (std::size_t z = 0; z < zoneCount; ++z) {
      s.zones.push_back(zone());
      if (z + 1 < zoneCount) expect(";");
    }
    expect(terminator);
  }

  bool zone_end() const { return at(";") || at("|-") || at(")") || peek().kind == Tok::End; }

  ContextExpr zone() {
    ContextExpr out;
    if (at(".")) {
      ++pos_;
      return out;
    }
    if (zone_end()) return out;
    for (;;) {
      item(out);
      if (!at(",")) break;
      ++pos_;
    }
    if (!zone_end())
      fail(line_, peek().column, "ParseError", "unexpected '" + peek().text + "' in context");
    return out;
  }

  void item(ContextExpr& out) {
    const Token& t = peek();
    if (t.kind == Tok::Ident && !spec_.signature.find(t.text) &&
        classify(t.text, syntax_) == IdentClass::Context) {
      ++pos_;
      out.add(ContextVar{t.text, std::nullopt});
      return;
    }
    if (t.kind == Tok::Ident) {
      const Connective* c = spec_.signature.find(t.text);
      const Token& next = toks_[pos_ + 1];
      if (c && c->arity == 1 && next.kind == Tok::Ident && !spec_.signature.find(next.text) &&
          classify(next.text, syntax_) == IdentClass::Context) {
        pos_ += 2;
        out.add(ContextVar{next.text, c->name});
        return;
      }
    }
    out.add(formula());
  }

  Formula postfix(Formula f) {
    while (at("^")) {
      if (f.kind() == Formula::Kind::App)
        fail(line_, peek().column, "ParseError", "'^' applies only to atoms and variables");
      ++pos_;
      f = f.withPolarity(flip(f.polarity()));
    }
    return f;
  }

  Formula unary() {
    const Token& t = peek();
    if (at("(")) {
      ++pos_;
      Formula f = formula();
      expect(")");
      return f;
    }
    if (t.kind != Tok::Ident)
      fail(line_, t.column, "ParseError",
           t.kind == Tok::End ? "expected a formula before end of line"
                              : "expected a formula, found '" + t.text + "'");
    ++pos_;
    if (const Connective* c = spec_.signature.find(t.text)) {
      if (c->arity == 0) return Formula::app(c->name, {});
      if (c->arity == 1) return Formula::app(c->name, {unary()});
      fail(line_, t.column, "ArityMismatch",
           "connective '" + t.text + "' used prefix but has arity " + std::to_string(c->arity));
    }
    switch (classify(t.text, syntax_)) {
      case IdentClass::Context:
        fail(line_, t.column, "ParseError",
             "context variable '" + t.text + "' where a formula is expected");
      case IdentClass::FormulaVar:
        return postfix(Formula::var(t.text));
      case IdentClass::AtomVar:
        return postfix(Formula::atomVar(t.text));
      case IdentClass::Atom:
        return postfix(Formula::atom(t.text));
      case IdentClass::Invalid:
        break;
    }
    fail(line_, t.column, "ParseError",
         "identifier '" + t.text + "' is neither a connective, a variable nor an atom");
  }

  const CalculusSpec& spec_;
  const std::vector<Token>& toks_;
  std::size_t& pos_;
  std::size_t line_;
  GoalSyntax syntax_;
};

// ---------------------------------------------------------------------------
// Rule validation

std::optional<Occurrence> find_principal(const Sequent& conclusion, std::size_t& count) {
  std::optional<Occurrence> out;
  count = 0;
  for (std::size_t z = 0; z < conclusion.zones.size(); ++z) {
    const auto& fs = conclusion.zones[z].formulas();
    for (std::size_t i = 0; i < fs.size(); ++i) {
      if (fs[i].isVariable()) continue;
      ++count;
      if (!out) out = Occurrence{z, i};
    }
  }
  return out;
}

std::vector<std::pair<std::string, std::optional<std::string>>> guarded_vars(const Sequent& s) {
  std::vector<std::pair<std::string, std::optional<std::string>>> out;
  for (const auto& z : s.zones)
    for (const auto& v : z.vars()) out.emplace_back(v.name, v.guard);
  return out;
}

struct RuleLine {
  std::size_t line;
  std::size_t column;
  RuleDecl rule;
};

std::optional<Occurrence> find_var_occurrence(const Sequent& s, const std::string& var,
                                              std::optional<Polarity> pol = std::nullopt) {
  for (std::size_t z = 0; z < s.zones.size(); ++z) {
    const auto& fs = s.zones[z].formulas();
    for (std::size_t i = 0; i < fs.size(); ++i)
      if (fs[i].kind() == Formula::Kind::FormulaVar && fs[i].name() == var &&
          (!pol || fs[i].polarity() == *pol))
        return Occurrence{z, i};
  }
  return std::nullopt;
}

CutDescriptor check_cut_shape(const CalculusSpec& spec, const RuleDecl& r) {
  if (r.premises.size() != 2)
    throw NotACut("rule '" + r.name + "' has " + std::to_string(r.premises.size()) +
                  " premises; a cut has exactly 2");
  VariableSet concl, p0, p1;
  collect_variables(r.conclusion, concl);
  collect_variables(r.premises[0], p0);
  collect_variables(r.premises[1], p1);
  std::vector<std::string> candidates;
  for (const auto& v : p0.formulaVars)
    if (p1.hasFormulaVar(v) && !concl.hasFormulaVar(v)) candidates.push_back(v);
  if (candidates.empty())
    throw NotACut("rule '" + r.name +
                  "' has no cut variable (a formula variable in both premises but not in the "
                  "conclusion)");
  if (candidates.size() > 1)
    throw NotACut("rule '" + r.name + "' has more than one candidate cut variable");
  const std::string& a = candidates.front();
  for (const auto* p : {&p0, &p1}) {
    for (const auto& v : p->formulaVars)
      if (v != a && !concl.hasFormulaVar(v))
        throw NotACut("variable '" + v + "' of rule '" + r.name + "' is not in the conclusion");
    for (const auto& v : p->contextVars)
      if (!concl.hasContextVar(v))
        throw NotACut("context variable '" + v + "' of rule '" + r.name +
                      "' is not in the conclusion");
  }
  auto left = find_var_occurrence(r.premises[0], a, Polarity::Positive);
  if (!left)
    throw NotACut("cut variable '" + a + "' does not occur as a whole formula in premise 1");
  auto side_of = [&](std::size_t zone) { return spec.zones[zone].side; };
  CutDescriptor d;
  d.rule = r.name;
  d.cutVar = a;
  d.left = *left;
  d.leftSide = side_of(left->zone);
  if (auto neg = find_var_occurrence(r.premises[1], a, Polarity::Negated)) {
    d.right = *neg;
    d.rightSide = side_of(neg->zone);
    d.dualLinked = true;
    if (!spec.signature.hasDuals())
      throw NotACut("cut on a dual formula requires a duality table");
  } else if (auto pos = find_var_occurrence(r.premises[1], a, Polarity::Positive)) {
    d.right = *pos;
    d.rightSide = side_of(pos->zone);
    d.dualLinked = false;
    if (d.rightSide == d.leftSide)
      throw NotACut("cut formula occurs on the same side in both premises of '" + r.name + "'");
  } else {
    throw NotACut("cut variable '" + a + "' does not occur as a whole formula in premise 2");
  }
  return d;
}

class CalculusParser {
 public:
  explicit CalculusParser(std::string_view text) {
    std::size_t start = 0;
    while (start <= text.size()) {
      std::size_t end = text.find('\n', start);
      if (end == std::string_view::npos) end = text.size();
      lines_.push_back(text.substr(start, end - start));
      start = end + 1;
    }
  }

  CalculusSpec run() {
    std::vector<std::pair<std::size_t, std::vector<Token>>> rules;
    std::vector<std::pair<std::size_t, std::vector<Token>>> duals;
    std::optional<std::pair<std::size_t, std::vector<Token>>> identity;
    bool sawDecl = false;
    for (std::size_t i = 0; i < lines_.size(); ++i) {
      const std::size_t line = i + 1;
      try {
        auto toks = lex(lines_[i], line);
        if (toks.front().kind == Tok::End) continue;
        sawDecl = true;
        const Token& kw = toks.front();
        if (kw.kind != Tok::Ident) fail(line, kw.column, "ParseError", "expected a declaration");
        if (kw.text == "calculus") {
          parseName(toks, line);
        } else if (kw.text == "zone") {
          parseZone(toks, line);
        } else if (kw.text == "conn") {
          parseConn(toks, line);
        } else if (kw.text == "dual") {
          duals.emplace_back(line, std::move(toks));
        } else if (kw.text == "identity") {
          identity.emplace(line, std::move(toks));
        } else if (kw.text == "rule" || kw.text == "axiom" || kw.text == "structural" ||
                   kw.text == "cut") {
          rules.emplace_back(line, std::move(toks));
        } else {
          fail(line, kw.column, "ParseError", "unknown declaration '" + kw.text + "'");
        }
      } catch (const Failure& f) {
        diags_.push_back(f.diagnostic);
      }
    }
    if (!sawDecl) {
      diags_.push_back({1, 1, "ParseError", "empty calculus"});
      throw CalculusError(diags_);
    }
    if (spec_.zones.empty()) diags_.push_back({1, 1, "ParseError", "no zone declared"});
    for (auto& [line, toks] : duals) guarded(line, [&] { parseDual(toks, line); });
    if (diags_.empty() || !spec_.zones.empty()) {
      for (auto& [line, toks] : rules) guarded(line, [&] { parseRule(toks, line); });
    }
    if (identity) {
      guarded(identity->first, [&] {
        const auto& toks = identity->second;
        if (toks.size() != 3 || toks[1].kind != Tok::Ident)
          fail(identity->first, toks[0].column, "ParseError", "expected 'identity NAME'");
        spec_.identityRule = toks[1].text;
        identityLine_ = identity->first;
        identityColumn_ = toks[1].column;
      });
    } else if (spec_.findRule("init")) {
      spec_.identityRule = "init";
    }
    validateIdentity();
    if (!diags_.empty()) throw CalculusError(diags_);
    return std::move(spec_);
  }

 private:
  template <class F>
  void guarded(std::size_t line, F&& f) {
    (void)line;
    try {
      f();
    } catch (const Failure& e) {
      diags_.push_back(e.diagnostic);
    }
  }

  static void expectEnd(const std::vector<Token>& toks, std::size_t pos, std::size_t line) {
    if (toks[pos].kind != Tok::End)
      fail(line, toks[pos].column, "ParseError", "unexpected '" + toks[pos].text + "'");
  }

  static const Token& ident(const std::vector<Token>& toks, std::size_t pos, std::size_t line,
                            const char* what) {
    if (toks[pos].kind != Tok::Ident)
      fail(line, toks[pos].column, "ParseError", std::string("expected ") + what);
    return toks[pos];
  }

  void parseName(const std::vector<Token>& toks, std::size_t line) {
    spec_.name = ident(toks, 1, line, "a calculus name").text;
    expectEnd(toks, 2, line);
  }

  void parseZone(const std::vector<Token>& toks, std::size_t line) {
    ZoneDecl z;
    const Token& name = ident(toks, 1, line, "a zone name");
    z.name = name.text;
    const Token& side = ident(toks, 2, line, "'left' or 'right'");
    if (side.text == "left" || side.text == "antecedent")
      z.side = Side::Antecedent;
    else if (side.text == "right" || side.text == "succedent")
      z.side = Side::Succedent;
    else
      fail(line, side.column, "ParseError", "expected 'left' or 'right'");
    std::size_t pos = 3;
    while (toks[pos].kind == Tok::Ident) {
      if (toks[pos].text == "weaken")
        z.weakening = true;
      else if (toks[pos].text == "contract")
        z.contraction = true;
      else
        fail(line, toks[pos].column, "ParseError", "unknown zone flag '" + toks[pos].text + "'");
      ++pos;
    }
    expectEnd(toks, pos, line);
    if (spec_.zoneIndex(z.name))
      fail(line, name.column, "DuplicateZone", "zone '" + z.name + "' declared twice");
    if (z.side == Side::Antecedent && !spec_.zones.empty() &&
        spec_.zones.back().side == Side::Succedent)
      fail(line, side.column, "ParseError", "antecedent zones must be declared first");
    spec_.zones.push_back(std::move(z));
  }

  void parseConn(const std::vector<Token>& toks, std::size_t line) {
    Connective c;
    const Token& name = ident(toks, 1, line, "a connective name");
    c.name = name.text;
    if (toks[2].kind != Tok::Number) fail(line, toks[2].column, "ParseError", "expected an arity");
    c.arity = std::stoul(toks[2].text);
    if (toks[3].kind != Tok::String)
      fail(line, toks[3].column, "ParseError", "expected a quoted LaTeX template");
    c.display = toks[3].text;
    std::size_t pos = 4;
    while (toks[pos].kind == Tok::Ident) {
      if (toks[pos].text == "prec") {
        if (toks[pos + 1].kind != Tok::Number)
          fail(line, toks[pos + 1].column, "ParseError", "expected a precedence");
        c.precedence = std::stoi(toks[pos + 1].text);
        pos += 2;
      } else if (toks[pos].text == "right") {
        c.rightAssoc = true;
        ++pos;
      } else {
        fail(line, toks[pos].column, "ParseError", "unknown connective option '" + toks[pos].text + "'");
      }
    }
    expectEnd(toks, pos, line);
    std::set<int> slots;
    for (std::size_t i = 0; i + 1 < c.display.size(); ++i)
      if (c.display[i] == '#' && std::isdigit(static_cast<unsigned char>(c.display[i + 1])))
        slots.insert(c.display[i + 1] - '0');
    std::set<int> expected;
    for (std::size_t k = 1; k <= c.arity; ++k) expected.insert(static_cast<int>(k));
    if (slots != expected)
      fail(line, toks[3].column, "ArityMismatch",
           "template of '" + c.name + "' must have exactly the slots #1..#" +
               std::to_string(c.arity));
    if (spec_.signature.find(c.name))
      fail(line, name.column, "DuplicateConnective", "connective '" + c.name + "' declared twice");
    if (classify(c.name, GoalSyntax::Schema) != IdentClass::Atom || c.name.size() < 2)
      fail(line, name.column, "ParseError",
           "connective names must be lowercase identifiers of two or more letters");
    spec_.signature.add(std::move(c));
  }

  void parseDual(const std::vector<Token>& toks, std::size_t line) {
    const Token& a = ident(toks, 1, line, "a connective");
    const Token& b = ident(toks, 2, line, "a connective");
    expectEnd(toks, 3, line);
    const Connective* ca = spec_.signature.find(a.text);
    const Connective* cb = spec_.signature.find(b.text);
    if (!ca) fail(line, a.column, "UnknownConnective", "unknown connective '" + a.text + "'");
    if (!cb) fail(line, b.column, "UnknownConnective", "unknown connective '" + b.text + "'");
    if (ca->arity != cb->arity)
      fail(line, b.column, "ArityMismatch", "dual connectives must have the same arity");
    if ((ca->dual && *ca->dual != b.text) || (cb->dual && *cb->dual != a.text))
      fail(line, a.column, "DualConflict", "duality must be an involution");
    spec_.signature.setDual(a.text, b.text);
  }

  void parseRule(const std::vector<Token>& toks, std::size_t line) {
    RuleDecl r;
    const std::string& kw = toks[0].text;
    r.kind = kw == "axiom"        ? RuleKind::Axiom
             : kw == "structural" ? RuleKind::Structural
             : kw == "cut"        ? RuleKind::Cut
                                  : RuleKind::Logical;
    const Token& name = ident(toks, 1, line, "a rule name");
    r.name = name.text;
    std::size_t pos = 2;
    if (toks[pos].kind == Tok::String) r.label = toks[pos++].text;
    if (!(toks[pos].kind == Tok::Punct && toks[pos].text == ":"))
      fail(line, toks[pos].column, "ParseError", "expected ':' after rule name");
    ++pos;
    TermParser tp(spec_, toks, pos, line, GoalSyntax::Schema);
    std::vector<Sequent> seqs;
    bool arrow = false;
    while (tp.at("(")) seqs.push_back(tp.sequent());
    if (tp.at("=>")) {
      arrow = true;
      ++pos;
      r.conclusion = tp.sequent();
      r.premises = std::move(seqs);
    } else {
      if (seqs.size() != 1)
        fail(line, tp.peek().column, "ParseError", "expected '=>' followed by the conclusion");
      r.conclusion = std::move(seqs.front());
    }
    expectEnd(toks, pos, line);
    (void)arrow;

    if (spec_.findRule(r.name))
      fail(line, name.column, "DuplicateRuleName", "rule '" + r.name + "' declared twice");
    if (r.kind == RuleKind::Axiom && !r.premises.empty())
      fail(line, toks[0].column, "ParseError", "an axiom has no premises");
    if (r.kind != RuleKind::Axiom && r.premises.empty())
      fail(line, toks[0].column, "ParseError",
           "rule '" + r.name + "' has no premises; declare it with 'axiom'");

    // Context variables occur once in the conclusion; guards agree everywhere.
    std::map<std::string, std::optional<std::string>> guards;
    for (const auto& [v, g] : guarded_vars(r.conclusion)) {
      if (guards.count(v))
        fail(line, name.column, "ParseError",
             "context variable '" + v + "' occurs twice in the conclusion of '" + r.name + "'");
      guards.emplace(v, g);
    }
    for (const auto& p : r.premises)
      for (const auto& [v, g] : guarded_vars(p))
        if (auto it = guards.find(v); it != guards.end() && it->second != g)
          fail(line, name.column, "GuardMismatch",
               "context variable '" + v + "' carries different guards in '" + r.name + "'");

    if (r.kind == RuleKind::Cut) {
      try {
        check_cut_shape(spec_, r);
      } catch (const NotACut& e) {
        fail(line, name.column, "NotACut", e.what());
      }
    } else {
      VariableSet concl;
      collect_variables(r.conclusion, concl);
      for (const auto& p : r.premises) {
        VariableSet vs;
        collect_variables(p, vs);
        for (const auto& v : vs.formulaVars)
          if (!concl.hasFormulaVar(v))
            fail(line, name.column, "UnboundPremiseVariable",
                 "UnboundPremiseVariable(" + v + "): '" + v + "' occurs in a premise of '" +
                     r.name + "' but not in its conclusion");
        for (const auto& v : vs.contextVars)
          if (!concl.hasContextVar(v))
            fail(line, name.column, "UnboundPremiseVariable",
                 "UnboundPremiseVariable(" + v + "): '" + v + "' occurs in a premise of '" +
                     r.name + "' but not in its conclusion");
      }
    }

    std::size_t count = 0;
    r.principal = find_principal(r.conclusion, count);
    if (count > 1)
      fail(line, name.column, "AmbiguousPrincipal",
           "conclusion of '" + r.name + "' has more than one non-variable formula");
    if (r.kind == RuleKind::Cut) r.principal.reset();
    ruleLines_.emplace(r.name, std::make_pair(line, name.column));
    spec_.rules.push_back(std::move(r));
  }

  void validateIdentity() {
    if (!diags_.empty()) return;
    if (spec_.identityRule.empty()) {
      diags_.push_back({1, 1, "MissingIdentityRule",
                        "no identity rule: declare 'identity NAME' or an axiom named 'init'"});
      return;
    }
    const RuleDecl* r = spec_.findRule(spec_.identityRule);
    std::size_t line = identityLine_, column = identityColumn_;
    if (!r) {
      diags_.push_back({line, column, "MissingIdentityRule",
                        "identity rule '" + spec_.identityRule + "' is not declared"});
      return;
    }
    if (auto it = ruleLines_.find(r->name); it != ruleLines_.end() && identityLine_ == 1 &&
                                            identityColumn_ == 1)
      std::tie(line, column) = it->second;
    if (r->kind != RuleKind::Axiom) {
      diags_.push_back({line, column, "InvalidIdentityRule", "identity rule must be an axiom"});
      return;
    }
    // Two-sided: an atom variable on both sides. One-sided: a dual literal
    // pair inside one zone.
    bool ok = false;
    for (std::size_t z1 = 0; z1 < r->conclusion.zones.size() && !ok; ++z1)
      for (const auto& f1 : r->conclusion.zones[z1].formulas()) {
        if (f1.kind() != Formula::Kind::AtomVar) continue;
        for (std::size_t z2 = 0; z2 < r->conclusion.zones.size() && !ok; ++z2)
          for (const auto& f2 : r->conclusion.zones[z2].formulas()) {
            if (f2.kind() != Formula::Kind::AtomVar || f2.name() != f1.name()) continue;
            const bool crossSides = spec_.zones[z1].side != spec_.zones[z2].side &&
                                    f1.polarity() == f2.polarity();
            const bool dualPair = z1 == z2 && f1.polarity() != f2.polarity();
            if (crossSides || dualPair) ok = true;
          }
      }
    if (!ok)
      diags_.push_back({line, column, "InvalidIdentityRule",
                        "identity rule must relate one atom variable across sides or as a dual "
                        "pair"});
  }

  std::vector<std::string_view> lines_;
  CalculusSpec spec_;
  std::vector<Diagnostic> diags_;
  std::map<std::string, std::pair<std::size_t, std::size_t>> ruleLines_;
  std::size_t identityLine_ = 1;
  std::size_t identityColumn_ = 1;
};

// ---------------------------------------------------------------------------
// Printing


void print_formula_to(const CalculusSpec& spec, const Formula& f, std::string& out) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
    case Formula::Kind::AtomVar:
    case Formula::Kind::FormulaVar:
      out += f.name();
      if (f.negated()) out += "^";
      return;
    case Formula::Kind::App:
      break;
  }
  const Connective& c = spec.signature.at(f.name());
  if (c.arity == 0) {
    out += c.name;
  } else if (c.arity == 1) {
    out += c.name + " ";
    const Formula& a = f.args()[0];
    const bool paren = a.kind() == Formula::Kind::App && a.args().size() >= 2;
    if (paren) out += "(";
    print_formula_to(spec, a, out);
    if (paren) out += ")";
  } else if (c.arity == 2) {
    for (int i = 0; i < 2; ++i) {
      const Formula& a = f.args()[static_cast<std::size_t>(i)];
      const bool paren = needs_parens(spec.signature, c, a, i == 0);
      if (paren) out += "(";
      print_formula_to(spec, a, out);
      if (paren) out += ")";
      if (i == 0) out += " " + c.name + " ";
    }
  } else {
    // No infix syntax for these; printed for diagnostics only.
    out += c.name + "(";
    for (std::size_t i = 0; i < f.args().size(); ++i) {
      if (i) out += ", ";
      print_formula_to(spec, f.args()[i], out);
    }
    out += ")";
  }
}

std::string print_zone(const CalculusSpec& spec, const ContextExpr& z) {
  if (z.empty()) return ".";
  std::string out;
  for (const auto& v : z.vars()) {
    if (!out.empty()) out += ", ";
    if (v.guard) out += *v.guard + " ";
    out += v.name;
  }
  for (const auto& f : z.formulas()) {
    if (!out.empty()) out += ", ";
    print_formula_to(spec, f, out);
  }
  return out;
}

}  // namespace

bool needs_parens(const Signature& sig, const Connective& parent, const Formula& child,
                  bool isLeft) {
  if (child.kind() != Formula::Kind::App || child.args().size() != 2) return false;
  const Connective& c = sig.at(child.name());
  if (c.precedence != parent.precedence) return c.precedence < parent.precedence;
  if (c.name != parent.name) return true;
  return isLeft ? parent.rightAssoc : !parent.rightAssoc;
}

CalculusSpec parse_calculus(std::string_view text) { return CalculusParser(text).run(); }

Sequent parse_sequent(const CalculusSpec& calculus, std::string_view text, GoalSyntax syntax) {
  try {
    auto toks = lex(text, 1);
    std::size_t pos = 0;
    TermParser tp(calculus, toks, pos, 1, syntax);
    Sequent s = tp.sequent();
    if (toks[pos].kind != Tok::End)
      fail(1, toks[pos].column, "ParseError", "unexpected '" + toks[pos].text + "'");
    return s;
  } catch (const Failure& f) {
    throw CalculusError({f.diagnostic});
  }
}

Formula parse_formula(const CalculusSpec& calculus, std::string_view text, GoalSyntax syntax) {
  try {
    auto toks = lex(text, 1);
    std::size_t pos = 0;
    TermParser tp(calculus, toks, pos, 1, syntax);
    Formula f = tp.formula();
    if (toks[pos].kind != Tok::End)
      fail(1, toks[pos].column, "ParseError", "unexpected '" + toks[pos].text + "'");
    return f;
  } catch (const Failure& f) {
    throw CalculusError({f.diagnostic});
  }
}

std::string print_formula(const CalculusSpec& calculus, const Formula& f) {
  std::string out;
  print_formula_to(calculus, f, out);
  return out;
}

std::string print_sequent(const CalculusSpec& calculus, const Sequent& s) {
  const std::size_t nAnte = calculus.antecedentCount();
  std::string left, right;
  for (std::size_t z = 0; z < s.zones.size(); ++z) {
    std::string& side = z < nAnte ? left : right;
    if (z != 0 && z != nAnte) side += " ; ";
    side += print_zone(calculus, s.zones[z]);
  }
  return "(" + (left.empty() ? std::string() : left + " ") + "|- " + right + ")";
}

std::string print_rule(const CalculusSpec& calculus, const RuleDecl& r) {
  std::string out = r.kind == RuleKind::Axiom        ? "axiom "
                    : r.kind == RuleKind::Structural ? "structural "
                    : r.kind == RuleKind::Cut        ? "cut "
                                                     : "rule ";
  out += r.name;
  if (!r.label.empty()) out += " \"" + r.label + "\"";
  out += " : ";
  for (const auto& p : r.premises) out += print_sequent(calculus, p) + " ";
  if (!r.premises.empty()) out += "=> ";
  out += print_sequent(calculus, r.conclusion);
  return out;
}

std::string print_calculus(const CalculusSpec& calculus) {
  std::string out;
  if (!calculus.name.empty()) out += "calculus " + calculus.name + "\n";
  for (const auto& z : calculus.zones) {
    out += "zone " + z.name + (z.side == Side::Antecedent ? " left" : " right");
    if (z.weakening) out += " weaken";
    if (z.contraction) out += " contract";
    out += "\n";
  }
  for (const auto& c : calculus.signature.connectives()) {
    out += "conn " + c.name + " " + std::to_string(c.arity) + " \"" + c.display + "\"";
    if (c.precedence != 0) out += " prec " + std::to_string(c.precedence);
    if (c.rightAssoc) out += " right";
    out += "\n";
  }
  std::set<std::string> done;
  for (const auto& c : calculus.signature.connectives()) {
    if (!c.dual || done.count(c.name)) continue;
    out += "dual " + c.name + " " + *c.dual + "\n";
    done.insert(c.name);
    done.insert(*c.dual);
  }
  for (const auto& r : calculus.rules) out += print_rule(calculus, r) + "\n";
  if (!calculus.identityRule.empty()) out += "identity " + calculus.identityRule + "\n";
  return out;
}

CutDescriptor validate_cut(const CalculusSpec& calculus, std::string_view ruleName) {
  const RuleDecl* r = calculus.findRule(ruleName);
  if (!r) throw NotACut("unknown rule '" + std::string(ruleName) + "'");
  return check_cut_shape(calculus, *r);
}

}  // namespace sequitur
