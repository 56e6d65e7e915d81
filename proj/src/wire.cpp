#include "sequitur/wire.hpp"

namespace sequitur {

namespace {

const char* kind_name(Formula::Kind k) {
  switch (k) {
    case Formula::Kind::Atom:
      return "atom";
    case Formula::Kind::AtomVar:
      return "atomVar";
    case Formula::Kind::FormulaVar:
      return "var";
    case Formula::Kind::App:
      return "app";
  }
  return "app";
}

GoalStatus status_from(const std::string& s) {
  if (s == "open") return GoalStatus::Open;
  if (s == "closed") return GoalStatus::Closed;
  if (s == "assumed") return GoalStatus::Assumed;
  throw WireError("unknown goal status '" + s + "'");
}

CaseStatus case_status_from(const std::string& s) {
  if (s == "proved") return CaseStatus::Proved;
  if (s == "failed") return CaseStatus::Failed;
  if (s == "unknown") return CaseStatus::Unknown;
  throw WireError("unknown case status '" + s + "'");
}

template <typename F>
auto decoding(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw WireError(e.what());
  } catch (const KernelError& e) {
    throw WireError(e.what());
  }
}

Formula formula_of(const Json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  const std::string name = j.at("name").get<std::string>();
  if (kind == "app") {
    std::vector<Formula> args;
    for (const auto& a : j.at("args")) args.push_back(formula_of(a));
    return Formula::app(name, std::move(args));
  }
  const Polarity p = j.value("negated", false) ? Polarity::Negated : Polarity::Positive;
  if (kind == "atom") return Formula::atom(name, p);
  if (kind == "atomVar") return Formula::atomVar(name, p);
  if (kind == "var") return Formula::var(name, p);
  throw WireError("unknown formula kind '" + kind + "'");
}

ContextExpr context_of(const Json& j) {
  std::vector<ContextVar> vars;
  for (const auto& v : j.at("vars")) {
    ContextVar cv{v.at("name").get<std::string>(), std::nullopt};
    if (v.contains("guard") && !v["guard"].is_null()) cv.guard = v["guard"].get<std::string>();
    vars.push_back(std::move(cv));
  }
  std::vector<Formula> fs;
  for (const auto& f : j.at("formulas")) fs.push_back(formula_of(f));
  return ContextExpr(std::move(vars), std::move(fs));
}

Sequent sequent_of(const Json& j) {
  Sequent s;
  for (const auto& z : j.at("zones")) s.zones.push_back(context_of(z));
  return s;
}

Substitution substitution_of(const Json& j) {
  Substitution s;
  for (const auto& [k, v] : j.at("formulas").items()) s.bind(k, formula_of(v));
  for (const auto& [k, v] : j.at("contexts").items()) s.bind(k, context_of(v));
  return s;
}

ProofTree tree_of(const Json& j) {
  ProofTree t;
  t.goalId = j.at("goalId").get<std::size_t>();
  t.status = status_from(j.at("status").get<std::string>());
  t.sequent = sequent_of(j.at("sequent"));
  if (!j.at("rule").is_null()) t.rule = j["rule"].get<std::string>();
  if (!j.at("substitution").is_null()) t.substitution = substitution_of(j["substitution"]);
  for (const auto& c : j.at("children")) t.children.push_back(tree_of(c));
  return t;
}

Json side_name(Side s) { return s == Side::Antecedent ? "left" : "right"; }

}  // namespace

Json to_wire(const CalculusSpec& calc, const Formula& f) {
  Json j;
  j["kind"] = kind_name(f.kind());
  j["name"] = f.name();
  if (f.kind() == Formula::Kind::App) {
    Json args = Json::array();
    for (const auto& a : f.args()) args.push_back(to_wire(calc, a));
    j["args"] = std::move(args);
  } else {
    j["negated"] = f.negated();
  }
  return j;
}

Json to_wire(const CalculusSpec& calc, const ContextExpr& c) {
  Json vars = Json::array();
  for (const auto& v : c.vars()) {
    Json jv;
    jv["name"] = v.name;
    jv["guard"] = v.guard ? Json(*v.guard) : Json(nullptr);
    vars.push_back(std::move(jv));
  }
  Json fs = Json::array();
  for (const auto& f : c.formulas()) fs.push_back(to_wire(calc, f));
  Json j;
  j["vars"] = std::move(vars);
  j["formulas"] = std::move(fs);
  return j;
}

Json to_wire(const CalculusSpec& calc, const Sequent& s) {
  Json j;
  j["text"] = print_sequent(calc, s);
  j["latex"] = render_sequent(calc, s);
  Json zones = Json::array();
  for (const auto& z : s.zones) zones.push_back(to_wire(calc, z));
  j["zones"] = std::move(zones);
  return j;
}

Json to_wire(const CalculusSpec& calc, const Substitution& s) {
  Json fs = Json::object();
  for (const auto& [k, v] : s.formulas()) fs[k] = to_wire(calc, v);
  Json cs = Json::object();
  for (const auto& [k, v] : s.contexts()) cs[k] = to_wire(calc, v);
  Json j;
  j["formulas"] = std::move(fs);
  j["contexts"] = std::move(cs);
  return j;
}

Json to_wire(const CalculusSpec& calc, const ProofTree& t) {
  Json j;
  j["goalId"] = t.goalId;
  j["status"] = to_string(t.status);
  j["sequent"] = to_wire(calc, t.sequent);
  j["rule"] = t.rule ? Json(*t.rule) : Json(nullptr);
  j["substitution"] = t.substitution ? to_wire(calc, *t.substitution) : Json(nullptr);
  Json children = Json::array();
  for (const auto& c : t.children) children.push_back(to_wire(calc, c));
  j["children"] = std::move(children);
  return j;
}

Formula formula_from_wire(const Json& j) {
  return decoding([&] { return formula_of(j); });
}
ContextExpr context_from_wire(const Json& j) {
  return decoding([&] { return context_of(j); });
}
Sequent sequent_from_wire(const Json& j) {
  return decoding([&] { return sequent_of(j); });
}
Substitution substitution_from_wire(const Json& j) {
  return decoding([&] { return substitution_of(j); });
}
ProofTree tree_from_wire(const Json& j) {
  return decoding([&] { return tree_of(j); });
}

Json report_to_wire(const CalculusSpec& calc, const CheckReport& r, const RenderOptions& opts) {
  Json j;
  j["schema"] = "sequitur-report/1";
  j["property"] = r.property;
  j["calculus"] = r.calculus;
  Json params = Json::array();
  for (const auto& [k, v] : r.parameters) params.push_back({{"name", k}, {"value", v}});
  j["parameters"] = std::move(params);
  const CaseSummary s = r.summary();
  j["summary"] = {{"proved", s.proved},
                  {"failed", s.failed},
                  {"unknown", s.unknown},
                  {"total", s.total()}};
  j["notes"] = r.notes;
  Json cases = Json::array();
  for (const auto& c : r.cases) {
    Json jc;
    jc["id"] = c.id;
    jc["family"] = c.family;
    jc["description"] = c.description;
    jc["status"] = to_string(c.status);
    jc["notes"] = c.notes;
    Json ws = Json::array();
    for (const auto& w : c.witnesses) {
      Json jw;
      jw["derivation"] = to_wire(calc, w.derivation);
      jw["before"] = w.before ? to_wire(calc, *w.before) : Json(nullptr);
      jw["latex"] = {{"derivation", render_proof(calc, w.derivation, opts)},
                     {"before", w.before ? Json(render_proof(calc, *w.before, opts))
                                         : Json(nullptr)}};
      ws.push_back(std::move(jw));
    }
    jc["witnesses"] = std::move(ws);
    cases.push_back(std::move(jc));
  }
  j["cases"] = std::move(cases);
  return j;
}

CheckReport report_from_wire(const Json& j) {
  return decoding([&] {
    CheckReport r;
    r.property = j.at("property").get<std::string>();
    r.calculus = j.at("calculus").get<std::string>();
    for (const auto& p : j.at("parameters"))
      r.parameters.emplace_back(p.at("name").get<std::string>(), p.at("value").get<std::string>());
    r.notes = j.at("notes").get<std::string>();
    for (const auto& jc : j.at("cases")) {
      CaseResult c;
      c.id = jc.at("id").get<std::string>();
      c.family = jc.at("family").get<std::string>();
      c.description = jc.at("description").get<std::string>();
      c.status = case_status_from(jc.at("status").get<std::string>());
      c.notes = jc.at("notes").get<std::string>();
      for (const auto& jw : jc.at("witnesses")) {
        Witness w;
        w.derivation = tree_of(jw.at("derivation"));
        if (!jw.at("before").is_null()) w.before = tree_of(jw["before"]);
        c.witnesses.push_back(std::move(w));
      }
      r.cases.push_back(std::move(c));
    }
    return r;
  });
}

Json calculus_to_wire(const CalculusSpec& calc, const RenderOptions& opts) {
  Json j;
  j["name"] = calc.name;
  Json zones = Json::array();
  for (const auto& z : calc.zones)
    zones.push_back({{"name", z.name},
                     {"side", side_name(z.side)},
                     {"weaken", z.weakening},
                     {"contract", z.contraction}});
  j["zones"] = std::move(zones);
  Json conns = Json::array();
  for (const auto& c : calc.signature.connectives())
    conns.push_back({{"name", c.name},
                     {"arity", c.arity},
                     {"display", c.display},
                     {"dual", c.dual ? Json(*c.dual) : Json(nullptr)},
                     {"precedence", c.precedence},
                     {"rightAssoc", c.rightAssoc}});
  j["connectives"] = std::move(conns);
  Json rules = Json::array();
  for (const auto& r : calc.rules)
    rules.push_back({{"name", r.name},
                     {"kind", to_string(r.kind)},
                     {"label", r.label},
                     {"premises", r.premises.size()},
                     {"text", print_rule(calc, r)},
                     {"latex", render_rule(calc, r, opts)}});
  j["rules"] = std::move(rules);
  j["identity"] = calc.identityRule;
  return j;
}

Json application_to_wire(const CalculusSpec& calc, const Sequent& goal, std::size_t index,
                         const Application& app, const RenderOptions& opts) {
  ProofTree preview;
  preview.sequent = goal;
  preview.rule = app.rule;
  preview.status = GoalStatus::Closed;
  for (const auto& p : app.premises) {
    ProofTree c;
    c.sequent = p;
    preview.children.push_back(std::move(c));
  }
  Json premises = Json::array();
  for (const auto& p : app.premises) premises.push_back(to_wire(calc, p));
  Json j;
  j["index"] = index;
  j["rule"] = app.rule;
  j["premises"] = std::move(premises);
  j["substitution"] = to_wire(calc, app.substitution);
  j["latex"] = render_proof(calc, preview, opts);
  return j;
}

Json diagnostics_to_wire(const std::vector<Diagnostic>& ds) {
  Json out = Json::array();
  for (const auto& d : ds)
    out.push_back(
        {{"line", d.line}, {"column", d.column}, {"code", d.code}, {"message", d.message}});
  return out;
}

std::string dump(const Json& j) {
  return j.dump(2, ' ', false, Json::error_handler_t::replace) + "\n";
}

}  // namespace sequitur
