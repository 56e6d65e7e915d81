#include <cstdlib>
#include <cstring>
#include <memory>

#include "sequitur/sequitur.h"
#include "sequitur/wire.hpp"

using namespace sequitur;

struct sq_calculus {
  std::shared_ptr<const CalculusSpec> spec;
};

struct sq_session {
  std::shared_ptr<const CalculusSpec> spec;
  ProofSession proof;
};

namespace {

thread_local std::string g_error;
thread_local std::string g_error_json = "null";

class ApiError : public std::runtime_error {
 public:
  ApiError(sq_status s, std::string code, const std::string& msg)
      : std::runtime_error(msg), status(s), code(std::move(code)) {}
  sq_status status;
  std::string code;
};

sq_status record(sq_status s, const std::string& code, const std::string& message,
                 const std::vector<Diagnostic>& ds = {}) {
  g_error = message;
  Json j;
  j["error"] = code;
  j["message"] = message;
  j["diagnostics"] = diagnostics_to_wire(ds);
  g_error_json = j.dump(-1, ' ', false, Json::error_handler_t::replace);
  return s;
}

sq_status proof_status(const std::string& code) {
  if (code == "UnknownRule") return SQ_E_UNKNOWN_RULE;
  if (code == "StaleGoal") return SQ_E_STALE_GOAL;
  if (code == "IllegalApplication") return SQ_E_ILLEGAL_APPLICATION;
  return SQ_E_INTERNAL;
}

template <typename F>
sq_status guarded(F&& f) {
  try {
    f();
    g_error.clear();
    g_error_json = "null";
    return SQ_OK;
  } catch (const ApiError& e) {
    return record(e.status, e.code, e.what());
  } catch (const CalculusError& e) {
    const auto& ds = e.diagnostics();
    return record(SQ_E_PARSE, ds.empty() ? "ParseError" : ds.front().code, e.what(), ds);
  } catch (const ProofError& e) {
    return record(proof_status(e.code()), e.code(), e.what());
  } catch (const NotACut& e) {
    return record(SQ_E_NOT_A_CUT, "NotACut", e.what());
  } catch (const MetatheoryError& e) {
    return record(SQ_E_CHECK, e.code(), e.what());
  } catch (const WireError& e) {
    return record(SQ_E_PARSE, "InvalidJson", e.what());
  } catch (const Json::exception& e) {
    return record(SQ_E_PARSE, "InvalidJson", e.what());
  } catch (const std::bad_alloc&) {
    return record(SQ_E_INTERNAL, "OutOfMemory", "out of memory");
  } catch (const std::exception& e) {
    return record(SQ_E_INTERNAL, "Internal", e.what());
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw ApiError(SQ_E_INVALID_ARGUMENT, "InvalidArgument", what);
}

char* copy_out(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

Json parse_object(const char* text) {
  if (!text || !*text) return Json::object();
  Json j = Json::parse(text);
  if (!j.is_object()) throw WireError("expected a JSON object");
  return j;
}

RenderOptions render_options(const Json& j) {
  RenderOptions o;
  if (j.contains("macroStyle")) {
    const std::string m = j["macroStyle"].get<std::string>();
    if (m == "bussproofs")
      o.macroStyle = MacroStyle::Bussproofs;
    else if (m != "infer")
      throw ApiError(SQ_E_INVALID_ARGUMENT, "InvalidArgument", "unknown macroStyle '" + m + "'");
  }
  if (j.contains("zoneSeparator")) o.zoneSeparator = j["zoneSeparator"].get<std::string>();
  if (j.contains("turnstile")) o.turnstile = j["turnstile"].get<std::string>();
  return o;
}

RenderOptions render_options(const char* text) { return render_options(parse_object(text)); }

std::string param(const Json& j, const char* key, const char* what) {
  if (!j.contains(key) || !j[key].is_string())
    throw ApiError(SQ_E_CHECK, "MissingParameter", std::string(what) + " requires '" + key + "'");
  return j[key].get<std::string>();
}

CheckReport run_check(const CalculusSpec& calc, const std::string& property, const Json& p) {
  auto depth = [&](std::size_t d) {
    if (!p.contains("depth")) return d;
    const long long v = p["depth"].get<long long>();
    if (v < 0 || v > 12)
      throw ApiError(SQ_E_INVALID_ARGUMENT, "InvalidArgument", "depth must be between 0 and 12");
    return static_cast<std::size_t>(v);
  };
  if (property == "identity") return check_identity_expansion(calc, depth(2));
  if (property == "weakening") return check_weakening_admissibility(calc);
  if (property == "invert") return check_invertibility(calc, param(p, "rule", "invert"), depth(3));
  if (property == "permute")
    return check_permutability(calc, param(p, "ruleUp", "permute"),
                               param(p, "ruleDown", "permute"), depth(2));
  if (property == "cut") {
    std::string rule;
    if (p.contains("rule")) {
      rule = param(p, "rule", "cut");
    } else {
      const auto cuts = calc.cutRules();
      if (cuts.empty()) throw ApiError(SQ_E_CHECK, "NoCutRule", "the calculus declares no cut rule");
      rule = cuts.front()->name;
    }
    return check_cut_elimination(calc, rule, depth(4));
  }
  throw ApiError(SQ_E_INVALID_ARGUMENT, "InvalidArgument",
                 "unknown property '" + property +
                     "' (expected identity, weakening, invert, permute or cut)");
}

Json session_json(const sq_session& s, const RenderOptions& opts) {
  const CalculusSpec& calc = *s.spec;
  Json j;
  j["tree"] = to_wire(calc, s.proof.root());
  Json open = Json::array();
  for (const ProofTree* g : s.proof.openGoals()) open.push_back(g->goalId);
  j["openGoals"] = std::move(open);
  j["complete"] = s.proof.complete();
  j["depth"] = s.proof.depth();
  j["latex"] = render_proof(calc, s.proof.root(), opts);
  return j;
}

}  // namespace

extern "C" {

const char* sq_version(void) { return "0.1.0"; }

const char* sq_status_name(sq_status status) {
  switch (status) {
    case SQ_OK: return "ok";
    case SQ_E_INVALID_ARGUMENT: return "invalid argument";
    case SQ_E_PARSE: return "parse error";
    case SQ_E_UNKNOWN_RULE: return "unknown rule";
    case SQ_E_STALE_GOAL: return "stale goal";
    case SQ_E_ILLEGAL_APPLICATION: return "illegal application";
    case SQ_E_NOT_A_CUT: return "not a cut rule";
    case SQ_E_CHECK: return "check precondition";
    case SQ_E_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* sq_last_error(void) { return g_error.c_str(); }
const char* sq_last_error_json(void) { return g_error_json.c_str(); }

void sq_string_free(char* s) { std::free(s); }

sq_status sq_calculus_parse(const char* text, sq_calculus** out) {
  return guarded([&] {
    require(text && out, "text and out must not be null");
    auto spec = std::make_shared<const CalculusSpec>(parse_calculus(text));
    *out = new sq_calculus{std::move(spec)};
  });
}

void sq_calculus_free(sq_calculus* calc) { delete calc; }

sq_status sq_calculus_json(const sq_calculus* calc, char** out_json) {
  return guarded([&] {
    require(calc && out_json, "calc and out_json must not be null");
    *out_json = copy_out(dump(calculus_to_wire(*calc->spec)));
  });
}

sq_status sq_calculus_print(const sq_calculus* calc, char** out_text) {
  return guarded([&] {
    require(calc && out_text, "calc and out_text must not be null");
    *out_text = copy_out(print_calculus(*calc->spec));
  });
}

sq_status sq_render_sequent(const sq_calculus* calc, const char* goal, const char* options_json,
                            char** out_latex) {
  return guarded([&] {
    require(calc && goal && out_latex, "calc, goal and out_latex must not be null");
    const RenderOptions opts = render_options(options_json);
    *out_latex = copy_out(render_sequent(*calc->spec, parse_sequent(*calc->spec, goal), opts));
  });
}

sq_status sq_render_rules(const sq_calculus* calc, const char* rule, const char* options_json,
                          char** out_latex) {
  return guarded([&] {
    require(calc && out_latex, "calc and out_latex must not be null");
    const RenderOptions opts = render_options(options_json);
    const CalculusSpec& spec = *calc->spec;
    std::string out;
    for (const auto& r : spec.rules) {
      if (rule && r.name != rule) continue;
      out += render_rule(spec, r, opts) + "\n";
    }
    if (rule && out.empty())
      throw ProofError("UnknownRule", "unknown rule '" + std::string(rule) + "'");
    *out_latex = copy_out(out);
  });
}

sq_status sq_render_tree(const sq_calculus* calc, const char* tree_json, const char* options_json,
                         char** out_latex) {
  return guarded([&] {
    require(calc && tree_json && out_latex, "calc, tree_json and out_latex must not be null");
    const RenderOptions opts = render_options(options_json);
    Json j = Json::parse(tree_json);
    if (j.is_object() && j.contains("tree")) j = j["tree"];
    *out_latex = copy_out(render_proof(*calc->spec, tree_from_wire(j), opts));
  });
}

sq_status sq_latex_document(const char* body, const char* options_json, char** out_latex) {
  return guarded([&] {
    require(body && out_latex, "body and out_latex must not be null");
    *out_latex = copy_out(latex_document(body, render_options(options_json)));
  });
}

sq_status sq_prove(const sq_calculus* calc, const char* goal, size_t depth, int* found,
                   char** out_json) {
  return guarded([&] {
    require(calc && goal && found && out_json, "arguments must not be null");
    const CalculusSpec& spec = *calc->spec;
    auto proof = bounded_search(spec, parse_sequent(spec, goal), depth);
    *out_json = copy_out(dump(proof ? to_wire(spec, *proof) : Json(nullptr)));
    *found = proof ? 1 : 0;
  });
}

sq_status sq_check(const sq_calculus* calc, const char* property, const char* params_json,
                   char** out_report_json, char** out_report_tex, int* worst) {
  return guarded([&] {
    require(calc && property, "calc and property must not be null");
    const Json params = parse_object(params_json);
    const RenderOptions opts = render_options(params);
    const CalculusSpec& spec = *calc->spec;
    const CheckReport report = run_check(spec, property, params);
    std::string json = dump(report_to_wire(spec, report, opts));
    std::string tex = render_report(spec, report, opts);
    const CaseSummary s = report.summary();
    if (worst) *worst = s.failed ? 3 : s.unknown ? 2 : 0;
    if (out_report_json) *out_report_json = copy_out(json);
    if (out_report_tex) *out_report_tex = copy_out(tex);
  });
}

sq_status sq_session_new(const sq_calculus* calc, const char* goal, sq_session** out) {
  return guarded([&] {
    require(calc && goal && out, "calc, goal and out must not be null");
    Sequent g = parse_sequent(*calc->spec, goal);
    *out = new sq_session{calc->spec, ProofSession(calc->spec, std::move(g))};
  });
}

void sq_session_free(sq_session* session) { delete session; }

sq_status sq_session_json(const sq_session* session, const char* options_json, char** out_json) {
  return guarded([&] {
    require(session && out_json, "session and out_json must not be null");
    *out_json = copy_out(dump(session_json(*session, render_options(options_json))));
  });
}

sq_status sq_session_applications(const sq_session* session, size_t goal_id, const char* rule,
                                  const char* options_json, char** out_json) {
  return guarded([&] {
    require(session && rule && out_json, "session, rule and out_json must not be null");
    const RenderOptions opts = render_options(options_json);
    const auto apps = session->proof.options(goal_id, rule);
    const ProofTree* g = session->proof.goal(goal_id);
    Json list = Json::array();
    for (std::size_t i = 0; i < apps.size(); ++i)
      list.push_back(application_to_wire(*session->spec, g->sequent, i, apps[i], opts));
    Json j;
    j["goalId"] = goal_id;
    j["rule"] = rule;
    j["applications"] = std::move(list);
    *out_json = copy_out(dump(j));
  });
}

sq_status sq_session_apply(sq_session* session, size_t goal_id, const char* rule, size_t index) {
  return guarded([&] {
    require(session && rule, "session and rule must not be null");
    session->proof.apply(goal_id, rule, index);
  });
}

sq_status sq_session_undo(sq_session* session) {
  return guarded([&] {
    require(session != nullptr, "session must not be null");
    session->proof.undo();
  });
}

}  // extern "C"
