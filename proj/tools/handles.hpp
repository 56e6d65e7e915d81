// Thin C++ ownership layer over the C interface, shared by the CLI and the
// HTTP service.
#pragma once

#include <memory>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "sequitur/sequitur.h"

namespace sqt {

using json = nlohmann::ordered_json;

class Failure : public std::runtime_error {
 public:
  Failure(sq_status s, json detail)
      : std::runtime_error(detail.value("message", std::string(sq_status_name(s)))),
        status(s),
        detail(std::move(detail)) {}
  sq_status status;
  json detail;  // {"error", "message", "diagnostics"}
};

inline void ok(sq_status s) {
  if (s == SQ_OK) return;
  json d = json::parse(sq_last_error_json(), nullptr, false);
  if (!d.is_object()) d = {{"error", sq_status_name(s)}, {"message", sq_last_error()}};
  throw Failure(s, std::move(d));
}

inline std::string take(char* s) {
  std::string out = s ? s : "";
  sq_string_free(s);
  return out;
}

struct CalculusDeleter {
  void operator()(sq_calculus* c) const { sq_calculus_free(c); }
};
struct SessionDeleter {
  void operator()(sq_session* s) const { sq_session_free(s); }
};
using Calculus = std::unique_ptr<sq_calculus, CalculusDeleter>;
using Session = std::unique_ptr<sq_session, SessionDeleter>;

inline Calculus parse_calculus(const std::string& text) {
  sq_calculus* c = nullptr;
  ok(sq_calculus_parse(text.c_str(), &c));
  return Calculus(c);
}

inline Session new_session(const sq_calculus* c, const std::string& goal) {
  sq_session* s = nullptr;
  ok(sq_session_new(c, goal.c_str(), &s));
  return Session(s);
}

inline const char* opt(const std::string& s) { return s.empty() ? nullptr : s.c_str(); }

}  // namespace sqt
