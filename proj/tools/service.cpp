#include "service.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>

#include "httplib.h"

namespace sqt {

namespace {

struct HttpError {
  int status;
  json body;
};

[[noreturn]] void not_found(const std::string& what, const std::string& id) {
  throw HttpError{404, {{"error", "NotFound"}, {"message", "unknown " + what + " '" + id + "'"}}};
}

[[noreturn]] void bad_request(const std::string& code, const std::string& message) {
  throw HttpError{400, {{"error", code}, {"message", message}}};
}

[[noreturn]] void unprocessable(const std::string& code, const std::string& message) {
  throw HttpError{422, {{"error", code}, {"message", message}, {"diagnostics", json::array()}}};
}

int http_status(sq_status s) {
  switch (s) {
    case SQ_E_STALE_GOAL:
      return 409;
    case SQ_E_INTERNAL:
      return 500;
    default:
      return 422;
  }
}

void send(httplib::Response& res, int status, const std::string& body) {
  res.status = status;
  res.set_content(body, "application/json");
}

void send(httplib::Response& res, int status, const json& body) {
  send(res, status, body.dump(2, ' ', false, json::error_handler_t::replace) + "\n");
}

void guarded(httplib::Response& res, const std::function<void()>& f) {
  try {
    f();
  } catch (const HttpError& e) {
    send(res, e.status, e.body);
  } catch (const Failure& e) {
    send(res, http_status(e.status), e.detail);
  } catch (const json::exception& e) {
    send(res, 400, json{{"error", "BadRequest"}, {"message", e.what()}});
  } catch (const std::exception& e) {
    send(res, 500, json{{"error", "Internal"}, {"message", e.what()}});
  }
}

json body_object(const httplib::Request& req) {
  json j = json::parse(req.body, nullptr, false);
  if (!j.is_object()) bad_request("BadRequest", "request body must be a JSON object");
  return j;
}

std::string string_field(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_string())
    unprocessable("MissingParameter", std::string("'") + key + "' must be a string");
  return j[key].get<std::string>();
}

std::size_t index_field(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer() || j[key].get<long long>() < 0)
    unprocessable("MissingParameter", std::string("'") + key + "' must be a nonnegative integer");
  return j[key].get<std::size_t>();
}

std::string render_options(const httplib::Request& req) {
  if (!req.has_param("macroStyle")) return {};
  return json{{"macroStyle", req.get_param_value("macroStyle")}}.dump();
}

json with_ids(json front, const json& rest) {
  for (auto it = rest.begin(); it != rest.end(); ++it) front[it.key()] = it.value();
  return front;
}

}  // namespace

int default_port() {
  if (const char* p = std::getenv("SEQUITUR_PORT")) {
    char* end = nullptr;
    const long v = std::strtol(p, &end, 10);
    if (end && *end == '\0' && v > 0 && v < 65536) return static_cast<int>(v);
  }
  return 8080;
}

Service::Service(std::string snapshotPath) : snapshotPath_(std::move(snapshotPath)) {}

std::shared_ptr<const Service::CalculusEntry> Service::findCalculus(const std::string& id) const {
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = calculi_.find(id);
  if (it == calculi_.end()) not_found("calculus", id);
  return it->second;
}

std::shared_ptr<Service::SessionEntry> Service::findSession(const std::string& id) const {
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) not_found("session", id);
  return it->second;
}

std::shared_ptr<const Service::CalculusEntry> Service::addCalculus(std::string text) {
  Calculus handle = parse_calculus(text);
  auto entry = std::make_shared<CalculusEntry>();
  entry->text = std::move(text);
  entry->handle = std::move(handle);
  std::lock_guard<std::mutex> lock(mutex_);
  entry->id = "c" + std::to_string(nextCalculus_++);
  calculi_[entry->id] = entry;
  return entry;
}

std::shared_ptr<Service::SessionEntry> Service::addSession(
    std::shared_ptr<const CalculusEntry> calc, std::string goal) {
  Session handle = new_session(calc->handle.get(), goal);
  auto entry = std::make_shared<SessionEntry>();
  entry->calculus = std::move(calc);
  entry->goal = std::move(goal);
  entry->handle = std::move(handle);
  std::lock_guard<std::mutex> lock(mutex_);
  entry->id = "s" + std::to_string(nextSession_++);
  sessions_[entry->id] = entry;
  return entry;
}

json Service::sessionBody(SessionEntry& s, const std::string& options) {
  char* out = nullptr;
  ok(sq_session_json(s.handle.get(), opt(options), &out));
  return with_ids({{"id", s.id}, {"calculusId", s.calculus->id}}, json::parse(take(out)));
}

void Service::mount(httplib::Server& server) {
  server.Get("/v1/health", [](const httplib::Request&, httplib::Response& res) {
    send(res, 200, json{{"status", "ok"}, {"version", sq_version()}});
  });

  server.Post("/v1/calculi", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      auto c = addCalculus(req.body);
      char* out = nullptr;
      ok(sq_calculus_json(c->handle.get(), &out));
      send(res, 201, with_ids({{"id", c->id}}, json::parse(take(out))));
    });
  });

  server.Get("/v1/calculi", [this](const httplib::Request&, httplib::Response& res) {
    guarded(res, [&] {
      json list = json::array();
      std::lock_guard<std::mutex> lock(mutex_);
      for (const auto& [id, c] : calculi_) list.push_back({{"id", id}});
      send(res, 200, list);
    });
  });

  server.Get(R"(/v1/calculi/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      auto c = findCalculus(req.matches[1]);
      char* out = nullptr;
      ok(sq_calculus_json(c->handle.get(), &out));
      send(res, 200, with_ids({{"id", c->id}}, json::parse(take(out))));
    });
  });

  server.Post(R"(/v1/calculi/([^/]+)/checks)",
              [this](const httplib::Request& req, httplib::Response& res) {
                guarded(res, [&] {
                  auto c = findCalculus(req.matches[1]);
                  const json body = body_object(req);
                  const std::string property = string_field(body, "property");
                  const json params = body.value("params", json::object());
                  if (!params.is_object()) unprocessable("MissingParameter", "'params' must be an object");
                  char* report = nullptr;
                  int worst = 0;
                  ok(sq_check(c->handle.get(), property.c_str(), params.dump().c_str(), &report,
                              nullptr, &worst));
                  send(res, 200, take(report));
                });
              });

  server.Post("/v1/sessions", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const json body = body_object(req);
      auto c = findCalculus(string_field(body, "calculusId"));
      auto s = addSession(c, string_field(body, "goal"));
      std::lock_guard<std::mutex> lock(s->mutex);
      send(res, 201, sessionBody(*s, {}));
    });
  });

  server.Get(R"(/v1/sessions/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      auto s = findSession(req.matches[1]);
      std::lock_guard<std::mutex> lock(s->mutex);
      send(res, 200, sessionBody(*s, render_options(req)));
    });
  });

  server.Delete(R"(/v1/sessions/([^/]+))",
                [this](const httplib::Request& req, httplib::Response& res) {
                  guarded(res, [&] {
                    std::lock_guard<std::mutex> lock(mutex_);
                    if (!sessions_.erase(req.matches[1])) not_found("session", req.matches[1]);
                    res.status = 204;
                  });
                });

  server.Get(R"(/v1/sessions/([^/]+)/goals/(\d+)/applications)",
             [this](const httplib::Request& req, httplib::Response& res) {
               guarded(res, [&] {
                 auto s = findSession(req.matches[1]);
                 if (!req.has_param("rule"))
                   unprocessable("MissingParameter", "query parameter 'rule' is required");
                 const std::size_t goal = std::stoul(req.matches[2]);
                 const std::string rule = req.get_param_value("rule");
                 const std::string options = render_options(req);
                 std::lock_guard<std::mutex> lock(s->mutex);
                 char* out = nullptr;
                 ok(sq_session_applications(s->handle.get(), goal, rule.c_str(), opt(options),
                                            &out));
                 send(res, 200, take(out));
               });
             });

  server.Post(R"(/v1/sessions/([^/]+)/apply)",
              [this](const httplib::Request& req, httplib::Response& res) {
                guarded(res, [&] {
                  auto s = findSession(req.matches[1]);
                  const json body = body_object(req);
                  const std::size_t goal = index_field(body, "goalId");
                  const std::string rule = string_field(body, "rule");
                  const std::size_t index = index_field(body, "applicationIndex");
                  std::lock_guard<std::mutex> lock(s->mutex);
                  ok(sq_session_apply(s->handle.get(), goal, rule.c_str(), index));
                  s->log.push_back(
                      {{"op", "apply"}, {"goalId", goal}, {"rule", rule}, {"index", index}});
                  send(res, 200, sessionBody(*s, {}));
                });
              });

  server.Post(R"(/v1/sessions/([^/]+)/undo)",
              [this](const httplib::Request& req, httplib::Response& res) {
                guarded(res, [&] {
                  auto s = findSession(req.matches[1]);
                  std::lock_guard<std::mutex> lock(s->mutex);
                  ok(sq_session_undo(s->handle.get()));
                  s->log.push_back({{"op", "undo"}});
                  send(res, 200, sessionBody(*s, {}));
                });
              });

  server.Get("/v1/snapshot", [this](const httplib::Request&, httplib::Response& res) {
    guarded(res, [&] { send(res, 200, snapshot()); });
  });

  server.Post("/v1/snapshot", [this](const httplib::Request&, httplib::Response& res) {
    guarded(res, [&] {
      if (snapshotPath_.empty())
        unprocessable("NoSnapshotPath", "the server was started without a snapshot file");
      const json snap = snapshot();
      std::ofstream out(snapshotPath_);
      out << snap.dump(2) << "\n";
      if (!out) throw std::runtime_error("cannot write '" + snapshotPath_ + "'");
      send(res, 200,
           json{{"path", snapshotPath_},
                {"calculi", snap["calculi"].size()},
                {"sessions", snap["sessions"].size()}});
    });
  });
}

json Service::snapshot() const {
  std::lock_guard<std::mutex> lock(mutex_);
  json calculi = json::array();
  for (const auto& [id, c] : calculi_) calculi.push_back({{"id", id}, {"text", c->text}});
  json sessions = json::array();
  for (const auto& [id, s] : sessions_) {
    std::lock_guard<std::mutex> slock(s->mutex);
    sessions.push_back(
        {{"id", id}, {"calculusId", s->calculus->id}, {"goal", s->goal}, {"log", s->log}});
  }
  return {{"version", 1},
          {"nextCalculus", nextCalculus_},
          {"nextSession", nextSession_},
          {"calculi", std::move(calculi)},
          {"sessions", std::move(sessions)}};
}

void Service::restore(const json& snap) {
  std::map<std::string, std::shared_ptr<const CalculusEntry>> calculi;
  std::map<std::string, std::shared_ptr<SessionEntry>> sessions;
  for (const auto& jc : snap.at("calculi")) {
    auto c = std::make_shared<CalculusEntry>();
    c->id = jc.at("id").get<std::string>();
    c->text = jc.at("text").get<std::string>();
    c->handle = parse_calculus(c->text);
    calculi[c->id] = c;
  }
  for (const auto& js : snap.at("sessions")) {
    auto s = std::make_shared<SessionEntry>();
    s->id = js.at("id").get<std::string>();
    auto it = calculi.find(js.at("calculusId").get<std::string>());
    if (it == calculi.end()) throw std::runtime_error("snapshot session refers to a missing calculus");
    s->calculus = it->second;
    s->goal = js.at("goal").get<std::string>();
    s->handle = new_session(s->calculus->handle.get(), s->goal);
    for (const auto& step : js.at("log")) {
      if (step.at("op") == "undo")
        ok(sq_session_undo(s->handle.get()));
      else
        ok(sq_session_apply(s->handle.get(), step.at("goalId").get<std::size_t>(),
                            step.at("rule").get<std::string>().c_str(),
                            step.at("index").get<std::size_t>()));
    }
    s->log = js.at("log");
    sessions[s->id] = s;
  }
  std::lock_guard<std::mutex> lock(mutex_);
  calculi_ = std::move(calculi);
  sessions_ = std::move(sessions);
  nextCalculus_ = snap.at("nextCalculus").get<std::size_t>();
  nextSession_ = snap.at("nextSession").get<std::size_t>();
}

}  // namespace sqt
