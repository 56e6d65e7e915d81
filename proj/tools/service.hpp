#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "handles.hpp"

namespace httplib {
class Server;
}

namespace sqt {

/// In-memory workbench state behind the /v1 routes.
class Service {
 public:
  /// Snapshots are written to `snapshotPath` on POST /v1/snapshot; empty
  /// disables writing.
  explicit Service(std::string snapshotPath = {});

  void mount(httplib::Server& server);

  json snapshot() const;
  /// Replaces all state. Throws Failure or json errors on bad input.
  void restore(const json& snap);

 private:
  struct CalculusEntry {
    std::string id;
    std::string text;
    Calculus handle;
  };
  struct SessionEntry {
    std::string id;
    std::shared_ptr<const CalculusEntry> calculus;
    std::string goal;
    Session handle;
    json log = json::array();
    std::mutex mutex;
  };

  std::shared_ptr<const CalculusEntry> findCalculus(const std::string& id) const;
  std::shared_ptr<SessionEntry> findSession(const std::string& id) const;
  std::shared_ptr<const CalculusEntry> addCalculus(std::string text);
  std::shared_ptr<SessionEntry> addSession(std::shared_ptr<const CalculusEntry> calc,
                                           std::string goal);
  static json sessionBody(SessionEntry& s, const std::string& options);

  std::string snapshotPath_;
  mutable std::mutex mutex_;
  std::map<std::string, std::shared_ptr<const CalculusEntry>> calculi_;
  std::map<std::string, std::shared_ptr<SessionEntry>> sessions_;
  std::size_t nextCalculus_ = 1;
  std::size_t nextSession_ = 1;
};

/// Port from SEQUITUR_PORT, else 8080.
int default_port();

}  // namespace sqt
