#pragma once

// Long-running steering service. The engine runs on its own thread; every
// mutating request becomes an EngineCommand applied between sweeps, and every
// read is served from the most recently published snapshot.
//
// HTTP API (JSON bodies and responses):
//   POST /api/load-instance   {"path": file} or {"cordeau": text}
//   POST /api/start           build the initial solution, engine paused
//   POST /api/pause | /api/resume | /api/force-reallocate | /api/stop
//   POST /api/set-weight      {"w_dist": number in [0, 1]}
//   GET  /api/snapshot        latest snapshot document
//   GET  /api/trajectory      all trajectory records, one JSON object per line
//   GET  /api/subscribe       text/event-stream of snapshot documents

#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mvrp/engine.hpp"
#include "mvrp/instance_io.hpp"
#include "mvrp/model.hpp"

namespace mvrp {

struct ServiceConfig {
  EngineConfig engine;
  std::uint64_t seed = 1;
  double initial_w = 0.5;
};

struct PublishedSnapshot {
  std::uint64_t seq = 0;
  std::string json;
};

class Service {
 public:
  explicit Service(ServiceConfig config = {});
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  /// Replaces the instance; any running engine is stopped.
  void load_instance(std::shared_ptr<const Instance> instance);
  /// Parses Cordeau text; returns the issues (empty on success).
  std::vector<ParseIssue> load_instance_text(std::string_view text);

  /// Constructs the initial solution and starts the engine thread paused.
  /// Throws ModelError without an instance, StalledError when unservable.
  void start();
  bool started() const;

  /// Queues a command for the engine. Throws ModelError if not started.
  void submit(const EngineCommand& command);

  std::optional<PublishedSnapshot> latest() const;
  /// Waits for a snapshot newer than `after_seq`.
  std::optional<PublishedSnapshot> wait_for(std::uint64_t after_seq, std::chrono::milliseconds timeout) const;
  std::string trajectory_jsonl() const;

  /// Binds the HTTP listener; port 0 picks a free port. Returns the bound
  /// port, throws std::runtime_error when the address is unavailable.
  int bind(const std::string& host, int port);
  /// Serves HTTP until shutdown(). Requires a successful bind().
  void serve();
  /// Stops HTTP, subscriber streams and the engine thread.
  void shutdown();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace mvrp
