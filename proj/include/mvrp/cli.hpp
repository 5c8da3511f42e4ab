#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "mvrp/engine.hpp"

namespace mvrp {

struct RunConfig {
  enum class Mode { Batch, Serve };

  std::string instance_path;
  std::uint64_t seed = 1;
  Mode mode = Mode::Batch;
  std::optional<WeightSchedule> schedule;  // batch only
  std::size_t patience = 2000;
  std::size_t ejection_size = 2;
  std::size_t sweep_budget = 200;
  bool deterministic = false;
  std::filesystem::path out_dir = ".";
  std::string host = "127.0.0.1";
  int port = 8080;

  EngineConfig engine_config() const;
};

/// Batch mode requires a schedule, serve mode forbids one. Throws ModelError.
void validate(const RunConfig& config);

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitInput = 2, kExitStalled = 3, kExitRuntime = 4 };

/// Replays the schedule and writes <out>/trajectory.jsonl, <out>/solution.txt
/// and <out>/stages.txt. Diagnostics go to `err`, the stage report to `out`.
int cli_solve(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Loads the instance, starts the service paused and serves until the
/// process is terminated.
int cli_serve(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace mvrp
