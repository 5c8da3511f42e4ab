#include "mvrp/cli.hpp"

#include <pthread.h>

#include <csignal>
#include <fstream>
#include <sstream>
#include <thread>

#include "mvrp/instance_io.hpp"
#include "mvrp/report.hpp"
#include "mvrp/service.hpp"

namespace mvrp {

EngineConfig RunConfig::engine_config() const {
  EngineConfig c;
  c.patience = patience;
  c.ejection_size = ejection_size;
  c.sweep_budget = sweep_budget;
  c.deterministic = deterministic;
  return c;
}

void validate(const RunConfig& config) {
  if (config.mode == RunConfig::Mode::Batch && !config.schedule) {
    throw ModelError("batch mode needs --scenario or --schedule");
  }
  if (config.mode == RunConfig::Mode::Serve && config.schedule) {
    throw ModelError("serve mode does not take a schedule");
  }
  if (config.schedule) validate(*config.schedule);
  if (config.patience < 1 || config.sweep_budget < 1) throw ModelError("patience and sweep budget must be >= 1");
}

namespace {

std::optional<Instance> load_or_report(const std::string& path, std::ostream& err) {
  ParseResult parsed;
  try {
    parsed = load_cordeau(path);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return std::nullopt;
  }
  if (!parsed) {
    for (const auto& i : parsed.issues) {
      err << path << ":" << i.line << ": " << to_string(i.kind) << ": " << i.message << '\n';
    }
    return std::nullopt;
  }
  return std::move(*parsed.instance);
}

bool write_file(const std::filesystem::path& path, const std::string& content, std::ostream& err) {
  std::ofstream f(path, std::ios::binary);
  f << content;
  if (!f) {
    err << "error: cannot write " << path.string() << '\n';
    return false;
  }
  return true;
}

}  // namespace

int cli_solve(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    validate(config);
  } catch (const ModelError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  auto instance = load_or_report(config.instance_path, err);
  if (!instance) return kExitInput;
  auto shared = std::make_shared<const Instance>(std::move(*instance));

  ReplayResult replay;
  try {
    replay = replay_schedule(shared, *config.schedule, config.seed, config.engine_config());
  } catch (const StalledError& e) {
    err << "error: " << e.what() << '\n';
    return kExitStalled;
  }

  std::error_code ec;
  std::filesystem::create_directories(config.out_dir, ec);
  if (ec) {
    err << "error: cannot create " << config.out_dir.string() << ": " << ec.message() << '\n';
    return kExitRuntime;
  }
  std::ostringstream traj;
  write_trajectory(traj, replay.trajectory);
  const PreferenceWeights final_w(replay.stages.back().w_dist);
  const std::string stages = stage_report(replay);
  if (!write_file(config.out_dir / "trajectory.jsonl", traj.str(), err) ||
      !write_file(config.out_dir / "solution.txt", solution_report(replay.final_solution, *shared, final_w), err) ||
      !write_file(config.out_dir / "stages.txt", stages, err)) {
    return kExitRuntime;
  }
  out << stages;
  return kExitOk;
}

int cli_serve(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    validate(config);
  } catch (const ModelError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  // Termination signals are taken synchronously by a waiter thread; every
  // thread spawned from here on inherits the blocked mask.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  ServiceConfig sc;
  sc.engine = config.engine_config();
  sc.seed = config.seed;
  Service service(sc);
  if (!config.instance_path.empty()) {
    auto instance = load_or_report(config.instance_path, err);
    if (!instance) return kExitInput;
    service.load_instance(std::make_shared<const Instance>(std::move(*instance)));
    try {
      service.start();
    } catch (const StalledError& e) {
      err << "error: " << e.what() << '\n';
      return kExitStalled;
    }
  }
  int port = 0;
  try {
    port = service.bind(config.host, config.port);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  out << "serving on http://" << config.host << ":" << port << " (engine paused, w_dist 0.5)" << std::endl;
  std::thread waiter([&] {
    int sig = 0;
    sigwait(&signals, &sig);
    service.shutdown();
  });
  service.serve();
  pthread_kill(waiter.native_handle(), SIGTERM);
  waiter.join();
  return kExitOk;
}

}  // namespace mvrp
