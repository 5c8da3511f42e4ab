#pragma once

// Orchestration of a full interactive run: auction construction, improvement
// sweeps by the vehicle agents, stagnation-triggered reallocation, weight
// changes between sweeps, and trajectory recording.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mvrp/evaluation.hpp"
#include "mvrp/market.hpp"
#include "mvrp/model.hpp"
#include "mvrp/vehicle_agent.hpp"

namespace mvrp {

/// Construction could not place every order.
class StalledError : public std::runtime_error {
 public:
  explicit StalledError(std::vector<CustomerId> orders);
  const std::vector<CustomerId>& orders() const noexcept { return orders_; }

 private:
  std::vector<CustomerId> orders_;
};

struct WeightStage {
  double w_dist = 1.0;
  std::uint64_t budget = 1;  // improvement iterations
};
using WeightSchedule = std::vector<WeightStage>;

/// Throws ModelError when a weight is outside [0, 1], a budget is zero, or
/// the schedule is empty.
void validate(const WeightSchedule& schedule);

enum class TrajectoryEvent { Improved, WeightChanged, Reallocated, Converged };
const char* to_string(TrajectoryEvent e) noexcept;

struct TrajectoryPoint {
  std::uint64_t wall_iteration = 0;
  double w_dist = 0.0;
  ObjectiveVector objectives;
  double utility = 0.0;
  TrajectoryEvent event = TrajectoryEvent::Improved;

  friend bool operator==(const TrajectoryPoint&, const TrajectoryPoint&) = default;
};

/// One JSON object per line: wall_iteration, w_dist, dist, tardy, utility, event.
std::string trajectory_record(const TrajectoryPoint& p);
void write_trajectory(std::ostream& out, const std::vector<TrajectoryPoint>& points);

struct EngineCommand {
  enum class Kind { SetWeight, Pause, Resume, ForceReallocate, Stop };
  Kind kind = Kind::Stop;
  std::optional<double> payload;

  static EngineCommand set_weight(double w);  // throws ModelError outside [0, 1]
  static EngineCommand pause() { return {Kind::Pause, {}}; }
  static EngineCommand resume() { return {Kind::Resume, {}}; }
  static EngineCommand force_reallocate() { return {Kind::ForceReallocate, {}}; }
  static EngineCommand stop() { return {Kind::Stop, {}}; }
};

struct EngineConfig {
  std::size_t patience = 2000;      // stagnation patience, improvement iterations
  std::size_t ejection_size = 2;    // orders ejected per vehicle on reallocation
  std::size_t sweep_budget = 200;   // descent patience per agent per sweep
  EjectionRule ejection_rule = EjectionRule::HighestSaving;
  // After a reallocation that did not improve the incumbent, eject randomly.
  bool diversify = true;
  // Stagnation-triggered reallocations in a row without improvement that
  // count as convergence.
  std::size_t convergence_reallocations = 2;
  bool deterministic = false;  // single worker
};

struct BestRecord {
  Solution solution;
  ObjectiveVector objectives;
  double utility = 0.0;
};

struct Snapshot {
  std::uint64_t iteration = 0;
  double w_dist = 0.0;
  Solution solution;
  ObjectiveVector objectives;
  double utility = 0.0;
  std::vector<RouteSchedule> schedules;
  std::vector<CustomerId> market;
  bool paused = false;
  bool converged = false;
};

struct SweepReport {
  std::uint64_t steps = 0;
  bool improved = false;
  bool reallocated = false;
  bool converged = false;
  bool objectives_changed = false;
};

class Engine {
 public:
  /// Builds one agent per vehicle and constructs the initial solution by
  /// auction. Throws StalledError when some order cannot be placed.
  Engine(std::shared_ptr<const Instance> instance, double initial_w, std::uint64_t seed, EngineConfig config = {});

  const Instance& instance() const noexcept { return *instance_; }
  const EngineConfig& config() const noexcept { return config_; }
  PreferenceWeights weights() const noexcept { return w_; }
  std::uint64_t iteration() const noexcept { return iteration_; }
  bool paused() const noexcept { return paused_; }
  bool stopped() const noexcept { return stopped_; }
  /// The current weight stage has converged.
  bool converged() const noexcept { return converged_; }
  std::uint64_t stage_start() const noexcept { return stage_start_; }

  /// One improvement sweep plus aggregation, stagnation check and, when
  /// stagnant, a reallocation cycle.
  SweepReport sweep();

  /// Applies a command immediately. Callers only do this between sweeps.
  void apply(const EngineCommand& command);
  void set_weight(double w);
  void force_reallocate();

  Solution current_solution() const;
  ObjectiveVector current_objectives() const;
  const std::vector<TrajectoryPoint>& trajectory() const noexcept { return trajectory_; }
  /// Incumbent of the current weight stage.
  const BestRecord& stage_best() const noexcept { return stage_best_; }
  /// All-time best per weight value visited.
  const std::map<double, BestRecord>& best_per_weight() const noexcept { return best_per_weight_; }
  const StagnationMonitor& monitor() const noexcept { return monitor_; }

  Snapshot snapshot() const;

 private:
  void record(TrajectoryEvent event, ObjectiveVector obj);
  void rebuild_market_and_assign();
  void restore(const Solution& solution);
  bool offer_best(const ObjectiveVector& obj);
  void reallocate_now(EjectionRule rule);
  void improve_agents(std::uint64_t& steps);

  std::shared_ptr<const Instance> instance_;
  EngineConfig config_;
  PreferenceWeights w_;
  std::vector<VehicleAgent> agents_;
  std::vector<Rng> agent_rngs_;
  Rng decider_rng_;
  Market market_;
  StagnationMonitor monitor_;

  std::uint64_t iteration_ = 0;
  std::uint64_t stage_start_ = 0;
  bool paused_ = false;
  bool stopped_ = false;
  bool converged_ = false;
  std::size_t fruitless_ = 0;
  double best_at_last_reallocation_;

  BestRecord stage_best_;
  std::map<double, BestRecord> best_per_weight_;
  std::vector<TrajectoryPoint> trajectory_;
};

/// Decides the commands to apply before the next sweep.
using Controller = std::function<std::vector<EngineCommand>(const Engine&)>;

struct RunLimits {
  std::uint64_t max_iterations = 10'000'000;
  bool stop_when_converged = false;
};

struct RunResult {
  std::map<double, BestRecord> best_per_weight;
  BestRecord final_best;  // best for the final weights
  double final_w_dist = 0.0;
  std::vector<TrajectoryPoint> trajectory;
  std::uint64_t iterations = 0;
};

/// Runs until a Stop command, the iteration limit, or (optionally)
/// convergence. Paused engines do not sweep; the controller is still polled.
RunResult run(std::shared_ptr<const Instance> instance, double initial_w, const Controller& controller,
              std::uint64_t seed, EngineConfig config = {}, RunLimits limits = {});

struct TimedCommand {
  std::uint64_t at_iteration = 0;
  EngineCommand command;
};

/// Controller issuing each command once the iteration count reaches it.
/// While paused, the next pending command is released immediately.
Controller scripted(std::vector<TimedCommand> commands);

struct StageResult {
  double w_dist = 0.0;
  ObjectiveVector objectives;  // incumbent at the end of the stage
  double utility = 0.0;
  std::uint64_t iterations = 0;
  bool converged = false;
};

struct ReplayResult {
  std::vector<StageResult> stages;
  std::vector<TrajectoryPoint> trajectory;
  Solution final_solution;
};

/// Each stage runs until convergence or until its budget expires; then the
/// next weight is set on the carried-over incumbent.
ReplayResult replay_schedule(std::shared_ptr<const Instance> instance, const WeightSchedule& schedule,
                             std::uint64_t seed, EngineConfig config = {});

}  // namespace mvrp
