#include "mvrp/engine.hpp"

#include <algorithm>
#include <limits>
#include <ostream>

#include <tbb/parallel_for.h>

#include "json.hpp"

namespace mvrp {

namespace {

constexpr double kUtilityEpsilon = 1e-9;

std::string join_ids(const std::vector<CustomerId>& ids) {
  std::string out;
  for (CustomerId id : ids) {
    if (!out.empty()) out += ", ";
    out += std::to_string(id);
  }
  return out;
}

}  // namespace

StalledError::StalledError(std::vector<CustomerId> orders)
    : std::runtime_error("construction stalled: no vehicle can feasibly serve order(s) " + join_ids(orders)),
      orders_(std::move(orders)) {}

void validate(const WeightSchedule& schedule) {
  if (schedule.empty()) throw ModelError("weight schedule is empty");
  for (const auto& s : schedule) {
    PreferenceWeights check(s.w_dist);
    if (s.budget < 1) throw ModelError("weight schedule budgets must be >= 1");
  }
}

const char* to_string(TrajectoryEvent e) noexcept {
  switch (e) {
    case TrajectoryEvent::Improved: return "Improved";
    case TrajectoryEvent::WeightChanged: return "WeightChanged";
    case TrajectoryEvent::Reallocated: return "Reallocated";
    case TrajectoryEvent::Converged: return "Converged";
  }
  return "Unknown";
}

std::string trajectory_record(const TrajectoryPoint& p) {
  nlohmann::ordered_json j;
  j["wall_iteration"] = p.wall_iteration;
  j["w_dist"] = p.w_dist;
  j["dist"] = p.objectives.dist;
  j["tardy"] = p.objectives.tardy;
  j["utility"] = p.utility;
  j["event"] = to_string(p.event);
  return j.dump();
}

void write_trajectory(std::ostream& out, const std::vector<TrajectoryPoint>& points) {
  for (const auto& p : points) out << trajectory_record(p) << '\n';
}

EngineCommand EngineCommand::set_weight(double w) {
  PreferenceWeights check(w);
  return {Kind::SetWeight, w};
}

Engine::Engine(std::shared_ptr<const Instance> instance, double initial_w, std::uint64_t seed, EngineConfig config)
    : instance_(std::move(instance)),
      config_(config),
      w_(initial_w),
      best_at_last_reallocation_(std::numeric_limits<double>::infinity()) {
  if (!instance_) throw ModelError("engine needs an instance");
  if (config_.sweep_budget < 1) throw ModelError("sweep budget must be >= 1");
  if (config_.patience < 1) throw ModelError("stagnation patience must be >= 1");
  monitor_.patience = config_.patience;
  monitor_.ejection_size = config_.ejection_size;

  const auto& vehicles = instance_->vehicles();
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  std::vector<std::uint64_t> seeds(vehicles.size() + 1);
  seq.generate(seeds.begin(), seeds.end());
  decider_rng_.seed(seeds.back());
  agents_.reserve(vehicles.size());
  for (std::size_t i = 0; i < vehicles.size(); ++i) {
    agents_.emplace_back(*instance_, vehicles[i].id);
    agent_rngs_.emplace_back(seeds[i]);
  }
  for (const auto& c : instance_->customers()) market_.open_orders.insert(c.id);

  ConstructResult built = construct(market_, agents_, w_);
  if (!built.complete()) throw StalledError(built.unservable);

  const ObjectiveVector obj = current_objectives();
  stage_best_ = {current_solution(), obj, utility(obj, w_)};
  best_per_weight_[w_.w_dist()] = stage_best_;
  check_stagnation(monitor_, stage_best_.utility, 0);
  record(TrajectoryEvent::Improved, obj);
  if (stage_best_.utility <= 0.0) {
    converged_ = true;
    record(TrajectoryEvent::Converged, obj);
  }
}

Solution Engine::current_solution() const { return assemble(agents_, market_); }

ObjectiveVector Engine::current_objectives() const {
  ObjectiveVector total;
  for (const auto& a : agents_) {
    const ObjectiveVector o = a.evaluator().objectives();
    total.dist += o.dist;
    total.tardy += o.tardy;
  }
  return total;
}

void Engine::record(TrajectoryEvent event, ObjectiveVector obj) {
  trajectory_.push_back({iteration_, w_.w_dist(), obj, utility(obj, w_), event});
}

void Engine::restore(const Solution& solution) {
  for (std::size_t i = 0; i < agents_.size(); ++i) {
    if (agents_[i].route() != solution.routes[i]) agents_[i].reset(solution.routes[i]);
  }
  market_.open_orders = {solution.unassigned.begin(), solution.unassigned.end()};
}

bool Engine::offer_best(const ObjectiveVector& obj) {
  const double u = utility(obj, w_);
  bool improved = false;
  if (u < stage_best_.utility - kUtilityEpsilon) {
    stage_best_ = {current_solution(), obj, u};
    improved = true;
  }
  auto [it, inserted] = best_per_weight_.try_emplace(w_.w_dist());
  if (inserted || u < it->second.utility - kUtilityEpsilon) it->second = {current_solution(), obj, u};
  return improved;
}

void Engine::improve_agents(std::uint64_t& steps) {
  std::vector<DescentTrace> traces(agents_.size());
  auto work = [&](std::size_t i) {
    agents_[i].improve(w_, agent_rngs_[i], config_.sweep_budget, 0, &traces[i]);
  };
  if (config_.deterministic || agents_.size() < 2) {
    for (std::size_t i = 0; i < agents_.size(); ++i) work(i);
  } else {
    tbb::parallel_for(std::size_t{0}, agents_.size(), work);
  }
  steps = 0;
  for (const auto& t : traces) steps += t.steps;
}

void Engine::rebuild_market_and_assign() {
  ConstructResult r = construct(market_, agents_, w_);
  if (!r.complete()) restore(stage_best_.solution);
}

void Engine::reallocate_now(EjectionRule rule) {
  if (utility(current_objectives(), w_) > stage_best_.utility + kUtilityEpsilon) restore(stage_best_.solution);
  reallocate(market_, agents_, monitor_, rule, w_, decider_rng_);
  rebuild_market_and_assign();
  const ObjectiveVector obj = current_objectives();
  if (offer_best(obj)) record(TrajectoryEvent::Improved, obj);
  record(TrajectoryEvent::Reallocated, obj);
}

SweepReport Engine::sweep() {
  SweepReport rep;
  const ObjectiveVector before = current_objectives();
  if (!market_.empty()) rebuild_market_and_assign();

  improve_agents(rep.steps);
  iteration_ += std::max<std::uint64_t>(rep.steps, 1);

  ObjectiveVector obj = current_objectives();
  const double u = utility(obj, w_);
  if (offer_best(obj)) {
    rep.improved = true;
    record(TrajectoryEvent::Improved, obj);
  }
  if (stage_best_.utility <= 0.0 && !converged_) {
    converged_ = true;
    rep.converged = true;
    record(TrajectoryEvent::Converged, stage_best_.objectives);
  }

  if (check_stagnation(monitor_, u, std::max<std::uint64_t>(rep.steps, 1))) {
    if (stage_best_.utility >= best_at_last_reallocation_ - kUtilityEpsilon) {
      ++fruitless_;
    } else {
      fruitless_ = 0;
    }
    if (fruitless_ >= config_.convergence_reallocations && !converged_) {
      converged_ = true;
      rep.converged = true;
      record(TrajectoryEvent::Converged, stage_best_.objectives);
    }
    const EjectionRule rule = config_.diversify && fruitless_ > 0 ? EjectionRule::Random : config_.ejection_rule;
    best_at_last_reallocation_ = stage_best_.utility;
    reallocate_now(rule);
    monitor_.iterations_since_improvement = 0;
    rep.reallocated = true;
    obj = current_objectives();
  }
  rep.objectives_changed = !(obj == before);
  return rep;
}

void Engine::set_weight(double w) {
  const PreferenceWeights next(w);
  if (utility(current_objectives(), w_) > stage_best_.utility + kUtilityEpsilon) restore(stage_best_.solution);
  w_ = next;
  monitor_.best_utility_seen = std::numeric_limits<double>::infinity();
  monitor_.iterations_since_improvement = 0;
  fruitless_ = 0;
  converged_ = false;
  best_at_last_reallocation_ = std::numeric_limits<double>::infinity();
  stage_start_ = iteration_;

  const ObjectiveVector obj = current_objectives();
  stage_best_ = {current_solution(), obj, utility(obj, w_)};
  auto [it, inserted] = best_per_weight_.try_emplace(w_.w_dist());
  if (inserted || stage_best_.utility < it->second.utility - kUtilityEpsilon) it->second = stage_best_;
  check_stagnation(monitor_, stage_best_.utility, 0);
  record(TrajectoryEvent::WeightChanged, obj);
  if (stage_best_.utility <= 0.0) {
    converged_ = true;
    record(TrajectoryEvent::Converged, obj);
  }
}

void Engine::force_reallocate() {
  reallocate_now(config_.ejection_rule);
  monitor_.iterations_since_improvement = 0;
}

void Engine::apply(const EngineCommand& command) {
  switch (command.kind) {
    case EngineCommand::Kind::SetWeight:
      if (!command.payload) throw ModelError("SetWeight needs a weight");
      set_weight(*command.payload);
      break;
    case EngineCommand::Kind::Pause: paused_ = true; break;
    case EngineCommand::Kind::Resume: paused_ = false; break;
    case EngineCommand::Kind::ForceReallocate: force_reallocate(); break;
    case EngineCommand::Kind::Stop: stopped_ = true; break;
  }
}

Snapshot Engine::snapshot() const {
  Snapshot s;
  s.iteration = iteration_;
  s.w_dist = w_.w_dist();
  s.solution = current_solution();
  s.objectives = current_objectives();
  s.utility = utility(s.objectives, w_);
  s.schedules.reserve(s.solution.routes.size());
  for (const auto& r : s.solution.routes) s.schedules.push_back(schedule_route(r, *instance_));
  s.market = s.solution.unassigned;
  s.paused = paused_;
  s.converged = converged_;
  return s;
}

RunResult run(std::shared_ptr<const Instance> instance, double initial_w, const Controller& controller,
              std::uint64_t seed, EngineConfig config, RunLimits limits) {
  Engine engine(std::move(instance), initial_w, seed, config);
  while (true) {
    const std::vector<EngineCommand> commands = controller ? controller(engine) : std::vector<EngineCommand>{};
    for (const auto& c : commands) engine.apply(c);
    if (engine.stopped()) break;
    // Nothing can resume a paused batch run once the controller goes quiet.
    if (engine.paused()) {
      if (commands.empty()) break;
      continue;
    }
    if (engine.iteration() >= limits.max_iterations) break;
    if (limits.stop_when_converged && engine.converged()) break;
    engine.sweep();
  }
  RunResult r;
  r.best_per_weight = engine.best_per_weight();
  r.final_w_dist = engine.weights().w_dist();
  r.final_best = r.best_per_weight.at(r.final_w_dist);
  r.trajectory = engine.trajectory();
  r.iterations = engine.iteration();
  return r;
}

Controller scripted(std::vector<TimedCommand> commands) {
  std::stable_sort(commands.begin(), commands.end(),
                   [](const TimedCommand& a, const TimedCommand& b) { return a.at_iteration < b.at_iteration; });
  auto state = std::make_shared<std::pair<std::vector<TimedCommand>, std::size_t>>(std::move(commands), 0);
  return [state](const Engine& e) {
    auto& [cmds, next] = *state;
    std::vector<EngineCommand> due;
    while (next < cmds.size() && cmds[next].at_iteration <= e.iteration()) due.push_back(cmds[next++].command);
    if (due.empty() && e.paused() && next < cmds.size()) due.push_back(cmds[next++].command);
    return due;
  };
}

ReplayResult replay_schedule(std::shared_ptr<const Instance> instance, const WeightSchedule& schedule,
                             std::uint64_t seed, EngineConfig config) {
  validate(schedule);
  ReplayResult result;
  std::size_t stage = 0;
  auto controller = [&](const Engine& e) -> std::vector<EngineCommand> {
    const std::uint64_t used = e.iteration() - e.stage_start();
    if (!e.converged() && used < schedule[stage].budget) return {};
    const BestRecord& best = e.stage_best();
    result.stages.push_back({e.weights().w_dist(), best.objectives, best.utility, used, e.converged()});
    if (++stage == schedule.size()) {
      result.final_solution = best.solution;
      return {EngineCommand::stop()};
    }
    return {EngineCommand::set_weight(schedule[stage].w_dist)};
  };
  RunResult r = run(std::move(instance), schedule.front().w_dist, controller, seed, config,
                    RunLimits{std::numeric_limits<std::uint64_t>::max(), false});
  result.trajectory = std::move(r.trajectory);
  return result;
}

}  // namespace mvrp
