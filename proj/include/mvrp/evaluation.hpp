#pragma once

// Route scheduling, the two objectives, the weighted-sum utility and exact
// incremental deltas for insertions and intra-route moves.
//
// Timing rules: a vehicle leaves its home depot at the depot's opening time;
// arrival before a customer's window opens means waiting, arrival after it
// closes accumulates tardiness (soft windows). Route duration runs from depot
// departure to depot return and includes waiting and service. Capacity and a
// bounded route duration are hard constraints.

#include <cstddef>
#include <span>
#include <vector>

#include "mvrp/model.hpp"
#include "mvrp/move.hpp"

namespace mvrp {

inline constexpr double kFeasibilityTolerance = 1e-9;

struct VisitTimes {
  CustomerId customer = 0;
  double arrival = 0.0;
  double wait = 0.0;
  double service_start = 0.0;
  double departure = 0.0;
  double tardiness = 0.0;
};

struct RouteSchedule {
  std::vector<VisitTimes> visits;
  double departure = 0.0;    // from the home depot
  double return_time = 0.0;  // back at the home depot
  double distance = 0.0;
  double duration = 0.0;
  double load = 0.0;
  double tardiness = 0.0;

  ObjectiveVector objectives() const noexcept { return {distance, tardiness}; }
};

/// Throws ModelError for customers unknown to the instance.
RouteSchedule schedule_route(const Route& route, const Instance& instance);

/// Capacity and (when bounded) duration check for a scheduled route.
bool is_feasible(const RouteSchedule& schedule, const VehicleSpec& vehicle) noexcept;

/// Sum over routes. Validates the solution first (throws ModelError).
ObjectiveVector objectives(const Solution& solution, const Instance& instance);

/// Weighted sum w * DIST + (1 - w) * TARDY; lower is better.
inline double utility(ObjectiveVector obj, PreferenceWeights w) noexcept {
  return w.w_dist() * obj.dist + w.w_tardy() * obj.tardy;
}

struct CostDelta {
  double delta_dist = 0.0;
  double delta_tardy = 0.0;
  double delta_utility = 0.0;
  bool feasible = true;
};

/// Prefix-cached view of one route for O(route length) delta queries.
/// Holds a reference to the instance; the route is copied.
class RouteEvaluator {
 public:
  RouteEvaluator(const Route& route, const Instance& instance);

  std::size_t size() const noexcept { return nodes_.size(); }
  const VehicleSpec& vehicle() const noexcept { return *vehicle_; }

  ObjectiveVector objectives() const noexcept { return {total_dist_, total_tardy_}; }
  double load() const noexcept { return load_; }
  double duration() const noexcept { return duration_; }
  bool feasible() const noexcept;
  double cost(PreferenceWeights w) const noexcept { return utility(objectives(), w); }

  /// Delta of inserting `order` so it occupies 0-based index `position`
  /// (0..size()). Throws ModelError for an out-of-range position.
  CostDelta insertion(CustomerId order, std::size_t position, PreferenceWeights w) const;

  /// Delta of applying `move`. Throws ModelError for an invalid move.
  CostDelta move(const Move& move, PreferenceWeights w) const;

 private:
  struct Tail {
    double dist, tardy, duration;
  };
  // Re-simulates from the state after the first `kept` customers through
  // `tail` and back to the depot.
  Tail simulate(std::size_t kept, std::span<const std::size_t> tail) const;
  CostDelta delta_from(const Tail& t, double extra_load, PreferenceWeights w) const;

  const Instance* instance_;
  const VehicleSpec* vehicle_;
  std::size_t depot_node_;
  double start_time_;
  std::vector<std::size_t> nodes_;
  std::vector<double> prefix_time_;   // departure after k customers
  std::vector<double> prefix_dist_;
  std::vector<double> prefix_tardy_;
  double load_ = 0.0;
  double total_dist_ = 0.0;
  double total_tardy_ = 0.0;
  double duration_ = 0.0;
  mutable std::vector<std::size_t> scratch_;
};

/// objectives(route with order inserted at 0-based `position`) - objectives(route).
CostDelta insertion_delta(const Route& route, CustomerId order, std::size_t position,
                          const Instance& instance, PreferenceWeights w);

/// Weighted route cost after the move minus before it.
double move_delta(const Route& route, const Move& move, const Instance& instance, PreferenceWeights w);

}  // namespace mvrp
