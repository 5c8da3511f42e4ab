#include "mvrp/evaluation.hpp"

#include <algorithm>
#include <string>

namespace mvrp {

const char* to_string(Move::Kind kind) noexcept {
  switch (kind) {
    case Move::Kind::Invert: return "Invert";
    case Move::Kind::Exchange: return "Exchange";
    case Move::Kind::ShiftForward: return "ShiftForward";
    case Move::Kind::ShiftBackward: return "ShiftBackward";
  }
  return "Unknown";
}

std::string to_string(const Move& move) {
  return std::string(to_string(move.kind)) + "(" + std::to_string(move.p1) + "," + std::to_string(move.p2) + ")";
}

bool is_valid(const Move& move, std::size_t length) noexcept {
  if (move.p1 < 1 || move.p2 < 1 || move.p1 > length || move.p2 > length) return false;
  if (move.kind == Move::Kind::ShiftBackward) return move.p1 > move.p2;
  return move.p1 < move.p2;
}

void check_valid(const Move& move, std::size_t length) {
  if (move.p1 < 1 || move.p2 < 1 || move.p1 > length || move.p2 > length) {
    throw ModelError(to_string(move) + ": position out of range for route of length " + std::to_string(length));
  }
  if (!is_valid(move, length)) {
    throw ModelError(to_string(move) + (move.kind == Move::Kind::ShiftBackward ? ": requires p1 > p2" : ": requires p1 < p2"));
  }
}

RouteSchedule schedule_route(const Route& route, const Instance& instance) {
  const VehicleSpec& vehicle = instance.vehicle(route.vehicle);
  const Depot& depot = instance.home_depot(vehicle);
  const std::size_t depot_node = instance.depot_node(depot.id);

  RouteSchedule s;
  s.departure = depot.tw_open;
  s.visits.reserve(route.size());
  double clock = s.departure;
  std::size_t last = depot_node;
  for (CustomerId id : route.sequence) {
    const std::size_t node = instance.customer_index(id);
    const Customer& c = instance.customers()[node];
    VisitTimes v;
    v.customer = id;
    const double leg = instance.travel(last, node);
    s.distance += leg;
    v.arrival = clock + leg;
    v.service_start = std::max(v.arrival, c.tw_open);
    v.wait = v.service_start - v.arrival;
    v.tardiness = std::max(0.0, v.arrival - c.tw_close);
    v.departure = v.service_start + c.service_time;
    s.tardiness += v.tardiness;
    s.load += c.demand;
    clock = v.departure;
    last = node;
    s.visits.push_back(v);
  }
  if (!route.empty()) {
    s.distance += instance.travel(last, depot_node);
    s.return_time = clock + instance.travel(last, depot_node);
  } else {
    s.return_time = s.departure;
  }
  s.duration = s.return_time - s.departure;
  return s;
}

bool is_feasible(const RouteSchedule& schedule, const VehicleSpec& vehicle) noexcept {
  if (schedule.load > vehicle.capacity + kFeasibilityTolerance) return false;
  if (vehicle.max_route_duration && schedule.duration > *vehicle.max_route_duration + kFeasibilityTolerance) {
    return false;
  }
  return true;
}

ObjectiveVector objectives(const Solution& solution, const Instance& instance) {
  validate(solution, instance);
  ObjectiveVector total;
  for (const Route& r : solution.routes) {
    const RouteSchedule s = schedule_route(r, instance);
    total.dist += s.distance;
    total.tardy += s.tardiness;
  }
  return total;
}

RouteEvaluator::RouteEvaluator(const Route& route, const Instance& instance)
    : instance_(&instance), vehicle_(&instance.vehicle(route.vehicle)) {
  const Depot& depot = instance.home_depot(*vehicle_);
  depot_node_ = instance.depot_node(depot.id);
  start_time_ = depot.tw_open;

  const std::size_t n = route.size();
  nodes_.reserve(n);
  for (CustomerId id : route.sequence) nodes_.push_back(instance.customer_index(id));
  prefix_time_.assign(n + 1, start_time_);
  prefix_dist_.assign(n + 1, 0.0);
  prefix_tardy_.assign(n + 1, 0.0);

  std::size_t last = depot_node_;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t node = nodes_[k];
    const Customer& c = instance.customers()[node];
    const double leg = instance.travel(last, node);
    const double arrival = prefix_time_[k] + leg;
    prefix_dist_[k + 1] = prefix_dist_[k] + leg;
    prefix_tardy_[k + 1] = prefix_tardy_[k] + std::max(0.0, arrival - c.tw_close);
    prefix_time_[k + 1] = std::max(arrival, c.tw_open) + c.service_time;
    load_ += c.demand;
    last = node;
  }
  if (n > 0) {
    const double back = instance.travel(last, depot_node_);
    total_dist_ = prefix_dist_[n] + back;
    duration_ = prefix_time_[n] + back - start_time_;
  }
  total_tardy_ = prefix_tardy_[n];
  scratch_.reserve(n + 1);
}

bool RouteEvaluator::feasible() const noexcept {
  if (load_ > vehicle_->capacity + kFeasibilityTolerance) return false;
  if (vehicle_->max_route_duration && duration_ > *vehicle_->max_route_duration + kFeasibilityTolerance) {
    return false;
  }
  return true;
}

RouteEvaluator::Tail RouteEvaluator::simulate(std::size_t kept, std::span<const std::size_t> tail) const {
  const auto& customers = instance_->customers();
  double clock = prefix_time_[kept];
  double dist = prefix_dist_[kept];
  double tardy = prefix_tardy_[kept];
  std::size_t last = kept == 0 ? depot_node_ : nodes_[kept - 1];
  for (std::size_t node : tail) {
    const Customer& c = customers[node];
    const double leg = instance_->travel(last, node);
    const double arrival = clock + leg;
    dist += leg;
    tardy += std::max(0.0, arrival - c.tw_close);
    clock = std::max(arrival, c.tw_open) + c.service_time;
    last = node;
  }
  if (last == depot_node_) return {dist, tardy, 0.0};
  const double back = instance_->travel(last, depot_node_);
  return {dist + back, tardy, clock + back - start_time_};
}

CostDelta RouteEvaluator::delta_from(const Tail& t, double extra_load, PreferenceWeights w) const {
  CostDelta d;
  d.delta_dist = t.dist - total_dist_;
  d.delta_tardy = t.tardy - total_tardy_;
  d.delta_utility = utility({t.dist, t.tardy}, w) - utility(objectives(), w);
  d.feasible = load_ + extra_load <= vehicle_->capacity + kFeasibilityTolerance &&
               (!vehicle_->max_route_duration ||
                t.duration <= *vehicle_->max_route_duration + kFeasibilityTolerance);
  return d;
}

CostDelta RouteEvaluator::insertion(CustomerId order, std::size_t position, PreferenceWeights w) const {
  if (position > nodes_.size()) {
    throw ModelError("insertion position " + std::to_string(position) + " out of range for route of length " +
                     std::to_string(nodes_.size()));
  }
  const std::size_t node = instance_->customer_index(order);
  scratch_.clear();
  scratch_.push_back(node);
  scratch_.insert(scratch_.end(), nodes_.begin() + static_cast<std::ptrdiff_t>(position), nodes_.end());
  return delta_from(simulate(position, scratch_), instance_->customers()[node].demand, w);
}

CostDelta RouteEvaluator::move(const Move& m, PreferenceWeights w) const {
  check_valid(m, nodes_.size());
  const std::size_t i = m.p1 - 1;
  const std::size_t j = m.p2 - 1;
  const auto at = [&](std::size_t k) { return nodes_.begin() + static_cast<std::ptrdiff_t>(k); };
  scratch_.clear();
  std::size_t kept = i;
  switch (m.kind) {
    case Move::Kind::Invert:
      scratch_.insert(scratch_.end(), std::make_reverse_iterator(at(j + 1)), std::make_reverse_iterator(at(i)));
      break;
    case Move::Kind::Exchange:
      scratch_.push_back(nodes_[j]);
      scratch_.insert(scratch_.end(), at(i + 1), at(j));
      scratch_.push_back(nodes_[i]);
      break;
    case Move::Kind::ShiftForward:
      scratch_.insert(scratch_.end(), at(i + 1), at(j + 1));
      scratch_.push_back(nodes_[i]);
      break;
    case Move::Kind::ShiftBackward:
      kept = j;
      scratch_.push_back(nodes_[i]);
      scratch_.insert(scratch_.end(), at(j), at(i));
      break;
  }
  const std::size_t resume = std::max(i, j) + 1;
  scratch_.insert(scratch_.end(), at(resume), nodes_.end());
  return delta_from(simulate(kept, scratch_), 0.0, w);
}

CostDelta insertion_delta(const Route& route, CustomerId order, std::size_t position, const Instance& instance,
                          PreferenceWeights w) {
  return RouteEvaluator(route, instance).insertion(order, position, w);
}

double move_delta(const Route& route, const Move& move, const Instance& instance, PreferenceWeights w) {
  return RouteEvaluator(route, instance).move(move, w).delta_utility;
}

}  // namespace mvrp
