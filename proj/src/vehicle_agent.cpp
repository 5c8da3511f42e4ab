#include "mvrp/vehicle_agent.hpp"

#include <algorithm>
#include <numeric>

namespace mvrp {

const char* to_string(EjectionRule rule) noexcept {
  switch (rule) {
    case EjectionRule::HighestSaving: return "highest-saving";
    case EjectionRule::Random: return "random";
  }
  return "unknown";
}

namespace {
// Price differences below this are ties.
constexpr double kPriceTie = 1e-9;
}  // namespace

VehicleAgent::VehicleAgent(const Instance& instance, VehicleId vehicle)
    : VehicleAgent(instance, Route{vehicle, {}}) {}

VehicleAgent::VehicleAgent(const Instance& instance, Route route)
    : instance_(&instance), route_(std::move(route)), eval_(route_, instance) {}

bool VehicleAgent::contains(CustomerId order) const noexcept {
  return std::find(route_.sequence.begin(), route_.sequence.end(), order) != route_.sequence.end();
}

std::optional<Bid> VehicleAgent::compute_bid(CustomerId order, PreferenceWeights w) const {
  if (contains(order)) {
    throw ModelError("vehicle " + std::to_string(route_.vehicle) + " already serves order " + std::to_string(order));
  }
  std::optional<Bid> best;
  double best_tiebreak = 0.0;
  for (std::size_t pos = 0; pos <= route_.size(); ++pos) {
    const CostDelta d = eval_.insertion(order, pos, w);
    if (!d.feasible) continue;
    const double tiebreak = d.delta_dist + d.delta_tardy;
    if (!best || d.delta_utility < best->price - kPriceTie ||
        (d.delta_utility <= best->price + kPriceTie && tiebreak < best_tiebreak - kPriceTie)) {
      best = Bid{route_.vehicle, order, pos, d.delta_utility, d.delta_dist, d.delta_tardy, version_, w.w_dist()};
      best_tiebreak = tiebreak;
    }
  }
  return best;
}

bool VehicleAgent::insert_order(CustomerId order, std::size_t position) {
  if (position > route_.size() || contains(order)) return false;
  if (!eval_.insertion(order, position, PreferenceWeights(1.0)).feasible) return false;
  route_.sequence.insert(route_.sequence.begin() + static_cast<std::ptrdiff_t>(position), order);
  refresh();
  return true;
}

std::vector<double> removal_savings(const Route& route, const Instance& instance, PreferenceWeights w) {
  const double base = utility(schedule_route(route, instance).objectives(), w);
  std::vector<double> out;
  out.reserve(route.size());
  for (std::size_t i = 0; i < route.size(); ++i) {
    Route without = route;
    without.sequence.erase(without.sequence.begin() + static_cast<std::ptrdiff_t>(i));
    out.push_back(base - utility(schedule_route(without, instance).objectives(), w));
  }
  return out;
}

std::vector<CustomerId> VehicleAgent::eject_orders(EjectionRule rule, std::size_t k, PreferenceWeights w, Rng& rng) {
  k = std::min(k, route_.size());
  if (k == 0) return {};
  std::vector<std::size_t> order(route_.size());
  std::iota(order.begin(), order.end(), 0);
  if (rule == EjectionRule::HighestSaving) {
    const std::vector<double> savings = removal_savings(route_, *instance_, w);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return savings[a] > savings[b]; });
  } else {
    std::shuffle(order.begin(), order.end(), rng);
  }
  order.resize(k);
  std::vector<CustomerId> removed;
  removed.reserve(k);
  for (std::size_t idx : order) removed.push_back(route_.sequence[idx]);
  std::sort(order.begin(), order.end(), std::greater<>());
  for (std::size_t idx : order) route_.sequence.erase(route_.sequence.begin() + static_cast<std::ptrdiff_t>(idx));
  refresh();
  return removed;
}

void VehicleAgent::improve(PreferenceWeights w, Rng& rng, std::size_t patience, std::size_t max_steps,
                           DescentTrace* trace) {
  Route next = descend(route_, *instance_, w, rng, patience, max_steps, trace);
  if (next != route_) {
    route_ = std::move(next);
    refresh();
  }
}

void VehicleAgent::reset(Route route) {
  if (route.vehicle != route_.vehicle) throw ModelError("route belongs to a different vehicle");
  route_ = std::move(route);
  refresh();
}

void VehicleAgent::refresh() {
  eval_ = RouteEvaluator(route_, *instance_);
  ++version_;
}

}  // namespace mvrp
