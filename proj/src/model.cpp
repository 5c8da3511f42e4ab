#include "mvrp/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_set>

namespace mvrp {

double travel_time(Point a, Point b) noexcept {
  return std::hypot(a.x - b.x, a.y - b.y);
}

namespace {

template <class Map, class Key>
std::size_t lookup(const Map& map, Key key, const char* what) {
  auto it = map.find(key);
  if (it == map.end()) {
    throw ModelError(std::string("unknown ") + what + " id " + std::to_string(key));
  }
  return it->second;
}

}  // namespace

Instance::Instance(std::vector<Customer> customers, std::vector<Depot> depots,
                   std::vector<VehicleSpec> vehicles)
    : customers_(std::move(customers)),
      depots_(std::move(depots)),
      vehicles_(std::move(vehicles)) {
  for (std::size_t i = 0; i < customers_.size(); ++i) {
    const Customer& c = customers_[i];
    if (c.id < 1) throw ModelError("customer id must be >= 1, got " + std::to_string(c.id));
    if (!(c.demand >= 0.0)) throw ModelError("customer " + std::to_string(c.id) + ": negative demand");
    if (!(c.service_time >= 0.0)) {
      throw ModelError("customer " + std::to_string(c.id) + ": negative service time");
    }
    if (!(c.tw_open <= c.tw_close)) {
      throw ModelError("customer " + std::to_string(c.id) + ": tw_open > tw_close");
    }
    if (!customer_lookup_.emplace(c.id, i).second) {
      throw ModelError("duplicate customer id " + std::to_string(c.id));
    }
  }
  for (std::size_t i = 0; i < depots_.size(); ++i) {
    const Depot& d = depots_[i];
    if (!(d.tw_open <= d.tw_close)) {
      throw ModelError("depot " + std::to_string(d.id) + ": tw_open > tw_close");
    }
    if (!depot_lookup_.emplace(d.id, i).second) {
      throw ModelError("duplicate depot id " + std::to_string(d.id));
    }
  }
  for (std::size_t i = 0; i < vehicles_.size(); ++i) {
    const VehicleSpec& v = vehicles_[i];
    if (!(v.capacity >= 0.0)) throw ModelError("vehicle " + std::to_string(v.id) + ": negative capacity");
    if (v.max_route_duration && !(*v.max_route_duration > 0.0)) {
      throw ModelError("vehicle " + std::to_string(v.id) + ": max route duration must be positive");
    }
    if (!depot_lookup_.contains(v.home_depot)) {
      throw ModelError("vehicle " + std::to_string(v.id) + " references unknown depot " +
                       std::to_string(v.home_depot));
    }
    if (!vehicle_lookup_.emplace(v.id, i).second) {
      throw ModelError("duplicate vehicle id " + std::to_string(v.id));
    }
  }

  const std::size_t n = node_count();
  std::vector<Point> nodes;
  nodes.reserve(n);
  for (const auto& c : customers_) nodes.push_back(c.location);
  for (const auto& d : depots_) nodes.push_back(d.location);
  matrix_.resize(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      matrix_[i * n + j] = travel_time(nodes[i], nodes[j]);
    }
  }
}

bool Instance::has_customer(CustomerId id) const noexcept {
  return customer_lookup_.contains(id);
}

std::size_t Instance::customer_index(CustomerId id) const {
  return lookup(customer_lookup_, id, "customer");
}

const Customer& Instance::customer(CustomerId id) const {
  return customers_[customer_index(id)];
}

std::size_t Instance::depot_index(DepotId id) const {
  return lookup(depot_lookup_, id, "depot");
}

std::size_t Instance::vehicle_index(VehicleId id) const {
  return lookup(vehicle_lookup_, id, "vehicle");
}

const VehicleSpec& Instance::vehicle(VehicleId id) const {
  return vehicles_[vehicle_index(id)];
}

Solution empty_solution(const Instance& instance) {
  Solution s;
  s.routes.reserve(instance.vehicles().size());
  for (const auto& v : instance.vehicles()) s.routes.push_back(Route{v.id, {}});
  for (const auto& c : instance.customers()) s.unassigned.push_back(c.id);
  std::sort(s.unassigned.begin(), s.unassigned.end());
  return s;
}

void validate(const Solution& solution, const Instance& instance) {
  if (solution.routes.size() != instance.vehicles().size()) {
    throw ModelError("solution has " + std::to_string(solution.routes.size()) +
                     " routes for " + std::to_string(instance.vehicles().size()) + " vehicles");
  }
  std::vector<int> seen(instance.customer_count(), 0);
  auto mark = [&](CustomerId id) {
    if (++seen[instance.customer_index(id)] > 1) {
      throw ModelError("customer " + std::to_string(id) + " appears more than once");
    }
  };
  for (std::size_t k = 0; k < solution.routes.size(); ++k) {
    const Route& r = solution.routes[k];
    if (r.vehicle != instance.vehicles()[k].id) {
      throw ModelError("route " + std::to_string(k) + " belongs to vehicle " +
                       std::to_string(r.vehicle) + ", expected " +
                       std::to_string(instance.vehicles()[k].id));
    }
    for (CustomerId id : r.sequence) mark(id);
  }
  for (CustomerId id : solution.unassigned) mark(id);
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (seen[i] == 0) {
      throw ModelError("customer " + std::to_string(instance.customers()[i].id) +
                       " is neither routed nor unassigned");
    }
  }
}

PreferenceWeights::PreferenceWeights(double w_dist) : w_dist_(w_dist) {
  if (!(w_dist >= 0.0 && w_dist <= 1.0)) {
    throw ModelError("w_dist must lie in [0, 1], got " + std::to_string(w_dist));
  }
}

}  // namespace mvrp
