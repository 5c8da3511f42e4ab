#pragma once

// Immutable problem data and the mutable solution representation shared by
// every other part of the solver.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace mvrp {

using CustomerId = int;
using DepotId = int;
using VehicleId = int;

/// Raised on any violation of a domain invariant or operation precondition.
class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

/// Euclidean distance; doubles as travel time (cost and time are identified).
double travel_time(Point a, Point b) noexcept;

struct Customer {
  CustomerId id = 0;
  Point location;
  double demand = 0.0;
  double service_time = 0.0;
  double tw_open = 0.0;
  double tw_close = 0.0;

  friend bool operator==(const Customer&, const Customer&) = default;
};

struct Depot {
  DepotId id = 0;
  Point location;
  double tw_open = 0.0;
  double tw_close = 0.0;

  friend bool operator==(const Depot&, const Depot&) = default;
};

struct VehicleSpec {
  VehicleId id = 0;
  DepotId home_depot = 0;
  double capacity = 0.0;
  // nullopt = unbounded route duration.
  std::optional<double> max_route_duration;

  friend bool operator==(const VehicleSpec&, const VehicleSpec&) = default;
};

enum class Metric { Euclidean };

/// Validated, immutable problem instance. Node indices are dense: customers
/// occupy [0, customer_count()), depots follow. Travel times between all nodes
/// are precomputed.
class Instance {
 public:
  /// Throws ModelError when any invariant is violated.
  Instance(std::vector<Customer> customers, std::vector<Depot> depots,
           std::vector<VehicleSpec> vehicles);

  const std::vector<Customer>& customers() const noexcept { return customers_; }
  const std::vector<Depot>& depots() const noexcept { return depots_; }
  const std::vector<VehicleSpec>& vehicles() const noexcept { return vehicles_; }
  Metric metric() const noexcept { return Metric::Euclidean; }

  std::size_t customer_count() const noexcept { return customers_.size(); }
  std::size_t node_count() const noexcept {
    return customers_.size() + depots_.size();
  }

  bool has_customer(CustomerId id) const noexcept;
  /// Dense index of a customer id; throws ModelError for unknown ids.
  std::size_t customer_index(CustomerId id) const;
  const Customer& customer(CustomerId id) const;

  std::size_t depot_index(DepotId id) const;
  std::size_t depot_node(DepotId id) const {
    return customers_.size() + depot_index(id);
  }
  std::size_t vehicle_index(VehicleId id) const;
  const VehicleSpec& vehicle(VehicleId id) const;
  const Depot& home_depot(const VehicleSpec& v) const {
    return depots_[depot_index(v.home_depot)];
  }

  /// Travel time between two dense node indices.
  double travel(std::size_t from_node, std::size_t to_node) const noexcept {
    return matrix_[from_node * node_count() + to_node];
  }

  /// Structural equality: same customers, depots and vehicles in order.
  friend bool operator==(const Instance& a, const Instance& b) {
    return a.customers_ == b.customers_ && a.depots_ == b.depots_ &&
           a.vehicles_ == b.vehicles_;
  }

 private:
  std::vector<Customer> customers_;
  std::vector<Depot> depots_;
  std::vector<VehicleSpec> vehicles_;
  std::unordered_map<CustomerId, std::size_t> customer_lookup_;
  std::unordered_map<DepotId, std::size_t> depot_lookup_;
  std::unordered_map<VehicleId, std::size_t> vehicle_lookup_;
  std::vector<double> matrix_;
};

struct Route {
  VehicleId vehicle = 0;
  std::vector<CustomerId> sequence;

  std::size_t size() const noexcept { return sequence.size(); }
  bool empty() const noexcept { return sequence.empty(); }

  friend bool operator==(const Route&, const Route&) = default;
};

struct Solution {
  std::vector<Route> routes;           // one per vehicle, instance order
  std::vector<CustomerId> unassigned;  // kept sorted

  friend bool operator==(const Solution&, const Solution&) = default;
};

/// A solution with empty routes for every vehicle and every customer unassigned.
Solution empty_solution(const Instance& instance);

/// Checks the partition invariant and route ownership; throws ModelError.
void validate(const Solution& solution, const Instance& instance);

struct ObjectiveVector {
  double dist = 0.0;
  double tardy = 0.0;

  friend bool operator==(const ObjectiveVector&, const ObjectiveVector&) = default;
};

/// Relative importance of distance in the weighted sum; always in [0, 1].
class PreferenceWeights {
 public:
  PreferenceWeights() = default;
  explicit PreferenceWeights(double w_dist);

  double w_dist() const noexcept { return w_dist_; }
  double w_tardy() const noexcept { return 1.0 - w_dist_; }

  friend bool operator==(const PreferenceWeights&, const PreferenceWeights&) = default;

 private:
  double w_dist_ = 0.5;
};

}  // namespace mvrp
