#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mvrp/evaluation.hpp"
#include "mvrp/local_search.hpp"
#include "mvrp/model.hpp"

namespace mvrp {

/// A vehicle's priced offer for one order. Only valid while the agent's
/// route version and the weights in force still match the quote.
struct Bid {
  VehicleId vehicle = 0;
  CustomerId order = 0;
  std::size_t position = 0;  // 0-based insertion index
  double price = 0.0;        // weighted insertion cost
  double delta_dist = 0.0;
  double delta_tardy = 0.0;
  std::uint64_t route_version = 0;
  double w_dist = 0.0;  // weight the price was quoted under

  friend bool operator==(const Bid&, const Bid&) = default;
};

enum class EjectionRule { HighestSaving, Random };

const char* to_string(EjectionRule rule) noexcept;

/// Owns one vehicle's route. Every mutation bumps the route version, which
/// invalidates outstanding bids.
class VehicleAgent {
 public:
  VehicleAgent(const Instance& instance, VehicleId vehicle);
  VehicleAgent(const Instance& instance, Route route);

  VehicleId vehicle() const noexcept { return route_.vehicle; }
  const Route& route() const noexcept { return route_; }
  std::uint64_t route_version() const noexcept { return version_; }
  const RouteEvaluator& evaluator() const noexcept { return eval_; }
  double cost(PreferenceWeights w) const noexcept { return eval_.cost(w); }
  bool contains(CustomerId order) const noexcept;

  /// Cheapest feasible insertion; ties prefer the lower unweighted sum of
  /// deltas, then the lower position. nullopt when no position is feasible.
  /// Throws ModelError when the order is already on the route.
  std::optional<Bid> compute_bid(CustomerId order, PreferenceWeights w) const;

  /// Inserts at the 0-based position. Returns false, leaving the route
  /// untouched, when the insertion would be infeasible.
  bool insert_order(CustomerId order, std::size_t position);

  /// Removes up to k orders. HighestSaving removes the orders whose
  /// individual removal lowers the weighted route cost the most.
  std::vector<CustomerId> eject_orders(EjectionRule rule, std::size_t k, PreferenceWeights w, Rng& rng);

  /// Local-search descent under the given weights.
  void improve(PreferenceWeights w, Rng& rng, std::size_t patience, std::size_t max_steps = 0,
               DescentTrace* trace = nullptr);

  /// Replaces the route wholesale (used when restoring an incumbent).
  void reset(Route route);

 private:
  void refresh();

  const Instance* instance_;
  Route route_;
  RouteEvaluator eval_;
  std::uint64_t version_ = 0;
};

/// Per-order weighted cost saving from removing just that order
/// (cost with the order minus cost without it), by full re-evaluation.
std::vector<double> removal_savings(const Route& route, const Instance& instance, PreferenceWeights w);

}  // namespace mvrp
