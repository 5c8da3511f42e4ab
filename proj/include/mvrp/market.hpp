#pragma once

// The marketplace of open orders and the decider that assigns them to
// vehicles by maximum regret, watches search progress, and forces orders
// back onto the market when the search stagnates.

#include <cstdint>
#include <limits>
#include <map>
#include <set>
#include <span>
#include <variant>
#include <vector>

#include "mvrp/model.hpp"
#include "mvrp/vehicle_agent.hpp"

namespace mvrp {

struct Market {
  std::set<CustomerId> open_orders;

  bool empty() const noexcept { return open_orders.empty(); }
  std::size_t size() const noexcept { return open_orders.size(); }
};

/// Every bid received for each order; orders absent from the map or mapped
/// to an empty list received no bid.
using QuoteBook = std::map<CustomerId, std::vector<Bid>>;

inline constexpr double kNoSecondBid = std::numeric_limits<double>::infinity();

struct RegretEntry {
  CustomerId order = 0;
  Bid best;
  double second_best_price = kNoSecondBid;
  double regret = kNoSecondBid;
};

/// Regret of one order's bids; nullopt when there are none. The best bid is
/// the lowest price, ties broken by lower vehicle id.
std::optional<RegretEntry> regret_entry(CustomerId order, std::span<const Bid> bids);

struct Assignment {
  CustomerId order = 0;
  Bid bid;
};
struct Stalled {
  std::vector<CustomerId> orders;  // open orders nobody bid on
};
struct StaleQuotes {
  std::vector<VehicleId> vehicles;  // agents whose quotes are out of date
};
using AssignOutcome = std::variant<Assignment, Stalled, StaleQuotes>;

/// Picks the open order with maximum regret (ties: lower best price, then
/// lower order id) and returns it with its best bid. Quotes are trusted.
AssignOutcome assign_next(const Market& market, const QuoteBook& quotes);

/// As above, but first rejects quotes whose route version or weight no
/// longer matches the agents.
AssignOutcome assign_next(const Market& market, const QuoteBook& quotes, std::span<const VehicleAgent> agents,
                          PreferenceWeights w);

struct ConstructStats {
  std::size_t assignments = 0;
  std::size_t quotes_computed = 0;
  std::size_t stale_rounds = 0;
};

struct ConstructResult {
  Solution solution;
  std::vector<CustomerId> unservable;  // non-empty iff construction stalled

  bool complete() const noexcept { return unservable.empty(); }
};

/// Auction loop: quote, assign the max-regret order, insert, repeat until the
/// market is empty or no open order receives a bid. Works from any partial
/// state; only agents whose route changed are re-quoted.
ConstructResult construct(Market& market, std::span<VehicleAgent> agents, PreferenceWeights w,
                          ConstructStats* stats = nullptr);

/// Builds the solution view of the current agents and market.
Solution assemble(std::span<const VehicleAgent> agents, const Market& market);

struct StagnationMonitor {
  double best_utility_seen = std::numeric_limits<double>::infinity();
  std::size_t iterations_since_improvement = 0;
  std::size_t patience = 2000;
  std::size_t ejection_size = 2;
};

inline constexpr double kStagnationImprovement = 1e-9;

/// Records `iterations` more improvement iterations ending at `current_utility`.
/// Returns true when no strict improvement has happened for `patience`
/// iterations.
bool check_stagnation(StagnationMonitor& monitor, double current_utility, std::size_t iterations = 1);

/// Each agent ejects up to monitor.ejection_size orders onto the market.
/// Returns the ejected orders in posting order.
std::vector<CustomerId> reallocate(Market& market, std::span<VehicleAgent> agents, const StagnationMonitor& monitor,
                                   EjectionRule rule, PreferenceWeights w, Rng& rng);

}  // namespace mvrp
