#include "mvrp/market.hpp"

#include <algorithm>
#include <unordered_map>

namespace mvrp {

std::optional<RegretEntry> regret_entry(CustomerId order, std::span<const Bid> bids) {
  if (bids.empty()) return std::nullopt;
  const Bid* best = nullptr;
  for (const Bid& b : bids) {
    if (!best || b.price < best->price || (b.price == best->price && b.vehicle < best->vehicle)) best = &b;
  }
  RegretEntry e;
  e.order = order;
  e.best = *best;
  for (const Bid& b : bids) {
    if (&b != best) e.second_best_price = std::min(e.second_best_price, b.price);
  }
  e.regret = e.second_best_price == kNoSecondBid ? kNoSecondBid : e.second_best_price - best->price;
  return e;
}

namespace {

bool preferred(const RegretEntry& a, const RegretEntry& b) {
  if (a.regret != b.regret) return a.regret > b.regret;
  if (a.best.price != b.best.price) return a.best.price < b.best.price;
  return a.order < b.order;
}

}  // namespace

AssignOutcome assign_next(const Market& market, const QuoteBook& quotes) {
  std::optional<RegretEntry> chosen;
  std::vector<CustomerId> unbid;
  for (CustomerId order : market.open_orders) {
    auto it = quotes.find(order);
    std::optional<RegretEntry> e;
    if (it != quotes.end()) e = regret_entry(order, it->second);
    if (!e) {
      unbid.push_back(order);
      continue;
    }
    if (!chosen || preferred(*e, *chosen)) chosen = e;
  }
  if (!chosen) return Stalled{std::move(unbid)};
  return Assignment{chosen->order, chosen->best};
}

AssignOutcome assign_next(const Market& market, const QuoteBook& quotes, std::span<const VehicleAgent> agents,
                          PreferenceWeights w) {
  std::unordered_map<VehicleId, std::uint64_t> versions;
  for (const auto& a : agents) versions.emplace(a.vehicle(), a.route_version());
  std::set<VehicleId> stale;
  for (CustomerId order : market.open_orders) {
    auto it = quotes.find(order);
    if (it == quotes.end()) continue;
    for (const Bid& b : it->second) {
      auto v = versions.find(b.vehicle);
      if (v == versions.end() || v->second != b.route_version || b.w_dist != w.w_dist() || b.order != order) {
        stale.insert(b.vehicle);
      }
    }
  }
  if (!stale.empty()) return StaleQuotes{{stale.begin(), stale.end()}};
  return assign_next(market, quotes);
}

Solution assemble(std::span<const VehicleAgent> agents, const Market& market) {
  Solution s;
  s.routes.reserve(agents.size());
  for (const auto& a : agents) s.routes.push_back(a.route());
  s.unassigned.assign(market.open_orders.begin(), market.open_orders.end());
  return s;
}

ConstructResult construct(Market& market, std::span<VehicleAgent> agents, PreferenceWeights w,
                          ConstructStats* stats) {
  ConstructStats local;
  ConstructStats& st = stats ? *stats : local;

  std::unordered_map<VehicleId, std::size_t> by_vehicle;
  for (std::size_t i = 0; i < agents.size(); ++i) by_vehicle.emplace(agents[i].vehicle(), i);

  // Per-agent quote cache, valid for the recorded route version.
  std::vector<std::map<CustomerId, std::optional<Bid>>> cache(agents.size());
  std::vector<std::optional<std::uint64_t>> cached_version(agents.size());

  ConstructResult result;
  while (!market.empty()) {
    QuoteBook book;
    for (std::size_t i = 0; i < agents.size(); ++i) {
      if (cached_version[i] != agents[i].route_version()) {
        cache[i].clear();
        cached_version[i] = agents[i].route_version();
      }
      for (CustomerId order : market.open_orders) {
        auto [it, inserted] = cache[i].try_emplace(order);
        if (inserted) {
          it->second = agents[i].compute_bid(order, w);
          ++st.quotes_computed;
        }
        if (it->second) book[order].push_back(*it->second);
      }
    }

    const AssignOutcome outcome = assign_next(market, book, agents, w);
    if (const auto* stalled = std::get_if<Stalled>(&outcome)) {
      result.unservable = stalled->orders;
      break;
    }
    if (const auto* stale = std::get_if<StaleQuotes>(&outcome)) {
      ++st.stale_rounds;
      for (VehicleId v : stale->vehicles) cached_version[by_vehicle.at(v)].reset();
      continue;
    }
    const auto& a = std::get<Assignment>(outcome);
    VehicleAgent& winner = agents[by_vehicle.at(a.bid.vehicle)];
    if (!winner.insert_order(a.order, a.bid.position)) {
      ++st.stale_rounds;
      cached_version[by_vehicle.at(a.bid.vehicle)].reset();
      continue;
    }
    market.open_orders.erase(a.order);
    ++st.assignments;
  }
  result.solution = assemble(agents, market);
  return result;
}

bool check_stagnation(StagnationMonitor& monitor, double current_utility, std::size_t iterations) {
  if (current_utility < monitor.best_utility_seen - kStagnationImprovement) {
    monitor.best_utility_seen = current_utility;
    monitor.iterations_since_improvement = 0;
  } else {
    monitor.iterations_since_improvement += iterations;
  }
  return monitor.iterations_since_improvement >= monitor.patience;
}

std::vector<CustomerId> reallocate(Market& market, std::span<VehicleAgent> agents, const StagnationMonitor& monitor,
                                   EjectionRule rule, PreferenceWeights w, Rng& rng) {
  std::vector<CustomerId> ejected;
  for (auto& agent : agents) {
    for (CustomerId id : agent.eject_orders(rule, monitor.ejection_size, w, rng)) {
      market.open_orders.insert(id);
      ejected.push_back(id);
    }
  }
  return ejected;
}

}  // namespace mvrp
