#pragma once

// Shared fixtures and independent reference implementations for the tests.
// Nothing here calls into the library's evaluation or search code.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mvrp/market.hpp"
#include "mvrp/model.hpp"
#include "mvrp/move.hpp"

namespace testing {

inline std::string data_path(const std::string& name) { return std::string(MVRP_DATA_DIR) + "/" + name; }

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

struct RandomSpec {
  int customers = 8;
  int depots = 1;
  int vehicles_per_depot = 2;
  double area = 100.0;
  double horizon = 400.0;
  double capacity = 1e9;
  std::optional<double> max_duration;
  double max_demand = 10.0;
  double max_service = 10.0;
};

/// Random instance with ids 1..n for customers, n+1.. for depots and
/// 1..depots*vehicles_per_depot for vehicles.
inline mvrp::Instance random_instance(std::mt19937_64& rng, const RandomSpec& spec) {
  std::uniform_real_distribution<double> coord(0.0, spec.area);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<mvrp::Customer> cs;
  for (int i = 1; i <= spec.customers; ++i) {
    mvrp::Customer c;
    c.id = i;
    c.location = {coord(rng), coord(rng)};
    c.demand = std::floor(1.0 + unit(rng) * spec.max_demand);
    c.service_time = std::floor(unit(rng) * spec.max_service);
    c.tw_open = std::floor(unit(rng) * spec.horizon * 0.6);
    c.tw_close = c.tw_open + std::floor(10.0 + unit(rng) * spec.horizon * 0.3);
    cs.push_back(c);
  }
  std::vector<mvrp::Depot> ds;
  std::vector<mvrp::VehicleSpec> vs;
  for (int d = 0; d < spec.depots; ++d) {
    const int id = spec.customers + 1 + d;
    ds.push_back({id, {coord(rng), coord(rng)}, 0.0, spec.horizon * 4});
    for (int k = 0; k < spec.vehicles_per_depot; ++k) {
      vs.push_back({static_cast<int>(vs.size()) + 1, id, spec.capacity, spec.max_duration});
    }
  }
  return mvrp::Instance(cs, ds, vs);
}

// Straight-line simulation of a closed route, written from the timing rules
// alone: leave the depot at its opening time, wait for early windows, count
// lateness past the closing time, serve, return.
struct RefRoute {
  double dist = 0.0;
  double tardy = 0.0;
  double duration = 0.0;
  double load = 0.0;
  bool feasible = true;
};

inline double ref_distance(mvrp::Point a, mvrp::Point b) {
  const long double dx = static_cast<long double>(a.x) - b.x;
  const long double dy = static_cast<long double>(a.y) - b.y;
  return static_cast<double>(std::sqrt(dx * dx + dy * dy));
}

inline RefRoute ref_route(const mvrp::Instance& inst, mvrp::VehicleId vehicle, const std::vector<mvrp::CustomerId>& seq) {
  const mvrp::VehicleSpec* v = nullptr;
  for (const auto& s : inst.vehicles())
    if (s.id == vehicle) v = &s;
  const mvrp::Depot* depot = nullptr;
  for (const auto& d : inst.depots())
    if (d.id == v->home_depot) depot = &d;
  auto find = [&](mvrp::CustomerId id) -> const mvrp::Customer& {
    for (const auto& c : inst.customers())
      if (c.id == id) return c;
    throw std::runtime_error("unknown customer");
  };
  RefRoute r;
  if (seq.empty()) return r;
  double t = depot->tw_open;
  mvrp::Point at = depot->location;
  for (mvrp::CustomerId id : seq) {
    const mvrp::Customer& c = find(id);
    const double leg = ref_distance(at, c.location);
    r.dist += leg;
    t += leg;
    if (t > c.tw_close) r.tardy += t - c.tw_close;
    t = std::max(t, c.tw_open) + c.service_time;
    r.load += c.demand;
    at = c.location;
  }
  const double back = ref_distance(at, depot->location);
  r.dist += back;
  t += back;
  r.duration = t - depot->tw_open;
  r.feasible = r.load <= v->capacity + 1e-9 && (!v->max_route_duration || r.duration <= *v->max_route_duration + 1e-9);
  return r;
}

inline double ref_cost(const RefRoute& r, double w) { return w * r.dist + (1.0 - w) * r.tardy; }

// Move semantics by explicit position mapping: element i of the result is
// element source(i) of the input, 1-indexed.
inline std::vector<int> ref_apply(const std::vector<int>& seq, const mvrp::Move& m) {
  const std::size_t n = seq.size();
  std::vector<int> out(n);
  for (std::size_t i = 1; i <= n; ++i) {
    std::size_t src = i;
    switch (m.kind) {
      case mvrp::Move::Kind::Invert:
        if (i >= m.p1 && i <= m.p2) src = m.p1 + m.p2 - i;
        break;
      case mvrp::Move::Kind::Exchange:
        if (i == m.p1) src = m.p2;
        else if (i == m.p2) src = m.p1;
        break;
      case mvrp::Move::Kind::ShiftForward:
        if (i >= m.p1 && i < m.p2) src = i + 1;
        else if (i == m.p2) src = m.p1;
        break;
      case mvrp::Move::Kind::ShiftBackward:
        if (i > m.p2 && i <= m.p1) src = i - 1;
        else if (i == m.p2) src = m.p1;
        break;
    }
    out[i - 1] = seq[src - 1];
  }
  return out;
}

// Every move for a route of length n, listed from the validity rules.
inline std::vector<mvrp::Move> ref_moves(std::size_t n) {
  std::vector<mvrp::Move> out;
  for (std::size_t a = 1; a <= n; ++a) {
    for (std::size_t b = 1; b <= n; ++b) {
      if (a < b) {
        out.push_back({mvrp::Move::Kind::Invert, a, b});
        out.push_back({mvrp::Move::Kind::Exchange, a, b});
        out.push_back({mvrp::Move::Kind::ShiftForward, a, b});
      } else if (a > b) {
        out.push_back({mvrp::Move::Kind::ShiftBackward, a, b});
      }
    }
  }
  return out;
}

// Exhaustive optimum of the weighted cost over all assignments of customers
// to vehicles and all visiting orders. Routes are independent, so the best
// ordering of each subset on each vehicle is enumerated once.
inline double exhaustive_optimum(const mvrp::Instance& inst, double w) {
  const std::size_t n = inst.customer_count();
  const std::size_t m = inst.vehicles().size();
  const std::size_t subsets = std::size_t{1} << n;
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> best(m, std::vector<double>(subsets, inf));
  for (std::size_t v = 0; v < m; ++v) {
    for (std::size_t mask = 0; mask < subsets; ++mask) {
      std::vector<mvrp::CustomerId> seq;
      for (std::size_t i = 0; i < n; ++i)
        if (mask >> i & 1) seq.push_back(inst.customers()[i].id);
      std::sort(seq.begin(), seq.end());
      do {
        const RefRoute r = ref_route(inst, inst.vehicles()[v].id, seq);
        if (r.feasible) best[v][mask] = std::min(best[v][mask], ref_cost(r, w));
      } while (std::next_permutation(seq.begin(), seq.end()));
    }
  }
  // Combine vehicle by vehicle over disjoint subsets.
  std::vector<double> acc = best[0];
  for (std::size_t v = 1; v < m; ++v) {
    std::vector<double> next(subsets, inf);
    for (std::size_t mask = 0; mask < subsets; ++mask) {
      for (std::size_t sub = mask;; sub = (sub - 1) & mask) {
        next[mask] = std::min(next[mask], acc[mask ^ sub] + best[v][sub]);
        if (sub == 0) break;
      }
    }
    acc = std::move(next);
  }
  return acc[subsets - 1];
}

// Regret assignment by sorting: each order's bids are ranked by (price,
// vehicle); orders are ranked by (regret descending, best price, id).
struct RefChoice {
  mvrp::CustomerId order;
  mvrp::VehicleId vehicle;
};

inline std::optional<RefChoice> ref_assign(const mvrp::Market& market, const mvrp::QuoteBook& quotes) {
  struct Row {
    double regret, best;
    mvrp::CustomerId order;
    mvrp::VehicleId vehicle;
  };
  std::vector<Row> rows;
  for (mvrp::CustomerId order : market.open_orders) {
    auto it = quotes.find(order);
    if (it == quotes.end() || it->second.empty()) continue;
    std::vector<std::pair<double, mvrp::VehicleId>> ranked;
    for (const auto& b : it->second) ranked.emplace_back(b.price, b.vehicle);
    std::sort(ranked.begin(), ranked.end());
    const double regret = ranked.size() > 1 ? ranked[1].first - ranked[0].first : std::numeric_limits<double>::infinity();
    rows.push_back({regret, ranked[0].first, order, ranked[0].second});
  }
  if (rows.empty()) return std::nullopt;
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    if (a.regret != b.regret) return a.regret > b.regret;
    if (a.best != b.best) return a.best < b.best;
    return a.order < b.order;
  });
  return RefChoice{rows[0].order, rows[0].vehicle};
}

// Random bid matrix with prices on a coarse grid so ties are common.
inline mvrp::QuoteBook random_quotes(std::mt19937_64& rng, mvrp::Market& market, int max_orders, int max_vehicles) {
  market.open_orders.clear();
  mvrp::QuoteBook book;
  const int orders = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_orders));
  const int vehicles = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_vehicles));
  for (int o = 1; o <= orders; ++o) {
    market.open_orders.insert(o * 3);
    for (int v = 1; v <= vehicles; ++v) {
      if (rng() % 4 == 0) continue;  // this vehicle cannot serve the order
      mvrp::Bid b;
      b.vehicle = v;
      b.order = o * 3;
      b.price = static_cast<double>(rng() % 7) - 1.0;
      book[o * 3].push_back(b);
    }
    if (auto it = book.find(o * 3); it != book.end()) std::shuffle(it->second.begin(), it->second.end(), rng);
  }
  return book;
}

}  // namespace testing
