#include "doctest.h"
#include "mvrp/instance_io.hpp"
#include "mvrp/vehicle_agent.hpp"
#include "support.hpp"

using namespace mvrp;

namespace {

Instance fixture() { return *load_cordeau(testing::data_path("pr01_surrogate.txt")).instance; }

struct RefBid {
  std::size_t position;
  double price;
};

// Cheapest feasible position by enumeration; near-equal prices fall back to
// the smaller unweighted change, then the earlier position.
std::optional<RefBid> ref_bid(const Instance& inst, const Route& r, CustomerId order, double w) {
  const auto base = testing::ref_route(inst, r.vehicle, r.sequence);
  struct Option {
    std::size_t pos;
    double price, sum;
  };
  std::vector<Option> options;
  for (std::size_t pos = 0; pos <= r.size(); ++pos) {
    auto seq = r.sequence;
    seq.insert(seq.begin() + static_cast<std::ptrdiff_t>(pos), order);
    const auto after = testing::ref_route(inst, r.vehicle, seq);
    if (!after.feasible) continue;
    options.push_back({pos, testing::ref_cost(after, w) - testing::ref_cost(base, w),
                       (after.dist - base.dist) + (after.tardy - base.tardy)});
  }
  if (options.empty()) return std::nullopt;
  double best_price = options[0].price;
  for (const auto& o : options) best_price = std::min(best_price, o.price);
  std::erase_if(options, [&](const Option& o) { return o.price > best_price + 1e-9; });
  double best_sum = options[0].sum;
  for (const auto& o : options) best_sum = std::min(best_sum, o.sum);
  std::erase_if(options, [&](const Option& o) { return o.sum > best_sum + 1e-9; });
  return RefBid{options.front().pos, best_price};
}

}  // namespace

TEST_CASE("bids match exhaustive insertion pricing") {
  const Instance inst = fixture();
  std::mt19937_64 rng(61);
  int compared = 0, no_bid = 0;
  for (int i = 0; i < 1500; ++i) {
    std::vector<CustomerId> ids;
    for (const auto& c : inst.customers()) ids.push_back(c.id);
    std::shuffle(ids.begin(), ids.end(), rng);
    const CustomerId order = ids.back();
    ids.resize(rng() % 10);
    const Route r{inst.vehicles()[rng() % inst.vehicles().size()].id, ids};
    if (!testing::ref_route(inst, r.vehicle, r.sequence).feasible) continue;
    const double w = static_cast<double>(rng() % 11) / 10.0;
    const VehicleAgent agent(inst, r);
    const auto got = agent.compute_bid(order, PreferenceWeights(w));
    const auto want = ref_bid(inst, r, order, w);
    REQUIRE(got.has_value() == want.has_value());
    if (!got) {
      ++no_bid;
      continue;
    }
    ++compared;
    CHECK(got->position == want->position);
    CHECK(std::abs(got->price - want->price) <= 1e-9);
    CHECK(got->vehicle == r.vehicle);
    CHECK(got->order == order);
    CHECK(got->route_version == agent.route_version());
    CHECK(got->w_dist == w);
    CHECK(got->price == doctest::Approx(w * got->delta_dist + (1 - w) * got->delta_tardy));
  }
  CHECK(compared > 400);
  MESSAGE("bids compared: " << compared << ", no-bid cases: " << no_bid);
}

TEST_CASE("infeasible orders receive no bid") {
  const Instance inst({{1, {1, 0}, 8, 0, 0, 100}, {2, {2, 0}, 8, 0, 0, 100}}, {{3, {0, 0}, 0, 100}},
                      {{1, 3, 10, std::nullopt}});
  VehicleAgent a(inst, 1);
  REQUIRE(a.insert_order(1, 0));
  CHECK_FALSE(a.compute_bid(2, PreferenceWeights(0.5)).has_value());
  CHECK_THROWS_AS(a.compute_bid(1, PreferenceWeights(0.5)), ModelError);
}

TEST_CASE("route versions track every mutation") {
  std::mt19937_64 gen(5);
  const Instance inst = testing::random_instance(gen, {});
  VehicleAgent a(inst, inst.vehicles()[0].id);
  std::uint64_t v = a.route_version();
  REQUIRE(a.insert_order(1, 0));
  CHECK(a.route_version() > v);
  v = a.route_version();
  CHECK_FALSE(a.insert_order(1, 0));
  CHECK_FALSE(a.insert_order(2, 5));
  CHECK(a.route_version() == v);
  REQUIRE(a.insert_order(2, 1));
  REQUIRE(a.insert_order(3, 1));
  CHECK(a.route().sequence == std::vector<CustomerId>{1, 3, 2});
  v = a.route_version();
  Rng rng(1);
  CHECK(a.eject_orders(EjectionRule::Random, 1, PreferenceWeights(0.5), rng).size() == 1);
  CHECK(a.route_version() > v);
  v = a.route_version();
  a.reset(Route{a.vehicle(), {5}});
  CHECK(a.route_version() > v);
  CHECK(a.contains(5));
  CHECK_THROWS_AS(a.reset(Route{a.vehicle() + 1, {}}), ModelError);
}

TEST_CASE("insert refuses capacity violations") {
  const Instance inst({{1, {1, 0}, 8, 0, 0, 100}, {2, {2, 0}, 8, 0, 0, 100}}, {{3, {0, 0}, 0, 100}},
                      {{1, 3, 10, std::nullopt}});
  VehicleAgent a(inst, 1);
  REQUIRE(a.insert_order(1, 0));
  CHECK_FALSE(a.insert_order(2, 1));
  CHECK(a.route().sequence == std::vector<CustomerId>{1});
}

TEST_CASE("removal savings and highest-saving ejection") {
  const Instance inst = fixture();
  std::mt19937_64 gen(67);
  Rng rng(68);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<CustomerId> ids;
    for (const auto& c : inst.customers()) ids.push_back(c.id);
    std::shuffle(ids.begin(), ids.end(), gen);
    ids.resize(1 + gen() % 9);
    const Route r{inst.vehicles()[gen() % inst.vehicles().size()].id, ids};
    const double w = static_cast<double>(gen() % 11) / 10.0;
    const auto savings = removal_savings(r, inst, PreferenceWeights(w));
    const double base = testing::ref_cost(testing::ref_route(inst, r.vehicle, r.sequence), w);
    REQUIRE(savings.size() == r.size());
    for (std::size_t i = 0; i < r.size(); ++i) {
      auto without = r.sequence;
      without.erase(without.begin() + static_cast<std::ptrdiff_t>(i));
      CHECK(savings[i] == doctest::Approx(base - testing::ref_cost(testing::ref_route(inst, r.vehicle, without), w)));
    }

    const std::size_t k = 1 + gen() % 3;
    VehicleAgent a(inst, r);
    const auto ejected = a.eject_orders(EjectionRule::HighestSaving, k, PreferenceWeights(w), rng);
    CHECK(ejected.size() == std::min(k, r.size()));
    // Nothing kept saves strictly more than anything ejected.
    double min_ejected = std::numeric_limits<double>::infinity();
    for (CustomerId id : ejected) {
      const auto pos = std::find(r.sequence.begin(), r.sequence.end(), id) - r.sequence.begin();
      min_ejected = std::min(min_ejected, savings[static_cast<std::size_t>(pos)]);
    }
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (std::find(ejected.begin(), ejected.end(), r.sequence[i]) == ejected.end()) CHECK(savings[i] <= min_ejected);
    }
    // Survivors keep their relative order.
    std::vector<CustomerId> expected;
    for (CustomerId id : r.sequence)
      if (std::find(ejected.begin(), ejected.end(), id) == ejected.end()) expected.push_back(id);
    CHECK(a.route().sequence == expected);
  }
}

TEST_CASE("random ejection removes distinct orders") {
  const Instance inst = fixture();
  VehicleAgent a(inst, Route{inst.vehicles()[0].id, {1, 2, 3, 4, 5, 6}});
  Rng rng(71);
  auto out = a.eject_orders(EjectionRule::Random, 4, PreferenceWeights(0.5), rng);
  CHECK(out.size() == 4);
  std::sort(out.begin(), out.end());
  CHECK(std::adjacent_find(out.begin(), out.end()) == out.end());
  CHECK(a.route().size() == 2);
  CHECK(a.eject_orders(EjectionRule::Random, 10, PreferenceWeights(0.5), rng).size() == 2);
  CHECK(a.eject_orders(EjectionRule::HighestSaving, 3, PreferenceWeights(0.5), rng).empty());
}

TEST_CASE("improve never raises the route cost") {
  const Instance inst = fixture();
  Rng rng(73);
  VehicleAgent a(inst, Route{inst.vehicles()[2].id, {9, 1, 22, 17, 25, 3}});
  const PreferenceWeights w(0.7);
  const double before = a.cost(w);
  DescentTrace trace;
  a.improve(w, rng, 200, 0, &trace);
  CHECK(a.cost(w) <= before);
  CHECK(trace.costs.front() == doctest::Approx(before));
  CHECK(a.cost(w) == doctest::Approx(trace.costs.back()));
}

TEST_CASE("objectives after insertion equal the quoted deltas") {
  const Instance inst = fixture();
  std::mt19937_64 gen(79);
  int inserted = 0;
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<CustomerId> ids;
    for (const auto& c : inst.customers()) ids.push_back(c.id);
    std::shuffle(ids.begin(), ids.end(), gen);
    const CustomerId order = ids.back();
    ids.resize(gen() % 7);
    const Route r{inst.vehicles()[gen() % inst.vehicles().size()].id, ids};
    if (!testing::ref_route(inst, r.vehicle, r.sequence).feasible) continue;
    VehicleAgent a(inst, r);
    const auto bid = a.compute_bid(order, PreferenceWeights(static_cast<double>(gen() % 11) / 10.0));
    if (!bid) continue;
    const auto before = testing::ref_route(inst, r.vehicle, r.sequence);
    REQUIRE(a.insert_order(order, bid->position));
    const auto after = testing::ref_route(inst, r.vehicle, a.route().sequence);
    CHECK(after.feasible);
    CHECK(after.dist - before.dist == doctest::Approx(bid->delta_dist).epsilon(1e-9));
    CHECK(after.tardy - before.tardy == doctest::Approx(bid->delta_tardy).epsilon(1e-9));
    ++inserted;
  }
  CHECK(inserted > 100);
}

TEST_CASE("tardiness-only improvement does not add lateness") {
  std::mt19937_64 gen(83);
  for (int trial = 0; trial < 30; ++trial) {
    testing::RandomSpec spec;
    spec.customers = 8;
    spec.vehicles_per_depot = 1;
    const Instance inst = testing::random_instance(gen, spec);
    Route r{1, {1, 2, 3, 4, 5, 6, 7, 8}};
    std::shuffle(r.sequence.begin(), r.sequence.end(), gen);
    VehicleAgent a(inst, r);
    const double before = testing::ref_route(inst, 1, r.sequence).tardy;
    Rng rng(static_cast<std::uint64_t>(trial));
    a.improve(PreferenceWeights(0.0), rng, 500);
    CHECK(testing::ref_route(inst, 1, a.route().sequence).tardy <= before + 1e-9);
  }
}
