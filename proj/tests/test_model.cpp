#include <boost/multiprecision/cpp_dec_float.hpp>

#include "doctest.h"
#include "mvrp/model.hpp"
#include "support.hpp"

using namespace mvrp;
using boost::multiprecision::cpp_dec_float_50;

namespace {

Instance tiny() {
  return Instance({{1, {0, 0}, 5, 1, 0, 10}, {2, {3, 4}, 5, 1, 0, 10}}, {{10, {1, 1}, 0, 100}},
                  {{1, 10, 20, std::nullopt}, {2, 10, 20, 50.0}});
}

}  // namespace

TEST_CASE("travel time agrees with a 50-digit reference") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1000.0, 1000.0);
  for (int i = 0; i < 2000; ++i) {
    const Point a{u(rng), u(rng)}, b{u(rng), u(rng)};
    const cpp_dec_float_50 dx = cpp_dec_float_50(a.x) - b.x;
    const cpp_dec_float_50 dy = cpp_dec_float_50(a.y) - b.y;
    const double exact = static_cast<double>(sqrt(dx * dx + dy * dy));
    CHECK(travel_time(a, b) == doctest::Approx(exact).epsilon(1e-15));
  }
  CHECK(travel_time({0, 0}, {3, 4}) == 5.0);
  CHECK(travel_time({2, 2}, {2, 2}) == 0.0);
}

TEST_CASE("travel time is symmetric and obeys the triangle inequality") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-100.0, 100.0);
  for (int i = 0; i < 500; ++i) {
    const Point a{u(rng), u(rng)}, b{u(rng), u(rng)}, c{u(rng), u(rng)};
    CHECK(travel_time(a, b) == travel_time(b, a));
    CHECK(travel_time(a, c) <= travel_time(a, b) + travel_time(b, c) + 1e-12);
  }
}

TEST_CASE("instance lookups and the travel matrix") {
  const Instance inst = tiny();
  CHECK(inst.customer_count() == 2);
  CHECK(inst.node_count() == 3);
  CHECK(inst.customer_index(2) == 1);
  CHECK(inst.depot_node(10) == 2);
  CHECK(inst.customer(1).demand == 5);
  CHECK(inst.vehicle(2).max_route_duration == 50.0);
  CHECK(inst.home_depot(inst.vehicle(1)).id == 10);
  CHECK(inst.has_customer(1));
  CHECK_FALSE(inst.has_customer(3));
  CHECK_THROWS_AS(inst.customer(3), ModelError);
  CHECK_THROWS_AS(inst.vehicle(9), ModelError);
  CHECK_THROWS_AS(inst.depot_index(1), ModelError);
  CHECK(inst.travel(0, 1) == 5.0);
  for (std::size_t i = 0; i < inst.node_count(); ++i) CHECK(inst.travel(i, i) == 0.0);
}

TEST_CASE("instance construction rejects broken data") {
  const std::vector<Depot> d{{10, {0, 0}, 0, 100}};
  const std::vector<VehicleSpec> v{{1, 10, 20, std::nullopt}};
  CHECK_THROWS_AS(Instance({{0, {0, 0}, 1, 1, 0, 1}}, d, v), ModelError);
  CHECK_THROWS_AS(Instance({{1, {0, 0}, -1, 1, 0, 1}}, d, v), ModelError);
  CHECK_THROWS_AS(Instance({{1, {0, 0}, 1, -1, 0, 1}}, d, v), ModelError);
  CHECK_THROWS_AS(Instance({{1, {0, 0}, 1, 1, 5, 1}}, d, v), ModelError);
  CHECK_THROWS_AS(Instance({{1, {0, 0}, 1, 1, 0, 1}, {1, {1, 1}, 1, 1, 0, 1}}, d, v), ModelError);
  CHECK_THROWS_AS(Instance({}, {{10, {0, 0}, 5, 1}}, v), ModelError);
  CHECK_THROWS_AS(Instance({}, d, {{1, 99, 20, std::nullopt}}), ModelError);
  CHECK_THROWS_AS(Instance({}, d, {{1, 10, -1, std::nullopt}}), ModelError);
  CHECK_THROWS_AS(Instance({}, d, {{1, 10, 1, 0.0}}), ModelError);
  CHECK_THROWS_AS(Instance({}, d, {{1, 10, 1, std::nullopt}, {1, 10, 1, std::nullopt}}), ModelError);
}

TEST_CASE("solution partition validation") {
  const Instance inst = tiny();
  Solution s = empty_solution(inst);
  CHECK(s.routes.size() == 2);
  CHECK(s.unassigned == std::vector<CustomerId>{1, 2});
  CHECK_NOTHROW(validate(s, inst));

  s.routes[0].sequence = {2};
  s.unassigned = {1};
  CHECK_NOTHROW(validate(s, inst));

  SUBCASE("order both routed and unassigned") {
    s.unassigned = {1, 2};
    CHECK_THROWS_AS(validate(s, inst), ModelError);
  }
  SUBCASE("order missing") {
    s.unassigned = {};
    CHECK_THROWS_AS(validate(s, inst), ModelError);
  }
  SUBCASE("order on two routes") {
    s.routes[1].sequence = {2};
    CHECK_THROWS_AS(validate(s, inst), ModelError);
  }
  SUBCASE("unknown order") {
    s.routes[1].sequence = {7};
    CHECK_THROWS_AS(validate(s, inst), ModelError);
  }
  SUBCASE("wrong route owner") {
    s.routes[0].vehicle = 2;
    CHECK_THROWS_AS(validate(s, inst), ModelError);
  }
  SUBCASE("missing route") {
    s.routes.pop_back();
    CHECK_THROWS_AS(validate(s, inst), ModelError);
  }
}

TEST_CASE("preference weights stay in the unit interval") {
  CHECK(PreferenceWeights().w_dist() == 0.5);
  const PreferenceWeights w(0.3);
  CHECK(w.w_dist() == 0.3);
  CHECK(w.w_tardy() == doctest::Approx(0.7));
  CHECK_NOTHROW(PreferenceWeights(0.0));
  CHECK_NOTHROW(PreferenceWeights(1.0));
  CHECK_THROWS_AS(PreferenceWeights(-0.01), ModelError);
  CHECK_THROWS_AS(PreferenceWeights(1.5), ModelError);
  CHECK_THROWS_AS(PreferenceWeights(std::nan("")), ModelError);
}
