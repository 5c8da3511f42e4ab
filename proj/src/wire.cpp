#include "mvrp/wire.hpp"

#include <cmath>

namespace mvrp {

using nlohmann::ordered_json;

ordered_json trajectory_json(const TrajectoryPoint& p) {
  return ordered_json::parse(trajectory_record(p));
}

ordered_json snapshot_json(const Snapshot& snapshot, const Instance& instance, std::uint64_t seq,
                           std::span<const TrajectoryPoint> new_points) {
  ordered_json j;
  j["type"] = "snapshot";
  j["seq"] = seq;
  j["iteration"] = snapshot.iteration;
  j["w_dist"] = snapshot.w_dist;
  j["paused"] = snapshot.paused;
  j["converged"] = snapshot.converged;
  j["objectives"] = {{"dist", snapshot.objectives.dist},
                     {"tardy", snapshot.objectives.tardy},
                     {"utility", snapshot.utility}};

  ordered_json routes = ordered_json::array();
  for (std::size_t k = 0; k < snapshot.solution.routes.size(); ++k) {
    const Route& r = snapshot.solution.routes[k];
    const RouteSchedule& s = snapshot.schedules[k];
    const VehicleSpec& v = instance.vehicle(r.vehicle);
    const Depot& depot = instance.home_depot(v);
    ordered_json path = ordered_json::array();
    if (!r.empty()) {
      path.push_back({depot.location.x, depot.location.y});
      for (CustomerId id : r.sequence) {
        const Point p = instance.customer(id).location;
        path.push_back({p.x, p.y});
      }
      path.push_back({depot.location.x, depot.location.y});
    }
    routes.push_back({{"vehicle", r.vehicle},
                      {"depot", depot.id},
                      {"sequence", r.sequence},
                      {"distance", s.distance},
                      {"tardiness", s.tardiness},
                      {"load", s.load},
                      {"duration", s.duration},
                      {"path", std::move(path)}});
  }
  j["routes"] = std::move(routes);
  j["unassigned"] = snapshot.market;

  ordered_json depots = ordered_json::array();
  for (const auto& d : instance.depots()) depots.push_back({{"id", d.id}, {"x", d.location.x}, {"y", d.location.y}});
  j["depots"] = std::move(depots);
  ordered_json customers = ordered_json::array();
  for (const auto& c : instance.customers()) {
    customers.push_back({{"id", c.id},
                         {"x", c.location.x},
                         {"y", c.location.y},
                         {"demand", c.demand},
                         {"tw_open", c.tw_open},
                         {"tw_close", c.tw_close}});
  }
  j["customers"] = std::move(customers);

  ordered_json points = ordered_json::array();
  for (const auto& p : new_points) points.push_back(trajectory_json(p));
  j["trajectory"] = std::move(points);
  return j;
}

std::variant<double, std::string> parse_set_weight(std::string_view body) {
  const auto j = nlohmann::json::parse(body, nullptr, false);
  if (j.is_discarded() || !j.is_object()) return std::string("request body must be a JSON object");
  auto it = j.find("w_dist");
  if (it == j.end() || !it->is_number()) return std::string("'w_dist' must be a number");
  const double w = it->get<double>();
  if (!std::isfinite(w) || w < 0.0 || w > 1.0) return std::string("'w_dist' must lie in [0, 1]");
  return w;
}

Solution solution_from_json(const nlohmann::json& snapshot) {
  Solution s;
  for (const auto& r : snapshot.at("routes")) {
    s.routes.push_back(Route{r.at("vehicle").get<VehicleId>(), r.at("sequence").get<std::vector<CustomerId>>()});
  }
  s.unassigned = snapshot.at("unassigned").get<std::vector<CustomerId>>();
  return s;
}

}  // namespace mvrp
