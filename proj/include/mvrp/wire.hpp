#pragma once

// JSON documents exchanged with UI clients.
//
// Snapshot document:
//   { "type": "snapshot", "seq", "iteration", "w_dist", "paused", "converged",
//     "objectives": { "dist", "tardy", "utility" },
//     "routes": [ { "vehicle", "depot", "sequence": [ids], "distance",
//                   "tardiness", "load", "duration", "path": [[x, y], ...] } ],
//     "unassigned": [ids],
//     "depots": [ { "id", "x", "y" } ],
//     "customers": [ { "id", "x", "y", "demand", "tw_open", "tw_close" } ],
//     "trajectory": [ trajectory records since the previous snapshot ] }
//
// "path" runs from the home depot through the sequence and back; empty
// routes have an empty path.

#include <cstdint>
#include <span>
#include <string>
#include <variant>

#include "json.hpp"
#include "mvrp/engine.hpp"
#include "mvrp/model.hpp"

namespace mvrp {

nlohmann::ordered_json trajectory_json(const TrajectoryPoint& p);

nlohmann::ordered_json snapshot_json(const Snapshot& snapshot, const Instance& instance, std::uint64_t seq,
                                     std::span<const TrajectoryPoint> new_points = {});

/// Parses a set-weight request body {"w_dist": number}. Returns the weight,
/// or an error message when the body is malformed or the weight is outside
/// [0, 1].
std::variant<double, std::string> parse_set_weight(std::string_view body);

/// Rebuilds the solution carried by a snapshot document.
Solution solution_from_json(const nlohmann::json& snapshot);

}  // namespace mvrp
