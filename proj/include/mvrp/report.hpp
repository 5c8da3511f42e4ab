#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "mvrp/engine.hpp"
#include "mvrp/model.hpp"

namespace mvrp {

/// Built-in decision-maker scenarios, w_dist moved in steps of 0.1:
///   A  1.0 down to 0.0
///   B  0.0 up to 1.0
///   C  0.5 up to 1.0, then down to 0.0
/// Throws ModelError for any other name.
WeightSchedule scenario_schedule(std::string_view name, std::uint64_t stage_budget);

/// Schedule file: one "w_dist budget" pair per line; '#' starts a comment.
/// Throws ModelError naming the offending line.
WeightSchedule parse_schedule(std::string_view text);

/// Per-route visit sequences with distance, tardiness, load and duration,
/// followed by totals.
std::string solution_report(const Solution& solution, const Instance& instance, PreferenceWeights w);

/// One line per stage: index, w_dist, DIST, TARDY, utility, iterations, converged.
std::string stage_report(const ReplayResult& replay);

}  // namespace mvrp
