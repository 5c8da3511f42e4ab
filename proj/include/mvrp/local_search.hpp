#pragma once

// The four intra-route neighborhoods and the randomized first-improvement
// descent used by vehicle agents.

#include <cstdint>
#include <random>
#include <vector>

#include "mvrp/evaluation.hpp"
#include "mvrp/model.hpp"
#include "mvrp/move.hpp"

namespace mvrp {

using Rng = std::mt19937_64;

/// Moves at or above this (negated) threshold are not improvements.
inline constexpr double kImprovementThreshold = 1e-12;

/// Returns the moved route. Throws ModelError for invalid moves.
Route apply_move(const Route& route, const Move& move);

/// Uniform kind, then a uniform valid (p1, p2) pair for that kind.
/// Requires route length >= 2.
Move sample_move(std::size_t length, Rng& rng);

/// Every valid move of every kind for a route of `length`.
std::vector<Move> enumerate_moves(std::size_t length);

struct StepResult {
  Route route;
  bool improved = false;
  double delta = 0.0;  // accepted utility change, 0 when not improved
};

StepResult improve_step(const Route& route, const Instance& instance, PreferenceWeights w, Rng& rng);

struct DescentTrace {
  std::size_t steps = 0;
  std::size_t accepted = 0;
  std::vector<double> costs;  // weighted cost after each accepted move, starting with the initial cost
};

/// Applies improve_step until `patience` consecutive steps fail to improve,
/// or `max_steps` steps have run (0 = no cap).
Route descend(const Route& route, const Instance& instance, PreferenceWeights w, Rng& rng,
              std::size_t patience, std::size_t max_steps = 0, DescentTrace* trace = nullptr);

}  // namespace mvrp
