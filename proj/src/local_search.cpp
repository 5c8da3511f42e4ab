#include "mvrp/local_search.hpp"

#include <algorithm>
#include <optional>

namespace mvrp {

Route apply_move(const Route& route, const Move& move) {
  check_valid(move, route.size());
  Route out = route;
  auto& s = out.sequence;
  const auto i = static_cast<std::ptrdiff_t>(move.p1 - 1);
  const auto j = static_cast<std::ptrdiff_t>(move.p2 - 1);
  switch (move.kind) {
    case Move::Kind::Invert:
      std::reverse(s.begin() + i, s.begin() + j + 1);
      break;
    case Move::Kind::Exchange:
      std::swap(s[static_cast<std::size_t>(i)], s[static_cast<std::size_t>(j)]);
      break;
    case Move::Kind::ShiftForward:
      std::rotate(s.begin() + i, s.begin() + i + 1, s.begin() + j + 1);
      break;
    case Move::Kind::ShiftBackward:
      std::rotate(s.begin() + j, s.begin() + i, s.begin() + i + 1);
      break;
  }
  return out;
}

Move sample_move(std::size_t length, Rng& rng) {
  if (length < 2) throw ModelError("moves need a route of at least two orders");
  std::uniform_int_distribution<int> pick_kind(0, static_cast<int>(kMoveKinds) - 1);
  const auto kind = static_cast<Move::Kind>(pick_kind(rng));
  // Uniform over unordered pairs {a < b}.
  std::uniform_int_distribution<std::size_t> pick_pair(0, length * (length - 1) / 2 - 1);
  std::size_t r = pick_pair(rng);
  std::size_t a = 1;
  while (r >= length - a) {
    r -= length - a;
    ++a;
  }
  const std::size_t b = a + 1 + r;
  if (kind == Move::Kind::ShiftBackward) return {kind, b, a};
  return {kind, a, b};
}

std::vector<Move> enumerate_moves(std::size_t length) {
  std::vector<Move> out;
  for (std::size_t a = 1; a <= length; ++a) {
    for (std::size_t b = a + 1; b <= length; ++b) {
      out.push_back({Move::Kind::Invert, a, b});
      out.push_back({Move::Kind::Exchange, a, b});
      out.push_back({Move::Kind::ShiftForward, a, b});
      out.push_back({Move::Kind::ShiftBackward, b, a});
    }
  }
  return out;
}

namespace {

struct Candidate {
  bool improved = false;
  Move move;
  double delta = 0.0;
};

Candidate try_step(const RouteEvaluator& eval, PreferenceWeights w, Rng& rng) {
  if (eval.size() < 2) return {};
  const Move m = sample_move(eval.size(), rng);
  const CostDelta d = eval.move(m, w);
  if (d.feasible && d.delta_utility < -kImprovementThreshold) return {true, m, d.delta_utility};
  return {};
}

}  // namespace

StepResult improve_step(const Route& route, const Instance& instance, PreferenceWeights w, Rng& rng) {
  if (route.size() < 2) return {route, false, 0.0};
  const RouteEvaluator eval(route, instance);
  const Candidate c = try_step(eval, w, rng);
  if (!c.improved) return {route, false, 0.0};
  return {apply_move(route, c.move), true, c.delta};
}

Route descend(const Route& route, const Instance& instance, PreferenceWeights w, Rng& rng, std::size_t patience,
              std::size_t max_steps, DescentTrace* trace) {
  if (patience < 1) throw ModelError("descend requires patience >= 1");
  Route current = route;
  std::optional<RouteEvaluator> eval(std::in_place, current, instance);
  if (trace) trace->costs.push_back(eval->cost(w));
  if (current.size() < 2) return current;

  std::size_t idle = 0;
  std::size_t steps = 0;
  while (idle < patience && (max_steps == 0 || steps < max_steps)) {
    ++steps;
    const Candidate c = try_step(*eval, w, rng);
    if (!c.improved) {
      ++idle;
      continue;
    }
    idle = 0;
    current = apply_move(current, c.move);
    eval.emplace(current, instance);
    if (trace) {
      ++trace->accepted;
      trace->costs.push_back(eval->cost(w));
    }
  }
  if (trace) trace->steps += steps;
  return current;
}

}  // namespace mvrp
