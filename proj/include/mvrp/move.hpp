#pragma once

#include <cstddef>
#include <string>

namespace mvrp {

/// An intra-route move. Positions are 1-indexed into the route's sequence.
///   Invert        p1 < p2   reverse the orders at positions p1..p2
///   Exchange      p1 < p2   swap the orders at p1 and p2
///   ShiftForward  p1 < p2   move the order at p1 so it ends up at p2
///   ShiftBackward p1 > p2   move the order at p1 so it ends up at p2
struct Move {
  enum class Kind { Invert, Exchange, ShiftForward, ShiftBackward };

  Kind kind = Kind::Invert;
  std::size_t p1 = 1;
  std::size_t p2 = 2;

  friend bool operator==(const Move&, const Move&) = default;
};

inline constexpr std::size_t kMoveKinds = 4;

const char* to_string(Move::Kind kind) noexcept;
std::string to_string(const Move& move);

/// True when the move's indices and ordering are valid for a route of `length`.
bool is_valid(const Move& move, std::size_t length) noexcept;

/// Throws ModelError describing why the move is invalid for `length`.
void check_valid(const Move& move, std::size_t length);

}  // namespace mvrp
