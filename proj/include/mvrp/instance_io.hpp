#pragma once

// Reader/writer for the Cordeau multi-depot VRPTW text format:
//
//   type m n t                 vehicles per depot m, customers n, depots t
//   D Q                        t lines: max route duration (0 = unbounded), capacity
//   i x y d q f a c_1..c_a e l n customer lines
//   i x y d q f a c_1..c_a e l t depot lines
//
// Tokens are consumed positionally; line breaks only serve diagnostics.
// Visit frequency and combination lists are read and discarded.

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mvrp/model.hpp"

namespace mvrp {

struct ParseIssue {
  enum class Kind { MalformedHeader, BadFieldCount, NonNumericToken, InconsistentCounts, NegativeValue };

  int line = 1;
  Kind kind = Kind::MalformedHeader;
  std::string message;
};

const char* to_string(ParseIssue::Kind kind) noexcept;

struct ParseResult {
  std::optional<Instance> instance;  // engaged iff issues is empty
  std::vector<ParseIssue> issues;

  explicit operator bool() const noexcept { return instance.has_value(); }
};

ParseResult parse_cordeau(std::string_view text);
ParseResult parse_cordeau(std::istream& in);

/// Reads a file; a missing or unreadable file throws std::runtime_error.
ParseResult load_cordeau(const std::string& path);

/// Vehicles per depot are taken from the first depot; the format assumes a
/// uniform fleet size per depot, with each depot's D/Q taken from its first vehicle.
std::string serialize_cordeau(const Instance& instance, int problem_type = 6);

}  // namespace mvrp
