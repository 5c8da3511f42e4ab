#include "mvrp/instance_io.hpp"

#include <charconv>
#include <fstream>
#include <iterator>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace mvrp {

const char* to_string(ParseIssue::Kind kind) noexcept {
  switch (kind) {
    case ParseIssue::Kind::MalformedHeader: return "MalformedHeader";
    case ParseIssue::Kind::BadFieldCount: return "BadFieldCount";
    case ParseIssue::Kind::NonNumericToken: return "NonNumericToken";
    case ParseIssue::Kind::InconsistentCounts: return "InconsistentCounts";
    case ParseIssue::Kind::NegativeValue: return "NegativeValue";
  }
  return "Unknown";
}

namespace {

using Kind = ParseIssue::Kind;

// Smallest record: id x y d q f a e l with no combinations.
constexpr std::size_t kMinRecordTokens = 9;

struct Token {
  std::string_view text;
  int line;
};

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  int line = 1;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (c == '\n') {
      ++line;
      ++i;
    } else if (c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v') {
      ++i;
    } else {
      const std::size_t start = i;
      while (i < text.size() && std::string_view(" \t\r\n\f\v").find(text[i]) == std::string_view::npos) ++i;
      out.push_back({text.substr(start, i - start), line});
    }
  }
  return out;
}

std::optional<double> to_double(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::optional<long long> to_integer(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  long long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

class Reader {
 public:
  explicit Reader(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  std::vector<ParseIssue>& issues() { return issues_; }
  std::size_t remaining() const { return tokens_.size() - pos_; }
  bool at_end() const { return pos_ >= tokens_.size(); }
  int line() const {
    if (tokens_.empty()) return 1;
    return pos_ < tokens_.size() ? tokens_[pos_].line : tokens_.back().line;
  }

  void issue(int line, Kind kind, std::string message) {
    issues_.push_back({line, kind, std::move(message)});
  }

  // Missing or non-numeric tokens are reported and yield nullopt; the cursor
  // always advances past a present token so later fields stay aligned.
  std::optional<double> number(const char* what) {
    const Token& t = tokens_[pos_++];
    auto v = to_double(t.text);
    if (!v) issue(t.line, Kind::NonNumericToken, std::string(what) + ": '" + std::string(t.text) + "' is not a number");
    return v;
  }

  std::optional<long long> integer(const char* what) {
    const Token& t = tokens_[pos_++];
    auto v = to_integer(t.text);
    if (!v) issue(t.line, Kind::NonNumericToken, std::string(what) + ": '" + std::string(t.text) + "' is not an integer");
    return v;
  }

  int token_line(std::size_t offset = 0) const { return tokens_[pos_ + offset].line; }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::vector<ParseIssue> issues_;
};

struct Record {
  int line = 1;
  std::optional<long long> id;
  std::optional<double> x, y, service, demand, open, close;
};

// Returns nullopt when the record cannot be delimited (truncated input or an
// impossible combination count); parsing must stop in that case.
std::optional<Record> read_record(Reader& r, const char* what, std::size_t index, std::size_t declared) {
  if (r.remaining() < kMinRecordTokens) {
    r.issue(r.line(), Kind::InconsistentCounts,
            "unexpected end of input in " + std::string(what) + " record " + std::to_string(index + 1) +
                " of " + std::to_string(declared));
    return std::nullopt;
  }
  Record rec;
  rec.line = r.token_line();
  rec.id = r.integer("id");
  rec.x = r.number("x");
  rec.y = r.number("y");
  rec.service = r.number("service time");
  rec.demand = r.number("demand");
  r.integer("visit frequency");
  const int combo_line = r.token_line();
  auto combos = r.integer("combination count");
  if (!combos) return std::nullopt;
  if (*combos < 0 || static_cast<unsigned long long>(*combos) + 2 > r.remaining()) {
    r.issue(combo_line, Kind::BadFieldCount,
            std::string(what) + " record: combination count " + std::to_string(*combos) +
                " does not fit the remaining fields");
    return std::nullopt;
  }
  for (long long i = 0; i < *combos; ++i) r.integer("visit combination");
  rec.open = r.number("time window open");
  rec.close = r.number("time window close");

  if (rec.service && *rec.service < 0) r.issue(rec.line, Kind::NegativeValue, std::string(what) + ": negative service time");
  if (rec.demand && *rec.demand < 0) r.issue(rec.line, Kind::NegativeValue, std::string(what) + ": negative demand");
  if (rec.open && rec.close && *rec.open > *rec.close) {
    r.issue(rec.line, Kind::NegativeValue, std::string(what) + ": time window closes before it opens");
  }
  return rec;
}

void append_number(std::string& out, double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  out.append(buf, ptr);
}

}  // namespace

ParseResult parse_cordeau(std::string_view text) {
  Reader r(tokenize(text));
  ParseResult result;

  if (r.remaining() < 4) {
    r.issue(r.line(), Kind::MalformedHeader, "header must contain 'type m n t'");
    result.issues = std::move(r.issues());
    return result;
  }
  const int header_line = r.token_line();
  const std::size_t before = r.issues().size();
  r.integer("problem type");
  auto m = r.integer("vehicles per depot");
  auto n = r.integer("customer count");
  auto t = r.integer("depot count");
  if (r.issues().size() != before) {
    for (std::size_t i = before; i < r.issues().size(); ++i) r.issues()[i].kind = Kind::MalformedHeader;
    result.issues = std::move(r.issues());
    return result;
  }
  if (*m < 1 || *n < 1 || *t < 1) {
    r.issue(header_line, Kind::MalformedHeader, "vehicle, customer and depot counts must be positive");
    result.issues = std::move(r.issues());
    return result;
  }
  // Bound allocations by what the input could possibly hold.
  const auto needed = static_cast<unsigned long long>(*t) * 2 +
                      (static_cast<unsigned long long>(*n) + static_cast<unsigned long long>(*t)) * kMinRecordTokens;
  if (*n > 10'000'000 || *t > 10'000'000 || needed > r.remaining()) {
    r.issue(header_line, Kind::InconsistentCounts,
            "header declares " + std::to_string(*n) + " customers and " + std::to_string(*t) +
                " depots but the input is too short to hold them");
    result.issues = std::move(r.issues());
    return result;
  }
  if (*m > 100'000) {
    r.issue(header_line, Kind::InconsistentCounts, "implausible vehicles-per-depot count " + std::to_string(*m));
    result.issues = std::move(r.issues());
    return result;
  }

  struct Limits {
    std::optional<double> duration, capacity;
  };
  std::vector<Limits> limits(static_cast<std::size_t>(*t));
  for (auto& l : limits) {
    const int line = r.token_line();
    l.duration = r.number("max route duration");
    l.capacity = r.number("vehicle capacity");
    if ((l.duration && *l.duration < 0) || (l.capacity && *l.capacity < 0)) {
      r.issue(line, Kind::NegativeValue, "depot constraint line: negative duration or capacity");
    }
  }

  std::vector<Record> customers, depots;
  bool truncated = false;
  for (std::size_t i = 0; i < static_cast<std::size_t>(*n) && !truncated; ++i) {
    auto rec = read_record(r, "customer", i, static_cast<std::size_t>(*n));
    if (rec) customers.push_back(*rec); else truncated = true;
  }
  for (std::size_t i = 0; i < static_cast<std::size_t>(*t) && !truncated; ++i) {
    auto rec = read_record(r, "depot", i, static_cast<std::size_t>(*t));
    if (rec) depots.push_back(*rec); else truncated = true;
  }
  if (!truncated && !r.at_end()) {
    r.issue(r.line(), Kind::InconsistentCounts,
            std::to_string(r.remaining()) + " trailing tokens after the declared " + std::to_string(*n) +
                " customers and " + std::to_string(*t) + " depots");
  }

  std::unordered_set<long long> ids;
  for (const auto& c : customers) {
    if (c.id && *c.id < 1) r.issue(c.line, Kind::NegativeValue, "customer ids must be >= 1");
    if (c.id && !ids.insert(*c.id).second) {
      r.issue(c.line, Kind::InconsistentCounts, "duplicate customer id " + std::to_string(*c.id));
    }
  }
  std::unordered_set<long long> depot_ids;
  for (const auto& d : depots) {
    if (d.id && !depot_ids.insert(*d.id).second) {
      r.issue(d.line, Kind::InconsistentCounts, "duplicate depot id " + std::to_string(*d.id));
    }
  }

  if (!r.issues().empty()) {
    result.issues = std::move(r.issues());
    return result;
  }

  std::vector<Customer> cs;
  cs.reserve(customers.size());
  for (const auto& c : customers) {
    cs.push_back({static_cast<CustomerId>(*c.id), {*c.x, *c.y}, *c.demand, *c.service, *c.open, *c.close});
  }
  std::vector<Depot> ds;
  std::vector<VehicleSpec> vs;
  for (std::size_t k = 0; k < depots.size(); ++k) {
    const auto& d = depots[k];
    ds.push_back({static_cast<DepotId>(*d.id), {*d.x, *d.y}, *d.open, *d.close});
    for (long long j = 0; j < *m; ++j) {
      VehicleSpec v;
      v.id = static_cast<VehicleId>(static_cast<long long>(k) * *m + j + 1);
      v.home_depot = ds.back().id;
      v.capacity = *limits[k].capacity;
      if (*limits[k].duration > 0) v.max_route_duration = *limits[k].duration;
      vs.push_back(v);
    }
  }
  try {
    result.instance.emplace(std::move(cs), std::move(ds), std::move(vs));
  } catch (const ModelError& e) {
    result.issues.push_back({header_line, Kind::InconsistentCounts, e.what()});
  }
  return result;
}

ParseResult parse_cordeau(std::istream& in) {
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_cordeau(text);
}

ParseResult load_cordeau(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open instance file '" + path + "'");
  return parse_cordeau(in);
}

std::string serialize_cordeau(const Instance& instance, int problem_type) {
  const auto& depots = instance.depots();
  const auto& vehicles = instance.vehicles();
  if (depots.empty() || vehicles.size() % depots.size() != 0) {
    throw ModelError("cordeau format requires the same number of vehicles at every depot");
  }
  const std::size_t per_depot = vehicles.size() / depots.size();
  if (per_depot == 0) throw ModelError("cordeau format requires at least one vehicle per depot");
  for (std::size_t i = 0; i < vehicles.size(); ++i) {
    const auto& v = vehicles[i];
    const auto& first = vehicles[i - i % per_depot];
    if (v.home_depot != depots[i / per_depot].id || v.id != static_cast<VehicleId>(i + 1) ||
        v.capacity != first.capacity || v.max_route_duration != first.max_route_duration) {
      throw ModelError("cordeau format requires depot-major vehicles numbered from 1 with uniform limits per depot");
    }
  }

  std::string out;
  auto field = [&](double v) {
    out.push_back(' ');
    append_number(out, v);
  };
  out += std::to_string(problem_type) + ' ' + std::to_string(per_depot) + ' ' +
         std::to_string(instance.customer_count()) + ' ' + std::to_string(depots.size()) + '\n';
  for (std::size_t k = 0; k < depots.size(); ++k) {
    const auto& v = vehicles[k * per_depot];
    append_number(out, v.max_route_duration.value_or(0.0));
    field(v.capacity);
    out.push_back('\n');
  }
  // Every customer may be served from any single depot.
  std::string combos = " 1 " + std::to_string(depots.size());
  for (std::size_t k = 0; k < depots.size(); ++k) combos += ' ' + std::to_string(1ULL << (k % 63));
  for (const auto& c : instance.customers()) {
    out += std::to_string(c.id);
    field(c.location.x);
    field(c.location.y);
    field(c.service_time);
    field(c.demand);
    out += combos;
    field(c.tw_open);
    field(c.tw_close);
    out.push_back('\n');
  }
  for (const auto& d : depots) {
    out += std::to_string(d.id);
    field(d.location.x);
    field(d.location.y);
    out += " 0 0 0 0";
    field(d.tw_open);
    field(d.tw_close);
    out.push_back('\n');
  }
  return out;
}

}  // namespace mvrp
