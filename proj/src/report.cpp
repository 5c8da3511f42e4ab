#include "mvrp/report.hpp"

#include <charconv>
#include <cstdio>
#include <sstream>

namespace mvrp {

WeightSchedule scenario_schedule(std::string_view name, std::uint64_t stage_budget) {
  WeightSchedule s;
  auto add = [&](int tenths) { s.push_back({tenths / 10.0, stage_budget}); };
  if (name == "A" || name == "a") {
    for (int k = 10; k >= 0; --k) add(k);
  } else if (name == "B" || name == "b") {
    for (int k = 0; k <= 10; ++k) add(k);
  } else if (name == "C" || name == "c") {
    for (int k = 5; k <= 10; ++k) add(k);
    for (int k = 9; k >= 0; --k) add(k);
  } else {
    throw ModelError("unknown scenario '" + std::string(name) + "' (expected A, B or C)");
  }
  return s;
}

WeightSchedule parse_schedule(std::string_view text) {
  WeightSchedule s;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string w_tok, b_tok, extra;
    if (!(fields >> w_tok)) continue;
    double w = 0.0;
    unsigned long long budget = 0;
    const bool ok_w = std::from_chars(w_tok.data(), w_tok.data() + w_tok.size(), w).ptr == w_tok.data() + w_tok.size();
    const bool has_b = static_cast<bool>(fields >> b_tok);
    const bool ok_b =
        has_b && std::from_chars(b_tok.data(), b_tok.data() + b_tok.size(), budget).ptr == b_tok.data() + b_tok.size();
    if (!ok_w || !ok_b || (fields >> extra)) {
      throw ModelError("schedule line " + std::to_string(lineno) + ": expected 'w_dist budget'");
    }
    if (!(w >= 0.0 && w <= 1.0) || budget < 1) {
      throw ModelError("schedule line " + std::to_string(lineno) + ": w_dist must be in [0, 1] and budget >= 1");
    }
    s.push_back({w, budget});
  }
  validate(s);
  return s;
}

namespace {

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

}  // namespace

std::string solution_report(const Solution& solution, const Instance& instance, PreferenceWeights w) {
  std::ostringstream out;
  ObjectiveVector total;
  out << "# vehicle depot distance tardiness load duration : sequence\n";
  for (const Route& r : solution.routes) {
    const RouteSchedule s = schedule_route(r, instance);
    total.dist += s.distance;
    total.tardy += s.tardiness;
    out << "route " << r.vehicle << ' ' << instance.vehicle(r.vehicle).home_depot << ' '
        << fmt("%.3f", s.distance) << ' ' << fmt("%.3f", s.tardiness) << ' ' << fmt("%.3f", s.load) << ' '
        << fmt("%.3f", s.duration) << " :";
    for (CustomerId id : r.sequence) out << ' ' << id;
    out << '\n';
  }
  if (!solution.unassigned.empty()) {
    out << "unassigned :";
    for (CustomerId id : solution.unassigned) out << ' ' << id;
    out << '\n';
  }
  out << "total DIST " << fmt("%.3f", total.dist) << " TARDY " << fmt("%.3f", total.tardy) << " w_dist "
      << fmt("%.2f", w.w_dist()) << " UTILITY " << fmt("%.3f", utility(total, w)) << '\n';
  return out.str();
}

std::string stage_report(const ReplayResult& replay) {
  std::ostringstream out;
  out << "# stage w_dist DIST TARDY utility iterations converged\n";
  for (std::size_t i = 0; i < replay.stages.size(); ++i) {
    const auto& st = replay.stages[i];
    out << i + 1 << ' ' << fmt("%.2f", st.w_dist) << ' ' << fmt("%.3f", st.objectives.dist) << ' '
        << fmt("%.3f", st.objectives.tardy) << ' ' << fmt("%.3f", st.utility) << ' ' << st.iterations << ' '
        << (st.converged ? "yes" : "no") << '\n';
  }
  return out.str();
}

}  // namespace mvrp
