// Command-line front end: batch replay of weight schedules and the steering
// service.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "mvrp/cli.hpp"
#include "mvrp/report.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Interactive multi-objective vehicle routing (distance vs. tardiness)"};
  app.require_subcommand(1);

  mvrp::RunConfig config;
  std::string scenario;
  std::string schedule_path;
  std::uint64_t stage_budget = 2'000'000;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--instance", config.instance_path, "Cordeau MDVRPTW instance file");
    sub->add_option("--seed", config.seed, "random seed")->capture_default_str();
    sub->add_flag("--deterministic", config.deterministic, "single worker, reproducible output");
    sub->add_option("--patience", config.patience, "stagnation patience (improvement iterations)")
        ->capture_default_str();
    sub->add_option("--ejection-size", config.ejection_size, "orders ejected per vehicle on reallocation")
        ->capture_default_str();
    sub->add_option("--sweep-budget", config.sweep_budget, "descent patience per agent per sweep")
        ->capture_default_str();
  };

  auto* solve = app.add_subcommand("solve", "replay a weight schedule and write trajectory and solution files");
  add_common(solve);
  solve->get_option("--instance")->required();
  auto* scen = solve->add_option("--scenario", scenario, "built-in schedule")->check(CLI::IsMember({"A", "B", "C"}));
  auto* sched = solve->add_option("--schedule", schedule_path, "schedule file: 'w_dist budget' per line");
  scen->excludes(sched);
  solve->add_option("--stage-budget", stage_budget, "iteration budget per scenario stage")->capture_default_str();
  solve->add_option("--out", config.out_dir, "output directory")->capture_default_str();

  auto* serve = app.add_subcommand("serve", "run the steering service");
  add_common(serve);
  serve->add_option("--host", config.host, "listen address")->capture_default_str();
  serve->add_option("--port", config.port, "listen port")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  if (*solve) {
    config.mode = mvrp::RunConfig::Mode::Batch;
    try {
      if (!scenario.empty()) {
        config.schedule = mvrp::scenario_schedule(scenario, stage_budget);
      } else if (!schedule_path.empty()) {
        std::ifstream in(schedule_path);
        if (!in) {
          std::cerr << "error: cannot open schedule file '" << schedule_path << "'\n";
          return mvrp::kExitInput;
        }
        std::stringstream text;
        text << in.rdbuf();
        config.schedule = mvrp::parse_schedule(text.str());
      }
    } catch (const mvrp::ModelError& e) {
      std::cerr << "error: " << e.what() << '\n';
      return mvrp::kExitUsage;
    }
    return mvrp::cli_solve(config, std::cout, std::cerr);
  }
  config.mode = mvrp::RunConfig::Mode::Serve;
  return mvrp::cli_serve(config, std::cout, std::cerr);
}
