#include <iostream>

#include <CLI11.hpp>

#include "epicure/dispatch.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Competing-epidemic curing toolkit"};
  app.require_subcommand(1);

  epicure::CommandOptions opts;
  std::string grid;
  std::string scenario, scenario_b, out_dir = ".";

  const std::vector<std::string> commands = {
      "simulate", "classify",     "steady-state", "solve-free",
      "solve-exclusive", "solve-global", "sweep",  "cross-apply"};
  for (const auto& name : commands) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--scenario", scenario, "scenario JSON file")->required();
    sub->add_option("--out", out_dir, "output directory (default .)");
    sub->add_option("--grid", grid, "grid a:b:n");
    sub->add_option("--seed", opts.seed, "random seed");
    double tol = 0.0;
    sub->add_option("--tol", tol, "solver tolerance override")
        ->each([&opts](const std::string& v) { opts.tol = std::stod(v); });
    if (name == "solve-exclusive") {
      sub->add_option("--strain", opts.strain, "strain to keep (1 or 2)")
          ->check(CLI::Range(1, 2));
    }
    if (name == "cross-apply") {
      sub->add_option("--scenario-b", scenario_b, "second scenario JSON file")->required();
    }
    sub->callback([&, name] { opts.command = name; });
  }

  CLI11_PARSE(app, argc, argv);

  opts.scenario_path = scenario;
  opts.scenario_b_path = scenario_b;
  opts.out_dir = out_dir;
  try {
    if (!grid.empty()) opts.grid = epicure::parse_grid(grid);
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  return epicure::dispatch(opts);
}
