#ifndef EPICURE_SCENARIO_HPP
#define EPICURE_SCENARIO_HPP

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "epicure/degree_distribution.hpp"
#include "epicure/dynamics.hpp"
#include "epicure/equilibrium.hpp"
#include "epicure/optimizer.hpp"

namespace epicure {

/// A validated experiment configuration: one network specification plus
/// epidemic parameters and the cost model.
struct Scenario {
  DegreeDistribution dist;
  /// True when the network was given as raw moments; commands that need the
  /// full pmf (solve-exclusive, sweep) are refused for such scenarios.
  bool moments_only = false;
  EpidemicParams params;
  CostModel cost;
};

Scenario scenario_from_json(const nlohmann::json& j);
Scenario load_scenario(const std::filesystem::path& path);

/// Builds a pmf with two positive-degree atoms (plus degree-0 remainder)
/// matching the requested moments within 1e-9. Valid whenever
/// second >= mean^2 and an integer support with nonnegative weights exists.
DegreeDistribution synthesize_from_moments(double mean, double second);

struct AppliedControlOutcome {
  ControlEffort control;
  double t1 = 0.0;
  double t2 = 0.0;
  bool persists = false;      // some strain survives at steady state
  bool marginal = false;      // thresholds within tolerance of 1
  double ibar_total = 0.0;
  std::string regime;

  nlohmann::json to_json() const;
};

struct CrossApplyReport {
  AppliedControlOutcome b_design_on_a;  // control designed for B, applied to A
  AppliedControlOutcome a_design_on_b;

  nlohmann::json to_json() const;
};

/// Model-mismatch experiment: design the disease-free control for each
/// network and evaluate the steady state it produces on the other one.
CrossApplyReport cross_apply(const Scenario& a, const Scenario& b);

}  // namespace epicure

#endif
