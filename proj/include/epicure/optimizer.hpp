#ifndef EPICURE_OPTIMIZER_HPP
#define EPICURE_OPTIMIZER_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "epicure/degree_distribution.hpp"
#include "epicure/dynamics.hpp"
#include "epicure/equilibrium.hpp"

namespace epicure {

/// Linear cost instantiation: c1(u) = K1 u1 + K2 u2 and
/// c2 = K3 (w1 ibar1 + w2 ibar2).
struct CostModel {
  double K1 = 0.0;
  double K2 = 0.0;
  double K3 = 0.0;
  double w1 = 1.0;
  double w2 = 1.0;

  void validate() const;
};

double control_cost(const CostModel& cm, const ControlEffort& u);
double epidemic_cost(const CostModel& cm, double ibar1, double ibar2);

/// Control region that keeps the network in one target regime, with strict
/// inequalities replaced by a margin delta so the region is closed.
struct FeasibleRegion {
  Regime regime = Regime::DiseaseFree;
  double delta = 1e-6;

  // Disease-free: u1 >= lb1, u2 >= lb2.
  double lb1 = 0.0;
  double lb2 = 0.0;

  // Exclusive strain s: 0 <= u_s <= cap and u_other >= max(0, couple_a + couple_b * u_s).
  double cap = 0.0;
  double couple_a = 0.0;
  double couple_b = 0.0;

  bool contains(const ControlEffort& u, double tol = 1e-9) const;
  /// Exact Euclidean projection onto the region.
  ControlEffort project(const ControlEffort& u) const;
};

FeasibleRegion feasible_region(const DegreeDistribution& dist, const EpidemicParams& params,
                               Regime target, double delta = 1e-6);

/// Closed-form disease-free control u_i = max(0, zeta_i <k^2>/<k> - gamma_i).
/// The point is the infimum of the open disease-free region (marginal).
ControlEffort solve_disease_free(const DegreeDistribution& dist, const EpidemicParams& params);

struct ObjectiveValue {
  double value = 0.0;
  EquilibriumState equilibrium;
};

ObjectiveValue objective(const DegreeDistribution& dist, const EpidemicParams& params,
                         const CostModel& cm, const ControlEffort& u);

struct DescentOptions {
  double eps2 = 1e-8;        // stopping tolerance on ||u_n - u_{n-1}||
  long max_iter = 10000;
  double init_step = 1.0;
  double shrink = 0.5;
  double armijo = 1e-4;
  double min_step = 1e-12;
  double delta = 1e-6;       // feasible-region margin
};

struct DescentIterate {
  long iter = 0;
  ControlEffort u;
  double objective = 0.0;
  double step = 0.0;
};

struct ExclusiveSolution {
  ControlEffort u;
  double objective = 0.0;
  std::vector<DescentIterate> trace;
  FeasibleRegion region;
};

/// Projected gradient descent with backtracking line search on the
/// exclusive-regime objective c1(u) + c2(w_s Ibar_s(u_s)).
ExclusiveSolution solve_exclusive(const DegreeDistribution& dist, const EpidemicParams& params,
                                  const CostModel& cm, int strain,
                                  const DescentOptions& opts = {});

/// Regime objective used inside solve_exclusive (exposed for verification).
double exclusive_objective(const DegreeDistribution& dist, const EpidemicParams& params,
                           const CostModel& cm, int strain, const ControlEffort& u);

/// Severity of the surviving strain as a function of its own curing rate.
double exclusive_severity(const DegreeDistribution& dist, const EpidemicParams& params,
                          int strain, double u_s);

struct RegimeCandidate {
  Regime regime = Regime::DiseaseFree;
  bool feasible = false;
  std::string skip_reason;
  ControlEffort u;
  double objective = 0.0;
};

struct OptimalSolution {
  ControlEffort u;
  double objective = 0.0;
  Regime regime = Regime::DiseaseFree;
  EquilibriumState equilibrium;
  std::vector<RegimeCandidate> candidates;

  nlohmann::json to_json() const;
};

/// Compares the disease-free closed form with both exclusive-regime solves
/// and returns the cheapest. Ties break toward DiseaseFree, then strain 1.
OptimalSolution solve_global(const DegreeDistribution& dist, const EpidemicParams& params,
                             const CostModel& cm);

void write_trace_csv(std::ostream& os, const std::vector<DescentIterate>& trace);

}  // namespace epicure

#endif
