#ifndef EPICURE_EQUILIBRIUM_HPP
#define EPICURE_EQUILIBRIUM_HPP

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "epicure/degree_distribution.hpp"
#include "epicure/dynamics.hpp"

namespace epicure {

enum class Regime {
  DiseaseFree,
  ExclusiveStrain1,
  ExclusiveStrain2,
  Degenerate,
  Marginal,
};

const char* to_string(Regime r);
Regime regime_from_string(const std::string& s);

struct EquilibriumClass {
  Regime tag = Regime::DiseaseFree;
  double t1 = 0.0;
  double t2 = 0.0;
  bool margin_flag = false;
};

struct ThetaSolution {
  double theta_star = 0.0;
  long iterations = 0;
  /// Set when T is within 1e-6 of 1: theta_star ~ 0 amplifies relative error.
  bool near_threshold = false;
};

struct EquilibriumState {
  EquilibriumClass cls;
  double theta_star = 0.0;  // link infection probability of the surviving strain
  std::vector<double> i1;
  std::vector<double> i2;
  double ibar1 = 0.0;
  double ibar2 = 0.0;
  double sbar = 1.0;

  nlohmann::json to_json(bool with_densities = false) const;
};

/// T_i = psi_i * <k^2> / <k>.
std::pair<double, double> reproduction_numbers(const DegreeDistribution& dist,
                                               const EpidemicParams& params,
                                               const ControlEffort& control);

EquilibriumClass classify(const DegreeDistribution& dist, const EpidemicParams& params,
                          const ControlEffort& control, double tol_marginal = 1e-9,
                          double tol_degenerate = 1e-12);

/// Fixed-point iteration Theta <- Q(Theta) for the surviving strain's
/// self-consistency equation. Requires psi * <k^2>/<k> > 1.
/// If history is non-null the iterate sequence is appended to it.
ThetaSolution solve_theta_star(const DegreeDistribution& dist, double psi, double eps1 = 1e-12,
                               double theta0 = 0.5, std::vector<double>* history = nullptr);

/// One evaluation of Q at theta for a given psi (exposed for property tests).
double theta_fixed_point_map(const DegreeDistribution& dist, double psi, double theta);

EquilibriumState steady_state(const DegreeDistribution& dist, const EpidemicParams& params,
                              const ControlEffort& control);

}  // namespace epicure

#endif
