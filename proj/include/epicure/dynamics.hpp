#ifndef EPICURE_DYNAMICS_HPP
#define EPICURE_DYNAMICS_HPP

#include <optional>
#include <ostream>
#include <utility>
#include <vector>

#include "epicure/degree_distribution.hpp"

namespace epicure {

/// Spreading and recovery rates of the two competing strains (1/time).
struct EpidemicParams {
  double zeta1 = 0.0;
  double zeta2 = 0.0;
  double gamma1 = 0.0;
  double gamma2 = 0.0;

  void validate() const;
};

/// Nonnegative curing rates applied uniformly across degree classes.
struct ControlEffort {
  double u1 = 0.0;
  double u2 = 0.0;

  void validate() const;
};

/// Per-degree infected densities of both strains.
struct MeanFieldState {
  std::vector<double> i1;
  std::vector<double> i2;

  static MeanFieldState zeros(int k_max);
  /// Interior start: 0.01 in every degree class k >= 1, zero at k = 0.
  static MeanFieldState interior(int k_max, double level = 0.01);
};

struct Observables {
  double theta1 = 0.0;
  double theta2 = 0.0;
  double ibar1 = 0.0;
  double ibar2 = 0.0;
};

/// psi_i = zeta_i / (gamma_i + u_i).
std::pair<double, double> effective_spreading_rate(const EpidemicParams& params,
                                                   const ControlEffort& control);

Observables observables(const DegreeDistribution& dist, const MeanFieldState& state);

/// Right-hand side of the coupled two-strain mean-field ODE system.
void derivative(const DegreeDistribution& dist, const EpidemicParams& params,
                const ControlEffort& control, const MeanFieldState& state,
                MeanFieldState& out);
MeanFieldState derivative(const DegreeDistribution& dist, const EpidemicParams& params,
                          const ControlEffort& control, const MeanFieldState& state);

struct IntegrateOptions {
  double dt = 0.01;
  double t_end = 5000.0;
  double settle_tol = 1e-9;
  bool record_trajectory = false;
  double sample_interval = 1.0;
};

struct TrajectorySample {
  double t;
  Observables obs;
};

struct IntegrateResult {
  MeanFieldState state;
  bool settled = false;
  double t = 0.0;
  double max_clamp = 0.0;  // largest per-step invariant repair applied
  std::vector<TrajectorySample> trajectory;
};

/// Fixed-step classical RK4; stops early once the derivative max-norm drops
/// below settle_tol. Small invariant violations are clamped; violations above
/// 1e-6 raise StepTooLarge (dt too coarse).
IntegrateResult integrate(const DegreeDistribution& dist, const EpidemicParams& params,
                          const ControlEffort& control, const MeanFieldState& state0,
                          const IntegrateOptions& opts = {});

/// CSV export: header t,theta1,theta2,ibar1,ibar2.
void write_trajectory_csv(std::ostream& os, const std::vector<TrajectorySample>& samples);

}  // namespace epicure

#endif
