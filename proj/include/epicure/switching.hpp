#ifndef EPICURE_SWITCHING_HPP
#define EPICURE_SWITCHING_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "epicure/degree_distribution.hpp"
#include "epicure/dynamics.hpp"
#include "epicure/equilibrium.hpp"
#include "epicure/optimizer.hpp"

namespace epicure {

/// Smallest symmetric control that stabilizes the disease-free equilibrium:
/// max(0, zeta1 <k^2>/<k> - gamma1, zeta2 <k^2>/<k> - gamma2).
double fulfilling_threshold(const DegreeDistribution& dist, const EpidemicParams& params);

enum class SwitchKind { NoSwitch, Single, Double };

struct SwitchingPattern {
  SwitchKind kind = SwitchKind::NoSwitch;
  Regime from = Regime::DiseaseFree;
  Regime mid = Regime::DiseaseFree;   // only meaningful for Double
  Regime to = Regime::DiseaseFree;
  std::string conditions_report;
};

/// Predicts the regime sequence along increasing symmetric control u, for the
/// nontrivial case zeta1/gamma1 != zeta2/gamma2.
SwitchingPattern predict_switching_pattern(const DegreeDistribution& dist,
                                           const EpidemicParams& params);

struct Transition {
  double u = 0.0;
  Regime from = Regime::DiseaseFree;
  Regime to = Regime::DiseaseFree;
};

struct SweepSample {
  double scale = 0.0;      // unit-cost multiplier applied to (K1 + K2)
  double u = 0.0;          // optimal symmetric control at this scale
  Regime regime = Regime::DiseaseFree;
  double ibar1 = 0.0;
  double ibar2 = 0.0;
  double objective = 0.0;
};

struct SwitchingProfile {
  std::vector<SweepSample> samples;
  std::vector<Transition> transitions;
  double fulfilling_threshold = 0.0;

  nlohmann::json transitions_json() const;
};

/// For each cost scale (positive, decreasing) solve the symmetric-control
/// restriction min_u scale*(K1+K2)*u + epidemic cost at control (u,u), record
/// the regime at the optimum, and localize regime changes by bisection.
SwitchingProfile symmetric_sweep(const DegreeDistribution& dist, const EpidemicParams& params,
                                 const CostModel& cm_base,
                                 const std::vector<double>& scale_grid);

void write_profile_csv(std::ostream& os, const SwitchingProfile& profile);

}  // namespace epicure

#endif
