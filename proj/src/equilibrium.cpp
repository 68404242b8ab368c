#include "epicure/equilibrium.hpp"

#include <cmath>

#include "epicure/errors.hpp"

namespace epicure {

const char* to_string(Regime r) {
  switch (r) {
    case Regime::DiseaseFree: return "DiseaseFree";
    case Regime::ExclusiveStrain1: return "ExclusiveStrain1";
    case Regime::ExclusiveStrain2: return "ExclusiveStrain2";
    case Regime::Degenerate: return "Degenerate";
    case Regime::Marginal: return "Marginal";
  }
  return "?";
}

Regime regime_from_string(const std::string& s) {
  if (s == "DiseaseFree") return Regime::DiseaseFree;
  if (s == "ExclusiveStrain1") return Regime::ExclusiveStrain1;
  if (s == "ExclusiveStrain2") return Regime::ExclusiveStrain2;
  if (s == "Degenerate") return Regime::Degenerate;
  if (s == "Marginal") return Regime::Marginal;
  throw Error(Errc::ValidationError, "unknown regime tag: " + s);
}

std::pair<double, double> reproduction_numbers(const DegreeDistribution& dist,
                                               const EpidemicParams& params,
                                               const ControlEffort& control) {
  const auto [psi1, psi2] = effective_spreading_rate(params, control);
  const double r = dist.moment_ratio();
  return {psi1 * r, psi2 * r};
}

EquilibriumClass classify(const DegreeDistribution& dist, const EpidemicParams& params,
                          const ControlEffort& control, double tol_marginal,
                          double tol_degenerate) {
  const auto [psi1, psi2] = effective_spreading_rate(params, control);
  const double r = dist.moment_ratio();
  EquilibriumClass c;
  c.t1 = psi1 * r;
  c.t2 = psi2 * r;

  if (std::abs(psi1 - psi2) < tol_degenerate) {
    c.tag = Regime::Degenerate;
    return c;
  }
  if (c.t1 < 1.0 - tol_marginal && c.t2 < 1.0 - tol_marginal) {
    c.tag = Regime::DiseaseFree;
    return c;
  }
  if (c.t1 > 1.0 + tol_marginal && c.t1 > c.t2 + tol_marginal) {
    c.tag = Regime::ExclusiveStrain1;
    return c;
  }
  if (c.t2 > 1.0 + tol_marginal && c.t2 > c.t1 + tol_marginal) {
    c.tag = Regime::ExclusiveStrain2;
    return c;
  }
  c.tag = Regime::Marginal;
  c.margin_flag = true;
  return c;
}

double theta_fixed_point_map(const DegreeDistribution& dist, double psi, double theta) {
  const auto& pmf = dist.pmf();
  double acc = 0.0;
  for (std::size_t k = 1; k < pmf.size(); ++k) {
    const double kk = static_cast<double>(k);
    acc += kk * kk * pmf[k] * psi * theta / (1.0 + psi * kk * theta);
  }
  return acc / dist.mean_degree();
}

ThetaSolution solve_theta_star(const DegreeDistribution& dist, double psi, double eps1,
                               double theta0, std::vector<double>* history) {
  constexpr long kMaxIters = 1000000;
  constexpr double kMarginal = 1e-9;

  const double t = psi * dist.moment_ratio();
  if (t <= 1.0 + kMarginal) {
    throw Error(Errc::BelowThreshold, "no nontrivial fixed point: T <= 1");
  }
  if (!(theta0 > 0.0 && theta0 <= 1.0)) {
    throw Error(Errc::ValidationError, "theta0 must lie in (0, 1]");
  }

  ThetaSolution sol;
  sol.near_threshold = (t < 1.0 + 1e-6);

  double theta = theta0;
  if (history) history->push_back(theta);
  for (long n = 0; n < kMaxIters; ++n) {
    const double next = theta_fixed_point_map(dist, psi, theta);
    if (std::abs(next - theta) <= eps1) {
      sol.theta_star = next;
      sol.iterations = n + 1;
      if (history) history->push_back(next);
      return sol;
    }
    theta = next;
    if (history) history->push_back(theta);
  }
  throw Error(Errc::NoProgress, "fixed-point iteration cap reached");
}

EquilibriumState steady_state(const DegreeDistribution& dist, const EpidemicParams& params,
                              const ControlEffort& control) {
  EquilibriumState st;
  st.cls = classify(dist, params, control);
  const auto n = static_cast<std::size_t>(dist.k_max()) + 1;
  st.i1.assign(n, 0.0);
  st.i2.assign(n, 0.0);

  switch (st.cls.tag) {
    case Regime::Degenerate:
      throw Error(Errc::DegenerateCase, "psi1 == psi2: generalized single-strain regime");
    case Regime::Marginal:
      if (st.cls.t1 > 1.0 + 1e-6 || st.cls.t2 > 1.0 + 1e-6) {
        // T1 ~ T2 both above 1: no strain can be singled out.
        throw Error(Errc::DegenerateCase, "marginal comparison with both strains supercritical");
      }
      return st;  // disease-free limit, margin_flag carried in cls
    case Regime::DiseaseFree:
      return st;
    case Regime::ExclusiveStrain1:
    case Regime::ExclusiveStrain2:
      break;
  }

  const auto [psi1, psi2] = effective_spreading_rate(params, control);
  const bool strain1 = (st.cls.tag == Regime::ExclusiveStrain1);
  const double psi = strain1 ? psi1 : psi2;
  st.theta_star = solve_theta_star(dist, psi).theta_star;

  auto& dens = strain1 ? st.i1 : st.i2;
  double ibar = 0.0;
  const auto& pmf = dist.pmf();
  for (std::size_t k = 0; k < n; ++k) {
    const double kk = static_cast<double>(k);
    dens[k] = psi * kk * st.theta_star / (1.0 + psi * kk * st.theta_star);
    ibar += pmf[k] * dens[k];
  }
  (strain1 ? st.ibar1 : st.ibar2) = ibar;
  st.sbar = 1.0 - ibar;
  return st;
}

nlohmann::json EquilibriumState::to_json(bool with_densities) const {
  nlohmann::json j{
      {"class", to_string(cls.tag)}, {"theta_star", theta_star}, {"ibar1", ibar1},
      {"ibar2", ibar2},              {"sbar", sbar},             {"t1", cls.t1},
      {"t2", cls.t2},
  };
  if (cls.margin_flag) j["margin_flag"] = true;
  if (with_densities) {
    j["densities"] = {{"i1", i1}, {"i2", i2}};
  }
  return j;
}

}  // namespace epicure
