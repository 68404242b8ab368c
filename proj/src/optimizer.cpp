#include "epicure/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "epicure/errors.hpp"
#include "epicure/io_util.hpp"

namespace epicure {

void CostModel::validate() const {
  if (!(K1 >= 0.0) || !(K2 >= 0.0) || !(K3 >= 0.0)) {
    throw Error(Errc::ValidationError, "cost coefficients K_i must be nonnegative");
  }
  if (!(w1 > 0.0) || !(w2 > 0.0)) {
    throw Error(Errc::ValidationError, "severity weights w_i must be positive");
  }
}

double control_cost(const CostModel& cm, const ControlEffort& u) {
  return cm.K1 * u.u1 + cm.K2 * u.u2;
}

double epidemic_cost(const CostModel& cm, double ibar1, double ibar2) {
  return cm.K3 * (cm.w1 * ibar1 + cm.w2 * ibar2);
}

namespace {

double coupled_lower(const FeasibleRegion& r, double u_s) {
  return std::max(0.0, r.couple_a + r.couple_b * u_s);
}

double dist2(double ax, double ay, double bx, double by) {
  const double dx = ax - bx, dy = ay - by;
  return dx * dx + dy * dy;
}

}  // namespace

bool FeasibleRegion::contains(const ControlEffort& u, double tol) const {
  if (regime == Regime::DiseaseFree) {
    return u.u1 >= lb1 - tol && u.u2 >= lb2 - tol;
  }
  const double us = (regime == Regime::ExclusiveStrain1) ? u.u1 : u.u2;
  const double uo = (regime == Regime::ExclusiveStrain1) ? u.u2 : u.u1;
  return us >= -tol && us <= cap + tol && uo >= coupled_lower(*this, us) - tol;
}

ControlEffort FeasibleRegion::project(const ControlEffort& u) const {
  if (regime == Regime::DiseaseFree) {
    return {std::max(u.u1, lb1), std::max(u.u2, lb2)};
  }

  // Coordinates: x = surviving strain's control (boxed), y = the other's.
  const bool s1 = (regime == Regime::ExclusiveStrain1);
  const double px = s1 ? u.u1 : u.u2;
  const double py = s1 ? u.u2 : u.u1;

  // Candidate faces/vertices of {0 <= x <= cap, y >= max(0, a + b x)}.
  double bx = 0.0, by = 0.0, best = std::numeric_limits<double>::infinity();
  auto consider = [&](double x, double y) {
    x = std::clamp(x, 0.0, cap);
    y = std::max(y, coupled_lower(*this, x));
    const double d = dist2(px, py, x, y);
    if (d < best) { best = d; bx = x; by = y; }
  };

  consider(px, py);                 // box clamp, lift onto lower envelope
  // Foot of perpendicular on the coupled line y = a + b x.
  if (couple_b > 0.0) {
    const double xf = (px + couple_b * (py - couple_a)) / (1.0 + couple_b * couple_b);
    consider(xf, couple_a + couple_b * xf);
    // Knee where the line crosses y = 0.
    consider(-couple_a / couple_b, 0.0);
  }
  consider(0.0, py);
  consider(cap, py);

  return s1 ? ControlEffort{bx, by} : ControlEffort{by, bx};
}

FeasibleRegion feasible_region(const DegreeDistribution& dist, const EpidemicParams& params,
                               Regime target, double delta) {
  params.validate();
  const double r = dist.moment_ratio();
  FeasibleRegion reg;
  reg.regime = target;
  reg.delta = delta;

  const double b1 = params.zeta1 * r - params.gamma1;
  const double b2 = params.zeta2 * r - params.gamma2;

  switch (target) {
    case Regime::DiseaseFree:
      reg.lb1 = b1 > 0.0 ? b1 + delta : 0.0;
      reg.lb2 = b2 > 0.0 ? b2 + delta : 0.0;
      return reg;
    case Regime::ExclusiveStrain1:
      reg.cap = b1 - delta;
      if (reg.cap < 0.0) {
        throw Error(Errc::InfeasibleRegime, "strain 1 cannot persist: zeta1 <k^2>/<k> <= gamma1");
      }
      reg.couple_a = params.zeta2 * params.gamma1 / params.zeta1 - params.gamma2 + delta;
      reg.couple_b = params.zeta2 / params.zeta1;
      return reg;
    case Regime::ExclusiveStrain2:
      reg.cap = b2 - delta;
      if (reg.cap < 0.0) {
        throw Error(Errc::InfeasibleRegime, "strain 2 cannot persist: zeta2 <k^2>/<k> <= gamma2");
      }
      reg.couple_a = params.zeta1 * params.gamma2 / params.zeta2 - params.gamma1 + delta;
      reg.couple_b = params.zeta1 / params.zeta2;
      return reg;
    default:
      throw Error(Errc::ValidationError, "no feasible region for this regime tag");
  }
}

ControlEffort solve_disease_free(const DegreeDistribution& dist, const EpidemicParams& params) {
  params.validate();
  const double r = dist.moment_ratio();
  return {std::max(0.0, params.zeta1 * r - params.gamma1),
          std::max(0.0, params.zeta2 * r - params.gamma2)};
}

ObjectiveValue objective(const DegreeDistribution& dist, const EpidemicParams& params,
                         const CostModel& cm, const ControlEffort& u) {
  ObjectiveValue ov;
  ov.equilibrium = steady_state(dist, params, u);
  ov.value = control_cost(cm, u) + epidemic_cost(cm, ov.equilibrium.ibar1, ov.equilibrium.ibar2);
  return ov;
}

double exclusive_severity(const DegreeDistribution& dist, const EpidemicParams& params,
                          int strain, double u_s) {
  const double zeta = (strain == 1) ? params.zeta1 : params.zeta2;
  const double gamma = (strain == 1) ? params.gamma1 : params.gamma2;
  const double psi = zeta / (gamma + u_s);
  if (psi * dist.moment_ratio() <= 1.0 + 1e-9) return 0.0;
  const double theta = solve_theta_star(dist, psi).theta_star;
  const auto& pmf = dist.pmf();
  double ibar = 0.0;
  for (std::size_t k = 1; k < pmf.size(); ++k) {
    const double pk = psi * static_cast<double>(k) * theta;
    ibar += pmf[k] * pk / (1.0 + pk);
  }
  return ibar;
}

double exclusive_objective(const DegreeDistribution& dist, const EpidemicParams& params,
                           const CostModel& cm, int strain, const ControlEffort& u) {
  const double u_s = (strain == 1) ? u.u1 : u.u2;
  const double w = (strain == 1) ? cm.w1 : cm.w2;
  return control_cost(cm, u) + cm.K3 * w * exclusive_severity(dist, params, strain, u_s);
}

namespace {

// d(Ibar_s)/du_s by central differences; evaluation points clamped into
// [0, cap] so the fixed point stays above threshold.
double severity_slope(const DegreeDistribution& dist, const EpidemicParams& params, int strain,
                      double u_s, double cap) {
  const double h = std::max(1e-6, 1e-6 * std::abs(u_s));
  const double lo = std::clamp(u_s - h, 0.0, cap);
  const double hi = std::clamp(u_s + h, 0.0, cap);
  if (hi <= lo) return 0.0;
  return (exclusive_severity(dist, params, strain, hi) -
          exclusive_severity(dist, params, strain, lo)) /
         (hi - lo);
}

}  // namespace

ExclusiveSolution solve_exclusive(const DegreeDistribution& dist, const EpidemicParams& params,
                                  const CostModel& cm, int strain, const DescentOptions& opts) {
  if (strain != 1 && strain != 2) throw Error(Errc::ValidationError, "strain must be 1 or 2");
  cm.validate();

  const Regime target = (strain == 1) ? Regime::ExclusiveStrain1 : Regime::ExclusiveStrain2;
  ExclusiveSolution sol;
  sol.region = feasible_region(dist, params, target, opts.delta);

  const double ks = (strain == 1) ? cm.K1 : cm.K2;
  const double ko = (strain == 1) ? cm.K2 : cm.K1;
  const double ws = (strain == 1) ? cm.w1 : cm.w2;

  auto f = [&](const ControlEffort& u) {
    return exclusive_objective(dist, params, cm, strain, u);
  };
  auto grad = [&](const ControlEffort& u) -> ControlEffort {
    const double u_s = (strain == 1) ? u.u1 : u.u2;
    const double gs =
        ks + cm.K3 * ws * severity_slope(dist, params, strain, u_s, sol.region.cap);
    return (strain == 1) ? ControlEffort{gs, ko} : ControlEffort{ko, gs};
  };

  ControlEffort u = sol.region.project({0.0, 0.0});
  double fu = f(u);
  sol.trace.push_back({0, u, fu, 0.0});

  for (long n = 1; n <= opts.max_iter; ++n) {
    const ControlEffort g = grad(u);
    double t = opts.init_step;
    ControlEffort cand;
    double fc = 0.0;
    while (true) {
      cand = sol.region.project({u.u1 - t * g.u1, u.u2 - t * g.u2});
      fc = f(cand);
      const double dir = g.u1 * (cand.u1 - u.u1) + g.u2 * (cand.u2 - u.u2);
      if (fc <= fu + opts.armijo * dir) break;
      t *= opts.shrink;
      if (t < opts.min_step) {
        const double resid = std::hypot(cand.u1 - u.u1, cand.u2 - u.u2);
        if (resid <= opts.eps2) {
          cand = u;
          fc = fu;
          break;
        }
        throw Error(Errc::LineSearchFailure, "backtracking reached minimum step");
      }
    }

    const double step = std::hypot(cand.u1 - u.u1, cand.u2 - u.u2);
    const double improvement = fu - fc;
    u = cand;
    fu = fc;
    sol.trace.push_back({n, u, fu, step});
    // Near the minimizer the iterates can ping-pong inside a band where the
    // objective is constant at double precision; treat a tiny non-improving
    // move as converged rather than waiting for the step norm alone.
    if (step <= opts.eps2 ||
        (step <= 1e-6 && improvement <= 1e-12 * (1.0 + std::abs(fu)))) {
      sol.u = u;
      sol.objective = fu;
      return sol;
    }
  }
  throw Error(Errc::MaxIterations, "projected gradient descent did not converge");
}

OptimalSolution solve_global(const DegreeDistribution& dist, const EpidemicParams& params,
                             const CostModel& cm) {
  cm.validate();
  OptimalSolution best;
  best.objective = std::numeric_limits<double>::infinity();

  // Disease-free closed form; its objective is pure control cost.
  {
    RegimeCandidate c;
    c.regime = Regime::DiseaseFree;
    c.feasible = true;
    c.u = solve_disease_free(dist, params);
    c.objective = control_cost(cm, c.u);
    best.candidates.push_back(c);
  }
  for (int strain : {1, 2}) {
    RegimeCandidate c;
    c.regime = (strain == 1) ? Regime::ExclusiveStrain1 : Regime::ExclusiveStrain2;
    try {
      auto ex = solve_exclusive(dist, params, cm, strain);
      c.feasible = true;
      c.u = ex.u;
      c.objective = ex.objective;
    } catch (const Error& e) {
      c.feasible = false;
      c.skip_reason = e.what();
    }
    best.candidates.push_back(c);
  }

  for (const auto& c : best.candidates) {
    if (c.feasible && c.objective < best.objective) {
      best.objective = c.objective;
      best.u = c.u;
      best.regime = c.regime;
    }
  }
  if (best.regime == Regime::DiseaseFree) {
    // The closed-form point sits on the threshold boundary (often with
    // psi1 == psi2), where classify() cannot label it; the steady state
    // there is disease-free by construction.
    EquilibriumState st;
    st.cls.tag = Regime::DiseaseFree;
    const auto [t1, t2] = reproduction_numbers(dist, params, best.u);
    st.cls.t1 = t1;
    st.cls.t2 = t2;
    st.cls.margin_flag = true;
    const auto n = static_cast<std::size_t>(dist.k_max()) + 1;
    st.i1.assign(n, 0.0);
    st.i2.assign(n, 0.0);
    best.equilibrium = st;
  } else {
    best.equilibrium = steady_state(dist, params, best.u);
  }
  return best;
}

nlohmann::json OptimalSolution::to_json() const {
  nlohmann::json cands = nlohmann::json::array();
  for (const auto& c : candidates) {
    nlohmann::json jc{{"regime", to_string(c.regime)}, {"feasible", c.feasible}};
    if (c.feasible) {
      jc["u1"] = c.u.u1;
      jc["u2"] = c.u.u2;
      jc["objective"] = c.objective;
    } else {
      jc["skip_reason"] = c.skip_reason;
    }
    cands.push_back(jc);
  }
  return nlohmann::json{
      {"u1", u.u1},
      {"u2", u.u2},
      {"objective", objective},
      {"regime", to_string(regime)},
      {"equilibrium", equilibrium.to_json()},
      {"candidates", cands},
  };
}

void write_trace_csv(std::ostream& os, const std::vector<DescentIterate>& trace) {
  os << "iter,u1,u2,objective,step\n";
  for (const auto& it : trace) {
    os << it.iter << ',' << fmt_sig(it.u.u1) << ',' << fmt_sig(it.u.u2) << ','
       << fmt_sig(it.objective) << ',' << fmt_sig(it.step) << '\n';
  }
}

}  // namespace epicure
