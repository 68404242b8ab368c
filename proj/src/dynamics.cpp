#include "epicure/dynamics.hpp"

#include <cmath>
#include <cstdio>

#include "epicure/errors.hpp"
#include "epicure/io_util.hpp"

namespace epicure {

namespace {

constexpr double kViolationLimit = 1e-6;

void check_dims(const DegreeDistribution& dist, const MeanFieldState& state) {
  const auto n = static_cast<std::size_t>(dist.k_max()) + 1;
  if (state.i1.size() != n || state.i2.size() != n) {
    throw Error(Errc::DimensionMismatch, "state dimension does not match k_max + 1");
  }
}

}  // namespace

void EpidemicParams::validate() const {
  if (!(zeta1 > 0.0) || !(zeta2 > 0.0) || !std::isfinite(zeta1) || !std::isfinite(zeta2)) {
    throw Error(Errc::ValidationError, "spreading rates zeta_i must be positive and finite");
  }
  if (!(gamma1 >= 0.0) || !(gamma2 >= 0.0) || !std::isfinite(gamma1) || !std::isfinite(gamma2)) {
    throw Error(Errc::ValidationError, "recovery rates gamma_i must be nonnegative and finite");
  }
}

void ControlEffort::validate() const {
  if (!(u1 >= 0.0) || !(u2 >= 0.0) || !std::isfinite(u1) || !std::isfinite(u2)) {
    throw Error(Errc::ValidationError, "curing rates u_i must be nonnegative and finite");
  }
}

MeanFieldState MeanFieldState::zeros(int k_max) {
  MeanFieldState s;
  s.i1.assign(static_cast<std::size_t>(k_max) + 1, 0.0);
  s.i2.assign(static_cast<std::size_t>(k_max) + 1, 0.0);
  return s;
}

MeanFieldState MeanFieldState::interior(int k_max, double level) {
  MeanFieldState s = zeros(k_max);
  for (std::size_t k = 1; k < s.i1.size(); ++k) {
    s.i1[k] = level;
    s.i2[k] = level;
  }
  return s;
}

std::pair<double, double> effective_spreading_rate(const EpidemicParams& params,
                                                   const ControlEffort& control) {
  const double d1 = params.gamma1 + control.u1;
  const double d2 = params.gamma2 + control.u2;
  if (d1 <= 0.0 || d2 <= 0.0) {
    throw Error(Errc::ZeroDenominator, "gamma_i + u_i must be positive");
  }
  return {params.zeta1 / d1, params.zeta2 / d2};
}

Observables observables(const DegreeDistribution& dist, const MeanFieldState& state) {
  check_dims(dist, state);
  const auto& pmf = dist.pmf();
  Observables o;
  for (std::size_t k = 0; k < pmf.size(); ++k) {
    const double kp = static_cast<double>(k) * pmf[k];
    o.theta1 += kp * state.i1[k];
    o.theta2 += kp * state.i2[k];
    o.ibar1 += pmf[k] * state.i1[k];
    o.ibar2 += pmf[k] * state.i2[k];
  }
  o.theta1 /= dist.mean_degree();
  o.theta2 /= dist.mean_degree();
  return o;
}

void derivative(const DegreeDistribution& dist, const EpidemicParams& params,
                const ControlEffort& control, const MeanFieldState& state,
                MeanFieldState& out) {
  check_dims(dist, state);
  const Observables o = observables(dist, state);
  const auto n = state.i1.size();
  out.i1.resize(n);
  out.i2.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double kk = static_cast<double>(k);
    const double s = 1.0 - state.i1[k] - state.i2[k];
    out.i1[k] = -(params.gamma1 + control.u1) * state.i1[k] + params.zeta1 * kk * s * o.theta1;
    out.i2[k] = -(params.gamma2 + control.u2) * state.i2[k] + params.zeta2 * kk * s * o.theta2;
  }
}

MeanFieldState derivative(const DegreeDistribution& dist, const EpidemicParams& params,
                          const ControlEffort& control, const MeanFieldState& state) {
  MeanFieldState out;
  derivative(dist, params, control, state, out);
  return out;
}

IntegrateResult integrate(const DegreeDistribution& dist, const EpidemicParams& params,
                          const ControlEffort& control, const MeanFieldState& state0,
                          const IntegrateOptions& opts) {
  if (!(opts.dt > 0.0)) throw Error(Errc::ValidationError, "dt must be positive");
  check_dims(dist, state0);
  params.validate();
  control.validate();

  IntegrateResult res;
  res.state = state0;
  const auto n = state0.i1.size();

  MeanFieldState k1, k2, k3, k4, tmp;
  const long sample_every =
      opts.record_trajectory ? std::max(1L, std::lround(opts.sample_interval / opts.dt)) : 0;
  if (opts.record_trajectory) {
    res.trajectory.push_back({0.0, observables(dist, res.state)});
  }

  const long n_steps = static_cast<long>(std::ceil(opts.t_end / opts.dt));
  for (long step = 0; step < n_steps; ++step) {
    derivative(dist, params, control, res.state, k1);

    double dmax = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      dmax = std::max(dmax, std::abs(k1.i1[k]));
      dmax = std::max(dmax, std::abs(k1.i2[k]));
    }
    if (dmax < opts.settle_tol) {
      res.settled = true;
      break;
    }

    const double h = opts.dt;
    tmp.i1.resize(n); tmp.i2.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
      tmp.i1[k] = res.state.i1[k] + 0.5 * h * k1.i1[k];
      tmp.i2[k] = res.state.i2[k] + 0.5 * h * k1.i2[k];
    }
    derivative(dist, params, control, tmp, k2);
    for (std::size_t k = 0; k < n; ++k) {
      tmp.i1[k] = res.state.i1[k] + 0.5 * h * k2.i1[k];
      tmp.i2[k] = res.state.i2[k] + 0.5 * h * k2.i2[k];
    }
    derivative(dist, params, control, tmp, k3);
    for (std::size_t k = 0; k < n; ++k) {
      tmp.i1[k] = res.state.i1[k] + h * k3.i1[k];
      tmp.i2[k] = res.state.i2[k] + h * k3.i2[k];
    }
    derivative(dist, params, control, tmp, k4);

    for (std::size_t k = 0; k < n; ++k) {
      double a = res.state.i1[k] +
                 h / 6.0 * (k1.i1[k] + 2.0 * k2.i1[k] + 2.0 * k3.i1[k] + k4.i1[k]);
      double b = res.state.i2[k] +
                 h / 6.0 * (k1.i2[k] + 2.0 * k2.i2[k] + 2.0 * k3.i2[k] + k4.i2[k]);
      if (!std::isfinite(a) || !std::isfinite(b)) {
        throw Error(Errc::NonFinite, "state became non-finite during integration");
      }
      if (a < 0.0) {
        if (a < -kViolationLimit) throw Error(Errc::StepTooLarge, "negative density exceeds 1e-6");
        res.max_clamp = std::max(res.max_clamp, -a);
        a = 0.0;
      }
      if (b < 0.0) {
        if (b < -kViolationLimit) throw Error(Errc::StepTooLarge, "negative density exceeds 1e-6");
        res.max_clamp = std::max(res.max_clamp, -b);
        b = 0.0;
      }
      const double sum = a + b;
      if (sum > 1.0) {
        if (sum > 1.0 + kViolationLimit) {
          throw Error(Errc::StepTooLarge, "I1 + I2 exceeds 1 by more than 1e-6");
        }
        res.max_clamp = std::max(res.max_clamp, sum - 1.0);
        a /= sum;
        b /= sum;
      }
      res.state.i1[k] = a;
      res.state.i2[k] = b;
    }
    res.t += h;

    if (opts.record_trajectory && (step + 1) % sample_every == 0) {
      res.trajectory.push_back({res.t, observables(dist, res.state)});
    }
  }

  if (opts.record_trajectory &&
      (res.trajectory.empty() || res.trajectory.back().t != res.t)) {
    res.trajectory.push_back({res.t, observables(dist, res.state)});
  }
  return res;
}

void write_trajectory_csv(std::ostream& os, const std::vector<TrajectorySample>& samples) {
  os << "t,theta1,theta2,ibar1,ibar2\n";
  for (const auto& s : samples) {
    os << fmt_sig(s.t) << ',' << fmt_sig(s.obs.theta1) << ',' << fmt_sig(s.obs.theta2) << ','
       << fmt_sig(s.obs.ibar1) << ',' << fmt_sig(s.obs.ibar2) << '\n';
  }
}

}  // namespace epicure
