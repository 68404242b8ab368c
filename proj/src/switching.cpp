#include "epicure/switching.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <ostream>

#include "epicure/errors.hpp"
#include "epicure/io_util.hpp"

namespace epicure {

double fulfilling_threshold(const DegreeDistribution& dist, const EpidemicParams& params) {
  params.validate();
  const double r = dist.moment_ratio();
  return std::max({0.0, params.zeta1 * r - params.gamma1, params.zeta2 * r - params.gamma2});
}

SwitchingPattern predict_switching_pattern(const DegreeDistribution& dist,
                                           const EpidemicParams& params) {
  params.validate();
  const double cross_det = params.zeta1 * params.gamma2 - params.zeta2 * params.gamma1;
  if (std::abs(cross_det) < 1e-12) {
    throw Error(Errc::TrivialRatioCase, "zeta1/gamma1 == zeta2/gamma2: strains indistinguishable");
  }

  const double r = dist.moment_ratio();
  SwitchingPattern p;

  // Strain with the larger zeta/gamma ratio dominates at u = 0 and stays
  // dominant until the symmetric-control ESRs cross.
  const int i = (cross_det > 0.0) ? 1 : 2;
  const double zi = (i == 1) ? params.zeta1 : params.zeta2;
  const double gi = (i == 1) ? params.gamma1 : params.gamma2;
  const double zo = (i == 1) ? params.zeta2 : params.zeta1;
  const double go = (i == 1) ? params.gamma2 : params.gamma1;

  if (zi * r <= gi) {  // dominant strain subcritical at u = 0, so both are
    p.kind = SwitchKind::NoSwitch;
    p.from = p.to = Regime::DiseaseFree;
    p.conditions_report = "both strains subcritical without control; disease-free throughout";
    return p;
  }

  const Regime ei = (i == 1) ? Regime::ExclusiveStrain1 : Regime::ExclusiveStrain2;
  const Regime eo = (i == 1) ? Regime::ExclusiveStrain2 : Regime::ExclusiveStrain1;
  p.from = ei;
  p.to = Regime::DiseaseFree;

  // Under u1 = u2 = u the threshold quantities cross at u_cross; a second
  // regime appears only if strain -i is still supercritical there.
  if (zi < zo) {
    const double u_cross = (zi * go - zo * gi) / (zo - zi);
    const double u_ext_other = zo * r - go;
    if (u_cross > 0.0 && u_cross < u_ext_other - 1e-12) {
      p.kind = SwitchKind::Double;
      p.mid = eo;
      p.conditions_report =
          "dominance ratio favors strain " + std::to_string(i) +
          ", ESR crossing below the other strain's extinction level: double switching";
      return p;
    }
  }
  p.kind = SwitchKind::Single;
  p.conditions_report = (zi >= zo)
      ? "dominant strain also has the larger spreading rate: single switching"
      : "ESR crossing lies beyond the other strain's extinction level: single switching";
  return p;
}

namespace {

// Coarse regime label under symmetric control, by threshold comparison only.
// Boundary values (T = 1, T1 = T2) resolve to the disease-free / strain-1
// side so bisection has a definite sign.
Regime sweep_regime(const DegreeDistribution& dist, const EpidemicParams& params, double u) {
  const double r = dist.moment_ratio();
  const double t1 = params.zeta1 * r / (params.gamma1 + u);
  const double t2 = params.zeta2 * r / (params.gamma2 + u);
  if (std::max(t1, t2) <= 1.0 + 1e-9) return Regime::DiseaseFree;
  return (t1 >= t2) ? Regime::ExclusiveStrain1 : Regime::ExclusiveStrain2;
}

// Epidemic cost term of the symmetric objective at control (u, u).
double epidemic_term(const DegreeDistribution& dist, const EpidemicParams& params,
                     const CostModel& cm, double u) {
  const double r = dist.moment_ratio();
  const double t1 = params.zeta1 * r / (params.gamma1 + u);
  const double t2 = params.zeta2 * r / (params.gamma2 + u);
  if (std::max(t1, t2) <= 1.0 + 1e-9) return 0.0;
  if (std::abs(t1 - t2) <= 1e-9) {
    // ESR tie: indistinguishable strains, severity is that of either one.
    return cm.K3 * 0.5 * (cm.w1 + cm.w2) * exclusive_severity(dist, params, 1, u);
  }
  if (t1 > t2) return cm.K3 * cm.w1 * exclusive_severity(dist, params, 1, u);
  return cm.K3 * cm.w2 * exclusive_severity(dist, params, 2, u);
}

double golden_section(const std::function<double(double)>& f, double lo, double hi, double tol) {
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - gr * (b - a);
  double d = a + gr * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d; d = c; fd = fc;
      c = b - gr * (b - a);
      fc = f(c);
    } else {
      a = c; c = d; fc = fd;
      d = a + gr * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

SwitchingProfile symmetric_sweep(const DegreeDistribution& dist, const EpidemicParams& params,
                                 const CostModel& cm_base,
                                 const std::vector<double>& scale_grid) {
  params.validate();
  cm_base.validate();
  if (scale_grid.empty()) throw Error(Errc::ValidationError, "empty scale grid");
  for (std::size_t i = 0; i < scale_grid.size(); ++i) {
    if (!(scale_grid[i] > 0.0)) throw Error(Errc::ValidationError, "scale grid must be positive");
    if (i > 0 && scale_grid[i] >= scale_grid[i - 1]) {
      throw Error(Errc::ValidationError, "scale grid must be decreasing");
    }
  }
  {
    const double d = params.zeta1 * params.gamma2 - params.zeta2 * params.gamma1;
    if (std::abs(d) < 1e-12) {
      throw Error(Errc::TrivialRatioCase, "symmetric sweep excluded for equal zeta/gamma ratios");
    }
  }

  SwitchingProfile profile;
  profile.fulfilling_threshold = fulfilling_threshold(dist, params);
  const double u_bar = profile.fulfilling_threshold;
  const double u_hi = u_bar + 1.0;
  const double unit = cm_base.K1 + cm_base.K2;

  for (double scale : scale_grid) {
    auto phi = [&](double u) {
      return scale * unit * u + epidemic_term(dist, params, cm_base, u);
    };

    // Coarse bracket scan, then golden-section refinement; the symmetric
    // objective has kinks at regime boundaries so pure bracketing is used.
    constexpr int kScan = 240;
    int best_i = 0;
    double best_v = phi(0.0);
    for (int i = 1; i <= kScan; ++i) {
      const double u = u_hi * i / kScan;
      const double v = phi(u);
      if (v < best_v) { best_v = v; best_i = i; }
    }
    const double lo = u_hi * std::max(0, best_i - 1) / kScan;
    const double hi = u_hi * std::min(kScan, best_i + 1) / kScan;
    double u_opt = golden_section(phi, lo, hi, 1e-8);

    if (std::abs(u_opt - u_bar) <= 2e-6) u_opt = u_bar;
    u_opt = std::min(u_opt, u_bar);

    SweepSample s;
    s.scale = scale;
    s.u = u_opt;
    s.regime = sweep_regime(dist, params, u_opt);
    if (s.regime == Regime::ExclusiveStrain1) {
      s.ibar1 = exclusive_severity(dist, params, 1, u_opt);
    } else if (s.regime == Regime::ExclusiveStrain2) {
      s.ibar2 = exclusive_severity(dist, params, 2, u_opt);
    }
    s.objective = phi(u_opt);
    profile.samples.push_back(s);
  }

  // Localize regime changes between consecutive sampled optima.
  auto bisect_boundary = [&](double lo, double hi, Regime rl) {
    while (hi - lo > 1e-10) {
      const double mid = 0.5 * (lo + hi);
      if (sweep_regime(dist, params, mid) == rl) lo = mid; else hi = mid;
    }
    return 0.5 * (lo + hi);
  };

  for (std::size_t i = 1; i < profile.samples.size(); ++i) {
    const auto& a = profile.samples[i - 1];
    const auto& b = profile.samples[i];
    if (a.regime == b.regime) continue;
    const double lo = std::min(a.u, b.u);
    const double hi = std::max(a.u, b.u);

    // Scan for intermediate regimes the sample grid may have jumped over.
    constexpr int kSub = 64;
    double run_start = lo;
    Regime run_regime = sweep_regime(dist, params, lo);
    for (int j = 1; j <= kSub; ++j) {
      const double u = lo + (hi - lo) * j / kSub;
      const Regime rj = (j == kSub) ? sweep_regime(dist, params, hi)
                                    : sweep_regime(dist, params, u);
      if (rj != run_regime) {
        Transition tr;
        tr.from = run_regime;
        tr.to = rj;
        tr.u = bisect_boundary(run_start, u, run_regime);
        profile.transitions.push_back(tr);
        run_regime = rj;
        run_start = u;
      }
    }
  }

  return profile;
}

nlohmann::json SwitchingProfile::transitions_json() const {
  nlohmann::json trs = nlohmann::json::array();
  for (const auto& t : transitions) {
    trs.push_back({{"u", t.u}, {"from", to_string(t.from)}, {"to", to_string(t.to)}});
  }
  return nlohmann::json{{"fulfilling_threshold", fulfilling_threshold},
                        {"transitions", trs}};
}

void write_profile_csv(std::ostream& os, const SwitchingProfile& profile) {
  os << "# fulfilling_threshold," << fmt_sig(profile.fulfilling_threshold) << '\n';
  os << "scale,u,regime,ibar1,ibar2,objective\n";
  for (const auto& s : profile.samples) {
    os << fmt_sig(s.scale) << ',' << fmt_sig(s.u) << ',' << to_string(s.regime) << ','
       << fmt_sig(s.ibar1) << ',' << fmt_sig(s.ibar2) << ',' << fmt_sig(s.objective) << '\n';
  }
}

}  // namespace epicure
