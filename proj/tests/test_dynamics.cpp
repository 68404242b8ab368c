#include <doctest.h>

#include <cmath>
#include <sstream>

#include "epicure/dynamics.hpp"
#include "epicure/errors.hpp"

using namespace epicure;

namespace {

DegreeDistribution regular(int c) {
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(c) + 1, 0);
  counts.back() = 1;
  return DegreeDistribution::from_histogram(counts);
}

}  // namespace

TEST_CASE("effective_spreading_rate: direct division") {
  EpidemicParams p{0.2, 0.3, 0.4, 0.5};
  auto [psi1, psi2] = effective_spreading_rate(p, {0.0, 0.1});
  CHECK(psi1 == doctest::Approx(0.5));
  CHECK(psi2 == doctest::Approx(0.5));
}

TEST_CASE("effective_spreading_rate: zero denominator") {
  EpidemicParams p{0.2, 0.3, 0.0, 0.5};
  try {
    effective_spreading_rate(p, {0.0, 0.0});
    FAIL("expected ZeroDenominator");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ZeroDenominator);
  }
}

TEST_CASE("observables: saturated strain 1") {
  auto d = DegreeDistribution::power_law(1, 10, 3.0);
  MeanFieldState s = MeanFieldState::zeros(d.k_max());
  for (auto& x : s.i1) x = 1.0;
  auto o = observables(d, s);
  CHECK(o.theta1 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(o.ibar1 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(o.theta2 == 0.0);
  CHECK(o.ibar2 == 0.0);
}

TEST_CASE("observables: all zeros and regular-network collapse") {
  auto d = regular(4);
  auto o0 = observables(d, MeanFieldState::zeros(4));
  CHECK(o0.theta1 == 0.0);
  CHECK(o0.ibar2 == 0.0);

  MeanFieldState s = MeanFieldState::zeros(4);
  s.i1[4] = 0.37;
  auto o = observables(d, s);
  CHECK(o.theta1 == doctest::Approx(0.37).epsilon(1e-12));
  CHECK(o.ibar1 == doctest::Approx(0.37).epsilon(1e-12));
}

TEST_CASE("observables: dimension mismatch") {
  auto d = regular(4);
  MeanFieldState s = MeanFieldState::zeros(3);
  try {
    observables(d, s);
    FAIL("expected DimensionMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::DimensionMismatch);
  }
}

TEST_CASE("observables: linearity (doubling the state doubles observables)") {
  auto d = DegreeDistribution::power_law(1, 8, 2.5);
  MeanFieldState s = MeanFieldState::interior(d.k_max(), 0.05);
  MeanFieldState s2 = s;
  for (auto& x : s2.i1) x *= 2.0;
  for (auto& x : s2.i2) x *= 2.0;
  auto a = observables(d, s);
  auto b = observables(d, s2);
  CHECK(b.theta1 == doctest::Approx(2.0 * a.theta1).epsilon(1e-12));
  CHECK(b.theta2 == doctest::Approx(2.0 * a.theta2).epsilon(1e-12));
  CHECK(b.ibar1 == doctest::Approx(2.0 * a.ibar1).epsilon(1e-12));
  CHECK(b.ibar2 == doctest::Approx(2.0 * a.ibar2).epsilon(1e-12));
}

TEST_CASE("derivative: disease-free is an exact fixed point") {
  auto d = DegreeDistribution::power_law(1, 20, 3.0);
  EpidemicParams p{0.3, 0.2, 0.4, 0.5};
  auto dv = derivative(d, p, {0.1, 0.2}, MeanFieldState::zeros(d.k_max()));
  for (double x : dv.i1) CHECK(x == 0.0);
  for (double x : dv.i2) CHECK(x == 0.0);
}

TEST_CASE("derivative: degree-0 class decays at rate gamma + u") {
  auto d = DegreeDistribution::from_histogram({3, 0, 7});
  EpidemicParams p{0.3, 0.2, 0.4, 0.5};
  MeanFieldState s = MeanFieldState::zeros(2);
  s.i1[0] = 0.6;
  s.i2[0] = 0.5;
  auto dv = derivative(d, p, {0.1, 0.2}, s);
  CHECK(dv.i1[0] == doctest::Approx(-(0.4 + 0.1) * 0.6).epsilon(1e-12));
  CHECK(dv.i2[0] == doctest::Approx(-(0.5 + 0.2) * 0.5).epsilon(1e-12));
}

TEST_CASE("derivative: regular network reduces to the scalar logistic form") {
  const int c = 4;
  auto d = regular(c);
  EpidemicParams p{0.5, 0.2, 0.5, 0.4};
  const double x = 0.3;
  MeanFieldState s = MeanFieldState::zeros(c);
  s.i1[c] = x;
  auto dv = derivative(d, p, {0.0, 0.0}, s);
  CHECK(dv.i1[c] == doctest::Approx(-(0.5) * x + 0.5 * c * (1.0 - x) * x).epsilon(1e-12));
  CHECK(dv.i2[c] == 0.0);
}

TEST_CASE("integrate: zero start settles immediately") {
  auto d = regular(4);
  EpidemicParams p{0.5, 0.2, 0.5, 0.4};
  auto res = integrate(d, p, {0.0, 0.0}, MeanFieldState::zeros(4));
  CHECK(res.settled);
  CHECK(res.t == 0.0);
  for (double x : res.state.i1) CHECK(x == 0.0);
}

TEST_CASE("integrate: single-strain regular network logistic fixed point") {
  const int c = 4;
  auto d = regular(c);
  EpidemicParams p{0.5, 0.1, 0.5, 1.0};  // strain 2 absent below
  MeanFieldState s0 = MeanFieldState::zeros(c);
  s0.i1[c] = 0.1;
  auto res = integrate(d, p, {0.0, 0.0}, s0);
  CHECK(res.settled);
  auto o = observables(d, res.state);
  // psi1 = 0.5/0.5 = 1; regular-network fixed point Ibar1 = 1 - 1/(psi1 c).
  CHECK(o.ibar1 == doctest::Approx(1.0 - 1.0 / (1.0 * c)).epsilon(1e-7));
  CHECK(o.ibar2 == 0.0);
}

TEST_CASE("integrate: non-coexistence from an interior start") {
  auto d = DegreeDistribution::power_law(1, 15, 3.0);
  EpidemicParams p{0.9, 0.6, 0.3, 0.3};  // psi1 = 3, psi2 = 2
  auto res = integrate(d, p, {0.0, 0.0}, MeanFieldState::interior(d.k_max()));
  CHECK(res.settled);
  auto o = observables(d, res.state);
  CHECK(std::min(o.ibar1, o.ibar2) < 1e-6);
  CHECK(o.ibar1 > 0.1);  // dominant strain persists
}

TEST_CASE("integrate: forward invariance up to clamping tolerance") {
  auto d = DegreeDistribution::power_law(1, 25, 2.5);
  EpidemicParams p{1.2, 0.8, 0.2, 0.3};
  auto res = integrate(d, p, {0.0, 0.0}, MeanFieldState::interior(d.k_max(), 0.45));
  CHECK(res.max_clamp <= 1e-9);
  for (std::size_t k = 0; k < res.state.i1.size(); ++k) {
    CHECK(res.state.i1[k] >= 0.0);
    CHECK(res.state.i2[k] >= 0.0);
    CHECK(res.state.i1[k] + res.state.i2[k] <= 1.0 + 1e-12);
  }
}

TEST_CASE("integrate: rescaled system reaches the same fixed point") {
  // Dividing all rates of one strain by a common factor rescales time but
  // preserves psi_i and therefore the fixed point.
  auto d = DegreeDistribution::power_law(1, 12, 3.0);
  EpidemicParams p{0.9, 0.4, 0.3, 0.4};
  EpidemicParams q{0.45, 0.4, 0.15, 0.4};  // strain 1 rates halved: same psi1
  auto s0 = MeanFieldState::interior(d.k_max());
  auto a = integrate(d, p, {0.0, 0.0}, s0);
  auto b = integrate(d, q, {0.0, 0.0}, s0);
  REQUIRE(a.settled);
  REQUIRE(b.settled);
  for (std::size_t k = 0; k < a.state.i1.size(); ++k) {
    CHECK(a.state.i1[k] == doctest::Approx(b.state.i1[k]).epsilon(1e-8).scale(1.0));
    CHECK(a.state.i2[k] == doctest::Approx(b.state.i2[k]).epsilon(1e-8).scale(1.0));
  }
}

TEST_CASE("integrate: invalid dt rejected") {
  auto d = regular(4);
  EpidemicParams p{0.5, 0.2, 0.5, 0.4};
  IntegrateOptions io;
  io.dt = 0.0;
  CHECK_THROWS_AS(integrate(d, p, {0.0, 0.0}, MeanFieldState::zeros(4), io), Error);
}

TEST_CASE("trajectory CSV has the documented header and sampled rows") {
  auto d = regular(4);
  EpidemicParams p{0.5, 0.1, 0.5, 1.0};
  IntegrateOptions io;
  io.record_trajectory = true;
  io.t_end = 10.0;
  io.settle_tol = 0.0;
  auto res = integrate(d, p, {0.0, 0.0}, MeanFieldState::interior(4), io);
  std::ostringstream os;
  write_trajectory_csv(os, res.trajectory);
  const std::string s = os.str();
  CHECK(s.rfind("t,theta1,theta2,ibar1,ibar2\n", 0) == 0);
  CHECK(res.trajectory.size() >= 11);  // t = 0..10 sampled every 1.0
}
