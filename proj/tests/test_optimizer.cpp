#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "epicure/errors.hpp"
#include "epicure/optimizer.hpp"
#include "epicure/scenario.hpp"

using namespace epicure;

namespace {

DegreeDistribution regular(int c) {
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(c) + 1, 0);
  counts.back() = 1;
  return DegreeDistribution::from_histogram(counts);
}

const CostModel kPaperCost{15.0, 10.0, 50.0, 1.0, 1.0};

}  // namespace

TEST_CASE("cost maps: linear instantiation") {
  CHECK(control_cost(kPaperCost, {1.0, 2.0}) == doctest::Approx(35.0));
  CHECK(control_cost(kPaperCost, {0.0, 0.0}) == 0.0);
  CHECK(control_cost({0.0, 0.0, 50.0, 1.0, 1.0}, {3.0, 4.0}) == 0.0);

  CHECK(epidemic_cost(kPaperCost, 0.5, 0.0) == doctest::Approx(25.0));
  CHECK(epidemic_cost(kPaperCost, 0.0, 0.0) == 0.0);
  CHECK(epidemic_cost({0.0, 0.0, 1.0, 2.0, 1.0}, 0.1, 0.3) == doctest::Approx(0.5));
}

TEST_CASE("CostModel validation") {
  const CostModel negative_k{-1.0, 0.0, 0.0, 1.0, 1.0};
  CHECK_THROWS_AS(negative_k.validate(), Error);
  const CostModel zero_weight{1.0, 1.0, 1.0, 0.0, 1.0};
  CHECK_THROWS_AS(zero_weight.validate(), Error);
}

TEST_CASE("feasible_region: disease-free bound reproduces the paper threshold") {
  auto d = synthesize_from_moments(1.996, 13.75);
  EpidemicParams p{0.2, 0.15, 0.4, 0.4};
  auto reg = feasible_region(d, p, Regime::DiseaseFree, 0.0);
  CHECK(reg.lb1 == doctest::Approx(0.9777).epsilon(2e-4));
  CHECK(reg.contains({1.0, 0.9}, 1e-9));
  CHECK_FALSE(reg.contains({0.9, 0.9}, 1e-9));
}

TEST_CASE("feasible_region: subcritical strains admit u = (0,0) as disease-free") {
  auto d = regular(2);
  EpidemicParams p{0.2, 0.15, 0.5, 0.4};  // t1 = 0.8, t2 = 0.75
  auto reg = feasible_region(d, p, Regime::DiseaseFree, 1e-6);
  CHECK(reg.contains({0.0, 0.0}));
}

TEST_CASE("feasible_region: infeasible exclusive regime") {
  auto d = regular(2);
  EpidemicParams p{0.2, 0.15, 0.5, 0.4};
  try {
    feasible_region(d, p, Regime::ExclusiveStrain1, 1e-6);
    FAIL("expected InfeasibleRegime");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::InfeasibleRegime);
  }
}

TEST_CASE("feasible_region: projection soundness on random points") {
  auto d = DegreeDistribution::power_law(1, 30, 2.5);
  EpidemicParams p{0.8, 0.6, 0.3, 0.4};
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> pt(-2.0, 5.0);
  for (Regime target : {Regime::ExclusiveStrain1, Regime::ExclusiveStrain2}) {
    auto reg = feasible_region(d, p, target, 1e-6);
    for (int i = 0; i < 200; ++i) {
      ControlEffort u{pt(rng), pt(rng)};
      auto pr = reg.project(u);
      CHECK(reg.contains(pr, 1e-9));
      // Projection is idempotent.
      auto pr2 = reg.project(pr);
      CHECK(pr2.u1 == doctest::Approx(pr.u1).epsilon(1e-12).scale(1.0));
      CHECK(pr2.u2 == doctest::Approx(pr.u2).epsilon(1e-12).scale(1.0));
      // No feasible point sampled at random is closer than the projection.
      const double dp = std::hypot(pr.u1 - u.u1, pr.u2 - u.u2);
      for (int j = 0; j < 20; ++j) {
        ControlEffort v = reg.project({pt(rng), pt(rng)});
        const double dv = std::hypot(v.u1 - u.u1, v.u2 - u.u2);
        CHECK(dp <= dv + 1e-9);
      }
    }
  }
}

TEST_CASE("solve_disease_free: paper scenario values and distribution independence") {
  auto d1 = synthesize_from_moments(1.996, 13.75);
  EpidemicParams p{0.3, 0.3, 0.5, 0.3};
  auto u = solve_disease_free(d1, p);
  const double r = 13.75 / 1.996;
  CHECK(u.u1 == doctest::Approx(0.3 * r - 0.5).epsilon(1e-12));
  CHECK(u.u2 == doctest::Approx(0.3 * r - 0.3).epsilon(1e-12));
  CHECK(u.u1 == doctest::Approx(1.5666).epsilon(1e-3));
  CHECK(u.u2 == doctest::Approx(1.7666).epsilon(1e-3));

  // Same moments, different support (atoms at degrees 2 and 7):
  // 2 q2 + 7 q7 = mean, 4 q2 + 49 q7 = second, degree 0 absorbs the rest.
  std::vector<double> pmf(8, 0.0);
  const double mean = 1.996, second = 13.75;
  const double q7 = (second - 2.0 * mean) / (49.0 - 14.0);
  const double q2 = (mean - 7.0 * q7) / 2.0;
  pmf[2] = q2;
  pmf[7] = q7;
  pmf[0] = 1.0 - q2 - q7;
  auto d2 = DegreeDistribution::from_pmf(pmf);
  REQUIRE(d2.mean_degree() == doctest::Approx(mean).epsilon(1e-12));
  REQUIRE(d2.second_moment() == doctest::Approx(second).epsilon(1e-12));
  auto u2 = solve_disease_free(d2, p);
  CHECK(std::abs(u.u1 - u2.u1) <= 1e-12);
  CHECK(std::abs(u.u2 - u2.u2) <= 1e-12);
}

TEST_CASE("solve_disease_free: zero when both strains subcritical") {
  auto d = regular(2);
  EpidemicParams p{0.2, 0.15, 0.5, 0.4};
  auto u = solve_disease_free(d, p);
  CHECK(u.u1 == 0.0);
  CHECK(u.u2 == 0.0);
}

TEST_CASE("solve_disease_free: +0.01 perturbation strictly increases the objective") {
  auto d = synthesize_from_moments(1.996, 13.75);
  EpidemicParams p{0.3, 0.3, 0.5, 0.3};
  auto u = solve_disease_free(d, p);
  const double base = control_cost(kPaperCost, u);
  CHECK(control_cost(kPaperCost, {u.u1 + 0.01, u.u2}) > base);
  CHECK(control_cost(kPaperCost, {u.u1, u.u2 + 0.01}) > base);
}

TEST_CASE("objective: disease-free region reduces to pure control cost") {
  auto d = regular(4);
  EpidemicParams p{0.15, 0.18, 1.0, 0.8};  // both subcritical at u = 0
  auto ov = objective(d, p, kPaperCost, {0.2, 0.1});
  CHECK(ov.value == doctest::Approx(control_cost(kPaperCost, {0.2, 0.1})).epsilon(1e-12));
}

TEST_CASE("objective: regular-network closed form 43.75") {
  auto d = regular(4);
  EpidemicParams p{2.0, 0.1, 1.0, 1.0};  // psi1 = 2 dominant
  CostModel cm{0.0, 0.0, 50.0, 1.0, 1.0};
  auto ov = objective(d, p, cm, {0.0, 0.0});
  CHECK(ov.value == doctest::Approx(50.0 * (1.0 - 1.0 / (2.0 * 4.0))).epsilon(1e-9));
}

TEST_CASE("exclusive_severity: zero below threshold, positive above") {
  auto d = DegreeDistribution::power_law(1, 30, 2.5);
  EpidemicParams p{0.8, 0.2, 0.3, 0.9};
  CHECK(exclusive_severity(d, p, 1, 100.0) == 0.0);
  CHECK(exclusive_severity(d, p, 1, 0.0) > 0.1);
}

TEST_CASE("gradient sanity: central difference matches Richardson stencil") {
  auto d = DegreeDistribution::power_law(1, 30, 2.5);
  EpidemicParams p{0.8, 0.2, 0.3, 0.9};
  auto reg = feasible_region(d, p, Regime::ExclusiveStrain1, 1e-6);
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> uu(0.05 * reg.cap, 0.9 * reg.cap);
  auto f = [&](double u) { return exclusive_severity(d, p, 1, u); };
  for (int i = 0; i < 20; ++i) {
    const double u = uu(rng);
    const double h = 1e-4;
    const double central = (f(u + h) - f(u - h)) / (2.0 * h);
    const double rich = (8.0 * (f(u + h) - f(u - h)) - (f(u + 2 * h) - f(u - 2 * h))) / (12.0 * h);
    CHECK(central == doctest::Approx(rich).epsilon(1e-4));
  }
}

TEST_CASE("solve_exclusive: trace is monotone and feasible; K3 = 0 stays at the floor") {
  auto d = DegreeDistribution::power_law(1, 30, 2.5);
  EpidemicParams p{0.8, 0.6, 0.3, 0.4};
  auto sol = solve_exclusive(d, p, kPaperCost, 1);
  REQUIRE(sol.trace.size() >= 1);
  for (std::size_t i = 1; i < sol.trace.size(); ++i) {
    CHECK(sol.trace[i].objective <= sol.trace[i - 1].objective + 1e-12);
    CHECK(sol.region.contains(sol.trace[i].u, 1e-9));
  }

  CostModel no_severity = kPaperCost;
  no_severity.K3 = 0.0;
  auto floor_sol = solve_exclusive(d, p, no_severity, 1);
  auto floor_pt = floor_sol.region.project({0.0, 0.0});
  CHECK(floor_sol.u.u1 == doctest::Approx(floor_pt.u1).epsilon(1e-6).scale(1.0));
  CHECK(floor_sol.u.u2 == doctest::Approx(floor_pt.u2).epsilon(1e-6).scale(1.0));
}

TEST_CASE("solve_exclusive: huge K1 pins u1 at zero") {
  auto d = DegreeDistribution::power_law(1, 30, 2.5);
  EpidemicParams p{0.8, 0.6, 0.3, 0.4};
  CostModel cm{1e6, 10.0, 50.0, 1.0, 1.0};
  auto sol = solve_exclusive(d, p, cm, 1);
  CHECK(sol.u.u1 == doctest::Approx(0.0).epsilon(1e-6).scale(1.0));
  // u2 sits on its coupled lower bound at u1 = 0.
  const double lb = std::max(0.0, sol.region.couple_a + sol.region.couple_b * sol.u.u1);
  CHECK(sol.u.u2 == doctest::Approx(lb).epsilon(1e-6).scale(1.0));
}

TEST_CASE("solve_exclusive: beats random feasible points") {
  auto d = DegreeDistribution::power_law(1, 30, 2.5);
  EpidemicParams p{0.8, 0.6, 0.3, 0.4};
  for (int strain : {1, 2}) {
    auto sol = solve_exclusive(d, p, kPaperCost, strain);
    std::mt19937 rng(23 + strain);
    std::uniform_real_distribution<double> pt(-1.0, 4.0);
    for (int i = 0; i < 100; ++i) {
      auto v = sol.region.project({pt(rng), pt(rng)});
      CHECK(sol.objective <= exclusive_objective(d, p, kPaperCost, strain, v) + 1e-7);
    }
  }
}

TEST_CASE("solve_global: winner dominates all candidates; K3 extremes") {
  auto d = DegreeDistribution::power_law(1, 30, 2.5);
  EpidemicParams p{0.8, 0.6, 0.3, 0.4};
  auto sol = solve_global(d, p, kPaperCost);
  for (const auto& c : sol.candidates) {
    if (c.feasible) CHECK(sol.objective <= c.objective + 1e-12);
  }

  // Severity weight dominating: disease-free wins with Eq.-(19)-style control.
  CostModel heavy = kPaperCost;
  heavy.K3 = 1e9;
  auto sdf = solve_global(d, p, heavy);
  CHECK(sdf.regime == Regime::DiseaseFree);
  auto udf = solve_disease_free(d, p);
  CHECK(sdf.u.u1 == doctest::Approx(udf.u1).epsilon(1e-12));
  CHECK(sdf.u.u2 == doctest::Approx(udf.u2).epsilon(1e-12));

  // Free control: disease-free at zero objective.
  CostModel free_cm{0.0, 0.0, 50.0, 1.0, 1.0};
  auto sfree = solve_global(d, p, free_cm);
  CHECK(sfree.regime == Regime::DiseaseFree);
  CHECK(sfree.objective == doctest::Approx(0.0).epsilon(1e-12).scale(1.0));
}

TEST_CASE("solve_global JSON export and trace CSV shape") {
  auto d = DegreeDistribution::power_law(1, 30, 2.5);
  EpidemicParams p{0.8, 0.6, 0.3, 0.4};
  auto sol = solve_global(d, p, kPaperCost);
  auto j = sol.to_json();
  CHECK(j.contains("u1"));
  CHECK(j.contains("objective"));
  CHECK(j.at("candidates").size() == 3);

  auto ex = solve_exclusive(d, p, kPaperCost, 1);
  std::ostringstream os;
  write_trace_csv(os, ex.trace);
  CHECK(os.str().rfind("iter,u1,u2,objective,step\n", 0) == 0);
}
