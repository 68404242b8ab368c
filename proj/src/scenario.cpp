#include "epicure/scenario.hpp"

#include <cmath>
#include <set>

#include "epicure/errors.hpp"
#include "epicure/io_util.hpp"

namespace epicure {

namespace {

void reject_unknown(const nlohmann::json& j, const std::set<std::string>& allowed,
                    const std::string& where) {
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) {
      throw Error(Errc::ValidationError, "unknown field \"" + key + "\" in " + where);
    }
  }
}

double require_number(const nlohmann::json& j, const std::string& field,
                      const std::string& where) {
  if (!j.contains(field)) {
    throw Error(Errc::ValidationError, "missing field \"" + field + "\" in " + where);
  }
  if (!j.at(field).is_number()) {
    throw Error(Errc::ValidationError, "field \"" + field + "\" in " + where + " must be numeric");
  }
  return j.at(field).get<double>();
}

}  // namespace

DegreeDistribution synthesize_from_moments(double mean, double second) {
  if (!(mean > 0.0)) throw Error(Errc::ValidationError, "mean_degree > 0");
  if (second < mean * mean - 1e-12) {
    throw Error(Errc::ValidationError, "second_moment >= mean_degree^2 (Jensen)");
  }

  const long cap = std::min<long>(100000, 4 * static_cast<long>(std::ceil(second / mean)) + 16);
  for (long a = 1; a <= cap; ++a) {
    for (long b = a + 1; b <= cap; ++b) {
      const double pb = (second - static_cast<double>(a) * mean) /
                        (static_cast<double>(b) * static_cast<double>(b - a));
      const double pa = (mean - pb * static_cast<double>(b)) / static_cast<double>(a);
      const double p0 = 1.0 - pa - pb;
      if (pa >= 0.0 && pb >= 0.0 && p0 >= 0.0) {
        std::vector<double> pmf(static_cast<std::size_t>(b) + 1, 0.0);
        pmf[0] = p0;
        pmf[static_cast<std::size_t>(a)] = pa;
        pmf[static_cast<std::size_t>(b)] = pb;
        auto dist = DegreeDistribution::from_pmf(std::move(pmf));
        if (std::abs(dist.mean_degree() - mean) > 1e-9 ||
            std::abs(dist.second_moment() - second) > 1e-9) {
          throw Error(Errc::ValidationError, "moment synthesis residual exceeds 1e-9");
        }
        return dist;
      }
    }
  }
  throw Error(Errc::ValidationError, "no nonnegative two-point support reproduces the moments");
}

Scenario scenario_from_json(const nlohmann::json& j) {
  reject_unknown(j, {"schema", "network", "params", "cost"}, "scenario");
  if (!j.contains("schema") || !j.at("schema").is_number_integer() ||
      j.at("schema").get<int>() != 1) {
    throw Error(Errc::ValidationError, "schema must be 1");
  }
  if (!j.contains("network") || !j.contains("params") || !j.contains("cost")) {
    throw Error(Errc::ValidationError, "scenario requires network, params, and cost");
  }

  const auto& jn = j.at("network");
  if (!jn.contains("type")) throw Error(Errc::ValidationError, "network.type missing");
  const std::string type = jn.at("type").get<std::string>();

  bool moments_only = false;
  std::optional<DegreeDistribution> dist;
  if (type == "pmf") {
    reject_unknown(jn, {"type", "pmf", "k_max"}, "network");
    dist = DegreeDistribution::from_json(jn);
  } else if (type == "power_law") {
    reject_unknown(jn, {"type", "k_min", "k_max", "exponent"}, "network");
    dist = DegreeDistribution::power_law(static_cast<int>(require_number(jn, "k_min", "network")),
                                         static_cast<int>(require_number(jn, "k_max", "network")),
                                         require_number(jn, "exponent", "network"));
  } else if (type == "ba") {
    reject_unknown(jn, {"type", "n", "m", "seed"}, "network");
    dist = DegreeDistribution::ba_degree_sequence(
        static_cast<int>(require_number(jn, "n", "network")),
        static_cast<int>(require_number(jn, "m", "network")),
        static_cast<std::uint64_t>(require_number(jn, "seed", "network")));
  } else if (type == "moments") {
    reject_unknown(jn, {"type", "mean", "second_moment"}, "network");
    dist = synthesize_from_moments(require_number(jn, "mean", "network"),
                                   require_number(jn, "second_moment", "network"));
    moments_only = true;
  } else {
    throw Error(Errc::ValidationError, "network.type must be pmf, power_law, ba, or moments");
  }

  const auto& jp = j.at("params");
  reject_unknown(jp, {"zeta1", "zeta2", "gamma1", "gamma2"}, "params");
  EpidemicParams params;
  params.zeta1 = require_number(jp, "zeta1", "params");
  params.zeta2 = require_number(jp, "zeta2", "params");
  params.gamma1 = require_number(jp, "gamma1", "params");
  params.gamma2 = require_number(jp, "gamma2", "params");
  if (!(params.zeta1 > 0.0)) throw Error(Errc::ValidationError, "zeta1 > 0");
  if (!(params.zeta2 > 0.0)) throw Error(Errc::ValidationError, "zeta2 > 0");
  if (!(params.gamma1 >= 0.0)) throw Error(Errc::ValidationError, "gamma1 >= 0");
  if (!(params.gamma2 >= 0.0)) throw Error(Errc::ValidationError, "gamma2 >= 0");

  const auto& jc = j.at("cost");
  reject_unknown(jc, {"K1", "K2", "K3", "w1", "w2"}, "cost");
  CostModel cost;
  cost.K1 = require_number(jc, "K1", "cost");
  cost.K2 = require_number(jc, "K2", "cost");
  cost.K3 = require_number(jc, "K3", "cost");
  cost.w1 = jc.contains("w1") ? require_number(jc, "w1", "cost") : 1.0;
  cost.w2 = jc.contains("w2") ? require_number(jc, "w2", "cost") : 1.0;
  cost.validate();

  return Scenario{std::move(*dist), moments_only, params, cost};
}

Scenario load_scenario(const std::filesystem::path& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(Errc::ParseError, std::string(e.what()) + " in " + path.string());
  }
  return scenario_from_json(j);
}

namespace {

AppliedControlOutcome evaluate_applied(const DegreeDistribution& dist,
                                       const EpidemicParams& params,
                                       const ControlEffort& control) {
  AppliedControlOutcome out;
  out.control = control;
  const auto [t1, t2] = reproduction_numbers(dist, params, control);
  out.t1 = t1;
  out.t2 = t2;
  out.marginal = std::abs(t1 - 1.0) <= 1e-9 || std::abs(t2 - 1.0) <= 1e-9;

  if (std::max(t1, t2) <= 1.0 + 1e-9) {
    out.regime = "DiseaseFree";
    return out;
  }

  const auto [psi1, psi2] = effective_spreading_rate(params, control);
  if (std::abs(psi1 - psi2) < 1e-12 || std::abs(t1 - t2) < 1e-9) {
    // Identical ESR under the designed control: the strains behave as one
    // generalized strain; the surviving total follows the single-strain
    // fixed point.
    const double theta = solve_theta_star(dist, psi1).theta_star;
    const auto& pmf = dist.pmf();
    for (std::size_t k = 1; k < pmf.size(); ++k) {
      const double pk = psi1 * static_cast<double>(k) * theta;
      out.ibar_total += pmf[k] * pk / (1.0 + pk);
    }
    out.persists = true;
    out.regime = "Degenerate";
    return out;
  }

  const auto st = steady_state(dist, params, control);
  out.ibar_total = st.ibar1 + st.ibar2;
  out.persists = out.ibar_total > 0.0;
  out.regime = to_string(st.cls.tag);
  return out;
}

}  // namespace

CrossApplyReport cross_apply(const Scenario& a, const Scenario& b) {
  auto near = [](double x, double y) { return std::abs(x - y) < 1e-12; };
  if (!near(a.params.zeta1, b.params.zeta1) || !near(a.params.zeta2, b.params.zeta2) ||
      !near(a.params.gamma1, b.params.gamma1) || !near(a.params.gamma2, b.params.gamma2)) {
    throw Error(Errc::ValidationError, "cross-apply scenarios must share epidemic params");
  }
  if (!near(a.cost.K1, b.cost.K1) || !near(a.cost.K2, b.cost.K2) ||
      !near(a.cost.K3, b.cost.K3) || !near(a.cost.w1, b.cost.w1) ||
      !near(a.cost.w2, b.cost.w2)) {
    throw Error(Errc::ValidationError, "cross-apply scenarios must share the cost model");
  }

  CrossApplyReport rep;
  rep.b_design_on_a = evaluate_applied(a.dist, a.params, solve_disease_free(b.dist, b.params));
  rep.a_design_on_b = evaluate_applied(b.dist, b.params, solve_disease_free(a.dist, a.params));
  return rep;
}

nlohmann::json AppliedControlOutcome::to_json() const {
  return nlohmann::json{
      {"u1", control.u1},   {"u2", control.u2}, {"t1", t1},
      {"t2", t2},           {"regime", regime}, {"persists", persists},
      {"marginal", marginal}, {"ibar_total", ibar_total},
  };
}

nlohmann::json CrossApplyReport::to_json() const {
  return nlohmann::json{{"b_design_on_a", b_design_on_a.to_json()},
                        {"a_design_on_b", a_design_on_b.to_json()}};
}

}  // namespace epicure
