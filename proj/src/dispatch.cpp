#include "epicure/dispatch.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "epicure/errors.hpp"
#include "epicure/io_util.hpp"
#include "epicure/scenario.hpp"
#include "epicure/switching.hpp"

namespace epicure {

std::vector<double> GridSpec::values() const {
  std::vector<double> v;
  if (count == 1) {
    v.push_back(from);
    return v;
  }
  for (int i = 0; i < count; ++i) {
    v.push_back(from + (to - from) * i / (count - 1));
  }
  return v;
}

GridSpec parse_grid(const std::string& spec) {
  GridSpec g;
  char c1 = 0, c2 = 0;
  std::istringstream is(spec);
  if (!(is >> g.from >> c1 >> g.to >> c2 >> g.count) || c1 != ':' || c2 != ':' || g.count < 1) {
    throw Error(Errc::ValidationError, "grid must be of the form a:b:n with n >= 1");
  }
  return g;
}

namespace {

using nlohmann::json;

void require_pmf_capable(const Scenario& sc, const std::string& command) {
  if (sc.moments_only) {
    throw Error(Errc::ValidationError,
                "command \"" + command + "\" needs a full degree distribution; "
                "the scenario provides only moments");
  }
}

json run(const CommandOptions& opts, const Scenario& sc) {
  const auto& cmd = opts.command;
  const auto out = [&](const std::string& name) { return opts.out_dir / name; };

  if (cmd == "simulate") {
    IntegrateOptions io;
    io.record_trajectory = true;
    if (opts.tol) io.settle_tol = *opts.tol;
    const auto res = integrate(sc.dist, sc.params, {}, MeanFieldState::interior(sc.dist.k_max()), io);
    std::ostringstream csv;
    write_trajectory_csv(csv, res.trajectory);
    write_file_atomic(out("trajectory.csv"), csv.str());
    const auto obs = observables(sc.dist, res.state);
    return json{{"settled", res.settled},   {"t", res.t},
                {"theta1", obs.theta1},     {"theta2", obs.theta2},
                {"ibar1", obs.ibar1},       {"ibar2", obs.ibar2},
                {"max_clamp", res.max_clamp}};
  }

  if (cmd == "classify") {
    const auto c = classify(sc.dist, sc.params, {});
    return json{{"class", to_string(c.tag)},
                {"t1", c.t1},
                {"t2", c.t2},
                {"margin_flag", c.margin_flag}};
  }

  if (cmd == "steady-state") {
    return steady_state(sc.dist, sc.params, {}).to_json(true);
  }

  if (cmd == "solve-free") {
    if (opts.grid) {
      // Sweep the common spreading rate zeta1 = zeta2 = zeta.
      std::ostringstream csv;
      csv << "zeta,u1,u2,objective\n";
      for (double zeta : opts.grid->values()) {
        EpidemicParams p = sc.params;
        p.zeta1 = p.zeta2 = zeta;
        const auto u = solve_disease_free(sc.dist, p);
        csv << fmt_sig(zeta) << ',' << fmt_sig(u.u1) << ',' << fmt_sig(u.u2) << ','
            << fmt_sig(control_cost(sc.cost, u)) << '\n';
      }
      write_file_atomic(out("solve_free.csv"), csv.str());
      return json{{"csv", "solve_free.csv"},
                  {"grid", {opts.grid->from, opts.grid->to, opts.grid->count}}};
    }
    const auto u = solve_disease_free(sc.dist, sc.params);
    return json{{"u1", u.u1}, {"u2", u.u2}, {"objective", control_cost(sc.cost, u)},
                {"marginal", true}};
  }

  if (cmd == "solve-exclusive") {
    require_pmf_capable(sc, cmd);
    DescentOptions dopts;
    if (opts.tol) dopts.eps2 = *opts.tol;
    const auto sol = solve_exclusive(sc.dist, sc.params, sc.cost, opts.strain, dopts);
    std::ostringstream csv;
    write_trace_csv(csv, sol.trace);
    write_file_atomic(out("trace.csv"), csv.str());
    return json{{"strain", opts.strain},
                {"u1", sol.u.u1},
                {"u2", sol.u.u2},
                {"objective", sol.objective},
                {"iterations", sol.trace.back().iter},
                {"trace_csv", "trace.csv"}};
  }

  if (cmd == "solve-global") {
    require_pmf_capable(sc, cmd);
    return solve_global(sc.dist, sc.params, sc.cost).to_json();
  }

  if (cmd == "sweep") {
    require_pmf_capable(sc, cmd);
    GridSpec g = opts.grid.value_or(GridSpec{2.0, 0.02, 120});
    const auto profile = symmetric_sweep(sc.dist, sc.params, sc.cost, g.values());
    std::ostringstream csv;
    write_profile_csv(csv, profile);
    write_file_atomic(out("profile.csv"), csv.str());
    const json tj = profile.transitions_json();
    write_file_atomic(out("transitions.json"), tj.dump(2) + "\n");
    return tj;
  }

  if (cmd == "cross-apply") {
    if (opts.scenario_b_path.empty()) {
      throw Error(Errc::ValidationError, "cross-apply requires --scenario-b");
    }
    const auto b = load_scenario(opts.scenario_b_path);
    return cross_apply(sc, b).to_json();
  }

  throw Error(Errc::UnknownCommand, "unknown command \"" + cmd + "\"");
}

}  // namespace

int dispatch(const CommandOptions& opts) {
  try {
    std::filesystem::create_directories(opts.out_dir);
    const Scenario sc = load_scenario(opts.scenario_path);
    const json result = run(opts, sc);
    write_file_atomic(opts.out_dir / "result.json", result.dump(2) + "\n");
    return 0;
  } catch (const Error& e) {
    const json err{{"error", {{"code", to_string(e.code())}, {"message", e.what()}}}};
    try {
      write_file_atomic(opts.out_dir / "error.json", err.dump(2) + "\n");
    } catch (...) {
    }
    return 1;
  }
}

}  // namespace epicure
