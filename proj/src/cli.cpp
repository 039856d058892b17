#include "hjbnav/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hjbnav/analytic.hpp"
#include "hjbnav/config.hpp"
#include "hjbnav/control.hpp"
#include "hjbnav/field_io.hpp"
#include "hjbnav/pde.hpp"
#include "hjbnav/scenario.hpp"
#include "hjbnav/transform.hpp"

namespace hjbnav {

namespace {

struct CommonArgs {
  std::string config_path;
  std::string out_dir;
  std::optional<double> tol;
  std::optional<double> narrow_width;
  std::optional<std::uint64_t> seed;
};

Coord parse_start(const std::string& text, int ndim) {
  std::string s;
  for (char c : text) {
    if (c != '(' && c != ')' && c != ' ') s += c;
  }
  Coord x{};
  int got = 0;
  std::size_t pos = 0;
  while (pos < s.size() && got < kMaxDims) {
    const std::size_t comma = s.find(',', pos);
    const std::string tok = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    x[got++] = std::stod(tok);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (got != ndim) throw std::runtime_error("--start needs " + std::to_string(ndim) + " coordinates");
  return x;
}

SliceSpec parse_slice(const std::string& text) {
  const std::size_t eq = text.find('=');
  if (eq == std::string::npos) throw std::runtime_error("--slice expects axis=value, e.g. theta=0");
  const std::string axis = text.substr(0, eq);
  SliceSpec spec;
  if (axis == "x" || axis == "0") spec.axis = 0;
  else if (axis == "y" || axis == "1") spec.axis = 1;
  else if (axis == "theta" || axis == "2") spec.axis = 2;
  else throw std::runtime_error("--slice axis must be x, y, or theta");
  spec.value = std::stod(text.substr(eq + 1));
  return spec;
}

ScenarioConfig prepare_config(const CommonArgs& args) {
  ScenarioConfig cfg = load_config(args.config_path);
  if (args.tol.has_value()) cfg.tol = *args.tol;
  if (args.narrow_width.has_value()) cfg.scenario_params["narrow_width"] = *args.narrow_width;
  if (args.seed.has_value()) cfg.seed = *args.seed;
  return cfg;
}

struct SolvedScenario {
  ScenarioConfig cfg;
  CSpaceMap map;
  PdeProblem problem;
  SolveResult solved;
  ValueField value;
};

SolvedScenario solve_scenario(const CommonArgs& args) {
  SolvedScenario s;
  s.cfg = prepare_config(args);
  s.map = build_map(s.cfg);
  s.problem = build_problem(s.cfg, s.map);
  const StencilSystem sys = assemble(s.problem);
  s.solved = solve_system(sys, solve_options(s.cfg));
  s.value = desirability_to_value(s.solved.field, *s.cfg.lambda);
  return s;
}

// Matched control model for the configured noise: G = I, R = lambda Sigma_t^-1.
PolicyContext matched_policy(const SolvedScenario& s) {
  const int ndim = s.map.grid.ndim();
  std::vector<double> rdiag(static_cast<std::size_t>(ndim));
  for (int a = 0; a < ndim; ++a) {
    rdiag[static_cast<std::size_t>(a)] = *s.cfg.lambda / s.problem.sigma_t[static_cast<std::size_t>(a)];
  }
  return make_policy(s.value, s.map, Matrix::identity(ndim), Matrix::diagonal(rdiag));
}

void write_solve_outputs(const SolvedScenario& s, const std::string& out_dir,
                         std::optional<SliceSpec> slice) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  const fs::path dir(out_dir);
  export_field_csv(s.map, s.solved.field.values, FieldKind::Desirability, (dir / "psi.csv").string());
  export_field_csv(s.map, s.value.values, FieldKind::Value, (dir / "value.csv").string());
  if (s.map.grid.ndim() == 2) {
    export_field_pgm(s.map, s.solved.field.values, (dir / "psi.pgm").string());
    export_field_pgm(s.map, s.value.values, (dir / "value.pgm").string());
  } else if (slice.has_value()) {
    const SlicedField psi = take_slice(s.map, s.solved.field.values, *slice);
    const SlicedField val = take_slice(s.map, s.value.values, *slice);
    export_field_csv(psi.map, psi.values, FieldKind::Desirability, (dir / "psi_slice.csv").string());
    export_field_csv(val.map, val.values, FieldKind::Value, (dir / "value_slice.csv").string());
    export_field_pgm(psi.map, psi.values, (dir / "psi.pgm").string());
    export_field_pgm(val.map, val.values, (dir / "value.pgm").string());
  }

  std::ofstream report(dir / "report.txt");
  report << "scenario " << s.map.name << "\n";
  report << "grid";
  for (int a = 0; a < s.map.grid.ndim(); ++a) report << " " << s.map.grid.cells(a);
  report << "\n";
  report << "free_cells " << s.map.count(CellClass::Free) << "\n";
  report << "goal_cells " << s.map.goal_cells.size() << "\n";
  report << "lambda " << *s.cfg.lambda << "\n";
  report << "sweeps " << s.solved.sweeps << "\n";
  report << "residual " << s.solved.residual << "\n";
}

std::vector<Coord> default_probes(const CSpaceMap& map, int count) {
  std::vector<std::size_t> free_cells;
  for (std::size_t i = 0; i < map.cells.size(); ++i) {
    if (map.is_free(i)) free_cells.push_back(i);
  }
  std::vector<Coord> probes;
  for (int k = 0; k < count; ++k) {
    const double frac = (k + 1.0) / (count + 1.0);
    const std::size_t cell = free_cells[static_cast<std::size_t>(frac * (free_cells.size() - 1))];
    probes.push_back(map.grid.cell_center(map.grid.unflat(cell)));
  }
  return probes;
}

int cmd_scenarios() {
  std::printf("empty-room   open 10x10 room, goal square at the origin\n");
  std::printf("corridor     dividing wall with a wide and a narrow passage, goal top right\n");
  std::printf("maze         nested rectangular rings around a goal at the origin\n");
  std::printf("grasp        planar gripper (x, y, theta) positioning around a square nut\n");
  return 0;
}

int cmd_analytic(const std::string& fn, const std::vector<double>& args) {
  double result = 0.0;
  if (fn == "k0" && args.size() == 1) {
    result = bessel_k0(args[0]);
  } else if (fn == "laplace2d" && args.size() == 1) {
    result = laplace_fundamental_2d(args[0]);
  } else if (fn == "screened2d" && args.size() == 4) {
    result = screened_fundamental_2d(args[0], args[1], args[2], args[3]);
  } else if (fn == "profile1d" && args.size() == 4) {
    result = screened_1d_profile(args[0], args[1], args[2], args[3]);
  } else {
    throw std::runtime_error(
        "usage: analytic k0 <x> | laplace2d <r> | screened2d <r> <alpha> <lambda> <sigma> | "
        "profile1d <x> <alpha> <lambda> <sigma>");
  }
  std::printf("%.10g\n", result);
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Stochastic-optimal navigation fields on gridded configuration spaces"};
  app.require_subcommand(1);

  CommonArgs args;
  std::string start_text;
  std::string slice_text;
  double step = 0.01;
  long max_steps = 500000;
  std::optional<long> n_override;
  std::optional<double> dt_override;
  int probe_count = 5;

  auto add_common = [&](CLI::App* sub, bool needs_config) {
    sub->add_option("--config", args.config_path, "scenario config file")->required(needs_config);
    sub->add_option("--out", args.out_dir, "output directory");
    sub->add_option("--tol", args.tol, "solver residual tolerance override");
    sub->add_option("--narrow-width", args.narrow_width, "corridor narrow passage width");
    sub->add_option("--seed", args.seed, "rollout/fk seed override");
  };

  CLI::App* solve = app.add_subcommand("solve", "solve the scenario PDE and export psi/V fields");
  add_common(solve, true);
  solve->add_option("--slice", slice_text, "2D slice of a 3D field, e.g. theta=0");

  CLI::App* path = app.add_subcommand("path", "extract a deterministic descent trajectory");
  add_common(path, true);
  path->add_option("--start", start_text, "start state, e.g. \"(1.0, 2.0)\"")->required();
  path->add_option("--step", step, "Euler step (time units)");
  path->add_option("--max-steps", max_steps, "step budget");

  CLI::App* rollout = app.add_subcommand("rollout", "Monte-Carlo rollouts under the extracted policy");
  add_common(rollout, true);
  rollout->add_option("--start", start_text, "start state")->required();
  rollout->add_option("--n", n_override, "trajectory count");
  rollout->add_option("--dt", dt_override, "integration step");

  CLI::App* fk = app.add_subcommand("fk-check", "compare the FDM solution against point estimates");
  add_common(fk, true);
  fk->add_option("--n", n_override, "walkers per probe");
  fk->add_option("--dt", dt_override, "integration step");
  fk->add_option("--probes", probe_count, "probe point count");

  CLI::App* analytic = app.add_subcommand("analytic", "evaluate closed-form reference solutions");
  std::string analytic_fn;
  std::vector<double> analytic_args;
  analytic->add_option("fn", analytic_fn, "k0 | laplace2d | screened2d | profile1d")->required();
  analytic->add_option("args", analytic_args, "function arguments");

  CLI::App* scenarios = app.add_subcommand("scenarios", "list built-in scenarios");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (scenarios->parsed()) return cmd_scenarios();
    if (analytic->parsed()) return cmd_analytic(analytic_fn, analytic_args);

    if (solve->parsed()) {
      const SolvedScenario s = solve_scenario(args);
      std::optional<SliceSpec> slice;
      if (!slice_text.empty()) slice = parse_slice(slice_text);
      std::printf("solved %s: %ld sweeps, residual %.3e\n", s.map.name.c_str(), s.solved.sweeps,
                  s.solved.residual);
      if (!args.out_dir.empty()) write_solve_outputs(s, args.out_dir, slice);
      return 0;
    }

    if (path->parsed()) {
      const SolvedScenario s = solve_scenario(args);
      const PolicyContext policy = matched_policy(s);
      const Coord start = parse_start(start_text, s.map.grid.ndim());
      const Trajectory traj = extract_path(policy, s.problem, start, step, max_steps);
      std::printf("outcome %s, steps %zu, time %.4g, cost %.6g\n", outcome_name(traj.outcome),
                  traj.states.size() - 1, traj.exit_time, traj.cost);
      if (!args.out_dir.empty()) {
        std::filesystem::create_directories(args.out_dir);
        export_trajectory_csv(traj, s.map,
                              (std::filesystem::path(args.out_dir) / "trajectory.csv").string());
      }
      return traj.outcome == PathOutcome::Goal ? 0 : 1;
    }

    if (rollout->parsed()) {
      const SolvedScenario s = solve_scenario(args);
      const PolicyContext policy = matched_policy(s);
      const Coord start = parse_start(start_text, s.map.grid.ndim());
      const double dt = dt_override.value_or(effective_dt(s.cfg, s.problem));
      const long n = n_override.value_or(s.cfg.rollout_n);
      const RolloutStats stats = simulate_rollouts(policy, s.problem, start, dt, n, s.cfg.seed);
      std::printf("trials %ld successes %ld timeouts %ld\n", stats.trials, stats.successes,
                  stats.timeouts);
      std::printf("p_hat %.6g +- %.3g\n", stats.p_hat, stats.p_stderr);
      std::printf("mean_cost %.6g +- %.3g (terminal %.6g)\n", stats.mean_cost, stats.cost_stderr,
                  stats.mean_terminal);
      std::printf("value_at_start %.6g\n", sample_value(s.value, s.map, start));
      if (!args.out_dir.empty()) {
        std::filesystem::create_directories(args.out_dir);
        std::ofstream report(std::filesystem::path(args.out_dir) / "rollout.txt");
        report << "trials " << stats.trials << "\nsuccesses " << stats.successes << "\ntimeouts "
               << stats.timeouts << "\np_hat " << stats.p_hat << "\np_stderr " << stats.p_stderr
               << "\nmean_cost " << stats.mean_cost << "\ncost_stderr " << stats.cost_stderr
               << "\nmean_terminal " << stats.mean_terminal << "\nseed " << stats.seed << "\n";
      }
      return 0;
    }

    if (fk->parsed()) {
      const SolvedScenario s = solve_scenario(args);
      const double dt = dt_override.value_or(effective_dt(s.cfg, s.problem));
      const long n = n_override.value_or(20000);
      const std::vector<Coord> probes = default_probes(s.map, probe_count);
      std::printf("%-28s %12s %12s %10s %8s\n", "probe", "fdm", "fk", "stderr", "|z|");
      double worst = 0.0;
      for (std::size_t i = 0; i < probes.size(); ++i) {
        const Coord& p = probes[i];
        const std::size_t cell = s.map.grid.flat(s.map.grid.cell_of(p));
        const double fdm = s.solved.field.values[cell];
        const FkEstimate est =
            fk_point_estimate(s.problem, p, dt, n, s.cfg.seed + i);
        const double z = est.stderr_ > 0.0 ? std::abs(est.estimate - fdm) / est.stderr_ : 0.0;
        worst = std::max(worst, z);
        char label[64];
        std::snprintf(label, sizeof(label), "(%.3g, %.3g%s", p[0], p[1],
                      s.map.grid.ndim() == 3 ? ", ...)" : ")");
        std::printf("%-28s %12.6g %12.6g %10.3g %8.2f\n", label, fdm, est.estimate, est.stderr_, z);
      }
      std::printf("worst |z| = %.2f\n", worst);
      return 0;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}

}  // namespace hjbnav
