#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hjbnav/pde.hpp"
#include "hjbnav/scenario.hpp"

namespace hjbnav {

// Flat key-value run description: scenario selection, PDE coefficients,
// penalties, solver knobs, and rollout defaults.
struct ScenarioConfig {
  std::string scenario_name;
  ScenarioParams scenario_params;  // h, narrow_width

  PdeVariant variant = PdeVariant::LaplaceNavigation;
  std::optional<double> alpha;
  std::optional<double> lambda;
  std::vector<double> sigma_t;          // one entry, or one per axis
  std::vector<double> drift;            // constant drift vector (hjb only)
  std::optional<std::string> q_field;   // per-cell state cost, field CSV (hjb only)

  double obstacle_phi = 20.0;
  double goal_phi = 0.0;

  double tol = 1e-8;
  long max_sweeps = 2000000;
  double relaxation = 1.7;

  double dt = 0.0;  // 0 = derive from the grid step guard
  long rollout_n = 10000;
  std::uint64_t seed = 1;

  bool operator==(const ScenarioConfig&) const = default;
};

// Parses `key = value` lines under [section] headers; '#' starts a comment.
// Errors cite the offending line.
ScenarioConfig parse_config(const std::string& text);
ScenarioConfig load_config(const std::string& path);
std::string serialize_config(const ScenarioConfig& cfg);

CSpaceMap build_map(const ScenarioConfig& cfg);
PdeProblem build_problem(const ScenarioConfig& cfg, const CSpaceMap& map);
SolveOptions solve_options(const ScenarioConfig& cfg);

// Rollout/FK time step: the configured dt, or h_min^2 / sigma_max.
double effective_dt(const ScenarioConfig& cfg, const PdeProblem& problem);

}  // namespace hjbnav
