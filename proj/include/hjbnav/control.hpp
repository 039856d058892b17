#pragma once

#include <cstdint>
#include <vector>

#include "hjbnav/grid.hpp"
#include "hjbnav/pde.hpp"
#include "hjbnav/transform.hpp"

namespace hjbnav {

// Per-cell value gradient, centered differences with one-sided fallbacks on
// the free side next to non-Free cells.
Coord cell_gradient(const ValueField& field, const CSpaceMap& map, const Index& idx);

// Multilinear interpolation of the per-cell gradients at a continuous state.
// Throws "state not in free space" when x sits in a non-Free cell.
Coord sample_gradient(const ValueField& field, const CSpaceMap& map, const Coord& x);

// Multilinear interpolation of the value itself, with non-Free interpolation
// corners replaced by the value of the query cell.
double sample_value(const ValueField& field, const CSpaceMap& map, const Coord& x);

// Feedback-policy evaluation context with precomputed cell gradients.
struct PolicyContext {
  const ValueField* value = nullptr;
  const CSpaceMap* map = nullptr;
  Matrix G;
  Matrix R;
  Matrix neg_rinv_gt;              // -R^-1 G'
  std::vector<Coord> gradients;    // per cell; zero at non-Free cells
};

PolicyContext make_policy(const ValueField& value, const CSpaceMap& map, const Matrix& G,
                          const Matrix& R);

// u* = -R^-1 G' grad(V) at a continuous state.
Coord optimal_control(const PolicyContext& ctx, const Coord& x);

enum class PathOutcome { Goal, Obstacle, Timeout };

const char* outcome_name(PathOutcome o);

// Time-stamped state/control record with first-exit bookkeeping.
struct Trajectory {
  double dt = 0.0;
  std::vector<Coord> states;
  std::vector<Coord> controls;  // one per transition
  double exit_time = 0.0;
  PathOutcome outcome = PathOutcome::Timeout;
  double cost = 0.0;            // phi(x_T) + sum (q + u'Ru/2) dt
  double terminal_cost = 0.0;
};

// Noise-free explicit Euler descent x <- x + step (f + G u*). Terminates on
// entering a Goal cell, hitting an Obstacle/Exterior cell, or max_steps.
Trajectory extract_path(const PolicyContext& ctx, const PdeProblem& problem, const Coord& start,
                        double step, long max_steps);

struct RolloutStats {
  long trials = 0;
  long successes = 0;
  long timeouts = 0;
  double p_hat = 0.0;
  double p_stderr = 0.0;
  double mean_cost = 0.0;
  double cost_stderr = 0.0;
  double mean_terminal = 0.0;
  std::uint64_t seed = 0;
};

// Euler-Maruyama rollouts of the controlled diffusion. Timeout counts as
// failure. Per-trajectory RNG streams derive from (seed, trajectory index), so
// results do not depend on scheduling. max_steps 0 picks a budget from the
// domain size.
RolloutStats simulate_rollouts(const PolicyContext& ctx, const PdeProblem& problem,
                               const Coord& start, double dt, long trials, std::uint64_t seed,
                               long max_steps = 0);

struct FkEstimate {
  double estimate = 0.0;
  double stderr_ = 0.0;
  long samples = 0;
  long timeouts = 0;
};

// Monte-Carlo point estimate of psi(x) from uncontrolled diffusions: average
// of exit boundary values, discounted by exp(-(q/lambda) t) along each path.
// Errors with "nonconvergent walkers" when more than 1% of walkers time out.
FkEstimate fk_point_estimate(const PdeProblem& problem, const Coord& x, double dt, long samples,
                             std::uint64_t seed, long max_steps = 0);

}  // namespace hjbnav
