#include "hjbnav/control.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace hjbnav {

namespace {

Coord mat_vec(const Matrix& m, const Coord& v) {
  Coord out{};
  for (int i = 0; i < m.rows; ++i) {
    double s = 0.0;
    for (int j = 0; j < m.cols; ++j) s += m(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

double quad_form(const Matrix& r, const Coord& u) {
  double s = 0.0;
  for (int i = 0; i < r.rows; ++i) {
    for (int j = 0; j < r.cols; ++j) s += u[i] * r(i, j) * u[j];
  }
  return s;
}

// Interpolation corners around x: per axis the two cells whose centers
// straddle x, clamped on non-periodic axes and wrapped on periodic ones.
struct InterpStencil {
  int count = 0;
  std::size_t corner[8] = {};
  double weight[8] = {};
};

InterpStencil interp_stencil(const GridSpec& grid, const Coord& x) {
  int base[kMaxDims];
  double frac[kMaxDims];
  for (int a = 0; a < grid.ndim(); ++a) {
    const Axis& ax = grid.axis(a);
    const double t = (grid.wrap_position(a, x[a]) - ax.min) / ax.spacing - 0.5;
    const double fl = std::floor(t);
    base[a] = static_cast<int>(fl);
    frac[a] = t - fl;
  }
  InterpStencil st;
  const int ndim = grid.ndim();
  st.count = 1 << ndim;
  for (int mask = 0; mask < st.count; ++mask) {
    Index idx{};
    double w = 1.0;
    for (int a = 0; a < ndim; ++a) {
      const int corner_bit = (mask >> a) & 1;
      int i = base[a] + corner_bit;
      w *= corner_bit ? frac[a] : 1.0 - frac[a];
      const int n = grid.cells(a);
      if (grid.axis(a).periodic) {
        i = ((i % n) + n) % n;
      } else {
        i = std::max(0, std::min(n - 1, i));
      }
      idx[a] = i;
    }
    st.corner[mask] = grid.flat(idx);
    st.weight[mask] = w;
  }
  return st;
}

std::size_t free_cell_or_throw(const CSpaceMap& map, const Coord& x) {
  if (!map.grid.inside(x)) throw std::invalid_argument("state outside the domain bounding box");
  const std::size_t cell = map.grid.flat(map.grid.cell_of(x));
  if (!map.is_free(cell)) throw std::runtime_error("state not in free space");
  return cell;
}

long auto_step_budget(const GridSpec& grid, const std::vector<double>& sigma_t, double dt) {
  double extent = 0.0;
  double sigma_min = sigma_t[0];
  for (int a = 0; a < grid.ndim(); ++a) {
    extent = std::max(extent, grid.axis(a).max - grid.axis(a).min);
    sigma_min = std::min(sigma_min, sigma_t[static_cast<std::size_t>(a)]);
  }
  if (sigma_min <= 0.0) return 1000000;
  const double budget = 64.0 * extent * extent / (sigma_min * dt);
  return std::max(10000L, static_cast<long>(budget));
}

void check_dt_guard(const GridSpec& grid, const std::vector<double>& sigma_t, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be > 0");
  double sigma_max = 0.0;
  for (double s : sigma_t) sigma_max = std::max(sigma_max, s);
  const double h = grid.min_spacing();
  if (sigma_max > 0.0 && dt > h * h / sigma_max * (1.0 + 1e-9)) {
    throw std::invalid_argument("dt too coarse for grid");
  }
}

std::mt19937_64 trajectory_rng(std::uint64_t seed, long trajectory) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trajectory),
                    static_cast<std::uint32_t>(trajectory >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace

Coord cell_gradient(const ValueField& field, const CSpaceMap& map, const Index& idx) {
  const GridSpec& grid = map.grid;
  Coord g{};
  const std::size_t self = grid.flat(idx);
  for (int a = 0; a < grid.ndim(); ++a) {
    const double h = grid.axis(a).spacing;
    Index nb;
    bool minus_free = grid.neighbor(idx, a, -1, &nb) && map.is_free(grid.flat(nb));
    const std::size_t minus_cell = minus_free ? grid.flat(nb) : 0;
    bool plus_free = grid.neighbor(idx, a, +1, &nb) && map.is_free(grid.flat(nb));
    const std::size_t plus_cell = plus_free ? grid.flat(nb) : 0;

    if (minus_free && plus_free) {
      g[a] = (field.values[plus_cell] - field.values[minus_cell]) / (2.0 * h);
    } else if (plus_free) {
      g[a] = (field.values[plus_cell] - field.values[self]) / h;
    } else if (minus_free) {
      g[a] = (field.values[self] - field.values[minus_cell]) / h;
    }
  }
  return g;
}

Coord sample_gradient(const ValueField& field, const CSpaceMap& map, const Coord& x) {
  const std::size_t base = free_cell_or_throw(map, x);
  const InterpStencil st = interp_stencil(map.grid, x);
  const Coord base_grad = cell_gradient(field, map, map.grid.unflat(base));
  Coord out{};
  for (int c = 0; c < st.count; ++c) {
    const std::size_t cell = st.corner[c];
    const Coord g =
        map.is_free(cell) ? cell_gradient(field, map, map.grid.unflat(cell)) : base_grad;
    for (int a = 0; a < map.grid.ndim(); ++a) out[a] += st.weight[c] * g[a];
  }
  return out;
}

double sample_value(const ValueField& field, const CSpaceMap& map, const Coord& x) {
  const std::size_t base = free_cell_or_throw(map, x);
  const InterpStencil st = interp_stencil(map.grid, x);
  double out = 0.0;
  for (int c = 0; c < st.count; ++c) {
    const std::size_t cell = st.corner[c];
    out += st.weight[c] * field.values[map.is_free(cell) ? cell : base];
  }
  return out;
}

PolicyContext make_policy(const ValueField& value, const CSpaceMap& map, const Matrix& G,
                          const Matrix& R) {
  if (value.values.size() != map.cells.size() || !(value.grid == map.grid)) {
    throw std::invalid_argument("value field does not match map");
  }
  if (G.rows != map.grid.ndim()) throw std::invalid_argument("G row count must match state dim");
  PolicyContext ctx;
  ctx.value = &value;
  ctx.map = &map;
  ctx.G = G;
  ctx.R = R;
  ctx.neg_rinv_gt = matmul(inverse_spd(R), transpose(G));
  for (double& v : ctx.neg_rinv_gt.a) v = -v;
  ctx.gradients.assign(map.cells.size(), Coord{});
  for (std::size_t i = 0; i < map.cells.size(); ++i) {
    if (map.is_free(i)) ctx.gradients[i] = cell_gradient(value, map, map.grid.unflat(i));
  }
  return ctx;
}

Coord optimal_control(const PolicyContext& ctx, const Coord& x) {
  const CSpaceMap& map = *ctx.map;
  const std::size_t base = free_cell_or_throw(map, x);
  const InterpStencil st = interp_stencil(map.grid, x);
  Coord grad{};
  for (int c = 0; c < st.count; ++c) {
    const std::size_t cell = st.corner[c];
    const Coord& g = ctx.gradients[map.is_free(cell) ? cell : base];
    for (int a = 0; a < map.grid.ndim(); ++a) grad[a] += st.weight[c] * g[a];
  }
  return mat_vec(ctx.neg_rinv_gt, grad);
}

const char* outcome_name(PathOutcome o) {
  switch (o) {
    case PathOutcome::Goal: return "goal";
    case PathOutcome::Obstacle: return "obstacle";
    case PathOutcome::Timeout: return "timeout";
  }
  return "?";
}

Trajectory extract_path(const PolicyContext& ctx, const PdeProblem& problem, const Coord& start,
                        double step, long max_steps) {
  if (!(step > 0.0)) throw std::invalid_argument("step must be > 0");
  const CSpaceMap& map = *ctx.map;
  const GridSpec& grid = map.grid;
  if (!grid.inside(start)) throw std::invalid_argument("state outside the domain bounding box");

  Trajectory traj;
  traj.dt = step;
  traj.states.push_back(start);

  std::size_t cell = grid.flat(grid.cell_of(start));
  if (map.cells[cell] == CellClass::Goal) {
    traj.outcome = PathOutcome::Goal;
    traj.terminal_cost = map.phi[cell];
    traj.cost = traj.terminal_cost;
    return traj;
  }
  if (!map.is_free(cell)) throw std::runtime_error("state not in free space");

  Coord x = start;
  for (long k = 0; k < max_steps; ++k) {
    const Coord u = optimal_control(ctx, x);
    const Coord f = problem.drift_at(cell);
    const Coord gu = mat_vec(ctx.G, u);
    traj.cost += (problem.state_cost_at(cell) + 0.5 * quad_form(ctx.R, u)) * step;

    for (int a = 0; a < grid.ndim(); ++a) {
      x[a] = grid.wrap_position(a, x[a] + step * (f[a] + gu[a]));
    }
    traj.controls.push_back(u);
    traj.states.push_back(x);
    traj.exit_time += step;

    cell = grid.flat(grid.cell_of(x));
    const CellClass cls = map.cells[cell];
    if (cls == CellClass::Goal) {
      traj.outcome = PathOutcome::Goal;
      traj.terminal_cost = map.phi[cell];
      traj.cost += traj.terminal_cost;
      return traj;
    }
    if (cls != CellClass::Free) {
      traj.outcome = PathOutcome::Obstacle;
      traj.terminal_cost = map.phi[cell];
      traj.cost += traj.terminal_cost;
      return traj;
    }
  }
  traj.outcome = PathOutcome::Timeout;
  return traj;
}

RolloutStats simulate_rollouts(const PolicyContext& ctx, const PdeProblem& problem,
                               const Coord& start, double dt, long trials, std::uint64_t seed,
                               long max_steps) {
  if (trials < 1) throw std::invalid_argument("trial count must be >= 1");
  const CSpaceMap& map = *ctx.map;
  const GridSpec& grid = map.grid;
  check_dt_guard(grid, problem.sigma_t, dt);
  free_cell_or_throw(map, start);
  if (max_steps <= 0) max_steps = auto_step_budget(grid, problem.sigma_t, dt);

  double noise_std[kMaxDims] = {};
  for (int a = 0; a < grid.ndim(); ++a) {
    noise_std[a] = std::sqrt(problem.sigma_t[static_cast<std::size_t>(a)] * dt);
  }

  RolloutStats stats;
  stats.trials = trials;
  stats.seed = seed;
  double cost_sum = 0.0, cost_sq_sum = 0.0, terminal_sum = 0.0;

  for (long t = 0; t < trials; ++t) {
    std::mt19937_64 rng = trajectory_rng(seed, t);
    std::normal_distribution<double> normal(0.0, 1.0);

    Coord x = start;
    std::size_t cell = grid.flat(grid.cell_of(x));
    double cost = 0.0;
    bool success = false;
    bool exited = false;

    for (long k = 0; k < max_steps; ++k) {
      const Coord u = optimal_control(ctx, x);
      const Coord f = problem.drift_at(cell);
      const Coord gu = mat_vec(ctx.G, u);
      cost += (problem.state_cost_at(cell) + 0.5 * quad_form(ctx.R, u)) * dt;

      for (int a = 0; a < grid.ndim(); ++a) {
        const double dx = dt * (f[a] + gu[a]) + noise_std[a] * normal(rng);
        x[a] = grid.wrap_position(a, x[a] + dx);
      }
      cell = grid.flat(grid.cell_of(x));
      const CellClass cls = map.cells[cell];
      if (cls != CellClass::Free) {
        cost += map.phi[cell];
        terminal_sum += map.phi[cell];
        success = (cls == CellClass::Goal);
        exited = true;
        break;
      }
    }

    if (!exited) ++stats.timeouts;
    if (success) ++stats.successes;
    cost_sum += cost;
    cost_sq_sum += cost * cost;
  }

  const double n = static_cast<double>(trials);
  stats.p_hat = static_cast<double>(stats.successes) / n;
  stats.p_stderr = std::sqrt(std::max(0.0, stats.p_hat * (1.0 - stats.p_hat) / n));
  stats.mean_cost = cost_sum / n;
  const double var = std::max(0.0, cost_sq_sum / n - stats.mean_cost * stats.mean_cost);
  stats.cost_stderr = std::sqrt(var / n);
  stats.mean_terminal = terminal_sum / n;
  return stats;
}

FkEstimate fk_point_estimate(const PdeProblem& problem, const Coord& x, double dt, long samples,
                             std::uint64_t seed, long max_steps) {
  if (samples < 1) throw std::invalid_argument("sample count must be >= 1");
  const CSpaceMap& map = problem.map;
  const GridSpec& grid = map.grid;
  check_dt_guard(grid, problem.sigma_t, dt);
  free_cell_or_throw(map, x);
  if (max_steps <= 0) max_steps = auto_step_budget(grid, problem.sigma_t, dt);

  double noise_std[kMaxDims] = {};
  for (int a = 0; a < grid.ndim(); ++a) {
    noise_std[a] = std::sqrt(problem.sigma_t[static_cast<std::size_t>(a)] * dt);
  }
  const double inv_lambda = 1.0 / problem.lambda;

  double sum = 0.0, sq_sum = 0.0;
  long timeouts = 0;

  for (long t = 0; t < samples; ++t) {
    std::mt19937_64 rng = trajectory_rng(seed, t);
    std::normal_distribution<double> normal(0.0, 1.0);

    Coord w = x;
    std::size_t cell = grid.flat(grid.cell_of(w));
    double log_weight = 0.0;
    bool exited = false;

    for (long k = 0; k < max_steps; ++k) {
      log_weight -= problem.state_cost_at(cell) * inv_lambda * dt;
      const Coord f = problem.drift_at(cell);
      for (int a = 0; a < grid.ndim(); ++a) {
        const double dx = dt * f[a] + noise_std[a] * normal(rng);
        w[a] = grid.wrap_position(a, w[a] + dx);
      }
      cell = grid.flat(grid.cell_of(w));
      if (!map.is_free(cell)) {
        const double value = std::exp(log_weight - map.phi[cell] * inv_lambda);
        sum += value;
        sq_sum += value * value;
        exited = true;
        break;
      }
    }
    if (!exited) ++timeouts;
  }

  if (static_cast<double>(timeouts) > 0.01 * static_cast<double>(samples)) {
    throw std::runtime_error("nonconvergent walkers: step budget exhausted on > 1% of samples");
  }

  FkEstimate est;
  est.samples = samples - timeouts;
  est.timeouts = timeouts;
  const double n = static_cast<double>(est.samples);
  est.estimate = sum / n;
  const double var = std::max(0.0, sq_sum / n - est.estimate * est.estimate);
  est.stderr_ = std::sqrt(var / n);
  return est;
}

}  // namespace hjbnav
