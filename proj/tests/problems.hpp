#pragma once

// Shared oracle problem builders for the solver tests and the acceptance run.

#include <cmath>
#include <numbers>

#include "hjbnav/analytic.hpp"
#include "hjbnav/grid.hpp"
#include "hjbnav/pde.hpp"

namespace problems {

// Annulus 0.5 < r < 2 with Dirichlet data from the Laplace fundamental
// solution. The data is shifted and scaled into (0, 1] so it can ride on the
// phi >= 0 boundary transform; both maps are harmonic, so the finite
// difference solution transforms back exactly the same way.
inline constexpr double kAnnulusShift = 1.0;
inline constexpr double kAnnulusScale = 2.0;  // keeps the data in (0, 1] down to r ~ 2e-3

inline double annulus_data(double r) {
  return (kAnnulusShift + hjbnav::laplace_fundamental_2d(r)) / kAnnulusScale;
}

inline hjbnav::PdeProblem annulus_problem(double h, double sigma) {
  using namespace hjbnav;
  CSpaceMap map;
  map.grid = GridSpec({Axis{-2.2, 2.2, h, false}, Axis{-2.2, 2.2, h, false}});
  map.cells.assign(map.grid.total_cells(), CellClass::Free);
  map.phi.assign(map.grid.total_cells(), 0.0);
  map.name = "annulus";
  for (std::size_t f = 0; f < map.grid.total_cells(); ++f) {
    const Index idx = map.grid.unflat(f);
    const Coord c = map.grid.cell_center(idx);
    const double r = std::hypot(c[0], c[1]);
    if (r > 0.5 && r < 2.0 && !map.grid.on_boundary_ring(idx)) continue;
    map.cells[f] = r <= 0.5 ? CellClass::Goal : CellClass::Exterior;
    map.phi[f] = -std::log(annulus_data(r));
  }
  map.rebuild_goal_list();

  PdeProblem problem;
  problem.variant = PdeVariant::LaplaceNavigation;
  problem.map = std::move(map);
  problem.sigma_t = {sigma, sigma};
  problem.lambda = 1.0;
  return problem;
}

// Max error of a solved annulus field against the fundamental solution,
// normalized by the sup of the exact values.
inline double annulus_error(const hjbnav::PdeProblem& problem, const hjbnav::DesirabilityField& psi) {
  using namespace hjbnav;
  double max_err = 0.0, max_exact = 0.0;
  for (std::size_t f = 0; f < problem.map.grid.total_cells(); ++f) {
    if (!problem.map.is_free(f)) continue;
    const Coord c = problem.map.grid.cell_center(problem.map.grid.unflat(f));
    const double exact = laplace_fundamental_2d(std::hypot(c[0], c[1]));
    const double numeric = kAnnulusScale * psi.values[f] - kAnnulusShift;
    max_err = std::max(max_err, std::abs(numeric - exact));
    max_exact = std::max(max_exact, std::abs(exact));
  }
  return max_err / max_exact;
}

// 1D Dirichlet problem for the screened reduction, with the exact cosh profile
// imposed at the two end cells.
inline hjbnav::PdeProblem screened_1d_problem(double h, double alpha, double lambda, double sigma) {
  using namespace hjbnav;
  CSpaceMap map;
  map.grid = GridSpec({Axis{0.0, 1.0, h, false}});
  const int n = map.grid.cells(0);
  map.cells.assign(map.grid.total_cells(), CellClass::Free);
  map.phi.assign(map.grid.total_cells(), 0.0);
  map.name = "screened-1d";
  for (int i : {0, n - 1}) {
    const double x = map.grid.center(0, i);
    map.cells[static_cast<std::size_t>(i)] = i == 0 ? CellClass::Exterior : CellClass::Goal;
    map.phi[static_cast<std::size_t>(i)] =
        -lambda * std::log(screened_1d_profile(x, alpha, lambda, sigma));
  }
  map.rebuild_goal_list();

  PdeProblem problem;
  problem.variant = PdeVariant::AugmentedNavigation;
  problem.map = std::move(map);
  problem.sigma_t = {sigma};
  problem.state_cost = alpha;
  problem.lambda = lambda;
  return problem;
}

inline double screened_1d_error(const hjbnav::PdeProblem& problem,
                                const hjbnav::DesirabilityField& psi, double alpha, double lambda,
                                double sigma) {
  using namespace hjbnav;
  double max_err = 0.0;
  for (std::size_t f = 0; f < problem.map.grid.total_cells(); ++f) {
    if (!problem.map.is_free(f)) continue;
    const double x = problem.map.grid.center(0, static_cast<int>(f));
    max_err = std::max(max_err, std::abs(psi.values[f] - screened_1d_profile(x, alpha, lambda, sigma)));
  }
  return max_err;
}

}  // namespace problems
