#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include "hjbnav/grid.hpp"

namespace hjbnav {

// The three desirability PDEs, ordered from full model to the noise-scaled
// Laplace reduction.
enum class PdeVariant { FullLinearHJB, AugmentedNavigation, LaplaceNavigation };

// Elliptic problem statement on a configuration-space map. sigma_t is the
// per-axis diagonal of the effective noise covariance; state_cost is either a
// uniform rate alpha or a per-cell field.
struct PdeProblem {
  PdeVariant variant = PdeVariant::LaplaceNavigation;
  CSpaceMap map;
  std::vector<double> sigma_t;
  std::vector<Coord> drift;  // per-cell, FullLinearHJB only
  std::variant<double, std::vector<double>> state_cost = 0.0;
  double lambda = 1.0;

  double state_cost_at(std::size_t cell) const;
  Coord drift_at(std::size_t cell) const;
};

// One linear equation per Free cell, with Dirichlet data from non-Free
// neighbors folded into the right-hand side. Rows satisfy the M-matrix sign
// pattern: center < 0, neighbor coefficients >= 0.
struct StencilSystem {
  GridSpec grid;
  std::vector<char> free_mask;           // per cell
  std::vector<double> boundary_value;    // per cell; exp(-phi/lambda) where non-Free
  std::vector<std::size_t> free_cells;   // lexicographic
  std::vector<int> free_index_of_cell;   // -1 for non-Free
  std::vector<double> center;
  std::vector<double> rhs;
  std::vector<int> nbr_begin;            // CSR, size nfree + 1
  std::vector<int> nbr_col;
  std::vector<double> nbr_coeff;

  std::size_t free_count() const { return free_cells.size(); }
};

// Desirability over the whole grid; non-Free cells hold their Dirichlet values.
struct DesirabilityField {
  GridSpec grid;
  std::vector<double> values;
};

StencilSystem assemble(const PdeProblem& problem);

struct SolveOptions {
  double tol = 1e-8;
  long max_sweeps = 2000000;
  double relaxation = 1.7;
  // Sweeps run at least this long so values propagate across the grid before
  // the residual check can stop them; 0 picks 2 * (sum of axis cell counts).
  long min_sweeps = 0;
};

struct SolveResult {
  DesirabilityField field;
  long sweeps = 0;
  double residual = 0.0;
};

// Successive over-relaxation in fixed lexicographic order until the maximum
// absolute Free-cell residual drops below tol. Throws on divergence and on
// non-convergence within max_sweeps (the message carries the last residual).
SolveResult solve_system(const StencilSystem& system, const SolveOptions& options = {});

// Max over Free cells of |row . psi - rhs|.
double residual_norm(const StencilSystem& system, const DesirabilityField& field);

}  // namespace hjbnav
