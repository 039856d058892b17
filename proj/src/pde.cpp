#include "hjbnav/pde.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "hjbnav/transform.hpp"

namespace hjbnav {

double PdeProblem::state_cost_at(std::size_t cell) const {
  if (const double* alpha = std::get_if<double>(&state_cost)) return *alpha;
  return std::get<std::vector<double>>(state_cost)[cell];
}

Coord PdeProblem::drift_at(std::size_t cell) const {
  if (drift.empty()) return Coord{};
  return drift[cell];
}

namespace {

void validate_problem(const PdeProblem& p) {
  const GridSpec& grid = p.map.grid;
  if (p.map.cells.size() != grid.total_cells()) {
    throw std::invalid_argument("map cell array does not match grid");
  }
  if (static_cast<int>(p.sigma_t.size()) != grid.ndim()) {
    throw std::invalid_argument("sigma_t must have one entry per axis");
  }
  for (double s : p.sigma_t) {
    if (!(s > 0.0) || !std::isfinite(s)) throw std::invalid_argument("sigma_t entries must be > 0");
  }
  if (!(p.lambda > 0.0)) throw std::invalid_argument("lambda must be > 0");

  const bool has_drift = !p.drift.empty();
  if ((p.variant == PdeVariant::FullLinearHJB) != has_drift) {
    throw std::invalid_argument(
        "variant/coefficient mismatch: drift field is required exactly for the full linear HJB");
  }
  if (has_drift && p.drift.size() != grid.total_cells()) {
    throw std::invalid_argument("drift field does not match grid");
  }

  if (const double* alpha = std::get_if<double>(&p.state_cost)) {
    if (!(*alpha >= 0.0)) throw std::invalid_argument("state cost must be >= 0");
    if (p.variant == PdeVariant::LaplaceNavigation && *alpha != 0.0) {
      throw std::invalid_argument("variant/coefficient mismatch: Laplace variant has no state cost");
    }
  } else {
    const auto& q = std::get<std::vector<double>>(p.state_cost);
    if (p.variant != PdeVariant::FullLinearHJB) {
      throw std::invalid_argument(
          "variant/coefficient mismatch: per-cell state cost requires the full linear HJB");
    }
    if (q.size() != grid.total_cells()) throw std::invalid_argument("state cost field does not match grid");
    for (double v : q) {
      if (!(v >= 0.0)) throw std::invalid_argument("state cost must be >= 0");
    }
  }
}

}  // namespace

StencilSystem assemble(const PdeProblem& problem) {
  validate_problem(problem);
  const CSpaceMap& map = problem.map;
  const GridSpec& grid = map.grid;
  const std::size_t total = grid.total_cells();

  StencilSystem sys;
  sys.grid = grid;
  sys.free_mask.assign(total, 0);
  sys.boundary_value.assign(total, 0.0);
  sys.free_index_of_cell.assign(total, -1);

  for (std::size_t f = 0; f < total; ++f) {
    if (map.is_free(f)) {
      sys.free_mask[f] = 1;
      sys.free_index_of_cell[f] = static_cast<int>(sys.free_cells.size());
      sys.free_cells.push_back(f);
    } else {
      sys.boundary_value[f] = transform_boundary(map.phi[f], problem.lambda);
    }
  }

  const std::size_t nfree = sys.free_cells.size();
  sys.center.assign(nfree, 0.0);
  sys.rhs.assign(nfree, 0.0);
  sys.nbr_begin.assign(nfree + 1, 0);
  sys.nbr_col.reserve(nfree * 2 * grid.ndim());
  sys.nbr_coeff.reserve(nfree * 2 * grid.ndim());

  for (std::size_t k = 0; k < nfree; ++k) {
    const std::size_t cell = sys.free_cells[k];
    const Index idx = grid.unflat(cell);
    const Coord f_drift = problem.drift_at(cell);

    double center = -problem.state_cost_at(cell) / problem.lambda;
    for (int a = 0; a < grid.ndim(); ++a) {
      const double h = grid.axis(a).spacing;
      const double diffusion = problem.sigma_t[a] / (2.0 * h * h);
      const double fa = f_drift[a];
      center -= 2.0 * diffusion + std::abs(fa) / h;

      for (int dir = -1; dir <= 1; dir += 2) {
        Index nb;
        if (!grid.neighbor(idx, a, dir, &nb)) {
          throw std::invalid_argument("free cell touches the open domain boundary");
        }
        double coeff = diffusion;
        if (dir > 0 && fa > 0.0) coeff += fa / h;    // upwind: forward difference
        if (dir < 0 && fa < 0.0) coeff += -fa / h;   // upwind: backward difference
        const std::size_t nf = grid.flat(nb);
        if (sys.free_mask[nf]) {
          sys.nbr_col.push_back(sys.free_index_of_cell[nf]);
          sys.nbr_coeff.push_back(coeff);
        } else {
          sys.rhs[k] -= coeff * sys.boundary_value[nf];
        }
      }
    }
    sys.center[k] = center;
    sys.nbr_begin[k + 1] = static_cast<int>(sys.nbr_col.size());
  }
  return sys;
}

SolveResult solve_system(const StencilSystem& sys, const SolveOptions& options) {
  if (!(options.tol > 0.0)) throw std::invalid_argument("tolerance must be > 0");
  if (!(options.relaxation > 0.0 && options.relaxation < 2.0)) {
    throw std::invalid_argument("relaxation factor must be in (0, 2)");
  }
  const std::size_t nfree = sys.free_count();

  long min_sweeps = options.min_sweeps;
  if (min_sweeps <= 0) {
    long dims = 0;
    for (int a = 0; a < sys.grid.ndim(); ++a) dims += sys.grid.cells(a);
    min_sweeps = 2 * dims;
  }

  std::vector<double> psi(nfree, 0.0);
  const double omega = options.relaxation;
  double residual = 0.0;
  long sweep = 0;

  for (sweep = 1; sweep <= options.max_sweeps; ++sweep) {
    for (std::size_t k = 0; k < nfree; ++k) {
      double acc = sys.rhs[k];
      for (int j = sys.nbr_begin[k]; j < sys.nbr_begin[k + 1]; ++j) {
        acc -= sys.nbr_coeff[j] * psi[sys.nbr_col[j]];
      }
      psi[k] = (1.0 - omega) * psi[k] + omega * acc / sys.center[k];
    }

    residual = 0.0;
    for (std::size_t k = 0; k < nfree; ++k) {
      double r = sys.center[k] * psi[k] - sys.rhs[k];
      for (int j = sys.nbr_begin[k]; j < sys.nbr_begin[k + 1]; ++j) {
        r += sys.nbr_coeff[j] * psi[sys.nbr_col[j]];
      }
      residual = std::max(residual, std::abs(r));
    }
    if (!std::isfinite(residual) || residual > 1e300) {
      throw std::runtime_error("divergence detected in relaxation sweep");
    }
    if (residual < options.tol && sweep >= min_sweeps) break;
  }

  if (residual >= options.tol) {
    std::ostringstream msg;
    msg << "did not converge within " << options.max_sweeps << " sweeps (residual " << residual
        << ")";
    throw std::runtime_error(msg.str());
  }
  long total_sweeps = std::min(sweep, options.max_sweeps);

  // Over-relaxation can leave sub-tolerance negative excursions in deep
  // exponential tails. Plain Gauss-Seidel preserves nonnegativity, so extra
  // unit-relaxation sweeps wash them out.
  auto min_value = [&] {
    double lo = 0.0;
    for (double v : psi) lo = std::min(lo, v);
    return lo;
  };
  if (min_value() < 0.0) {
    for (long extra = 0; extra < 4 * min_sweeps && min_value() < 0.0; ++extra) {
      for (std::size_t k = 0; k < nfree; ++k) {
        double acc = sys.rhs[k];
        for (int j = sys.nbr_begin[k]; j < sys.nbr_begin[k + 1]; ++j) {
          acc -= sys.nbr_coeff[j] * psi[sys.nbr_col[j]];
        }
        psi[k] = acc / sys.center[k];
      }
      ++total_sweeps;
    }
    if (min_value() < 0.0) {
      throw std::runtime_error("solver could not restore positivity of the desirability field");
    }
    residual = 0.0;
    for (std::size_t k = 0; k < nfree; ++k) {
      double r = sys.center[k] * psi[k] - sys.rhs[k];
      for (int j = sys.nbr_begin[k]; j < sys.nbr_begin[k + 1]; ++j) {
        r += sys.nbr_coeff[j] * psi[sys.nbr_col[j]];
      }
      residual = std::max(residual, std::abs(r));
    }
  }

  SolveResult out;
  out.field.grid = sys.grid;
  out.field.values = sys.boundary_value;
  for (std::size_t k = 0; k < nfree; ++k) out.field.values[sys.free_cells[k]] = psi[k];
  out.sweeps = total_sweeps;
  out.residual = residual;
  return out;
}

double residual_norm(const StencilSystem& sys, const DesirabilityField& field) {
  if (field.values.size() != sys.free_mask.size() || !(field.grid == sys.grid)) {
    throw std::invalid_argument("dimension mismatch between system and field");
  }
  double residual = 0.0;
  for (std::size_t k = 0; k < sys.free_count(); ++k) {
    double r = sys.center[k] * field.values[sys.free_cells[k]] - sys.rhs[k];
    for (int j = sys.nbr_begin[k]; j < sys.nbr_begin[k + 1]; ++j) {
      r += sys.nbr_coeff[j] * field.values[sys.free_cells[sys.nbr_col[j]]];
    }
    residual = std::max(residual, std::abs(r));
  }
  return residual;
}

}  // namespace hjbnav
