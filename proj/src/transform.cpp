#include "hjbnav/transform.hpp"

#include <cmath>
#include <stdexcept>

namespace hjbnav {

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(const std::vector<double>& d) {
  Matrix m(static_cast<int>(d.size()), static_cast<int>(d.size()));
  for (int i = 0; i < m.rows; ++i) m(i, i) = d[static_cast<std::size_t>(i)];
  return m;
}

Matrix Matrix::scaled_identity(int n, double s) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = s;
  return m;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols != b.rows) throw std::invalid_argument("matrix dimension mismatch");
  Matrix out(a.rows, b.cols);
  for (int i = 0; i < a.rows; ++i) {
    for (int k = 0; k < a.cols; ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < b.cols; ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

Matrix transpose(const Matrix& m) {
  Matrix out(m.cols, m.rows);
  for (int i = 0; i < m.rows; ++i) {
    for (int j = 0; j < m.cols; ++j) out(j, i) = m(i, j);
  }
  return out;
}

namespace {

void check_symmetric(const Matrix& m, const char* what) {
  if (m.rows != m.cols) throw std::invalid_argument(std::string(what) + " must be square");
  double scale = 0.0;
  for (double v : m.a) scale = std::max(scale, std::abs(v));
  for (int i = 0; i < m.rows; ++i) {
    for (int j = i + 1; j < m.cols; ++j) {
      if (std::abs(m(i, j) - m(j, i)) > 1e-12 * std::max(scale, 1.0)) {
        throw std::invalid_argument(std::string(what) + " must be symmetric");
      }
    }
  }
}

// Cholesky factor (lower). Throws when a pivot is at or below the tolerance,
// i.e. the matrix is not positive definite.
Matrix cholesky(const Matrix& m, const char* what) {
  check_symmetric(m, what);
  const int n = m.rows;
  Matrix l(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      double s = m(i, j);
      for (int k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      if (i == j) {
        if (s <= 1e-12) {
          throw std::invalid_argument(std::string(what) + " must be positive definite");
        }
        l(i, i) = std::sqrt(s);
      } else {
        l(i, j) = s / l(j, j);
      }
    }
  }
  return l;
}

}  // namespace

Matrix inverse_spd(const Matrix& m) {
  const Matrix l = cholesky(m, "matrix");
  const int n = m.rows;
  // Solve L L' X = I column by column.
  Matrix inv(n, n);
  std::vector<double> y(n);
  for (int c = 0; c < n; ++c) {
    for (int i = 0; i < n; ++i) {
      double s = (i == c) ? 1.0 : 0.0;
      for (int k = 0; k < i; ++k) s -= l(i, k) * y[k];
      y[static_cast<std::size_t>(i)] = s / l(i, i);
    }
    for (int i = n - 1; i >= 0; --i) {
      double s = y[static_cast<std::size_t>(i)];
      for (int k = i + 1; k < n; ++k) s -= l(k, i) * inv(k, c);
      inv(i, c) = s / l(i, i);
    }
  }
  return inv;
}

Calibration calibrate_lambda(const ControlModel& control, const NoiseModel& noise) {
  const Matrix& g = control.G;
  const Matrix& r = control.R;
  const Matrix& b = noise.B;
  if (g.rows == 0 || r.rows != g.cols || b.rows != g.rows || noise.sigma_eps.rows != b.cols) {
    throw std::invalid_argument("control/noise model dimensions are inconsistent");
  }
  check_symmetric(noise.sigma_eps, "Sigma_eps");

  const Matrix m = matmul(matmul(g, inverse_spd(r)), transpose(g));
  const Matrix sigma_t = matmul(matmul(b, noise.sigma_eps), transpose(b));
  const int n = g.rows;

  double max_abs = 0.0;
  for (double v : sigma_t.a) max_abs = std::max(max_abs, std::abs(v));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j && std::abs(sigma_t(i, j)) > 1e-12 * max_abs) {
        throw std::invalid_argument("unsupported covariance: Sigma_t must be diagonal");
      }
    }
  }

  // Pick lambda from the largest entry of M, then verify proportionality on
  // every entry that is nonzero on either side.
  double m_max = 0.0;
  double lambda = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (std::abs(m(i, j)) > m_max) {
        m_max = std::abs(m(i, j));
        lambda = sigma_t(i, j) / m(i, j);
      }
    }
  }
  if (m_max == 0.0 || !(lambda > 0.0)) {
    throw std::invalid_argument("noise assumption violated: no positive scale factor");
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double lhs = lambda * m(i, j);
      const double rhs = sigma_t(i, j);
      const double scale = std::max(std::abs(lhs), std::abs(rhs));
      if (scale > 1e-12 * max_abs && std::abs(lhs - rhs) > 1e-6 * scale) {
        throw std::invalid_argument(
            "noise assumption violated: G R^-1 G' and Sigma_t are not proportional");
      }
    }
  }

  Calibration cal;
  cal.lambda = lambda;
  cal.sigma_t.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) cal.sigma_t[static_cast<std::size_t>(i)] = sigma_t(i, i);
  return cal;
}

ValueField desirability_to_value(const DesirabilityField& psi, double lambda, double floor) {
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be > 0");
  if (!(floor > 0.0)) throw std::invalid_argument("floor must be > 0");
  ValueField v;
  v.grid = psi.grid;
  v.values.resize(psi.values.size());
  for (std::size_t i = 0; i < psi.values.size(); ++i) {
    v.values[i] = -lambda * std::log(std::max(psi.values[i], floor));
  }
  return v;
}

DesirabilityField value_to_desirability(const ValueField& value, double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be > 0");
  DesirabilityField psi;
  psi.grid = value.grid;
  psi.values.resize(value.values.size());
  for (std::size_t i = 0; i < value.values.size(); ++i) {
    psi.values[i] = std::exp(-value.values[i] / lambda);
  }
  return psi;
}

double transform_boundary(double phi, double lambda) {
  if (!(phi >= 0.0)) throw std::invalid_argument("phi must be >= 0");
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be > 0");
  return std::exp(-phi / lambda);
}

ScaledParams equivalent_scaling(double lambda, const std::vector<double>& sigma_t, double gamma,
                                double beta) {
  if (!(gamma > 0.0) || !(beta > 0.0)) throw std::invalid_argument("gamma and beta must be > 0");
  ScaledParams out;
  out.lambda = beta * gamma * lambda;
  out.sigma_t = sigma_t;
  for (double& s : out.sigma_t) s *= gamma;
  out.r_scale = beta;
  return out;
}

}  // namespace hjbnav
