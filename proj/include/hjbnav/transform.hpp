#pragma once

#include <vector>

#include "hjbnav/pde.hpp"

namespace hjbnav {

// Small dense matrix, row-major. Sized for control/noise models, not for grids.
struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> a;

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0.0) {}

  double& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  double operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

  static Matrix identity(int n);
  static Matrix diagonal(const std::vector<double>& d);
  static Matrix scaled_identity(int n, double s);
};

Matrix matmul(const Matrix& a, const Matrix& b);
Matrix transpose(const Matrix& m);
// Inverse of a symmetric positive-definite matrix via Cholesky; throws if any
// pivot falls at or below 1e-12.
Matrix inverse_spd(const Matrix& m);

// Control-effort model: dx picks up G u, penalized by (1/2) u' R u.
struct ControlModel {
  Matrix G;
  Matrix R;
};

// Input-noise model: dx picks up B L dw with Sigma_eps = L L'.
struct NoiseModel {
  Matrix B;
  Matrix sigma_eps;
};

// Matched-noise parameters: lambda G R^-1 G' = B Sigma_eps B' = diag(sigma_t).
struct Calibration {
  double lambda = 0.0;
  std::vector<double> sigma_t;
};

// Solves the matching condition for lambda. Throws "noise assumption violated"
// when G R^-1 G' and B Sigma_eps B' are not proportional, and "unsupported
// covariance" when the effective covariance is not diagonal.
Calibration calibrate_lambda(const ControlModel& control, const NoiseModel& noise);

// Cost-to-go over the whole grid, V = -lambda log(psi).
struct ValueField {
  GridSpec grid;
  std::vector<double> values;
};

// The floor clamps psi before the log so underflowed regions stay finite.
ValueField desirability_to_value(const DesirabilityField& psi, double lambda,
                                 double floor = 1e-300);
DesirabilityField value_to_desirability(const ValueField& value, double lambda);

// Dirichlet data for the desirability PDE: exp(-phi / lambda).
double transform_boundary(double phi, double lambda);

// Joint rescaling of noise (gamma) and control penalty (beta). The Laplace
// solution keeps its shape; only lambda, sigma_t and the R scale move.
struct ScaledParams {
  double lambda = 0.0;
  std::vector<double> sigma_t;
  double r_scale = 1.0;
};

ScaledParams equivalent_scaling(double lambda, const std::vector<double>& sigma_t, double gamma,
                                double beta);

}  // namespace hjbnav
