#include "hjbnav/analytic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hjbnav {

namespace {

constexpr double kEulerGamma = 0.5772156649015328606;

// Chebyshev coefficients of f(s) = exp(x) * sqrt(x) * K0(x), s = 4/x - 1,
// valid for x >= 2. f tends to sqrt(pi/2) as x grows.
constexpr double kK0LargeCoeffs[] = {
    1.22015154103297773,      -0.0314481013119645005,   0.00156988388573005337,
    -0.000128495495816278026, 1.39498137188764994e-5,   -1.83175552271911948e-6,
    2.76681363944501508e-7,   -4.66048989768794767e-8,  8.57403401741422609e-9,
    -1.69753450938906151e-9,  3.57739728140032843e-10,  -7.95748924447739664e-11,
    1.85594911495492557e-11,  -4.51459788337449452e-12, 1.14034058820728208e-12,
    -2.98009692314659991e-13, 8.03289077502797157e-14,  -2.22751332664203678e-14,
    6.34007647356355107e-15,  -1.8485933707991104e-15,  5.51205581076627606e-16,
    -1.67823062140378338e-16, 5.2103781613311048e-17,   -1.64754345936832217e-17,
    5.29941030471167316e-18,  -1.73031926646702131e-18, 5.67472187947175149e-19,
    -1.70977363361275429e-19,
};

double cheb_eval(double s, const double* coeffs, int n) {
  double b0 = 0.0, b1 = 0.0;
  for (int j = n - 1; j >= 1; --j) {
    const double t = 2.0 * s * b0 - b1 + coeffs[j];
    b1 = b0;
    b0 = t;
  }
  return s * b0 - b1 + coeffs[0];
}

// K0 via the ascending series around 0; accurate for x <= 2 where the
// cancellation against the log*I0 part stays mild.
double k0_small(double x) {
  const double q = 0.25 * x * x;
  double term = 1.0, i0 = 1.0, sum = 0.0, harmonic = 0.0;
  for (int k = 1; k < 40; ++k) {
    term *= q / (static_cast<double>(k) * k);
    i0 += term;
    harmonic += 1.0 / k;
    sum += term * harmonic;
    if (term < 1e-18 * i0) break;
  }
  return -(std::log(0.5 * x) + kEulerGamma) * i0 + sum;
}

}  // namespace

double laplace_fundamental_2d(double r) {
  if (!(r > 0.0)) throw std::invalid_argument("laplace_fundamental_2d requires r > 0");
  return -std::log(r) / (2.0 * std::numbers::pi);
}

double bessel_k0(double x) {
  if (!(x > 0.0)) throw std::invalid_argument("bessel_k0 requires x > 0");
  if (x <= 2.0) return k0_small(x);
  const double s = 4.0 / x - 1.0;
  const int n = sizeof(kK0LargeCoeffs) / sizeof(kK0LargeCoeffs[0]);
  return cheb_eval(s, kK0LargeCoeffs, n) * std::exp(-x) / std::sqrt(x);
}

double screened_fundamental_2d(double r, double alpha, double lambda, double sigma) {
  if (!(r > 0.0) || !(alpha > 0.0) || !(lambda > 0.0) || !(sigma > 0.0)) {
    throw std::invalid_argument("screened_fundamental_2d requires positive arguments");
  }
  const double kappa = std::sqrt(2.0 * alpha / (lambda * sigma));
  return bessel_k0(kappa * r) / (std::numbers::pi * sigma);
}

double screened_1d_profile(double x, double alpha, double lambda, double sigma) {
  if (x < 0.0 || x > 1.0) throw std::invalid_argument("screened_1d_profile requires x in [0, 1]");
  if (!(alpha >= 0.0) || !(lambda > 0.0) || !(sigma > 0.0)) {
    throw std::invalid_argument("screened_1d_profile requires alpha >= 0 and positive lambda, sigma");
  }
  const double k = std::sqrt(2.0 * alpha / (lambda * sigma));
  return std::cosh(k * (x - 0.5)) / std::cosh(0.5 * k);
}

}  // namespace hjbnav
