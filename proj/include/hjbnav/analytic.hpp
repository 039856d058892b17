#pragma once

namespace hjbnav {

// Free-space solution of the 2D Laplace navigation problem: -log(r) / (2*pi).
double laplace_fundamental_2d(double r);

// Modified Bessel function of the second kind, order zero. Ascending series
// for x <= 2, Chebyshev expansion of exp(x)*sqrt(x)*K0(x) beyond.
double bessel_k0(double x);

// Free-space solution of (sigma/2) * lap(psi) = (alpha/lambda) * psi in 2D:
// K0(kappa * r) / (pi * sigma) with kappa = sqrt(2*alpha/(lambda*sigma)).
double screened_fundamental_2d(double r, double alpha, double lambda, double sigma);

// Exact solution of (sigma/2) * psi'' = (alpha/lambda) * psi on [0, 1] with
// psi(0) = psi(1) = 1: cosh(k*(x - 1/2)) / cosh(k/2), k = sqrt(2*alpha/(lambda*sigma)).
double screened_1d_profile(double x, double alpha, double lambda, double sigma);

}  // namespace hjbnav
