#pragma once

#include <complex>

namespace qcorr::special {

/// Principal log-Gamma for complex z off the non-positive integers
/// (Lanczos, g = 7, reflection for Re z < 1/2). Relative accuracy ~1e-14.
std::complex<double> lgamma(std::complex<double> z);

/// ln|Gamma(x + i y)|^2 for real x > 0.
double log_abs_gamma_sq(double x, double y);

}  // namespace qcorr::special
