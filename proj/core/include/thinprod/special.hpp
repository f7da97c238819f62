#pragma once

#include <complex>

namespace thinprod {

// Euler-Mascheroni constant, 20 significant digits.
inline constexpr double kEulerGamma = 0.57721566490153286061;

// Digamma for x > 0: upward recurrence to x >= 10, then the asymptotic
// series through the x^-14 term. Absolute error stays below 1e-13.
double digamma(double x);

// Exponential integral E1(x) for x > 0. Used for prime-sum tail estimates:
// integral_{P0}^inf dt / (t^2 log t) = E1(log P0).
double expint_e1(double x);

// log(1 + z) without cancellation for small |z|; principal branch.
std::complex<double> clog1p(std::complex<double> z);

}  // namespace thinprod
