#include "thinprod/special.hpp"

#include <cmath>

#include "thinprod/compensated.hpp"
#include "thinprod/errors.hpp"

namespace thinprod {

double digamma(double x) {
  if (!(x > 0.0)) throw DomainError("digamma requires x > 0");

  // psi(x) = psi(x + n) - sum_{j<n} 1/(x + j); shift until the asymptotic
  // series applies. The shift sum is compensated because its leading term
  // can be as large as 1/x itself.
  CompensatedSum shift;
  while (x < 10.0) {
    shift.add(1.0 / x);
    x += 1.0;
  }

  // psi(x) ~ log x - 1/(2x) - sum_k B_{2k} / (2k x^{2k}), through x^-14;
  // first omitted term is below 5e-17 for x >= 10.
  const double z = 1.0 / (x * x);
  const double poly =
      1.0 / 12 -
      z * (1.0 / 120 -
           z * (1.0 / 252 -
                z * (1.0 / 240 - z * (1.0 / 132 - z * (691.0 / 32760 - z * (1.0 / 12))))));
  return std::log(x) - 0.5 / x - z * poly - shift.value();
}

double expint_e1(double x) {
  if (!(x > 0.0)) throw DomainError("expint_e1 requires x > 0");
  if (x < 1.0) {
    // Power series E1(x) = -gamma - log x + sum (-1)^(k+1) x^k / (k k!).
    double sum = -kEulerGamma - std::log(x);
    double term = 1.0;
    for (int k = 1; k < 40; ++k) {
      term *= -x / k;
      sum -= term / k;
      if (std::abs(term / k) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
  }
  // Continued fraction E1(x) = e^-x / (x + 1 - 1 / (x + 3 - 4 / (x + 5 - ...)))
  // by the modified Lentz scheme.
  const double tiny = 1e-300;
  double b = x + 1.0;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 200; ++i) {
    const double a = -static_cast<double>(i) * i;
    b += 2.0;
    d = 1.0 / (a * d + b);
    c = b + a / c;
    const double del = c * d;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) break;
  }
  return h * std::exp(-x);
}

std::complex<double> clog1p(std::complex<double> z) {
  const double a = z.real();
  const double b = z.imag();
  return {0.5 * std::log1p(2.0 * a + a * a + b * b), std::atan2(b, 1.0 + a)};
}

}  // namespace thinprod
