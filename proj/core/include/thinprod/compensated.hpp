#pragma once

#include <cmath>
#include <complex>

namespace thinprod {

// Neumaier-compensated accumulator. The result is bit-deterministic for a
// fixed order of add() calls, which the sieve pipeline guarantees.
struct CompensatedSum {
  double sum = 0.0;
  double comp = 0.0;

  void add(double x) {
    double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }

  double value() const { return sum + comp; }
};

struct ComplexSum {
  CompensatedSum re, im;

  void add(std::complex<double> z) {
    re.add(z.real());
    im.add(z.imag());
  }

  std::complex<double> value() const { return {re.value(), im.value()}; }
};

}  // namespace thinprod
