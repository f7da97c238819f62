#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "thinprod/products.hpp"
#include "thinprod/residue_group.hpp"
#include "thinprod/sieve.hpp"
#include "thinprod/special.hpp"

namespace thinprod {

enum class CMethod { williams, direct, both };

std::string to_string(CMethod method);

struct LValue {
  Character chi;
  int s = 1;
  std::complex<double> value;
};

// L(1, chi) = -(1/q) * sum_{a=1}^{q-1} chi(a) * digamma(a/q), valid for any
// non-principal chi mod q (the character sum vanishes). Principal chi has a
// pole at s = 1 and is rejected.
LValue l_value_at_1(const UnitGroup& group, const Character& chi);

struct WilliamsCorrection {
  Character chi;
  std::complex<double> value;    // truncated K_W(1, chi)
  std::uint64_t truncation = 0;  // P0
  double tail_bound = 0.0;       // bound on |log K_W - log value|
};

// K_W(1, chi) = prod_p (1 - chi(p)/p)^(-1) * (1 - 1/p)^chi(p), truncated at
// P0 and accumulated in the complex log domain. The omitted tail is below
// 2 * E1(log P0) in log magnitude.
WilliamsCorrection williams_correction(const UnitGroup& group, const Character& chi,
                                       std::uint64_t P0, SieveConfig cfg = {});

// Per-character data from one prime pass: log K_W and a branch-consistent
// log L(1, chi). Reused by every class of the same modulus.
struct WilliamsTable {
  Modulus mod;
  std::uint64_t P0 = 0;
  double tail_bound = 0.0;
  std::vector<Character> characters;             // index-aligned, principal first
  std::vector<std::complex<double>> log_kw;      // [0] unused
  std::vector<std::complex<double>> log_l;       // [0] unused
};

WilliamsTable williams_table(const UnitGroup& group, std::uint64_t P0, SieveConfig cfg = {});

// C(q, a) = (e^-gamma * 2 * prod_{chi != chi0} (K_W/L)^conj(chi(a)))^(1/phi).
// The log-sum must be real; an imaginary residue above 1e-9 is an error.
double williams_C(const UnitGroup& group, const UnitElement& a, const WilliamsTable& table);
double williams_C(const UnitGroup& group, const UnitElement& a, std::uint64_t P0,
                  SieveConfig cfg = {});

// (log x)^(1/phi) * prod_{p <= x, p = a (q)} (1 - 1/p): the definition of
// C(q, a) evaluated at finite x. Converges like 1/log x; used to cross-check
// the Williams route, never as the primary value.
double direct_C(const UnitGroup& group, const UnitElement& a, std::uint64_t x,
                SieveConfig cfg = {});

// D(q, a) = prod_{p = a (q)} (1 - 1/p^2), truncated at P0 with multiplicative
// tail correction exp(-E1(log P0)/phi) unless disabled.
double D_constant(const UnitGroup& group, const UnitElement& a, std::uint64_t P0,
                  bool tail_correction = true, SieveConfig cfg = {});

struct ConstantsBundle {
  Modulus mod;
  std::uint64_t P0 = 0;
  std::map<std::uint32_t, double> C;
  std::map<std::uint32_t, double> D;
  double gamma = kEulerGamma;
  double max_imag_residue = 0.0;  // worst |Im| seen in the Williams log-sums
};

ConstantsBundle constants_bundle(const UnitGroup& group, std::uint64_t P0, SieveConfig cfg = {});

struct LimitConstant {
  Selection selection;
  double K = 1.0;  // the reported value (Williams when both methods ran)
  CMethod method = CMethod::williams;
  std::uint64_t P0 = 0;
  std::uint64_t direct_x = 0;
  std::optional<double> williams_K;
  std::optional<double> direct_K;
  std::optional<double> discrepancy;  // |williams_K - direct_K| when both ran
};

// lim P_S(x) = prod_{a in S} (C(q,a)^2 / D(q,a))^chi4(a), defined only for
// balanced selections (mu = 0); otherwise UnbalancedSelectionError carries
// the predicted divergence exponent.
LimitConstant limit_constant(const UnitGroup& group, const Selection& s,
                             CMethod method = CMethod::williams, std::uint64_t P0 = 1'000'000,
                             std::uint64_t direct_x = 10'000'000, SieveConfig cfg = {});

}  // namespace thinprod
