#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "thinprod/errors.hpp"
#include "thinprod/rational.hpp"

namespace thinprod {

// Power-of-two modulus q = 2^m, m >= 2. phi(q) = q/2.
struct Modulus {
  int m = 2;
  std::uint32_t q = 4;
  std::uint32_t phi = 2;

  static constexpr int kMaxExponent = 30;
  static Modulus from_exponent(int m);
};

inline bool operator==(const Modulus& a, const Modulus& b) { return a.q == b.q; }

// Odd residue a mod 2^m written as (-1)^e0 * 5^e1 with e1 in [0, 2^(m-2)).
// For m = 2 the 5-part is trivial and e1 = 0.
struct UnitElement {
  std::uint32_t a = 1;
  std::uint32_t e0 = 0;
  std::uint32_t e1 = 0;
  Modulus mod;
};

// Dirichlet character mod 2^m indexed by (j0, j1):
//   chi(a) = (-1)^(j0*e0) * omega^(j1*e1),  omega = exp(2 pi i / 2^(m-2)).
// Index arithmetic keeps conjugation and products exact.
struct Character {
  std::uint32_t j0 = 0;
  std::uint32_t j1 = 0;
  Modulus mod;

  bool is_principal() const { return j0 == 0 && j1 == 0; }
  // chi takes only values +-1 iff 2*j1 = 0 mod 2^(m-2).
  bool is_real() const;
  Character conjugate() const;
  Character times(const Character& other) const;

  static Character principal(const Modulus& mod) { return {0, 0, mod}; }
  // (1,0) restricts to the nontrivial character mod 4 on every q = 2^m.
  static Character chi4_class(const Modulus& mod) { return {1, 0, mod}; }
};

// +1 for a = 1 (mod 4), -1 for a = 3 (mod 4). Even input is rejected.
int chi4_sign(std::uint64_t a);

// Unit group (Z/2^m Z)^x with discrete-log and root-of-unity tables.
// The dlog table is built by one pass multiplying by 5, so construction is
// O(q); m is capped at Modulus::kMaxExponent.
class UnitGroup {
 public:
  explicit UnitGroup(const Modulus& mod);

  const Modulus& modulus() const { return mod_; }

  // Strict: requires odd a in [1, q).
  UnitElement decompose(std::uint32_t a) const;
  // Normalizes any integer into [1, q) first; rejects even residues.
  UnitElement element(std::int64_t raw) const;

  // chi(a). Returns 0 for a not coprime to q; unit values are exact on the
  // real/imaginary axes and within 1 ulp elsewhere.
  std::complex<double> evaluate(const Character& chi, std::uint64_t a) const;

  // Order of the value group, N = 2^(m-1). chi(a) = root(root_index(chi, a)).
  std::uint32_t root_order() const { return static_cast<std::uint32_t>(roots_.size()); }
  std::uint32_t root_index(const Character& chi, const UnitElement& u) const;
  std::complex<double> root(std::uint32_t t) const { return roots_[t % roots_.size()]; }

  std::vector<Character> characters() const;  // all phi(q), principal first
  std::vector<std::uint32_t> units() const;   // 1, 3, ..., q-1

 private:
  Modulus mod_;
  std::vector<std::uint32_t> dlog_;  // index (a-1)/2 -> e0 in bit 31, e1 below
  std::vector<std::complex<double>> roots_;
};

// Normalized set of residue classes mod 2^m. mu and the predicted exponent
// -2*mu/phi(q) of the partial-product growth are fixed at construction.
struct Selection {
  Modulus mod;
  std::vector<std::uint32_t> classes;  // sorted, unique, odd, in [1, q)
  int mu = 0;
  Rational predicted_exponent{0, 1};

  // Reduces raw residues into [1, q); rejects even values and duplicates.
  static Selection from_residues(const Modulus& mod, const std::vector<std::int64_t>& raw);

  bool contains(std::uint32_t a) const;
  bool balanced() const { return mu == 0; }
};

inline int mu(const Selection& s) { return s.mu; }
inline Rational predicted_exponent(const Selection& s) { return s.predicted_exponent; }

// Fourier coefficient of the indicator of S: sum_{a in S} conj(chi(a)).
std::complex<double> fourier_coefficient(const UnitGroup& group, const Selection& s,
                                         const Character& chi);

}  // namespace thinprod
