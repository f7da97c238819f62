#include "thinprod/residue_group.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "thinprod/compensated.hpp"

namespace thinprod {

namespace {

constexpr std::uint32_t kE0Bit = 0x8000'0000u;

}  // namespace

Modulus Modulus::from_exponent(int m) {
  if (m < 2 || m > kMaxExponent)
    throw DomainError("modulus exponent must be in [2, " + std::to_string(kMaxExponent) +
                      "], got " + std::to_string(m));
  Modulus mod;
  mod.m = m;
  mod.q = std::uint32_t{1} << m;
  mod.phi = mod.q >> 1;
  return mod;
}

int chi4_sign(std::uint64_t a) {
  if (a % 2 == 0)
    throw InvalidResidueError("chi4 is defined on odd residues, got " + std::to_string(a));
  return a % 4 == 1 ? 1 : -1;
}

bool Character::is_real() const {
  std::uint32_t n5 = mod.m == 2 ? 1 : (std::uint32_t{1} << (mod.m - 2));
  return (2 * j1) % n5 == 0;
}

Character Character::conjugate() const {
  std::uint32_t n5 = mod.m == 2 ? 1 : (std::uint32_t{1} << (mod.m - 2));
  return {j0, (n5 - j1) % n5, mod};
}

Character Character::times(const Character& other) const {
  if (!(mod == other.mod)) throw MismatchError("character product across different moduli");
  std::uint32_t n5 = mod.m == 2 ? 1 : (std::uint32_t{1} << (mod.m - 2));
  return {(j0 + other.j0) & 1u, (j1 + other.j1) % n5, mod};
}

UnitGroup::UnitGroup(const Modulus& mod) : mod_(mod) {
  const std::uint32_t q = mod_.q;
  const std::uint32_t n5 = mod_.m == 2 ? 1 : (std::uint32_t{1} << (mod_.m - 2));

  // a = +-5^k covers every odd residue exactly once.
  dlog_.assign(q >> 1, 0);
  std::uint64_t t = 1;
  for (std::uint32_t k = 0; k < n5; ++k) {
    dlog_[static_cast<std::uint32_t>(t) >> 1] = k;
    dlog_[(q - static_cast<std::uint32_t>(t)) >> 1] = kE0Bit | k;
    t = (t * 5) % q;
  }

  const std::uint32_t order = mod_.phi;  // N = 2^(m-1)
  roots_.resize(order);
  for (std::uint32_t k = 0; k < order; ++k) {
    if ((4ull * k) % order == 0) {
      // Quadrant values stay exact.
      switch ((4ull * k / order) % 4) {
        case 0: roots_[k] = {1.0, 0.0}; break;
        case 1: roots_[k] = {0.0, 1.0}; break;
        case 2: roots_[k] = {-1.0, 0.0}; break;
        default: roots_[k] = {0.0, -1.0}; break;
      }
    } else {
      double theta = 2.0 * std::numbers::pi * k / order;
      roots_[k] = {std::cos(theta), std::sin(theta)};
    }
  }
}

UnitElement UnitGroup::decompose(std::uint32_t a) const {
  if (a % 2 == 0 || a >= mod_.q || a < 1)
    throw InvalidResidueError("residue " + std::to_string(a) + " is not a unit mod " +
                              std::to_string(mod_.q));
  std::uint32_t packed = dlog_[a >> 1];
  return {a, packed >> 31, packed & ~kE0Bit, mod_};
}

UnitElement UnitGroup::element(std::int64_t raw) const {
  std::int64_t q = mod_.q;
  std::uint32_t a = static_cast<std::uint32_t>(((raw % q) + q) % q);
  if (a % 2 == 0)
    throw InvalidResidueError("residue " + std::to_string(raw) + " is even mod " +
                              std::to_string(mod_.q));
  return decompose(a);
}

std::uint32_t UnitGroup::root_index(const Character& chi, const UnitElement& u) const {
  const std::uint32_t order = mod_.phi;
  std::uint64_t t = 0;
  if (chi.j0 && u.e0) t += order >> 1;  // (-1)^(j0 e0) = root at N/2
  t += 2ull * chi.j1 * u.e1;
  return static_cast<std::uint32_t>(t % order);
}

std::complex<double> UnitGroup::evaluate(const Character& chi, std::uint64_t a) const {
  if (!(chi.mod == mod_)) throw MismatchError("character evaluated against a different modulus");
  if (a % 2 == 0) return {0.0, 0.0};
  UnitElement u = decompose(static_cast<std::uint32_t>(a % mod_.q));
  return roots_[root_index(chi, u)];
}

std::vector<Character> UnitGroup::characters() const {
  const std::uint32_t n5 = mod_.m == 2 ? 1 : (std::uint32_t{1} << (mod_.m - 2));
  std::vector<Character> out;
  out.reserve(mod_.phi);
  for (std::uint32_t j0 = 0; j0 < 2; ++j0)
    for (std::uint32_t j1 = 0; j1 < n5; ++j1) out.push_back({j0, j1, mod_});
  return out;
}

std::vector<std::uint32_t> UnitGroup::units() const {
  std::vector<std::uint32_t> out;
  out.reserve(mod_.phi);
  for (std::uint32_t a = 1; a < mod_.q; a += 2) out.push_back(a);
  return out;
}

Selection Selection::from_residues(const Modulus& mod, const std::vector<std::int64_t>& raw) {
  Selection s;
  s.mod = mod;
  s.classes.reserve(raw.size());
  const std::int64_t q = mod.q;
  for (std::int64_t v : raw) {
    std::uint32_t a = static_cast<std::uint32_t>(((v % q) + q) % q);
    if (a % 2 == 0)
      throw InvalidResidueError("class " + std::to_string(v) + " is even mod " + std::to_string(q));
    s.classes.push_back(a);
  }
  std::sort(s.classes.begin(), s.classes.end());
  auto dup = std::adjacent_find(s.classes.begin(), s.classes.end());
  if (dup != s.classes.end())
    throw InvalidResidueError("duplicate class " + std::to_string(*dup) + " mod " +
                              std::to_string(q));
  for (std::uint32_t a : s.classes) s.mu += chi4_sign(a);
  s.predicted_exponent = make_rational(-2 * static_cast<std::int64_t>(s.mu), mod.phi);
  return s;
}

bool Selection::contains(std::uint32_t a) const {
  return std::binary_search(classes.begin(), classes.end(), a);
}

std::complex<double> fourier_coefficient(const UnitGroup& group, const Selection& s,
                                         const Character& chi) {
  if (!(s.mod == group.modulus()) || !(chi.mod == group.modulus()))
    throw MismatchError("fourier_coefficient requires selection, character, and group over one modulus");
  ComplexSum sum;
  for (std::uint32_t a : s.classes) sum.add(std::conj(group.evaluate(chi, a)));
  return sum.value();
}

}  // namespace thinprod
