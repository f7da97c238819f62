#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "thinprod/errors.hpp"
#include "thinprod/residue_group.hpp"

using namespace thinprod;

namespace {

// Brute-force decomposition a = (-1)^e0 * 5^e1 mod 2^m by trying every e1.
// Quadratic in q, used only for small moduli.
bool brute_decompose(std::uint32_t a, std::uint32_t q, std::uint32_t& e0, std::uint32_t& e1) {
  const std::uint32_t n5 = q >= 8 ? q / 4 : 1;
  std::uint64_t pow5 = 1;
  for (std::uint32_t k = 0; k < n5; ++k) {
    if (pow5 == a) {
      e0 = 0;
      e1 = k;
      return true;
    }
    if (q - pow5 == a) {
      e0 = 1;
      e1 = k;
      return true;
    }
    pow5 = pow5 * 5 % q;
  }
  return false;
}

}  // namespace

TEST_CASE("modulus construction and bounds") {
  const Modulus m = Modulus::from_exponent(5);
  CHECK(m.q == 32);
  CHECK(m.phi == 16);
  CHECK_THROWS_AS(Modulus::from_exponent(1), DomainError);
  CHECK_THROWS_AS(Modulus::from_exponent(31), DomainError);
}

TEST_CASE("decompose matches brute force for m <= 8 and is a bijection") {
  for (int m = 2; m <= 8; ++m) {
    const Modulus mod = Modulus::from_exponent(m);
    const UnitGroup group(mod);
    for (std::uint32_t a = 1; a < mod.q; a += 2) {
      const UnitElement u = group.decompose(a);
      std::uint32_t e0 = 0, e1 = 0;
      REQUIRE(brute_decompose(a, mod.q, e0, e1));
      CHECK(u.e0 == e0);
      CHECK(u.e1 == e1);
    }
  }
}

TEST_CASE("decompose examples") {
  const UnitGroup g16(Modulus::from_exponent(4));
  CHECK(g16.decompose(1).e0 == 0);
  CHECK(g16.decompose(1).e1 == 0);
  CHECK(g16.decompose(7).e0 == 1);
  CHECK(g16.decompose(7).e1 == 2);  // 7 = -9 = -5^2 (mod 16)
  const UnitGroup g8(Modulus::from_exponent(3));
  CHECK(g8.decompose(3).e0 == 1);
  CHECK(g8.decompose(3).e1 == 1);  // 3 = -5 (mod 8)
}

TEST_CASE("decompose rejects even and out-of-range input") {
  const UnitGroup group(Modulus::from_exponent(4));
  CHECK_THROWS_AS(group.decompose(6), InvalidResidueError);
  CHECK_THROWS_AS(group.decompose(0), InvalidResidueError);
  CHECK_THROWS_AS(group.decompose(17), InvalidResidueError);
  CHECK(group.element(-1).a == 15);  // element() normalizes first
  CHECK(group.element(33).a == 1);
  CHECK_THROWS_AS(group.element(4), InvalidResidueError);
}

TEST_CASE("chi4_sign and chi4 restriction") {
  CHECK(chi4_sign(1) == 1);
  CHECK(chi4_sign(13) == 1);
  CHECK(chi4_sign(3) == -1);
  CHECK(chi4_sign(7) == -1);
  CHECK_THROWS_AS(chi4_sign(4), InvalidResidueError);

  // (1,0) evaluates to chi4(a) on every modulus.
  for (int m = 2; m <= 6; ++m) {
    const UnitGroup group(Modulus::from_exponent(m));
    const Character chi4 = Character::chi4_class(group.modulus());
    for (std::uint32_t a : group.units())
      CHECK(group.evaluate(chi4, a).real() == doctest::Approx(chi4_sign(a)).epsilon(1e-15));
  }
}

TEST_CASE("character evaluation examples") {
  const UnitGroup g8(Modulus::from_exponent(3));
  // (0,1) mod 8 is the real character with chi(7) = +1 (kernel {1,7}).
  CHECK(g8.evaluate({0, 1, g8.modulus()}, 7) == std::complex<double>{1.0, 0.0});
  // (1,1) mod 8 has kernel {1,3}.
  CHECK(g8.evaluate({1, 1, g8.modulus()}, 3) == std::complex<double>{1.0, 0.0});
  // Non-coprime arguments give 0.
  CHECK(g8.evaluate({0, 1, g8.modulus()}, 6) == std::complex<double>{0.0, 0.0});
  CHECK(g8.evaluate({0, 1, g8.modulus()}, 12) == std::complex<double>{0.0, 0.0});
}

TEST_CASE("characters are multiplicative in the argument") {
  const UnitGroup group(Modulus::from_exponent(5));
  for (const Character& chi : group.characters())
    for (std::uint32_t a : {3u, 7u, 13u, 25u})
      for (std::uint32_t b : {5u, 9u, 31u}) {
        const std::complex<double> lhs = group.evaluate(chi, std::uint64_t(a) * b);
        const std::complex<double> rhs = group.evaluate(chi, a) * group.evaluate(chi, b);
        CHECK(std::abs(lhs - rhs) <= 1e-15);
      }
}

TEST_CASE("character index algebra: conjugate, product, realness") {
  const UnitGroup group(Modulus::from_exponent(4));
  const std::vector<Character> chars = group.characters();
  CHECK(chars.size() == 8);
  CHECK(chars[0].is_principal());
  for (const Character& chi : chars) {
    const Character bar = chi.conjugate();
    for (std::uint32_t a : group.units()) {
      CHECK(std::abs(group.evaluate(bar, a) - std::conj(group.evaluate(chi, a))) <= 1e-15);
      if (chi.is_real()) CHECK(std::abs(group.evaluate(chi, a).imag()) <= 1e-15);
    }
  }
  // chi * conj(chi) is principal.
  for (const Character& chi : chars) {
    const Character prod = chi.times(chi.conjugate());
    CHECK(prod.is_principal());
  }
}

TEST_CASE("orthogonality over classes and over characters, m <= 6") {
  for (int m = 2; m <= 6; ++m) {
    const UnitGroup group(Modulus::from_exponent(m));
    const std::uint32_t phi = group.modulus().phi;
    const std::vector<Character> chars = group.characters();

    for (const Character& chi : chars) {
      std::complex<double> sum = 0.0;
      for (std::uint32_t a : group.units()) sum += group.evaluate(chi, a);
      const double want = chi.is_principal() ? static_cast<double>(phi) : 0.0;
      CHECK(std::abs(sum - want) <= 1e-12);
    }
    for (std::uint32_t a : group.units()) {
      std::complex<double> sum = 0.0;
      for (const Character& chi : chars) sum += group.evaluate(chi, a);
      const double want = a == 1 ? static_cast<double>(phi) : 0.0;
      CHECK(std::abs(sum - want) <= 1e-12);
    }
  }
}

TEST_CASE("selection normalization, mu, and predicted exponent") {
  const Modulus q16 = Modulus::from_exponent(4);
  const Selection s = Selection::from_residues(q16, {15, 1});
  CHECK(s.classes == std::vector<std::uint32_t>{1, 15});
  CHECK(s.mu == 0);
  CHECK(s.balanced());
  CHECK(to_string(s.predicted_exponent) == "0");

  // {3,13} mod 16: 13 is 1 mod 4, so mu = -1 + 1 = 0.
  const Selection t = Selection::from_residues(q16, {3, 13});
  CHECK(t.mu == 0);

  const Selection u = Selection::from_residues(Modulus::from_exponent(2), {3});
  CHECK(u.mu == -1);
  CHECK(to_string(u.predicted_exponent) == "1");

  const Selection v = Selection::from_residues(q16, {3, 7});
  CHECK(v.mu == -2);
  CHECK(to_string(v.predicted_exponent) == "1/2");

  // Raw residues reduce into [1, q); 17 = 1 (mod 16), -1 = 15 (mod 16).
  const Selection w = Selection::from_residues(q16, {17, -1});
  CHECK(w.classes == std::vector<std::uint32_t>{1, 15});

  CHECK_THROWS_AS(Selection::from_residues(q16, {2}), InvalidResidueError);
  CHECK_THROWS_AS(Selection::from_residues(q16, {1, 17}), InvalidResidueError);  // duplicate
}

TEST_CASE("fourier coefficients of selection indicators") {
  const UnitGroup group(Modulus::from_exponent(4));
  const Selection s = Selection::from_residues(group.modulus(), {1, 15});

  // Inversion: (1/phi) sum_chi fourier(chi) chi(b) recovers the indicator.
  for (std::uint32_t b : group.units()) {
    std::complex<double> sum = 0.0;
    for (const Character& chi : group.characters())
      sum += fourier_coefficient(group, s, chi) * group.evaluate(chi, b);
    const double want = s.contains(b) ? 1.0 : 0.0;
    CHECK(std::abs(sum / static_cast<double>(group.modulus().phi) - want) <= 1e-12);
  }

  // Principal coefficient counts the classes.
  CHECK(fourier_coefficient(group, s, Character::principal(group.modulus())).real() ==
        doctest::Approx(2.0));

  const UnitGroup other(Modulus::from_exponent(3));
  CHECK_THROWS_AS(fourier_coefficient(other, s, Character::principal(other.modulus())),
                  MismatchError);
}
