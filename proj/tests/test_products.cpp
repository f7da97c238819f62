#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "thinprod/errors.hpp"
#include "thinprod/products.hpp"
#include "thinprod/residue_group.hpp"

using namespace thinprod;

namespace {

Selection sel(int m, std::vector<std::int64_t> classes) {
  return Selection::from_residues(Modulus::from_exponent(m), classes);
}

}  // namespace

TEST_CASE("single factors: A(3) = 2, A(5) = 2/3, A(7) = 4/3") {
  CHECK(std::exp(log_factor(3)) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(std::exp(log_factor(5)) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(std::exp(log_factor(7)) == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
  CHECK(factor_value(13).chi4p == 1);
  CHECK(factor_value(19).chi4p == -1);
  CHECK_THROWS_AS(log_factor(2), DomainError);
  CHECK_THROWS_AS(log_factor(1), DomainError);
}

TEST_CASE("factor identity A(p) = (1 - chi4(p)/p)^2 / (1 - 1/p^2) for p < 1e4") {
  SieveConfig cfg;
  cfg.limit = 10'000;
  cfg.odd_only = true;
  enumerate_primes(cfg, [](std::uint64_t p) { CHECK(verify_factored_form(p)); });
}

TEST_CASE("full product over {1,3} mod 4 at x = 10 is 16/9") {
  const ProductSeries series = partial_products(sel(2, {1, 3}), {10});
  REQUIRE(series.checkpoints.size() == 1);
  CHECK(series.checkpoints[0].product == doctest::Approx(16.0 / 9.0).epsilon(1e-14));
  CHECK(series.checkpoints[0].primes_used == 3);
}

TEST_CASE("checkpoints below 3 hold the empty product") {
  const ProductSeries series = partial_products(sel(2, {1, 3}), {2, 10});
  CHECK(series.checkpoints[0].product == 1.0);
  CHECK(series.checkpoints[0].log_product == 0.0);
  CHECK(series.checkpoints[0].primes_used == 0);
}

TEST_CASE("reference series values at small checkpoints") {
  // Balanced selections: {+-1 mod 8} at 1e4 and {+-1 mod 16} at 1e6.
  const ProductSeries p8 = partial_products(sel(3, {1, 7}), {10'000});
  CHECK(p8.checkpoints[0].product == doctest::Approx(1.4113275632).epsilon(2e-10));
  const ProductSeries p16 = partial_products(sel(4, {1, 15}), {1'000'000});
  CHECK(p16.checkpoints[0].product == doctest::Approx(1.0000256406).epsilon(2e-10));
}

TEST_CASE("log products add over disjoint selections") {
  const std::vector<std::uint64_t> cps = {1'000, 50'000};
  const ClassSeriesTable table = accumulate_classes(Modulus::from_exponent(3), cps);
  const ProductSeries whole = partial_products(table, sel(3, {1, 3, 5, 7}));
  const ProductSeries left = partial_products(table, sel(3, {1, 7}));
  const ProductSeries right = partial_products(table, sel(3, {3, 5}));
  for (std::size_t i = 0; i < cps.size(); ++i)
    CHECK(whole.checkpoints[i].log_product ==
          doctest::Approx(left.checkpoints[i].log_product + right.checkpoints[i].log_product)
              .epsilon(1e-13));
}

TEST_CASE("aggregating a finer table reproduces the coarser product") {
  const std::vector<std::uint64_t> cps = {10'000, 100'000};
  const ClassSeriesTable fine = accumulate_classes(Modulus::from_exponent(5), cps);
  const Selection s = sel(3, {1, 7});
  const ProductSeries via_fine = partial_products(fine, s);
  const ProductSeries direct = partial_products(s, cps);
  for (std::size_t i = 0; i < cps.size(); ++i) {
    CHECK(std::abs(via_fine.checkpoints[i].log_product - direct.checkpoints[i].log_product) <=
          1e-12);
    CHECK(via_fine.checkpoints[i].primes_used == direct.checkpoints[i].primes_used);
  }

  CHECK_THROWS_AS(partial_products(fine, sel(6, {1, 63})), MismatchError);
}

TEST_CASE("checkpoint lists are validated") {
  const Modulus mod = Modulus::from_exponent(2);
  CHECK_THROWS_AS(accumulate_classes(mod, {}), InsufficientDataError);
  CHECK_THROWS_AS(accumulate_classes(mod, {100, 100}), std::invalid_argument);
  CHECK_THROWS_AS(accumulate_classes(mod, {100, 50}), std::invalid_argument);
}

TEST_CASE("table cells reject non-reduced classes") {
  const ClassSeriesTable table = accumulate_classes(Modulus::from_exponent(3), {100});
  CHECK_THROWS_AS(table.cell(0, 4), InvalidResidueError);
  CHECK_THROWS_AS(table.cell(0, 9), InvalidResidueError);
}

TEST_CASE("mertens series examples with exact small-prime values") {
  // p = 3 (mod 4), x = 10: primes 3 and 7.
  const MertensSeries a3 = mertens_series(UnitGroup(Modulus::from_exponent(2)).decompose(3),
                                          {2, 10});
  CHECK(a3.points[0].sum_recip == 0.0);
  CHECK(a3.points[0].prod_1m1p == 1.0);
  CHECK(a3.points[0].prod_1m1p2 == 1.0);
  CHECK(a3.points[1].sum_recip == doctest::Approx(1.0 / 3 + 1.0 / 7).epsilon(1e-15));
  CHECK(a3.points[1].prod_1m1p == doctest::Approx((2.0 / 3) * (6.0 / 7)).epsilon(1e-15));
  CHECK(a3.points[1].prod_1m1p2 ==
        doctest::Approx((8.0 / 9) * (48.0 / 49)).epsilon(1e-15));
  CHECK(a3.points[1].count == 2);

  // p = 1 (mod 4), x = 30: primes 5, 13, 17, 29.
  const MertensSeries a1 = mertens_series(UnitGroup(Modulus::from_exponent(2)).decompose(1),
                                          {30});
  CHECK(a1.points[0].prod_1m1p ==
        doctest::Approx((4.0 / 5) * (12.0 / 13) * (16.0 / 17) * (28.0 / 29)).epsilon(1e-15));
  CHECK(a1.points[0].count == 4);
}

TEST_CASE("log P_S(x) reconstructed from per-class Mertens series") {
  const std::vector<std::uint64_t> cps = {1'000, 10'000, 100'000};
  const Modulus mod = Modulus::from_exponent(3);
  const UnitGroup group(mod);
  const ClassSeriesTable table = accumulate_classes(mod, cps);

  for (const Selection& s : {sel(3, {1, 7}), sel(3, {3, 5}), sel(3, {1, 3})}) {
    const ProductSeries series = partial_products(table, s);
    for (std::size_t i = 0; i < cps.size(); ++i) {
      double log_p = 0.0;
      for (std::uint32_t a : s.classes) {
        const MertensSeries m = mertens_series(table, group.decompose(a));
        log_p += chi4_sign(a) *
                 (2.0 * m.points[i].log_prod_1m1p - m.points[i].log_prod_1m1p2);
      }
      CHECK(std::abs(series.checkpoints[i].log_product - log_p) <= 1e-10);
    }
  }
}

TEST_CASE("identical series across thread counts and segment sizes") {
  const std::vector<std::uint64_t> cps = {10'000, 300'000, 1'000'000};
  const Selection s = sel(4, {1, 15});
  const ProductSeries base = partial_products(s, cps);

  for (unsigned threads : {1u, 3u}) {
    for (std::size_t segment : {std::size_t{1} << 14, std::size_t{1} << 18}) {
      SieveConfig cfg;
      cfg.threads = threads;
      cfg.segment_size = segment;
      const ProductSeries other = partial_products(s, cps, cfg);
      for (std::size_t i = 0; i < cps.size(); ++i) {
        CHECK(other.checkpoints[i].log_product == base.checkpoints[i].log_product);
        CHECK(other.checkpoints[i].product == base.checkpoints[i].product);
      }
    }
  }
}

TEST_CASE("exponent fit recovers a synthetic linear law exactly") {
  ProductSeries series;
  series.selection = sel(2, {1, 3});
  for (std::uint64_t x : {100ull, 1'000ull, 10'000ull, 100'000ull, 1'000'000ull}) {
    ProductCheckpoint c;
    c.x = x;
    c.log_product = 0.7 * std::log(std::log(static_cast<double>(x))) + 0.1;
    series.checkpoints.push_back(c);
  }
  const ExponentFit fit = fit_exponent(series);
  CHECK(fit.slope == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(fit.intercept == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(fit.residual <= 1e-12);
  CHECK(fit.points == 5);

  // Window restriction drops points outside [x_min, x_max].
  const ExponentFit window = fit_exponent(series, 1'000, 100'000);
  CHECK(window.points == 3);
  CHECK(window.slope == doctest::Approx(0.7).epsilon(1e-12));

  series.checkpoints.resize(2);
  CHECK_THROWS_AS(fit_exponent(series), InsufficientDataError);
}

TEST_CASE("unbalanced selection grows like a positive power of log x") {
  // mu({3}) = -1 mod 4, predicted exponent 1: the fitted slope over modest
  // checkpoints lands well inside [0.6, 1.4].
  const ProductSeries series = partial_products(sel(2, {3}), {1'000, 10'000, 100'000, 1'000'000});
  const ExponentFit fit = fit_exponent(series);
  CHECK(fit.slope > 0.6);
  CHECK(fit.slope < 1.4);
}
