#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "thinprod/residue_group.hpp"
#include "thinprod/sieve.hpp"

namespace thinprod {

// One Euler factor A(p) = (p - chi4(p)) / (p + chi4(p)) in log form.
struct FactorValue {
  std::uint64_t p = 0;
  int chi4p = 0;
  double log_a = 0.0;
};

// log A(p) evaluated as chi4(p) * (2*log1p(-1/p) - log1p(-1/p^2)), the
// cancellation-free form; relative error stays within a few ulp even for
// large p where log A(p) ~ -2*chi4(p)/p.
double log_factor(std::uint64_t p);
FactorValue factor_value(std::uint64_t p);

// A(p) equals (1 - chi4(p)/p)^2 / (1 - 1/p^2) to 1e-15 relative.
bool verify_factored_form(std::uint64_t p);

// Snapshot of the per-class accumulators after all primes <= x:
//   log_a       sum of log A(p)
//   recip       sum of 1/p
//   log_1m1p    sum of log(1 - 1/p)
//   log_1m1p2   sum of log(1 - 1/p^2)
struct ClassSnapshot {
  double log_a = 0.0;
  double recip = 0.0;
  double log_1m1p = 0.0;
  double log_1m1p2 = 0.0;
  std::uint64_t count = 0;
};

// Per-class compensated sums over one sieve pass, flushed at each checkpoint.
// Classes are indexed by (a-1)/2, a odd in [1, q). Any selection over a
// modulus dividing mod.q can be assembled from this table afterwards.
struct ClassSeriesTable {
  Modulus mod;
  std::vector<std::uint64_t> checkpoints;
  std::vector<std::vector<ClassSnapshot>> rows;  // rows[i][(a-1)/2]

  const ClassSnapshot& cell(std::size_t row, std::uint32_t a) const;
};

// One pass to max(checkpoints). Checkpoints must be strictly ascending;
// checkpoint semantics are "all primes p <= x". p = 2 carries no factor.
ClassSeriesTable accumulate_classes(const Modulus& mod, const std::vector<std::uint64_t>& checkpoints,
                                    SieveConfig cfg = {});

struct ProductCheckpoint {
  std::uint64_t x = 0;
  double log_product = 0.0;
  double product = 1.0;  // exp(log_product)
  std::uint64_t primes_used = 0;
};

struct ClassMertens {
  double sum_recip = 0.0;
  double log_prod_1m1p = 0.0;
  double log_prod_1m1p2 = 0.0;
};

struct ProductSeries {
  Selection selection;
  std::vector<ProductCheckpoint> checkpoints;
  // Final-checkpoint Mertens sums for every reduced class of the selection's
  // modulus, for reconstruction checks and reporting.
  std::map<std::uint32_t, ClassMertens> per_class;
};

// P_S(x) = prod over p <= x with p mod q in S of A(p), at each checkpoint.
ProductSeries partial_products(const Selection& s, const std::vector<std::uint64_t>& checkpoints,
                               SieveConfig cfg = {});
// Assemble from an existing table; table modulus must be a multiple of the
// selection's, and classes are aggregated by reduction.
ProductSeries partial_products(const ClassSeriesTable& table, const Selection& s);

struct MertensPoint {
  std::uint64_t x = 0;
  double sum_recip = 0.0;
  double log_prod_1m1p = 0.0;
  double prod_1m1p = 1.0;
  double log_prod_1m1p2 = 0.0;
  double prod_1m1p2 = 1.0;
  std::uint64_t count = 0;
};

struct MertensSeries {
  UnitElement residue;
  std::vector<MertensPoint> points;
};

// sum 1/p, prod (1 - 1/p), prod (1 - 1/p^2) over p <= x, p = a (mod q).
MertensSeries mertens_series(const UnitElement& a, const std::vector<std::uint64_t>& checkpoints,
                             SieveConfig cfg = {});
MertensSeries mertens_series(const ClassSeriesTable& table, const UnitElement& a);

struct ExponentFit {
  double slope = 0.0;      // of log P_S(x) against log log x
  double intercept = 0.0;
  double residual = 0.0;   // root-mean-square
  std::uint64_t x_min = 0;
  std::uint64_t x_max = 0;
  std::size_t points = 0;
};

// Least-squares fit over checkpoints with x_min <= x <= x_max (and x >= 3).
// Requires at least three points.
ExponentFit fit_exponent(const ProductSeries& series, std::uint64_t x_min = 0,
                         std::uint64_t x_max = UINT64_MAX);

}  // namespace thinprod
