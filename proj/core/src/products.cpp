#include "thinprod/products.hpp"

#include <algorithm>
#include <cmath>

#include "thinprod/compensated.hpp"
#include "thinprod/errors.hpp"

namespace thinprod {

double log_factor(std::uint64_t p) {
  if (p < 3 || p % 2 == 0)
    throw DomainError("log_factor requires an odd prime >= 3, got " + std::to_string(p));
  const double inv = 1.0 / static_cast<double>(p);
  const double l1 = std::log1p(-inv);
  const double l2 = std::log1p(-inv * inv);
  // Uses A(p) = (1 - chi4(p)/p)^2 / (1 - 1/p^2).
  return chi4_sign(p) > 0 ? 2.0 * l1 - l2 : l2 - 2.0 * l1;
}

FactorValue factor_value(std::uint64_t p) { return {p, chi4_sign(p), log_factor(p)}; }

bool verify_factored_form(std::uint64_t p) {
  const int s = chi4_sign(p);
  const double a = static_cast<double>(p - s) / static_cast<double>(p + s);
  const double inv = 1.0 / static_cast<double>(p);
  const double num = 1.0 - s * inv;
  const double rhs = num * num / (1.0 - inv * inv);
  return std::abs(a - rhs) <= 1e-15 * a;
}

const ClassSnapshot& ClassSeriesTable::cell(std::size_t row, std::uint32_t a) const {
  if (a % 2 == 0 || a >= mod.q)
    throw InvalidResidueError("class " + std::to_string(a) + " is not reduced mod " +
                              std::to_string(mod.q));
  return rows[row][a >> 1];
}

ClassSeriesTable accumulate_classes(const Modulus& mod,
                                    const std::vector<std::uint64_t>& checkpoints,
                                    SieveConfig cfg) {
  if (checkpoints.empty()) throw InsufficientDataError("no checkpoints given");
  if (!std::is_sorted(checkpoints.begin(), checkpoints.end()) ||
      std::adjacent_find(checkpoints.begin(), checkpoints.end()) != checkpoints.end())
    throw std::invalid_argument("checkpoints must be strictly ascending");

  ClassSeriesTable table;
  table.mod = mod;
  table.checkpoints = checkpoints;
  table.rows.reserve(checkpoints.size());

  const std::size_t nclass = mod.q >> 1;
  std::vector<CompensatedSum> log_a(nclass), recip(nclass), l1s(nclass), l2s(nclass);
  std::vector<std::uint64_t> counts(nclass, 0);

  auto snapshot = [&] {
    std::vector<ClassSnapshot> row(nclass);
    for (std::size_t i = 0; i < nclass; ++i)
      row[i] = {log_a[i].value(), recip[i].value(), l1s[i].value(), l2s[i].value(), counts[i]};
    table.rows.push_back(std::move(row));
  };

  std::size_t next = 0;
  cfg.limit = checkpoints.back();
  cfg.odd_only = true;
  enumerate_primes(cfg, [&](std::uint64_t p) {
    while (next < checkpoints.size() && checkpoints[next] < p) {
      snapshot();
      ++next;
    }
    const std::size_t i = (p % mod.q) >> 1;
    const double inv = 1.0 / static_cast<double>(p);
    const double l1 = std::log1p(-inv);
    const double l2 = std::log1p(-inv * inv);
    log_a[i].add(p % 4 == 1 ? 2.0 * l1 - l2 : l2 - 2.0 * l1);
    recip[i].add(inv);
    l1s[i].add(l1);
    l2s[i].add(l2);
    ++counts[i];
  });
  while (next < checkpoints.size()) {
    snapshot();
    ++next;
  }
  return table;
}

namespace {

void require_divides(const Modulus& inner, const Modulus& outer) {
  if (outer.q % inner.q != 0)
    throw MismatchError("table modulus " + std::to_string(outer.q) +
                        " is not a multiple of " + std::to_string(inner.q));
}

}  // namespace

ProductSeries partial_products(const ClassSeriesTable& table, const Selection& s) {
  require_divides(s.mod, table.mod);
  ProductSeries series;
  series.selection = s;
  series.checkpoints.reserve(table.checkpoints.size());

  // Which table classes reduce into the selection.
  std::vector<std::uint8_t> mask(table.mod.q >> 1, 0);
  for (std::uint32_t a = 1; a < table.mod.q; a += 2)
    if (s.contains(a % s.mod.q)) mask[a >> 1] = 1;

  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    CompensatedSum ls;
    std::uint64_t used = 0;
    for (std::size_t i = 0; i < mask.size(); ++i) {
      if (!mask[i]) continue;
      ls.add(table.rows[r][i].log_a);
      used += table.rows[r][i].count;
    }
    const double lp = ls.value();
    series.checkpoints.push_back({table.checkpoints[r], lp, std::exp(lp), used});
  }

  const auto& last = table.rows.back();
  for (std::uint32_t a = 1; a < s.mod.q; a += 2) {
    CompensatedSum rsum, l1, l2;
    for (std::uint32_t b = a; b < table.mod.q; b += s.mod.q) {
      rsum.add(last[b >> 1].recip);
      l1.add(last[b >> 1].log_1m1p);
      l2.add(last[b >> 1].log_1m1p2);
    }
    series.per_class[a] = {rsum.value(), l1.value(), l2.value()};
  }
  return series;
}

ProductSeries partial_products(const Selection& s, const std::vector<std::uint64_t>& checkpoints,
                               SieveConfig cfg) {
  return partial_products(accumulate_classes(s.mod, checkpoints, cfg), s);
}

MertensSeries mertens_series(const ClassSeriesTable& table, const UnitElement& a) {
  require_divides(a.mod, table.mod);
  MertensSeries series;
  series.residue = a;
  series.points.reserve(table.checkpoints.size());
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    CompensatedSum rsum, l1, l2;
    std::uint64_t count = 0;
    for (std::uint32_t b = a.a; b < table.mod.q; b += a.mod.q) {
      const ClassSnapshot& cell = table.rows[r][b >> 1];
      rsum.add(cell.recip);
      l1.add(cell.log_1m1p);
      l2.add(cell.log_1m1p2);
      count += cell.count;
    }
    const double v1 = l1.value();
    const double v2 = l2.value();
    series.points.push_back(
        {table.checkpoints[r], rsum.value(), v1, std::exp(v1), v2, std::exp(v2), count});
  }
  return series;
}

MertensSeries mertens_series(const UnitElement& a, const std::vector<std::uint64_t>& checkpoints,
                             SieveConfig cfg) {
  return mertens_series(accumulate_classes(a.mod, checkpoints, cfg), a);
}

ExponentFit fit_exponent(const ProductSeries& series, std::uint64_t x_min, std::uint64_t x_max) {
  std::vector<double> t, y;
  ExponentFit fit;
  fit.x_min = UINT64_MAX;
  for (const ProductCheckpoint& cp : series.checkpoints) {
    if (cp.x < x_min || cp.x > x_max || cp.x < 3) continue;
    t.push_back(std::log(std::log(static_cast<double>(cp.x))));
    y.push_back(cp.log_product);
    fit.x_min = std::min(fit.x_min, cp.x);
    fit.x_max = std::max(fit.x_max, cp.x);
  }
  if (t.size() < 3)
    throw InsufficientDataError("exponent fit needs at least 3 checkpoints, have " +
                                std::to_string(t.size()));

  const double n = static_cast<double>(t.size());
  double tbar = 0, ybar = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    tbar += t[i];
    ybar += y[i];
  }
  tbar /= n;
  ybar /= n;
  double stt = 0, sty = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    stt += (t[i] - tbar) * (t[i] - tbar);
    sty += (t[i] - tbar) * (y[i] - ybar);
  }
  fit.slope = sty / stt;
  fit.intercept = ybar - fit.slope * tbar;
  double ss = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double r = y[i] - (fit.slope * t[i] + fit.intercept);
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / n);
  fit.points = t.size();
  return fit;
}

}  // namespace thinprod
