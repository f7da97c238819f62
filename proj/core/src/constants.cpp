#include "thinprod/constants.hpp"

#include <cmath>
#include <numbers>

#include "thinprod/compensated.hpp"
#include "thinprod/errors.hpp"

namespace thinprod {

std::string to_string(CMethod method) {
  switch (method) {
    case CMethod::williams: return "williams";
    case CMethod::direct: return "direct";
    default: return "both";
  }
}

LValue l_value_at_1(const UnitGroup& group, const Character& chi) {
  if (chi.is_principal()) throw PoleError("L(s, chi0) has a pole at s = 1");
  if (!(chi.mod == group.modulus())) throw MismatchError("character modulus differs from group");
  const std::uint32_t q = group.modulus().q;
  ComplexSum sum;
  for (std::uint32_t a = 1; a < q; a += 2)
    sum.add(group.evaluate(chi, a) * digamma(static_cast<double>(a) / q));
  return {chi, 1, -sum.value() / static_cast<double>(q)};
}

namespace {

struct CharColumn {
  ComplexSum log_kw;       // sum of -log(1 - chi(p)/p) + chi(p) log(1 - 1/p)
  ComplexSum euler_log_l;  // sum of -log(1 - chi(p)/p), fixes the log L branch
};

// One pass over odd primes <= P0 accumulating the Williams sums for each
// given character. Root indices are tabulated per (character, class).
void williams_pass(const UnitGroup& group, const std::vector<Character>& chars, std::uint64_t P0,
                   SieveConfig cfg, std::vector<CharColumn>& cols) {
  const Modulus mod = group.modulus();
  const std::size_t nclass = mod.q >> 1;
  std::vector<std::uint32_t> tindex(chars.size() * nclass);
  for (std::size_t c = 0; c < chars.size(); ++c)
    for (std::uint32_t a = 1; a < mod.q; a += 2)
      tindex[c * nclass + (a >> 1)] = group.root_index(chars[c], group.decompose(a));

  cols.assign(chars.size(), {});
  cfg.limit = P0;
  cfg.odd_only = true;
  enumerate_primes(cfg, [&](std::uint64_t p) {
    const std::size_t cls = (p % mod.q) >> 1;
    const double inv = 1.0 / static_cast<double>(p);
    const double l1 = std::log1p(-inv);
    for (std::size_t c = 0; c < chars.size(); ++c) {
      const std::complex<double> z = group.root(tindex[c * nclass + cls]);
      const std::complex<double> mlog = -clog1p(-z * inv);  // -log(1 - chi(p)/p)
      cols[c].log_kw.add(mlog + z * l1);
      cols[c].euler_log_l.add(mlog);
    }
  });
}

// log L(1, chi) on the branch reached by the Euler sum, which is the branch
// the Proposition's derivation uses. The truncated Euler sum is within ~0.1
// of the true argument, far less than 2 pi, so rounding to the nearest
// branch is safe.
std::complex<double> branch_consistent_log(std::complex<double> l_value,
                                           std::complex<double> euler_log_l) {
  const double principal = std::arg(l_value);
  const double k = std::round((euler_log_l.imag() - principal) / (2.0 * std::numbers::pi));
  return {std::log(std::abs(l_value)), principal + 2.0 * std::numbers::pi * k};
}

}  // namespace

WilliamsCorrection williams_correction(const UnitGroup& group, const Character& chi,
                                       std::uint64_t P0, SieveConfig cfg) {
  if (P0 < 3) throw DomainError("williams_correction requires P0 >= 3");
  std::vector<CharColumn> cols;
  williams_pass(group, {chi}, P0, cfg, cols);
  return {chi, std::exp(cols[0].log_kw.value()), P0,
          2.0 * expint_e1(std::log(static_cast<double>(P0)))};
}

WilliamsTable williams_table(const UnitGroup& group, std::uint64_t P0, SieveConfig cfg) {
  if (P0 < 3) throw DomainError("williams_table requires P0 >= 3");
  WilliamsTable table;
  table.mod = group.modulus();
  table.P0 = P0;
  table.tail_bound = 2.0 * expint_e1(std::log(static_cast<double>(P0)));
  table.characters = group.characters();

  std::vector<CharColumn> cols;
  williams_pass(group, table.characters, P0, cfg, cols);

  table.log_kw.assign(table.characters.size(), {});
  table.log_l.assign(table.characters.size(), {});
  for (std::size_t c = 1; c < table.characters.size(); ++c) {
    table.log_kw[c] = cols[c].log_kw.value();
    const LValue l = l_value_at_1(group, table.characters[c]);
    table.log_l[c] = branch_consistent_log(l.value, cols[c].euler_log_l.value());
  }
  return table;
}

namespace {

// The log of C(q, a)^phi: -gamma + log 2 + sum over non-principal chi of
// conj(chi(a)) * (log K_W - log L). Must come out real.
std::complex<double> williams_inner(const UnitGroup& group, const UnitElement& a,
                                    const WilliamsTable& table) {
  if (!(table.mod == group.modulus())) throw MismatchError("table modulus differs from group");
  ComplexSum inner;
  inner.add({-kEulerGamma + std::log(2.0), 0.0});
  const std::uint32_t order = group.root_order();
  for (std::size_t c = 1; c < table.characters.size(); ++c) {
    const std::uint32_t t = group.root_index(table.characters[c], a);
    const std::complex<double> w = group.root((order - t) % order);  // conj(chi(a))
    inner.add(w * (table.log_kw[c] - table.log_l[c]));
  }
  return inner.value();
}

double require_real(std::complex<double> inner, std::uint32_t phi) {
  if (std::abs(inner.imag()) > 1e-9)
    throw NumericalConsistencyError("Williams log-sum has imaginary residue " +
                                    std::to_string(inner.imag()));
  return std::exp(inner.real() / phi);
}

}  // namespace

double williams_C(const UnitGroup& group, const UnitElement& a, const WilliamsTable& table) {
  return require_real(williams_inner(group, a, table), group.modulus().phi);
}

double williams_C(const UnitGroup& group, const UnitElement& a, std::uint64_t P0,
                  SieveConfig cfg) {
  return williams_C(group, a, williams_table(group, P0, cfg));
}

double direct_C(const UnitGroup& group, const UnitElement& a, std::uint64_t x, SieveConfig cfg) {
  if (x < 2) throw DomainError("direct_C requires x >= 2");
  CompensatedSum l1;
  cfg.limit = x;
  cfg.odd_only = true;
  const std::uint32_t q = group.modulus().q;
  enumerate_primes(cfg, [&](std::uint64_t p) {
    if (p % q == a.a) l1.add(std::log1p(-1.0 / static_cast<double>(p)));
  });
  const double phi = group.modulus().phi;
  return std::exp(std::log(std::log(static_cast<double>(x))) / phi + l1.value());
}

double D_constant(const UnitGroup& group, const UnitElement& a, std::uint64_t P0,
                  bool tail_correction, SieveConfig cfg) {
  if (P0 < 3) throw DomainError("D_constant requires P0 >= 3");
  CompensatedSum l2;
  cfg.limit = P0;
  cfg.odd_only = true;
  const std::uint32_t q = group.modulus().q;
  enumerate_primes(cfg, [&](std::uint64_t p) {
    if (p % q == a.a) {
      const double inv = 1.0 / static_cast<double>(p);
      l2.add(std::log1p(-inv * inv));
    }
  });
  double tail = 0.0;
  if (tail_correction)
    tail = expint_e1(std::log(static_cast<double>(P0))) / group.modulus().phi;
  return std::exp(l2.value() - tail);
}

ConstantsBundle constants_bundle(const UnitGroup& group, std::uint64_t P0, SieveConfig cfg) {
  ConstantsBundle bundle;
  bundle.mod = group.modulus();
  bundle.P0 = P0;

  const WilliamsTable table = williams_table(group, P0, cfg);
  const ClassSeriesTable classes = accumulate_classes(bundle.mod, {P0}, cfg);
  const double tail = expint_e1(std::log(static_cast<double>(P0))) / bundle.mod.phi;

  for (std::uint32_t a = 1; a < bundle.mod.q; a += 2) {
    const std::complex<double> inner = williams_inner(group, group.decompose(a), table);
    bundle.max_imag_residue = std::max(bundle.max_imag_residue, std::abs(inner.imag()));
    bundle.C[a] = require_real(inner, bundle.mod.phi);
    bundle.D[a] = std::exp(classes.cell(0, a).log_1m1p2 - tail);
  }
  return bundle;
}

LimitConstant limit_constant(const UnitGroup& group, const Selection& s, CMethod method,
                             std::uint64_t P0, std::uint64_t direct_x, SieveConfig cfg) {
  if (!(s.mod == group.modulus())) throw MismatchError("selection modulus differs from group");
  if (s.mu != 0)
    throw UnbalancedSelectionError(
        "selection is unbalanced (mu = " + std::to_string(s.mu) +
            "); partial products diverge like (log x)^" + to_string(s.predicted_exponent),
        s.mu, s.predicted_exponent);

  LimitConstant result;
  result.selection = s;
  result.method = method;
  result.P0 = P0;
  result.direct_x = direct_x;

  // D is shared by both methods: truncated at P0 with the tail estimate.
  const ClassSeriesTable at_p0 = accumulate_classes(s.mod, {P0}, cfg);
  const double tail = expint_e1(std::log(static_cast<double>(P0))) / s.mod.phi;
  const double phi = s.mod.phi;

  auto assemble = [&](auto&& log_c) {
    CompensatedSum log_k;
    for (std::uint32_t a : s.classes) {
      const double log_d = at_p0.cell(0, a).log_1m1p2 - tail;
      log_k.add(chi4_sign(a) * (2.0 * log_c(a) - log_d));
    }
    return std::exp(log_k.value());
  };

  if (method != CMethod::direct) {
    const WilliamsTable table = williams_table(group, P0, cfg);
    result.williams_K = assemble([&](std::uint32_t a) {
      return std::log(williams_C(group, group.decompose(a), table));
    });
  }
  if (method != CMethod::williams) {
    const ClassSeriesTable at_x = accumulate_classes(s.mod, {direct_x}, cfg);
    const double loglog = std::log(std::log(static_cast<double>(direct_x)));
    result.direct_K = assemble([&](std::uint32_t a) {
      return loglog / phi + at_x.cell(0, a).log_1m1p;
    });
  }

  result.K = result.williams_K ? *result.williams_K : *result.direct_K;
  if (result.williams_K && result.direct_K)
    result.discrepancy = std::abs(*result.williams_K - *result.direct_K);
  return result;
}

}  // namespace thinprod
