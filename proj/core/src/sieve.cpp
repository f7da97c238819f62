#include "thinprod/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <thread>
#include <utility>
#include <vector>

#include "thinprod/errors.hpp"

namespace thinprod {

namespace {

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

// Odd primes <= limit by a plain sieve; only used for base primes, so the
// range is at most sqrt(hard_cap).
std::vector<std::uint32_t> base_primes(std::uint64_t limit) {
  std::vector<std::uint32_t> primes;
  if (limit < 3) return primes;
  std::size_t n = static_cast<std::size_t>((limit - 1) / 2);  // odd 3, 5, ..., count
  std::vector<std::uint8_t> composite(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (composite[i]) continue;
    std::uint64_t p = 2 * i + 3;
    primes.push_back(static_cast<std::uint32_t>(p));
    for (std::uint64_t m = p * p; m <= limit; m += 2 * p) composite[(m - 3) >> 1] = 1;
  }
  return primes;
}

// Composite flags for the n odd numbers starting at first (odd). Stateless,
// so segments can run on any thread in any order.
std::vector<std::uint8_t> sieve_segment(std::uint64_t first, std::size_t n,
                                        const std::vector<std::uint32_t>& base) {
  std::vector<std::uint8_t> composite(n, 0);
  const std::uint64_t last = first + 2 * (static_cast<std::uint64_t>(n) - 1);
  for (std::uint32_t b : base) {
    std::uint64_t start = static_cast<std::uint64_t>(b) * b;
    if (start > last) break;
    if (start < first) {
      std::uint64_t k = (first + b - 1) / b;  // first multiplier reaching the segment
      if ((k & 1) == 0) ++k;                  // odd multiplier keeps the multiple odd
      start = k * b;
      if (start > last) continue;
    }
    for (std::uint64_t m = start; m <= last; m += 2ull * b) composite[(m - first) >> 1] = 1;
  }
  return composite;
}

}  // namespace

SieveSummary enumerate_primes(const SieveConfig& cfg,
                              const std::function<void(std::uint64_t)>& visit) {
  if (cfg.limit > cfg.hard_cap)
    throw CapacityError("limit " + std::to_string(cfg.limit) + " exceeds hard cap " +
                        std::to_string(cfg.hard_cap));
  if (cfg.segment_size < (std::size_t{1} << 14))
    throw std::invalid_argument("segment_size must be at least 2^14");

  SieveSummary summary;
  if (cfg.limit >= 2) {
    ++summary.count;
    if (!cfg.odd_only) visit(2);
  }
  if (cfg.limit < 3) return summary;

  const std::vector<std::uint32_t> base = base_primes(isqrt(cfg.limit));
  unsigned threads = cfg.threads ? cfg.threads : std::thread::hardware_concurrency();
  if (threads == 0) threads = 1;

  std::uint64_t first = 3;
  while (first <= cfg.limit) {
    // Launch up to `threads` segments, then walk them in ascending order so
    // the visit sequence is independent of both threads and segment size.
    std::vector<std::pair<std::uint64_t, std::size_t>> metas;
    std::vector<std::future<std::vector<std::uint8_t>>> futures;
    for (unsigned t = 0; t < threads && first <= cfg.limit; ++t) {
      std::size_t n = static_cast<std::size_t>(
          std::min<std::uint64_t>(cfg.segment_size, (cfg.limit - first) / 2 + 1));
      metas.emplace_back(first, n);
      if (threads > 1)
        futures.push_back(
            std::async(std::launch::async, sieve_segment, first, n, std::cref(base)));
      first += 2 * static_cast<std::uint64_t>(n);
    }
    for (std::size_t i = 0; i < metas.size(); ++i) {
      std::vector<std::uint8_t> composite =
          threads > 1 ? futures[i].get() : sieve_segment(metas[i].first, metas[i].second, base);
      const std::uint64_t lo = metas[i].first;
      for (std::size_t j = 0; j < composite.size(); ++j) {
        if (!composite[j]) {
          visit(lo + 2 * j);
          ++summary.count;
        }
      }
    }
  }
  return summary;
}

std::map<std::uint32_t, std::uint64_t> class_counts(std::uint64_t limit, const Modulus& mod,
                                                    SieveConfig cfg) {
  std::map<std::uint32_t, std::uint64_t> counts;
  for (std::uint32_t a = 1; a < mod.q; a += 2) counts[a] = 0;
  cfg.limit = limit;
  cfg.odd_only = true;
  enumerate_primes(cfg, [&](std::uint64_t p) { ++counts[static_cast<std::uint32_t>(p % mod.q)]; });
  return counts;
}

}  // namespace thinprod
