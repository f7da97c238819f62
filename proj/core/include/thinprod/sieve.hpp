#pragma once

#include <cstdint>
#include <functional>
#include <map>

#include "thinprod/residue_group.hpp"

namespace thinprod {

struct SieveConfig {
  std::uint64_t limit = 0;
  // Odd numbers per segment; one byte each. Must be at least 2^14.
  std::size_t segment_size = std::size_t{1} << 20;
  // When set, the visitor never sees p = 2 (it is still counted).
  bool odd_only = false;
  std::uint64_t hard_cap = 1'000'000'000;
  // 0 = hardware concurrency. Segments are sieved in parallel but visited
  // serially in ascending order, so results never depend on this.
  unsigned threads = 0;
};

struct SieveSummary {
  std::uint64_t count = 0;  // pi(limit), including p = 2 even when skipped
};

// Segmented sieve of Eratosthenes on the odd numbers. The visitor is invoked
// once per prime in strictly increasing order.
SieveSummary enumerate_primes(const SieveConfig& cfg,
                              const std::function<void(std::uint64_t)>& visit);

// Number of odd primes <= limit in each reduced class mod 2^m. Every class
// is present in the result; the counts sum to pi(limit) - 1 for limit >= 2.
std::map<std::uint32_t, std::uint64_t> class_counts(std::uint64_t limit, const Modulus& mod,
                                                    SieveConfig cfg = {});

}  // namespace thinprod
