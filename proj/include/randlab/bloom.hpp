#pragma once

// Bloom filter over 64-bit keys, plain (one bit per cell) or counting
// (saturating counters). The k probe positions come from two mod_p
// functions combined as h(x) + i * h'(x) mod m, i = 0..k-1, with h' never 0.
//
// Counting filters follow the never-decrement-a-saturated-counter rule,
// which keeps queries free of false negatives after legal removals.
//
// Binary layout (little-endian):
//   "RLBF" u16 version=1 u64 m u32 k u8 variant u8 cap u64 n_target
//   h handle, h' handle, then the array: ceil(m/64) u64 words for the bit
//   variant, m u8 counters for the counting variant.

#include <cstdint>
#include <span>
#include <vector>

#include "randlab/hashfam.hpp"

namespace randlab {

struct BloomParams {
  std::uint64_t m = 2;
  std::uint64_t n_target = 0;
  unsigned k = 1;
  double alpha = 0.0;        // n / m
  double alpha_prime = 0.0;  // alpha * (1 + 1/m)
};

/// m = ceil(1.442 n lg(1/eps)) + 1, k = round(ln 2 / alpha'), at least 1.
BloomParams bloom_plan(std::uint64_t n_target, double epsilon);

/// Explicit parameters; alpha terms are derived from m and n_target.
BloomParams bloom_params(std::uint64_t m, unsigned k, std::uint64_t n_target);

/// Exact probability that a fixed cell is set after n insertions: 1 - (1 - 1/m)^(k n).
double bloom_bit_probability(std::uint64_t m, unsigned k, std::uint64_t n);
/// Exact false-positive prediction (1 - (1 - 1/m)^(k n))^k.
double bloom_false_positive(std::uint64_t m, unsigned k, std::uint64_t n);

enum class BloomVariant : std::uint8_t { bits = 0, counting = 1 };

class BloomFilter {
 public:
  static constexpr unsigned kDefaultCap = 15;
  static constexpr std::uint64_t kDefaultUniverseMax = hashfam::kLargestPrime64 - 1;

  BloomFilter(RandomSource& src, const BloomParams& params, BloomVariant variant = BloomVariant::bits,
              unsigned counter_cap = kDefaultCap, std::uint64_t universe_max = kDefaultUniverseMax);

  void insert(std::uint64_t key);
  bool query(std::uint64_t key) const;
  /// Counting variant only. Saturated counters stay put; a zero counter is a
  /// contract violation and leaves the filter unchanged.
  void remove(std::uint64_t key);
  /// Counting variant only: min over the k counters.
  std::uint64_t count_estimate(std::uint64_t key) const;

  std::vector<std::uint64_t> positions(std::uint64_t key) const;

  const BloomParams& params() const noexcept { return params_; }
  BloomVariant variant() const noexcept { return variant_; }
  unsigned counter_cap() const noexcept { return cap_; }
  std::uint64_t cell(std::uint64_t i) const;
  std::uint64_t nonzero_cells() const;
  std::uint64_t saturated_cells() const;
  const hashfam::ModPrimeHash& h() const noexcept { return h_; }
  const hashfam::ModPrimeHash& h_prime() const noexcept { return h_prime_; }

  std::vector<std::uint8_t> serialize() const;
  static BloomFilter deserialize(std::span<const std::uint8_t> bytes);

 private:
  BloomFilter(const BloomParams& params, BloomVariant variant, unsigned cap, hashfam::ModPrimeHash h,
              hashfam::ModPrimeHash h_prime);

  void require_counting(const char* op) const;

  BloomParams params_;
  BloomVariant variant_;
  unsigned cap_;
  hashfam::ModPrimeHash h_;
  hashfam::ModPrimeHash h_prime_;  // range m - 1, shifted up by one when used
  std::vector<std::uint64_t> bits_;
  std::vector<std::uint8_t> counters_;
};

}  // namespace randlab
