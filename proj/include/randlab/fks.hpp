#pragma once

// Static two-level perfect hash table. The outer mod_p function splits n
// keys into n bins; bin i gets an inner mod_p function into n_i^2 slots
// that is injective on the bin. Lookups cost one outer and at most one
// inner evaluation.
//
// Build resamples the outer function until sum n_i^2 <= 4n (each sample
// succeeds with probability >= 1/2) and each inner function until it is
// injective on its bin.

#include <cstdint>
#include <span>
#include <vector>

#include "randlab/hashfam.hpp"

namespace randlab {

class FksTable {
 public:
  struct BuildStats {
    std::uint64_t outer_rounds = 0;  // outer functions sampled
    std::uint64_t inner_rounds = 0;  // inner functions sampled, all bins
    std::uint64_t sum_squares = 0;   // sum n_i^2 of the accepted outer function
  };

  struct LookupResult {
    bool found = false;
    std::uint64_t payload = 0;
    unsigned hash_evaluations = 0;
  };

  /// Keys must be distinct; payloads, when given, must match keys in length.
  static FksTable build(RandomSource& src, std::span<const std::uint64_t> keys,
                        std::span<const std::uint64_t> payloads = {});

  LookupResult lookup(std::uint64_t key) const noexcept;

  std::size_t size() const noexcept { return n_; }
  std::size_t bin_count() const noexcept { return bins_.size(); }
  std::uint64_t total_slots() const noexcept { return slots_.size(); }
  std::uint64_t prime() const noexcept { return outer_.p(); }
  const BuildStats& build_stats() const noexcept { return stats_; }
  std::vector<std::uint64_t> bin_loads() const;

  /// Throws contract_violation on any intra-bin collision or misplaced key.
  void validate() const;

  std::vector<std::uint8_t> serialize() const;
  static FksTable deserialize(std::span<const std::uint8_t> bytes);

 private:
  struct Bin {
    std::uint64_t offset = 0;
    std::uint64_t slot_count = 1;
    std::uint64_t key_count = 0;
    hashfam::ModPrimeHash inner;
  };

  struct Slot {
    bool occupied = false;
    std::uint64_t key = 0;
    std::uint64_t payload = 0;
  };

  FksTable(hashfam::ModPrimeHash outer) : outer_(outer) {}  // NOLINT(google-explicit-constructor)

  hashfam::ModPrimeHash outer_;
  std::vector<Bin> bins_;
  std::vector<Slot> slots_;
  std::size_t n_ = 0;
  BuildStats stats_;
};

}  // namespace randlab
