#pragma once

// Cuckoo hashing in one table of m = 2^slot_bits slots with two tabulation
// hash functions. Every stored key sits at h1(x) or h2(x). Inserting walks
// an eviction chain of at most n steps (n counting the new key) and rehashes
// everything with fresh functions when the chain runs out.
//
// The table never grows: an insert that would push the load past
// load_limit fails with ErrorCode::load_limit.
//
// Single writer; lookups may run concurrently only between mutations.

#include <cstdint>
#include <optional>
#include <vector>

#include "randlab/hashfam.hpp"

namespace randlab {

class CuckooTable {
 public:
  struct Options {
    double load_limit = 0.45;
    // Also rehash after every m^2 successful inserts.
    bool periodic_rehash = false;
  };

  struct Stats {
    std::uint64_t inserts = 0;
    std::uint64_t displacements = 0;  // evictions across all inserts, rehash reinsertion excluded
    std::uint64_t max_displacements = 0;
    std::uint64_t rehashes = 0;  // fresh (h1, h2) pairs drawn after the initial one
  };

  struct InsertResult {
    std::uint64_t displacements = 0;
    std::uint64_t rehashes = 0;
  };

  struct LookupResult {
    bool found = false;
    std::uint64_t payload = 0;
    unsigned probes = 0;
  };

  CuckooTable(RandomSource& src, unsigned slot_bits, Options options);
  CuckooTable(RandomSource& src, unsigned slot_bits) : CuckooTable(src, slot_bits, Options{}) {}

  InsertResult insert(std::uint64_t key, std::uint64_t payload, RandomSource& src);
  LookupResult lookup(std::uint64_t key) const noexcept;
  bool contains(std::uint64_t key) const noexcept { return lookup(key).found; }
  void erase(std::uint64_t key);

  std::size_t size() const noexcept { return size_; }
  std::uint64_t capacity() const noexcept { return slots_.size(); }
  double load() const noexcept { return static_cast<double>(size_) / static_cast<double>(slots_.size()); }
  const Options& options() const noexcept { return options_; }
  const Stats& stats() const noexcept { return stats_; }
  const hashfam::TabulationHash& h1() const noexcept { return h1_; }
  const hashfam::TabulationHash& h2() const noexcept { return h2_; }

  // Key stored in slot i, if any.
  std::optional<std::uint64_t> slot_key(std::uint64_t i) const;

  /// Full scan; throws contract_violation on a misplaced key, a stale
  /// count, or a load above the limit.
  void validate() const;

 private:
  struct Slot {
    bool occupied = false;
    std::uint64_t key = 0;
    std::uint64_t payload = 0;
  };

  // Runs the eviction chain; returns the homeless entry if the limit is hit.
  std::optional<Slot> place(Slot entry, std::uint64_t limit, std::uint64_t& displacements);
  void rehash(RandomSource& src, Slot pending, std::uint64_t& rehashes);
  void sample_functions(RandomSource& src);

  unsigned slot_bits_;
  Options options_;
  hashfam::TabulationHash h1_;
  hashfam::TabulationHash h2_;
  std::vector<Slot> slots_;
  std::size_t size_ = 0;
  std::uint64_t inserts_since_rehash_ = 0;
  Stats stats_;
};

}  // namespace randlab
