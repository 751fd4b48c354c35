#include "randlab/cuckoo.hpp"

#include <algorithm>
#include <utility>

namespace randlab {
namespace {

// 64-bit keys as eight 8-bit characters.
constexpr unsigned kChars = 8;
constexpr unsigned kCharBits = 8;

unsigned checked_slot_bits(unsigned slot_bits) {
  require(slot_bits >= 1 && slot_bits <= 30, "cuckoo: slot_bits must lie in [1, 30]");
  return slot_bits;
}

}  // namespace

CuckooTable::CuckooTable(RandomSource& src, unsigned slot_bits, Options options)
    : slot_bits_(checked_slot_bits(slot_bits)),
      options_(options),
      h1_(hashfam::sample_tabulation_raw(src, kChars, kCharBits, slot_bits_)),
      h2_(hashfam::sample_tabulation_raw(src, kChars, kCharBits, slot_bits_)),
      slots_(std::size_t{1} << slot_bits_) {
  require(options.load_limit > 0.0 && options.load_limit < 0.5, "cuckoo: load_limit must lie in (0, 1/2)");
}

void CuckooTable::sample_functions(RandomSource& src) {
  h1_ = hashfam::sample_tabulation_raw(src, kChars, kCharBits, slot_bits_);
  h2_ = hashfam::sample_tabulation_raw(src, kChars, kCharBits, slot_bits_);
}

std::optional<CuckooTable::Slot> CuckooTable::place(Slot entry, std::uint64_t limit, std::uint64_t& displacements) {
  std::uint64_t pos = h1_(entry.key);
  for (std::uint64_t i = 0; i < limit; ++i) {
    Slot& slot = slots_[pos];
    if (!slot.occupied) {
      slot = entry;
      return std::nullopt;
    }
    std::swap(entry, slot);
    ++displacements;
    pos = pos == h1_(entry.key) ? h2_(entry.key) : h1_(entry.key);
  }
  return entry;
}

void CuckooTable::rehash(RandomSource& src, Slot pending, std::uint64_t& rehashes) {
  std::vector<Slot> entries;
  entries.reserve(size_ + 1);
  for (const Slot& s : slots_) {
    if (s.occupied) entries.push_back(s);
  }
  if (pending.occupied) entries.push_back(pending);
  const std::uint64_t limit = std::max<std::uint64_t>(1, entries.size());
  for (;;) {
    sample_functions(src);
    ++rehashes;
    for (Slot& s : slots_) s = Slot{};
    std::uint64_t ignored = 0;
    bool ok = true;
    for (const Slot& e : entries) {
      if (place(e, limit, ignored)) {
        ok = false;
        break;
      }
    }
    if (ok) break;
  }
  inserts_since_rehash_ = 0;
}

CuckooTable::InsertResult CuckooTable::insert(std::uint64_t key, std::uint64_t payload, RandomSource& src) {
  if (contains(key)) fail(ErrorCode::duplicate_key, "cuckoo: key already present");
  const double next_load = static_cast<double>(size_ + 1) / static_cast<double>(slots_.size());
  if (next_load > options_.load_limit) fail(ErrorCode::load_limit, "cuckoo: insert would exceed the load limit");

  InsertResult out;
  if (auto homeless = place(Slot{true, key, payload}, size_ + 1, out.displacements)) {
    rehash(src, *homeless, out.rehashes);
  }
  ++size_;
  if (options_.periodic_rehash) {
    const std::uint64_t m = slots_.size();
    if (++inserts_since_rehash_ >= m * m) rehash(src, Slot{}, out.rehashes);
  }
  ++stats_.inserts;
  stats_.displacements += out.displacements;
  stats_.max_displacements = std::max(stats_.max_displacements, out.displacements);
  stats_.rehashes += out.rehashes;
  return out;
}

CuckooTable::LookupResult CuckooTable::lookup(std::uint64_t key) const noexcept {
  LookupResult out;
  for (const auto* h : {&h1_, &h2_}) {
    const Slot& slot = slots_[(*h)(key)];
    ++out.probes;
    if (slot.occupied && slot.key == key) {
      out.found = true;
      out.payload = slot.payload;
      break;
    }
  }
  return out;
}

void CuckooTable::erase(std::uint64_t key) {
  for (std::uint64_t pos : {h1_(key), h2_(key)}) {
    Slot& slot = slots_[pos];
    if (slot.occupied && slot.key == key) {
      slot = Slot{};
      --size_;
      return;
    }
  }
  fail(ErrorCode::missing_key, "cuckoo: key not present");
}

std::optional<std::uint64_t> CuckooTable::slot_key(std::uint64_t i) const {
  require(i < slots_.size(), "cuckoo: slot index out of range");
  if (!slots_[i].occupied) return std::nullopt;
  return slots_[i].key;
}

void CuckooTable::validate() const {
  std::size_t count = 0;
  for (std::uint64_t i = 0; i < slots_.size(); ++i) {
    const Slot& s = slots_[i];
    if (!s.occupied) continue;
    ++count;
    if (h1_(s.key) != i && h2_(s.key) != i) fail(ErrorCode::contract_violation, "cuckoo: key outside its two slots");
  }
  if (count != size_) fail(ErrorCode::contract_violation, "cuckoo: size counter out of sync");
  if (load() > options_.load_limit) fail(ErrorCode::contract_violation, "cuckoo: load above limit");
}

}  // namespace randlab
