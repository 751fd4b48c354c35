#include "randlab/fks.hpp"

#include <algorithm>
#include <unordered_set>

#include "randlab/byteio.hpp"

namespace randlab {
namespace {

constexpr char kMagic[] = "RLFK";
constexpr std::uint16_t kVersion = 1;

void write_mod_p(ByteWriter& out, const hashfam::ModPrimeHash& h) { hashfam::HashFunction(h).serialize(out); }

hashfam::ModPrimeHash read_mod_p(ByteReader& in) {
  const hashfam::HashFunction h = hashfam::HashFunction::deserialize(in);
  if (h.family() != hashfam::Family::mod_p) fail(ErrorCode::parse_error, "fks: expected a mod_p handle");
  return std::get<hashfam::ModPrimeHash>(h.impl());
}

}  // namespace

FksTable FksTable::build(RandomSource& src, std::span<const std::uint64_t> keys,
                         std::span<const std::uint64_t> payloads) {
  const std::size_t n = keys.size();
  require(n >= 1, "fks: need at least one key");
  require(payloads.empty() || payloads.size() == n, "fks: payload count differs from key count");
  {
    std::unordered_set<std::uint64_t> seen(keys.begin(), keys.end());
    if (seen.size() != n) fail(ErrorCode::duplicate_key, "fks: duplicate key in build set");
  }

  // One prime serves both levels; 4n keeps every inner range n_i^2 <= p.
  const std::uint64_t max_key = *std::max_element(keys.begin(), keys.end());
  const std::uint64_t p = hashfam::next_prime(std::max<std::uint64_t>(max_key, 4 * std::uint64_t{n}));

  BuildStats stats;
  std::vector<std::uint64_t> bin_of(n);
  std::vector<std::uint64_t> loads(n);
  hashfam::ModPrimeHash outer = hashfam::sample_mod_prime(src, p, n);
  for (;;) {
    ++stats.outer_rounds;
    std::fill(loads.begin(), loads.end(), 0);
    for (std::size_t i = 0; i < n; ++i) ++loads[bin_of[i] = outer(keys[i])];
    std::uint64_t squares = 0;
    for (auto c : loads) squares += c * c;
    if (squares <= 4 * std::uint64_t{n}) {
      stats.sum_squares = squares;
      break;
    }
    outer = hashfam::sample_mod_prime(src, p, n);
  }

  // Group key indices by bin.
  std::vector<std::size_t> start(n + 1, 0);
  for (std::size_t b = 0; b < n; ++b) start[b + 1] = start[b] + loads[b];
  std::vector<std::size_t> members(n);
  {
    std::vector<std::size_t> fill(start.begin(), start.end() - 1);
    for (std::size_t i = 0; i < n; ++i) members[fill[bin_of[i]]++] = i;
  }

  FksTable table(outer);
  table.n_ = n;
  table.bins_.reserve(n);
  std::uint64_t offset = 0;
  std::vector<std::uint64_t> used;
  for (std::size_t b = 0; b < n; ++b) {
    const std::uint64_t count = loads[b];
    const std::uint64_t slots = std::max<std::uint64_t>(1, count * count);
    // An empty or singleton bin needs no randomness: any function is injective.
    hashfam::ModPrimeHash inner = hashfam::ModPrimeHash::from_params(1, 0, p, slots);
    if (count > 1) {
      for (;;) {
        inner = hashfam::sample_mod_prime(src, p, slots);
        ++stats.inner_rounds;
        used.clear();
        for (std::size_t j = start[b]; j < start[b + 1]; ++j) used.push_back(inner(keys[members[j]]));
        std::sort(used.begin(), used.end());
        if (std::adjacent_find(used.begin(), used.end()) == used.end()) break;
      }
    }
    table.bins_.push_back(Bin{offset, slots, count, inner});
    offset += slots;
  }

  table.slots_.assign(offset, Slot{});
  for (std::size_t i = 0; i < n; ++i) {
    const Bin& bin = table.bins_[bin_of[i]];
    Slot& slot = table.slots_[bin.offset + bin.inner(keys[i])];
    slot = Slot{true, keys[i], payloads.empty() ? keys[i] : payloads[i]};
  }
  table.stats_ = stats;
  return table;
}

FksTable::LookupResult FksTable::lookup(std::uint64_t key) const noexcept {
  LookupResult out;
  const Bin& bin = bins_[outer_(key)];
  out.hash_evaluations = 1;
  if (bin.key_count == 0) return out;
  const Slot& slot = slots_[bin.offset + bin.inner(key)];
  out.hash_evaluations = 2;
  if (slot.occupied && slot.key == key) {
    out.found = true;
    out.payload = slot.payload;
  }
  return out;
}

std::vector<std::uint64_t> FksTable::bin_loads() const {
  std::vector<std::uint64_t> out;
  out.reserve(bins_.size());
  for (const Bin& b : bins_) out.push_back(b.key_count);
  return out;
}

void FksTable::validate() const {
  std::size_t stored = 0;
  std::uint64_t expected_offset = 0;
  for (std::size_t b = 0; b < bins_.size(); ++b) {
    const Bin& bin = bins_[b];
    if (bin.offset != expected_offset) fail(ErrorCode::contract_violation, "fks: bin directory out of order");
    if (bin.slot_count != std::max<std::uint64_t>(1, bin.key_count * bin.key_count)) {
      fail(ErrorCode::contract_violation, "fks: wrong inner table size");
    }
    std::uint64_t occupied = 0;
    for (std::uint64_t s = 0; s < bin.slot_count; ++s) {
      const Slot& slot = slots_[bin.offset + s];
      if (!slot.occupied) continue;
      ++occupied;
      if (outer_(slot.key) != b || bin.inner(slot.key) != s) fail(ErrorCode::contract_violation, "fks: misplaced key");
    }
    // Distinct keys in distinct slots: a collision would have lost a key.
    if (occupied != bin.key_count) fail(ErrorCode::contract_violation, "fks: intra-bin collision");
    stored += occupied;
    expected_offset += bin.slot_count;
  }
  if (stored != n_ || expected_offset != slots_.size()) fail(ErrorCode::contract_violation, "fks: size mismatch");
}

// "RLFK" u16 version, u64 n, outer handle, u64 outer/inner rounds, then per
// bin: u64 key_count, inner handle; then per slot: u8 occupied, u64 key, u64 payload.
std::vector<std::uint8_t> FksTable::serialize() const {
  ByteWriter out;
  out.put_tag(kMagic);
  out.put(kVersion);
  out.put(std::uint64_t{n_});
  write_mod_p(out, outer_);
  out.put(stats_.outer_rounds);
  out.put(stats_.inner_rounds);
  for (const Bin& bin : bins_) {
    out.put(bin.key_count);
    write_mod_p(out, bin.inner);
  }
  for (const Slot& slot : slots_) {
    out.put(static_cast<std::uint8_t>(slot.occupied));
    out.put(slot.key);
    out.put(slot.payload);
  }
  return std::move(out).take();
}

FksTable FksTable::deserialize(std::span<const std::uint8_t> bytes) {
  ByteReader in(bytes);
  in.expect_tag(kMagic);
  if (in.get<std::uint16_t>() != kVersion) fail(ErrorCode::parse_error, "fks: unsupported version");
  const auto n = in.get<std::uint64_t>();
  if (n == 0) fail(ErrorCode::parse_error, "fks: empty table");
  FksTable table(read_mod_p(in));
  if (table.outer_.m() != n) fail(ErrorCode::parse_error, "fks: outer range differs from n");
  table.n_ = n;
  table.stats_.outer_rounds = in.get<std::uint64_t>();
  table.stats_.inner_rounds = in.get<std::uint64_t>();
  std::uint64_t offset = 0;
  std::uint64_t squares = 0;
  for (std::uint64_t b = 0; b < n; ++b) {
    const auto count = in.get<std::uint64_t>();
    if (count > n) fail(ErrorCode::parse_error, "fks: bin count exceeds n");
    const hashfam::ModPrimeHash inner = read_mod_p(in);
    const std::uint64_t slots = std::max<std::uint64_t>(1, count * count);
    if (inner.m() != slots) fail(ErrorCode::parse_error, "fks: inner range mismatch");
    table.bins_.push_back(Bin{offset, slots, count, inner});
    offset += slots;
    squares += count * count;
  }
  table.stats_.sum_squares = squares;
  if (offset > 5 * n) fail(ErrorCode::parse_error, "fks: slot count exceeds 5n");
  if (in.remaining() != offset * 17) fail(ErrorCode::parse_error, "fks: slot array size mismatch");
  table.slots_.reserve(offset);
  for (std::uint64_t s = 0; s < offset; ++s) {
    Slot slot;
    slot.occupied = in.get<std::uint8_t>() != 0;
    slot.key = in.get<std::uint64_t>();
    slot.payload = in.get<std::uint64_t>();
    table.slots_.push_back(slot);
  }
  try {
    table.validate();
  } catch (const Error& e) {
    fail(ErrorCode::parse_error, std::string("fks: inconsistent table: ") + e.what());
  }
  return table;
}

}  // namespace randlab
