#include "randlab/bloom.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "randlab/byteio.hpp"

namespace randlab {
namespace {

constexpr char kMagic[] = "RLBF";
constexpr std::uint16_t kVersion = 1;

hashfam::ModPrimeHash read_mod_p(ByteReader& in) {
  const hashfam::HashFunction h = hashfam::HashFunction::deserialize(in);
  if (h.family() != hashfam::Family::mod_p) fail(ErrorCode::parse_error, "bloom: expected a mod_p handle");
  return std::get<hashfam::ModPrimeHash>(h.impl());
}

}  // namespace

BloomParams bloom_params(std::uint64_t m, unsigned k, std::uint64_t n_target) {
  require(m >= 2, "bloom: m must be at least 2");
  require(k >= 1, "bloom: k must be at least 1");
  BloomParams out;
  out.m = m;
  out.k = k;
  out.n_target = n_target;
  out.alpha = static_cast<double>(n_target) / static_cast<double>(m);
  out.alpha_prime = out.alpha * (1.0 + 1.0 / static_cast<double>(m));
  return out;
}

BloomParams bloom_plan(std::uint64_t n_target, double epsilon) {
  require(epsilon > 0.0 && epsilon < 1.0, "bloom: epsilon must lie in (0, 1)");
  require(n_target >= 1, "bloom: n_target must be positive");
  const double bits = 1.442 * static_cast<double>(n_target) * std::log2(1.0 / epsilon);
  const auto m = std::max<std::uint64_t>(2, static_cast<std::uint64_t>(std::ceil(bits)) + 1);
  BloomParams out = bloom_params(m, 1, n_target);
  const double k_real = std::log(2.0) / out.alpha_prime;
  out.k = static_cast<unsigned>(std::max(1.0, std::round(k_real)));
  return out;
}

double bloom_bit_probability(std::uint64_t m, unsigned k, std::uint64_t n) {
  require(m >= 1, "bloom: m must be positive");
  const double kn = static_cast<double>(k) * static_cast<double>(n);
  return -std::expm1(kn * std::log1p(-1.0 / static_cast<double>(m)));
}

double bloom_false_positive(std::uint64_t m, unsigned k, std::uint64_t n) {
  return std::pow(bloom_bit_probability(m, k, n), static_cast<double>(k));
}

BloomFilter::BloomFilter(const BloomParams& params, BloomVariant variant, unsigned cap, hashfam::ModPrimeHash h,
                         hashfam::ModPrimeHash h_prime)
    : params_(params), variant_(variant), cap_(cap), h_(h), h_prime_(h_prime) {
  require(variant == BloomVariant::bits || variant == BloomVariant::counting, "bloom: unknown variant");
  require(params.m >= 2 && params.k >= 1, "bloom: need m >= 2 and k >= 1");
  if (variant == BloomVariant::bits) {
    bits_.assign((params.m + 63) / 64, 0);
  } else {
    require(cap >= 1 && cap <= 255, "bloom: counter cap must lie in [1, 255]");
    counters_.assign(params.m, 0);
  }
}

BloomFilter::BloomFilter(RandomSource& src, const BloomParams& params, BloomVariant variant, unsigned counter_cap,
                         std::uint64_t universe_max)
    : BloomFilter(bloom_params(params.m, params.k, params.n_target), variant,
                  variant == BloomVariant::bits ? 1 : counter_cap, hashfam::sample_mod_p_raw(src, universe_max, params.m),
                  hashfam::sample_mod_p_raw(src, universe_max, params.m - 1)) {}

std::vector<std::uint64_t> BloomFilter::positions(std::uint64_t key) const {
  using u128 = unsigned __int128;
  const std::uint64_t m = params_.m;
  const std::uint64_t base = h_(key);
  const std::uint64_t stride = h_prime_(key) + 1;
  std::vector<std::uint64_t> out(params_.k);
  for (unsigned i = 0; i < params_.k; ++i) {
    out[i] = static_cast<std::uint64_t>((u128{base} + u128{i} * stride) % m);
  }
  return out;
}

void BloomFilter::require_counting(const char* op) const {
  if (variant_ != BloomVariant::counting) {
    fail(ErrorCode::invalid_argument, std::string("bloom: ") + op + " needs the counting variant");
  }
}

void BloomFilter::insert(std::uint64_t key) {
  for (std::uint64_t pos : positions(key)) {
    if (variant_ == BloomVariant::bits) {
      bits_[pos / 64] |= std::uint64_t{1} << (pos % 64);
    } else if (counters_[pos] < cap_) {
      ++counters_[pos];
    }
  }
}

bool BloomFilter::query(std::uint64_t key) const {
  using u128 = unsigned __int128;
  const std::uint64_t base = h_(key);
  const std::uint64_t stride = h_prime_(key) + 1;
  for (unsigned i = 0; i < params_.k; ++i) {
    const auto pos = static_cast<std::uint64_t>((u128{base} + u128{i} * stride) % params_.m);
    const bool set = variant_ == BloomVariant::bits ? ((bits_[pos / 64] >> (pos % 64)) & 1) != 0 : counters_[pos] != 0;
    if (!set) return false;
  }
  return true;
}

void BloomFilter::remove(std::uint64_t key) {
  require_counting("remove");
  // A repeated position must absorb one decrement per occurrence.
  std::map<std::uint64_t, unsigned> need;
  for (std::uint64_t pos : positions(key)) ++need[pos];
  for (const auto& [pos, times] : need) {
    const unsigned value = counters_[pos];
    if (value < cap_ && value < times) fail(ErrorCode::contract_violation, "bloom: decrement of a zero counter");
  }
  for (const auto& [pos, times] : need) {
    if (counters_[pos] < cap_) counters_[pos] = static_cast<std::uint8_t>(counters_[pos] - times);
  }
}

std::uint64_t BloomFilter::count_estimate(std::uint64_t key) const {
  require_counting("count_estimate");
  std::uint64_t best = cap_;
  for (std::uint64_t pos : positions(key)) best = std::min<std::uint64_t>(best, counters_[pos]);
  return best;
}

std::uint64_t BloomFilter::cell(std::uint64_t i) const {
  require(i < params_.m, "bloom: cell index out of range");
  if (variant_ == BloomVariant::bits) return (bits_[i / 64] >> (i % 64)) & 1;
  return counters_[i];
}

std::uint64_t BloomFilter::nonzero_cells() const {
  std::uint64_t total = 0;
  if (variant_ == BloomVariant::bits) {
    for (auto w : bits_) total += static_cast<std::uint64_t>(__builtin_popcountll(w));
  } else {
    for (auto c : counters_) total += c != 0;
  }
  return total;
}

std::uint64_t BloomFilter::saturated_cells() const {
  if (variant_ == BloomVariant::bits) return nonzero_cells();
  return static_cast<std::uint64_t>(std::count(counters_.begin(), counters_.end(), cap_));
}

std::vector<std::uint8_t> BloomFilter::serialize() const {
  ByteWriter out;
  out.put_tag(kMagic);
  out.put(kVersion);
  out.put(params_.m);
  out.put(static_cast<std::uint32_t>(params_.k));
  out.put(static_cast<std::uint8_t>(variant_));
  out.put(static_cast<std::uint8_t>(cap_));
  out.put(params_.n_target);
  hashfam::HashFunction(h_).serialize(out);
  hashfam::HashFunction(h_prime_).serialize(out);
  if (variant_ == BloomVariant::bits) {
    for (auto w : bits_) out.put(w);
  } else {
    out.put_bytes(counters_);
  }
  return std::move(out).take();
}

BloomFilter BloomFilter::deserialize(std::span<const std::uint8_t> bytes) {
  ByteReader in(bytes);
  in.expect_tag(kMagic);
  if (in.get<std::uint16_t>() != kVersion) fail(ErrorCode::parse_error, "bloom: unsupported version");
  const auto m = in.get<std::uint64_t>();
  const auto k = in.get<std::uint32_t>();
  const auto variant = in.get<std::uint8_t>();
  const unsigned cap = in.get<std::uint8_t>();
  const auto n_target = in.get<std::uint64_t>();
  if (m < 2 || k < 1 || variant > 1 || cap < 1) fail(ErrorCode::parse_error, "bloom: bad header");
  const hashfam::ModPrimeHash h = read_mod_p(in);
  const hashfam::ModPrimeHash h_prime = read_mod_p(in);
  if (h.m() != m || h_prime.m() != m - 1) fail(ErrorCode::parse_error, "bloom: handle ranges do not match m");
  BloomFilter out(bloom_params(m, k, n_target), static_cast<BloomVariant>(variant), cap, h, h_prime);
  if (out.variant_ == BloomVariant::bits) {
    if (in.remaining() != out.bits_.size() * 8) fail(ErrorCode::parse_error, "bloom: array size mismatch");
    for (auto& w : out.bits_) w = in.get<std::uint64_t>();
    if (m % 64 != 0 && (out.bits_.back() >> (m % 64)) != 0) fail(ErrorCode::parse_error, "bloom: bits beyond m");
  } else {
    if (in.remaining() != m) fail(ErrorCode::parse_error, "bloom: array size mismatch");
    const auto raw = in.get_bytes(m);
    std::copy(raw.begin(), raw.end(), out.counters_.begin());
    for (auto c : out.counters_) {
      if (c > cap) fail(ErrorCode::parse_error, "bloom: counter above cap");
    }
  }
  return out;
}

}  // namespace randlab
