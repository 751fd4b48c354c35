#pragma once

// Samplable hash families: modular 2-universal, multiply-shift and
// simple tabulation, plus pairwise-independent values from subset sums.
//
// Handles are immutable once sampled and safe to evaluate concurrently.
//
// Binary layout (all integers little-endian):
//   "RLHF" u16 version=1 u8 family
//   mod_p:          u64 a, u64 b, u64 p, u64 m
//   multiply_shift: u64 a, u8 k, u8 l
//   tabulation:     u8 c, u8 char_bits, u8 m_bits, then c * 2^char_bits u64 words,
//                   table 1 (least significant character) first

#include <cstdint>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "randlab/byteio.hpp"
#include "randlab/randsrc.hpp"

namespace randlab::hashfam {

enum class Family : std::uint8_t { mod_p = 1, multiply_shift = 2, tabulation = 3 };

const char* family_name(Family f) noexcept;
Family parse_family(const std::string& name);

// Largest prime below 2^64; mod_p universes must stay below it.
inline constexpr std::uint64_t kLargestPrime64 = 18446744073709551557ULL;

bool is_prime(std::uint64_t n) noexcept;
// Smallest prime strictly greater than n (n < kLargestPrime64).
std::uint64_t next_prime(std::uint64_t n);

/// h(x) = ((a x + b) mod p) mod m
class ModPrimeHash {
 public:
  static ModPrimeHash from_params(std::uint64_t a, std::uint64_t b, std::uint64_t p, std::uint64_t m);

  std::uint64_t operator()(std::uint64_t x) const noexcept {
    using u128 = unsigned __int128;
    const auto r = static_cast<std::uint64_t>((static_cast<u128>(a_) * x + b_) % p_);
    return r % m_;
  }

  std::uint64_t a() const noexcept { return a_; }
  std::uint64_t b() const noexcept { return b_; }
  std::uint64_t p() const noexcept { return p_; }
  std::uint64_t m() const noexcept { return m_; }

 private:
  ModPrimeHash(std::uint64_t a, std::uint64_t b, std::uint64_t p, std::uint64_t m) : a_(a), b_(b), p_(p), m_(m) {}
  std::uint64_t a_, b_, p_, m_;
};

/// h(x) = (a x mod 2^k) div 2^(k-l), a odd
class MultiplyShiftHash {
 public:
  static MultiplyShiftHash from_params(std::uint64_t a, unsigned k, unsigned l);

  std::uint64_t operator()(std::uint64_t x) const noexcept {
    const std::uint64_t product = (a_ * x) & mask_;
    return product >> (k_ - l_);
  }

  std::uint64_t a() const noexcept { return a_; }
  unsigned k() const noexcept { return k_; }
  unsigned l() const noexcept { return l_; }

 private:
  MultiplyShiftHash(std::uint64_t a, unsigned k, unsigned l)
      : a_(a), k_(k), l_(l), mask_(k == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << k) - 1) {}
  std::uint64_t a_;
  unsigned k_, l_;
  std::uint64_t mask_;
};

/// h(x) = T_1[x_1] ^ T_2[x_2] ^ ... ^ T_c[x_c], x_1 the lowest char_bits bits.
class TabulationHash {
 public:
  static TabulationHash from_tables(unsigned c, unsigned char_bits, unsigned m_bits, std::vector<std::uint64_t> tables);

  std::uint64_t operator()(std::uint64_t x) const noexcept {
    std::uint64_t h = 0;
    const std::uint64_t char_mask = (std::uint64_t{1} << char_bits_) - 1;
    const std::uint64_t* row = tables_.data();
    for (unsigned i = 0; i < c_; ++i, row += std::size_t{1} << char_bits_) {
      h ^= row[x & char_mask];
      x >>= char_bits_;
    }
    return h;
  }

  unsigned c() const noexcept { return c_; }
  unsigned char_bits() const noexcept { return char_bits_; }
  unsigned m_bits() const noexcept { return m_bits_; }
  std::span<const std::uint64_t> tables() const noexcept { return tables_; }

 private:
  TabulationHash(unsigned c, unsigned char_bits, unsigned m_bits, std::vector<std::uint64_t> tables)
      : c_(c), char_bits_(char_bits), m_bits_(m_bits), tables_(std::move(tables)) {}
  unsigned c_, char_bits_, m_bits_;
  std::vector<std::uint64_t> tables_;
};

/// A sampled member of one of the families.
class HashFunction {
 public:
  using Impl = std::variant<ModPrimeHash, MultiplyShiftHash, TabulationHash>;

  template <class H>
    requires std::is_constructible_v<Impl, H&&>
  HashFunction(H&& h) : impl_(std::forward<H>(h)) {}  // NOLINT(google-explicit-constructor)

  std::uint64_t operator()(std::uint64_t x) const noexcept {
    return std::visit([x](const auto& h) { return h(x); }, impl_);
  }

  Family family() const noexcept { return static_cast<Family>(impl_.index() + 1); }
  // Number of distinct outputs.
  std::uint64_t range() const noexcept;
  // Width of the input domain in bits.
  unsigned universe_bits() const noexcept;

  const Impl& impl() const noexcept { return impl_; }

  void serialize(ByteWriter& out) const;
  std::vector<std::uint8_t> to_bytes() const;
  static HashFunction deserialize(ByteReader& in);
  static HashFunction from_bytes(std::span<const std::uint8_t> bytes);

  // Debug representation; parameters and tables are emitted in full.
  std::string to_json() const;
  static HashFunction from_json(const std::string& text);

  friend bool operator==(const HashFunction& a, const HashFunction& b) { return a.to_bytes() == b.to_bytes(); }

 private:
  static HashFunction deserialize_unchecked(ByteReader& in);
  static HashFunction from_json_unchecked(const std::string& text);

  Impl impl_;
};

/// a uniform in [1, p), b uniform in [0, p), p the smallest prime above
/// max(universe_max, m - 1).
HashFunction sample_mod_p(RandomSource& src, std::uint64_t universe_max, std::uint64_t m);
ModPrimeHash sample_mod_p_raw(RandomSource& src, std::uint64_t universe_max, std::uint64_t m);
// Same distribution with the prime fixed by the caller (m <= p).
ModPrimeHash sample_mod_prime(RandomSource& src, std::uint64_t p, std::uint64_t m);

/// a uniform odd in (0, 2^k); 1 <= l <= k <= 64.
HashFunction sample_multiply_shift(RandomSource& src, unsigned k, unsigned l);

/// c tables of 2^char_bits uniform m_bits-wide words; c * char_bits <= 64, char_bits <= 16.
HashFunction sample_tabulation(RandomSource& src, unsigned c, unsigned char_bits, unsigned m_bits);
TabulationHash sample_tabulation_raw(RandomSource& src, unsigned c, unsigned char_bits, unsigned m_bits);

struct PairwiseBitBlock {
  std::uint64_t alphabet_size = 2;
  std::vector<std::uint64_t> base;     // ceil(lg(n+1)) independent uniform values
  std::vector<std::uint64_t> derived;  // derived[j-1] = sum of base[i] over bits i of j, mod alphabet_size
};

/// n pairwise-independent uniform values from ceil(lg(n+1)) independent ones.
PairwiseBitBlock pairwise_bits(RandomSource& src, std::uint64_t n, std::uint64_t alphabet_size = 2);
// Recomputes derived values from given base values; exposed for enumeration.
std::vector<std::uint64_t> derive_pairwise(std::span<const std::uint64_t> base, std::uint64_t n,
                                           std::uint64_t alphabet_size);

}  // namespace randlab::hashfam
