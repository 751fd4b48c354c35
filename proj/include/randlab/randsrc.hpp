#pragma once

// Seeded bit streams and the exact samplers built on them.
//
// Every randomized structure in the library draws through a BitSource so
// that a run is replayable from its seed and the number of random bits it
// used is known exactly. The samplers are templates over the BitSource
// concept; tests drive them with scripted bit strings to check exactness.

#include <array>
#include <bit>
#include <concepts>
#include <cstdint>
#include <span>
#include <string>
#include <utility>

#include "randlab/error.hpp"

namespace randlab {

template <class S>
concept BitSource = requires(S& s, unsigned count) {
  { s.bits(count) } -> std::convertible_to<std::uint64_t>;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

// Parses a decimal or 0x-prefixed hexadecimal seed.
std::uint64_t parse_seed(const std::string& text);

/// Deterministic source of unbiased bits backed by xoshiro256**.
///
/// Bits are served from a 64-bit buffer, low bit first, so bits_consumed()
/// counts exactly the bits handed out. Not thread-safe; use fork() to give
/// each worker its own stream.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t bits_consumed() const noexcept { return consumed_; }

  // Returns `count` fresh bits (0 <= count <= 64) in the low end of the word.
  std::uint64_t bits(unsigned count);
  bool bit() { return bits(1) != 0; }
  std::uint64_t word() { return bits(64); }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform_real();

  // Child stream derived from (seed, stream_id) only, never from the
  // parent's current position.
  RandomSource fork(std::uint64_t stream_id) const;

 private:
  std::uint64_t next_word() noexcept;

  std::uint64_t seed_;
  std::array<std::uint64_t, 4> state_{};
  std::uint64_t buffer_ = 0;
  unsigned buffered_ = 0;
  std::uint64_t consumed_ = 0;
};

enum class UniformMethod { rejection, range_coding };

inline unsigned ceil_lg(std::uint64_t n) noexcept {
  return n <= 1 ? 0u : static_cast<unsigned>(std::bit_width(n - 1));
}

namespace detail {

template <BitSource S>
std::uint64_t uniform_rejection(S& src, std::uint64_t n) {
  const unsigned width = ceil_lg(n);
  for (;;) {
    const std::uint64_t v = src.bits(width);
    if (v < n) return v;
  }
}

// Reads the bits as the binary expansion of U in [0,1) and returns
// floor(U * n) as soon as the dyadic interval of U fits in one cell.
// State after the first ceil(lg n) bits: `cell` is the current cell and
// `gap` is the distance (scaled by 2^b) from the interval's low end to the
// next cell boundary; gap < n while undecided.
template <BitSource S>
std::uint64_t uniform_range_coding(S& src, std::uint64_t n) {
  using u128 = unsigned __int128;
  const unsigned width = ceil_lg(n);
  const u128 v = src.bits(width);
  const u128 scaled = v * n;
  std::uint64_t cell = static_cast<std::uint64_t>(scaled >> width);
  const u128 rem = scaled - (static_cast<u128>(cell) << width);
  if (rem + n <= (static_cast<u128>(1) << width)) return cell;
  u128 gap = (static_cast<u128>(1) << width) - rem;
  for (;;) {
    if (src.bits(1) == 0) {
      gap *= 2;
      if (gap >= n) return cell;
    } else {
      if (2 * gap <= n) return cell + 1;
      gap = 2 * gap - n;
    }
  }
}

}  // namespace detail

/// Uniform integer in [0, n). n == 1 consumes no bits.
template <BitSource S>
std::uint64_t uniform_below(S& src, std::uint64_t n, UniformMethod method = UniformMethod::rejection) {
  require(n >= 1, "uniform_below: n must be positive");
  if (n == 1) return 0;
  return method == UniformMethod::rejection ? detail::uniform_rejection(src, n)
                                            : detail::uniform_range_coding(src, n);
}

/// Exact Bernoulli(p): compares random bits against the binary expansion
/// of p, two bits expected.
template <BitSource S>
bool bernoulli(S& src, double p) {
  require(p >= 0.0 && p <= 1.0, "bernoulli: p outside [0,1]");
  if (p == 1.0) return true;
  double rest = p;
  while (rest > 0.0) {
    rest *= 2.0;
    const unsigned digit = rest >= 1.0 ? 1u : 0u;
    if (digit) rest -= 1.0;
    const auto b = static_cast<unsigned>(src.bits(1));
    if (b != digit) return b < digit;
  }
  return false;
}

struct GeometricSample {
  std::uint64_t value = 1;  // trials up to and including the first success
  double p = 1.0;
};

/// Pr[value = k] = (1-p)^(k-1) p, one Bernoulli trial per step.
template <BitSource S>
GeometricSample geometric(S& src, double p) {
  require(p > 0.0 && p <= 1.0, "geometric: p must lie in (0,1]");
  GeometricSample out{1, p};
  while (!bernoulli(src, p)) ++out.value;
  return out;
}

// Like geometric() but stops at `cap`; used where tower heights saturate.
template <BitSource S>
std::uint64_t geometric_capped(S& src, double p, std::uint64_t cap) {
  require(p > 0.0 && p <= 1.0, "geometric: p must lie in (0,1]");
  std::uint64_t value = 1;
  while (value < cap && !bernoulli(src, p)) ++value;
  return value;
}

/// Fisher-Yates; every ordering equally likely.
template <BitSource S, class T>
void shuffle(S& src, std::span<T> items, UniformMethod method = UniformMethod::rejection) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(uniform_below(src, i, method));
    using std::swap;
    swap(items[i - 1], items[j]);
  }
}

}  // namespace randlab
