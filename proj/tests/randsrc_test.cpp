#include "randlab/randsrc.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <vector>

#include "scripted_source.hpp"

namespace randlab {
namespace {

using testing::enumerate_bits;
using testing::ScriptedSource;

TEST(RandomSource, ReplaysFromSeed) {
  RandomSource a(42), b(42);
  for (unsigned count : {1u, 7u, 64u, 13u, 0u, 33u}) EXPECT_EQ(a.bits(count), b.bits(count));
  EXPECT_EQ(a.bits_consumed(), b.bits_consumed());
  RandomSource c(43);
  EXPECT_NE(RandomSource(42).word(), c.word());
}

TEST(RandomSource, CountsEveryBitHandedOut) {
  RandomSource src(7);
  src.bits(3);
  src.bits(64);
  src.bits(0);
  src.bit();
  EXPECT_EQ(src.bits_consumed(), 68u);
  uniform_below(src, 1);
  EXPECT_EQ(src.bits_consumed(), 68u);
}

TEST(RandomSource, BitsStayInRequestedWidth) {
  RandomSource src(9);
  for (unsigned count = 1; count < 64; ++count) EXPECT_LT(src.bits(count), std::uint64_t{1} << count);
  EXPECT_THROW(src.bits(65), Error);
}

TEST(RandomSource, ForkDependsOnlyOnSeedAndStream) {
  RandomSource parent(5);
  const auto before = parent.fork(3).word();
  parent.bits(17);
  EXPECT_EQ(parent.fork(3).word(), before);
  EXPECT_NE(parent.fork(4).word(), before);
}

TEST(RandomSource, ParsesDecimalAndHexSeeds) {
  EXPECT_EQ(parse_seed("12345"), 12345u);
  EXPECT_EQ(parse_seed("0xff"), 255u);
  EXPECT_EQ(parse_seed("0XFFFFFFFFFFFFFFFF"), ~std::uint64_t{0});
  for (const char* bad : {"", "abc", "0x", "-1", "12x", "18446744073709551616"}) {
    try {
      parse_seed(bad);
      ADD_FAILURE() << "accepted " << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::parse_error);
    }
  }
}

TEST(RandomSource, UniformRealInUnitInterval) {
  RandomSource src(11);
  double sum = 0;
  for (int i = 0; i < 10000; ++i) {
    const double u = src.uniform_real();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / 10000, 0.5, 4 * std::sqrt(1.0 / 12 / 10000));
}

// Every determined 20-bit string is accepted in some round of 3-bit draws,
// and each round accepts each value exactly once, so counts tie exactly.
TEST(UniformBelow, RejectionIsExactlyUniformOverAllTwentyBitStrings) {
  for (std::uint64_t n : {2u, 3u, 5u, 6u, 7u, 1000u}) {
    const auto e = enumerate_bits(20, [n](ScriptedSource& s) { return uniform_below(s, n); });
    ASSERT_EQ(e.counts.size(), n);
    const auto first = e.counts.begin()->second;
    for (const auto& [value, count] : e.counts) {
      EXPECT_LT(value, n);
      EXPECT_EQ(count, first) << "n=" << n << " value=" << value;
    }
  }
}

// Range coding maps a bit string to a point; a value is returned once the
// dyadic interval read so far sits inside its cell. Each cell can lose at
// most two boundary intervals of width 2^-20 to the undetermined set.
TEST(UniformBelow, RangeCodingMatchesCellWidthsOverAllTwentyBitStrings) {
  constexpr unsigned kLength = 20;
  for (std::uint64_t n : {3u, 5u, 6u, 7u, 11u, 1000u}) {
    const auto e = enumerate_bits(kLength, [n](ScriptedSource& s) {
      return uniform_below(s, n, UniformMethod::range_coding);
    });
    const double ideal = std::ldexp(1.0, kLength) / static_cast<double>(n);
    std::uint64_t total = e.undetermined;
    for (const auto& [value, count] : e.counts) {
      EXPECT_LT(value, n);
      EXPECT_LE(static_cast<double>(count), ideal + 1e-9) << "n=" << n << " value=" << value;
      EXPECT_GE(static_cast<double>(count), ideal - 2.0) << "n=" << n << " value=" << value;
      total += count;
    }
    EXPECT_EQ(total, std::uint64_t{1} << kLength);
  }
}

TEST(UniformBelow, RangeCodingUsesFewerBitsThanRejectionOnAverage) {
  RandomSource a(1), b(1);
  for (int i = 0; i < 20000; ++i) {
    uniform_below(a, 5, UniformMethod::rejection);
    uniform_below(b, 5, UniformMethod::range_coding);
  }
  EXPECT_LT(b.bits_consumed(), a.bits_consumed());
}

TEST(UniformBelow, RejectsZero) {
  RandomSource src(1);
  EXPECT_THROW(uniform_below(src, 0), Error);
}

// Bernoulli(p) returns 1 iff the bit string read as a binary fraction lies
// below p; with 20 bits exactly floor(p 2^20) strings decide "true".
TEST(Bernoulli, ExactOverAllTwentyBitStrings) {
  for (double p : {0.3, 0.5, 0.125, 1.0 / 3.0, 0.999}) {
    const auto e = enumerate_bits(20, [p](ScriptedSource& s) { return bernoulli(s, p) ? 1u : 0u; });
    const double scaled = std::ldexp(p, 20);
    EXPECT_EQ(e.counts.at(1), static_cast<std::uint64_t>(std::floor(scaled))) << "p=" << p;
    EXPECT_LE(e.undetermined, 1u);
  }
}

TEST(Bernoulli, EndpointsAreDeterministic) {
  RandomSource src(3);
  for (int i = 0; i < 100; ++i) {
    EXPECT_FALSE(bernoulli(src, 0.0));
    EXPECT_TRUE(bernoulli(src, 1.0));
  }
  EXPECT_THROW(bernoulli(src, 1.5), Error);
}

TEST(Geometric, MeanIsOneOverP) {
  RandomSource src(17);
  constexpr int kTrials = 50000;
  for (double p : {0.25, 0.5, 0.9}) {
    double sum = 0, sq = 0;
    for (int i = 0; i < kTrials; ++i) {
      const auto v = static_cast<double>(geometric(src, p).value);
      sum += v;
      sq += v * v;
    }
    const double mean = sum / kTrials;
    const double se = std::sqrt((sq / kTrials - mean * mean) / kTrials);
    EXPECT_NEAR(mean, 1.0 / p, 4 * se) << "p=" << p;
  }
}

TEST(Geometric, CappedStopsAtCap) {
  RandomSource src(2);
  for (int i = 0; i < 1000; ++i) EXPECT_LE(geometric_capped(src, 0.01, 5), 5u);
  EXPECT_THROW(geometric(src, 0.0), Error);
}

// With 2-bit rejection for the first swap and 1 bit for the second, all
// six orders of three items receive the same number of 12-bit strings.
TEST(Shuffle, AllPermutationsOfThreeEquallyLikely) {
  for (auto method : {UniformMethod::rejection, UniformMethod::range_coding}) {
    const auto e = enumerate_bits(12, [method](ScriptedSource& s) {
      std::array<int, 3> items{0, 1, 2};
      shuffle(s, std::span<int>(items), method);
      return static_cast<std::uint64_t>(items[0] * 9 + items[1] * 3 + items[2]);
    });
    ASSERT_EQ(e.counts.size(), 6u);
    std::uint64_t lo = ~std::uint64_t{0}, hi = 0;
    for (const auto& [perm, count] : e.counts) {
      lo = std::min(lo, count);
      hi = std::max(hi, count);
    }
    if (method == UniformMethod::rejection) {
      EXPECT_EQ(lo, hi);
    } else {
      EXPECT_LE(hi - lo, 4u);
    }
  }
}

TEST(Shuffle, KeepsTheMultiset) {
  RandomSource src(4);
  std::vector<int> items(100);
  std::iota(items.begin(), items.end(), 0);
  shuffle(src, std::span<int>(items));
  std::vector<int> sorted = items;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < 100; ++i) EXPECT_EQ(sorted[i], i);
}

}  // namespace
}  // namespace randlab
