#include "randlab/bloom.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "randlab/randsrc.hpp"

namespace randlab {
namespace {

TEST(BloomPlan, GoldenSizes) {
  const auto a = bloom_plan(1000, 0.01);
  EXPECT_EQ(a.m, 9582u);
  EXPECT_EQ(a.k, 7u);
  EXPECT_NEAR(a.alpha, 1000.0 / 9582.0, 1e-15);
  const auto b = bloom_plan(100, 0.5);
  EXPECT_EQ(b.m, 146u);
  EXPECT_EQ(b.k, 1u);
  EXPECT_THROW(bloom_plan(0, 0.1), Error);
  EXPECT_THROW(bloom_plan(10, 1.0), Error);
  EXPECT_THROW(bloom_plan(10, 0.0), Error);
}

TEST(BloomPlan, FalsePositiveFormula) {
  for (std::uint64_t m : {50u, 1000u, 9582u}) {
    for (unsigned k : {1u, 3u, 7u}) {
      for (std::uint64_t n : {0u, 10u, 1000u}) {
        const double cell = 1.0 - std::pow(1.0 - 1.0 / static_cast<double>(m), static_cast<double>(k * n));
        EXPECT_NEAR(bloom_bit_probability(m, k, n), cell, 1e-12);
        EXPECT_NEAR(bloom_false_positive(m, k, n), std::pow(cell, k), 1e-12);
      }
    }
  }
}

TEST(Bloom, NoFalseNegatives) {
  RandomSource src(1);
  BloomFilter f(src, bloom_plan(2000, 0.02));
  std::set<std::uint64_t> keys;
  while (keys.size() < 2000) keys.insert(src.word());
  for (auto k : keys) f.insert(k);
  for (auto k : keys) ASSERT_TRUE(f.query(k));
}

TEST(Bloom, ProbesAreDistinctWithinTheTable) {
  RandomSource src(2);
  BloomFilter f(src, bloom_params(101, 9, 10));
  for (std::uint64_t key = 0; key < 500; ++key) {
    const auto pos = f.positions(key);
    ASSERT_EQ(pos.size(), 9u);
    // m prime and step in [1, m) make the k probes distinct.
    EXPECT_EQ(std::set<std::uint64_t>(pos.begin(), pos.end()).size(), 9u);
    for (auto p : pos) EXPECT_LT(p, 101u);
  }
}

TEST(Bloom, FalsePositiveRateTracksPrediction) {
  RandomSource src(3);
  const auto params = bloom_plan(1000, 0.05);
  constexpr int kFilters = 40, kProbes = 5000;
  double hits = 0;
  for (int f = 0; f < kFilters; ++f) {
    BloomFilter filter(src, params);
    for (std::uint64_t k = 0; k < 1000; ++k) filter.insert(k);
    for (std::uint64_t k = 0; k < kProbes; ++k) hits += filter.query(1000000 + k);
  }
  const double trials = kFilters * kProbes;
  const double predicted = bloom_false_positive(params.m, params.k, 1000);
  EXPECT_NEAR(hits / trials, predicted, 0.01);
}

TEST(CountingBloom, RemoveRestoresAbsence) {
  RandomSource src(4);
  BloomFilter f(src, bloom_plan(100, 0.01), BloomVariant::counting);
  for (std::uint64_t k = 0; k < 100; ++k) f.insert(k);
  for (std::uint64_t k = 0; k < 100; k += 2) f.remove(k);
  for (std::uint64_t k = 1; k < 100; k += 2) EXPECT_TRUE(f.query(k));
  for (std::uint64_t k = 1; k < 100; k += 2) f.remove(k);
  EXPECT_EQ(f.nonzero_cells(), 0u);
  try {
    f.remove(7);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::contract_violation);
  }
}

TEST(CountingBloom, SaturatedCountersNeverDrop) {
  RandomSource src(5);
  BloomFilter f(src, bloom_params(64, 3, 4), BloomVariant::counting, 15);
  for (int i = 0; i < 16; ++i) f.insert(42);
  EXPECT_EQ(f.count_estimate(42), 15u);
  EXPECT_EQ(f.saturated_cells(), 3u);
  for (int i = 0; i < 16; ++i) f.remove(42);
  EXPECT_TRUE(f.query(42));
  EXPECT_EQ(f.count_estimate(42), 15u);
}

TEST(Bloom, BitVariantRejectsCountingOps) {
  RandomSource src(6);
  BloomFilter f(src, bloom_plan(10, 0.1));
  f.insert(1);
  EXPECT_THROW(f.remove(1), Error);
  EXPECT_THROW(f.count_estimate(1), Error);
}

TEST(Bloom, SerializationRoundTrip) {
  RandomSource src(7);
  for (auto variant : {BloomVariant::bits, BloomVariant::counting}) {
    BloomFilter f(src, bloom_plan(300, 0.03), variant, 7);
    for (std::uint64_t k = 0; k < 300; ++k) f.insert(k * 11);
    const auto bytes = f.serialize();
    const auto back = BloomFilter::deserialize(bytes);
    EXPECT_EQ(back.serialize(), bytes);
    EXPECT_EQ(back.variant(), variant);
    EXPECT_EQ(back.counter_cap(), f.counter_cap());
    for (std::uint64_t k = 0; k < 2000; ++k) ASSERT_EQ(back.query(k), f.query(k));

    auto cut = bytes;
    cut.pop_back();
    EXPECT_THROW(BloomFilter::deserialize(cut), Error);
  }
}

}  // namespace
}  // namespace randlab
