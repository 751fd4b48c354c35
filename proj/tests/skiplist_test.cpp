#include "randlab/skiplist.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <set>
#include <vector>

#include "randlab/randsrc.hpp"

namespace randlab {
namespace {

SkipList<int> hand_built() {
  SkipList<int> s(0.5, 16);
  const int heights[] = {1, 2, 1, 3};
  for (int k = 1; k <= 4; ++k) s.insert_with_height(k, heights[k - 1]);
  s.validate();
  return s;
}

TEST(SkipList, DumpShowsLevelsTopFirst) {
  EXPECT_EQ(hand_built().dump(), "L2: 4\nL1: 2 4\nL0: 1 2 3 4\n");
}

TEST(SkipList, SearchCountsLinksAndDescents) {
  const auto s = hand_built();
  const auto r = s.find(4);
  EXPECT_TRUE(r.found);
  EXPECT_EQ(r.links_traversed, 3u);
  EXPECT_EQ(r.descents, 2u);

  const auto first = s.find(1);
  EXPECT_TRUE(first.found);
  EXPECT_EQ(first.links_traversed, 1u);

  const auto miss = s.find(5);
  EXPECT_FALSE(miss.found);
  EXPECT_FALSE(s.find(0).found);
  EXPECT_EQ(s.link_count(), 7u);
}

TEST(SkipList, ModelAgreement) {
  RandomSource src(5);
  SkipList<std::uint64_t> s(0.5);
  std::set<std::uint64_t> model;
  for (int step = 0; step < 5000; ++step) {
    const auto key = uniform_below(src, 800);
    if (bernoulli(src, 0.6)) {
      if (model.insert(key).second) {
        s.insert(key, src);
      } else {
        EXPECT_THROW(s.insert(key, src), Error);
      }
    } else if (model.erase(key)) {
      s.erase(key);
    } else {
      EXPECT_THROW(s.erase(key), Error);
    }
  }
  s.validate();
  EXPECT_EQ(s.keys(), std::vector<std::uint64_t>(model.begin(), model.end()));
  for (std::uint64_t k = 0; k < 800; ++k) EXPECT_EQ(s.contains(k), model.count(k) == 1);
  const auto heights = s.tower_heights();
  EXPECT_EQ(std::accumulate(heights.begin(), heights.end(), std::uint64_t{0}), s.link_count());
}

// Tower heights are geometric with success 1-p, so links per element average 1/(1-p).
TEST(SkipList, MeanTowerHeight) {
  for (double p : {0.1, 0.5, 0.75}) {
    RandomSource src(static_cast<std::uint64_t>(p * 100));
    SkipList<int> s(p);
    constexpr int n = 20000;
    for (int k = 0; k < n; ++k) s.insert(k, src);
    double sq = 0;
    for (auto h : s.tower_heights()) sq += static_cast<double>(h * h);
    const double mean = static_cast<double>(s.link_count()) / n;
    const double se = std::sqrt((sq / n - mean * mean) / n);
    EXPECT_NEAR(mean, 1.0 / (1.0 - p), 4 * se) << "p=" << p;
  }
}

TEST(SkipList, ZeroPromotionIsASortedList) {
  RandomSource src(1);
  SkipList<int> s(0.0);
  for (int k = 10; k > 0; --k) s.insert(k, src);
  EXPECT_EQ(s.height(), 1u);
  EXPECT_EQ(s.find(10).links_traversed, 10u);
  EXPECT_EQ(src.bits_consumed(), 0u);
}

TEST(SkipList, RejectsBadParameters) {
  EXPECT_THROW(SkipList<int>(1.0), Error);
  EXPECT_THROW(SkipList<int>(-0.1), Error);
  SkipList<int> s(0.5, 4);
  EXPECT_THROW(s.insert_with_height(1, 0), Error);
  EXPECT_THROW(s.insert_with_height(1, s.max_height() + 1), Error);
}

TEST(SkipList, SplitAndMerge) {
  RandomSource src(9);
  SkipList<int> s(0.5);
  for (int k = 0; k < 300; ++k) s.insert(k, src);
  auto parts = s.split(120);
  parts.left.validate();
  parts.right.validate();
  EXPECT_EQ(parts.left.size(), 120u);
  EXPECT_EQ(parts.right.size(), 180u);
  EXPECT_FALSE(parts.left.contains(120));
  EXPECT_TRUE(parts.right.contains(120));
  EXPECT_LE(parts.links_touched, parts.left.max_height());

  auto merged = SkipList<int>::merge(std::move(parts.left), std::move(parts.right));
  merged.validate();
  EXPECT_EQ(merged.size(), 300u);
  for (int k = 0; k < 300; ++k) ASSERT_TRUE(merged.contains(k));

  SkipList<int> a(0.5), b(0.5);
  a.insert(5, src);
  b.insert(1, src);
  EXPECT_THROW(SkipList<int>::merge(std::move(a), std::move(b)), Error);
}

TEST(SkipList, ReplayableFromSeed) {
  RandomSource a(33), b(33);
  SkipList<int> x(0.5), y(0.5);
  for (int k = 0; k < 100; ++k) {
    x.insert(k, a);
    y.insert(k, b);
  }
  EXPECT_EQ(x.dump(), y.dump());
}

}  // namespace
}  // namespace randlab
