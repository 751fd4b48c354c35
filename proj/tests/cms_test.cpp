#include "randlab/cms.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "randlab/randsrc.hpp"

namespace randlab {
namespace {

TEST(CmsParams, Dimensions) {
  const auto p = CmsParams::from_error(0.01, 0.01);
  EXPECT_EQ(p.width, 272u);
  EXPECT_EQ(p.depth, 5u);
  const auto q = CmsParams::from_error(0.5, 0.5);
  EXPECT_EQ(q.width, 6u);
  EXPECT_EQ(q.depth, 1u);
  EXPECT_THROW(CmsParams::from_error(0.0, 0.1), Error);
  EXPECT_THROW(CmsParams::from_error(0.1, 1.0), Error);
}

std::map<std::uint64_t, std::int64_t> zipf_like_stream(RandomSource& src, CountMinSketch& s, int updates) {
  std::map<std::uint64_t, std::int64_t> truth;
  for (int t = 0; t < updates; ++t) {
    // Small indices dominate: index = floor(1000 / (1 + u)).
    const std::uint64_t i = 1000 / (1 + uniform_below(src, 1000));
    const auto c = static_cast<std::int64_t>(1 + uniform_below(src, 5));
    s.update(i, c);
    truth[i] += c;
  }
  return truth;
}

TEST(Cms, NonnegativeEstimatesNeverUndershoot) {
  RandomSource src(1);
  CountMinSketch s(src, CmsParams::from_error(0.01, 0.01));
  const auto truth = zipf_like_stream(src, s, 20000);
  std::int64_t norm = 0;
  for (const auto& [i, c] : truth) norm += c;
  EXPECT_EQ(s.l1(), static_cast<std::uint64_t>(norm));
  int within = 0;
  for (const auto& [i, c] : truth) {
    const auto est = s.point_query_min(i);
    EXPECT_GE(est, c);
    within += static_cast<double>(est) <= static_cast<double>(c) + 0.01 * static_cast<double>(norm);
  }
  EXPECT_EQ(within, static_cast<int>(truth.size()));
  EXPECT_EQ(s.point_query_min(123456789), s.point_query_min(123456789));
  for (std::uint64_t row = 0; row < s.params().depth; ++row) EXPECT_EQ(s.row_sum(row), norm);
}

TEST(Cms, NegativeCountRejectedInNonnegativeMode) {
  RandomSource src(2);
  CountMinSketch s(src, CmsParams::from_error(0.1, 0.1));
  s.update(3, 4);
  EXPECT_THROW(s.update(3, -1), Error);
  EXPECT_EQ(s.point_query_min(3), 4);
  EXPECT_EQ(s.l1(), 4u);
}

TEST(Cms, GeneralModeMedianStaysClose) {
  RandomSource src(3);
  CountMinSketch s(src, CmsParams::from_error(0.01, 0.001), CmsMode::general);
  std::map<std::uint64_t, std::int64_t> truth;
  for (int t = 0; t < 20000; ++t) {
    const std::uint64_t i = uniform_below(src, 200);
    const std::int64_t c = static_cast<std::int64_t>(uniform_below(src, 11)) - 5;
    s.update(i, c);
    truth[i] += c;
  }
  const double slack = 3 * 0.01 * static_cast<double>(s.l1());
  for (const auto& [i, c] : truth) EXPECT_LE(std::abs(static_cast<double>(s.point_query_median(i) - c)), slack);
  EXPECT_THROW(s.point_query_min(0), Error);
}

// Median over an even number of rows takes the lower middle value.
TEST(Cms, EvenDepthUsesLowerMedian) {
  RandomSource src(4);
  CmsParams p = CmsParams::from_error(0.5, 0.1);
  p.depth = 2;
  CountMinSketch s(src, p, CmsMode::general);
  s.update(1, 5);
  std::vector<std::int64_t> cells;
  for (std::uint64_t row = 0; row < 2; ++row) cells.push_back(s.cell(row, s.rows()[row](1)));
  EXPECT_EQ(s.point_query_median(1), *std::min_element(cells.begin(), cells.end()));
}

TEST(Cms, InnerProductOverestimates) {
  RandomSource a_src(5), b_src(5);
  const auto params = CmsParams::from_error(0.05, 0.01);
  CountMinSketch a(a_src, params), b(b_src, params);
  ASSERT_TRUE(a.same_configuration(b));
  std::map<std::uint64_t, std::int64_t> va, vb;
  RandomSource data(6);
  for (int t = 0; t < 500; ++t) {
    const auto i = uniform_below(data, 100), j = uniform_below(data, 100);
    a.update(i, 1);
    va[i] += 1;
    b.update(j, 2);
    vb[j] += 2;
  }
  std::int64_t exact = 0;
  for (const auto& [i, c] : va) exact += c * (vb.count(i) ? vb[i] : 0);
  const auto est = CountMinSketch::inner_product(a, b);
  EXPECT_GE(est, exact);
  EXPECT_LE(static_cast<double>(est), static_cast<double>(exact) + 0.05 * a.l1() * b.l1());

  RandomSource other(7);
  CountMinSketch c(other, params);
  try {
    CountMinSketch::inner_product(a, c);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::config_mismatch);
  }
}

TEST(HeavyHitters, KeepsEveryTrueHitter) {
  RandomSource src(8);
  CountMinSketch s(src, CmsParams::from_error(0.001, 0.01));
  HeavyHitterTracker tracker(0.05);
  std::map<std::uint64_t, std::int64_t> truth;
  std::int64_t norm = 0;
  for (int t = 0; t < 30000; ++t) {
    const std::uint64_t i = bernoulli(src, 0.3) ? uniform_below(src, 3) : 100 + uniform_below(src, 10000);
    tracker.update(s, i, 1);
    truth[i] += 1;
    ++norm;
  }
  for (const auto& [i, c] : truth) {
    if (static_cast<double>(c) >= 0.05 * static_cast<double>(norm)) {
      EXPECT_TRUE(tracker.contains(i)) << i;
    }
  }
  const auto hitters = tracker.hitters();
  ASSERT_EQ(hitters.size(), tracker.size());
  for (std::size_t k = 1; k < hitters.size(); ++k) EXPECT_GE(hitters[k - 1].second, hitters[k].second);
  EXPECT_LE(tracker.size(), static_cast<std::size_t>(2 / 0.05));
  EXPECT_THROW(HeavyHitterTracker(0.0), Error);
}

TEST(Streams, TextAndBinaryRoundTrip) {
  const std::vector<StreamUpdate> updates{{1, 5}, {18446744073709551615ULL, -3}, {0, 0}};
  std::ostringstream text;
  write_stream_text(text, updates);
  std::istringstream in("# header\n\n" + text.str());
  EXPECT_EQ(read_stream_text(in), updates);

  const auto bytes = write_stream_binary(updates);
  EXPECT_EQ(read_stream_binary(bytes), updates);
  EXPECT_EQ(read_stream_auto(bytes), updates);
  const std::string s = text.str();
  EXPECT_EQ(read_stream_auto(std::vector<std::uint8_t>(s.begin(), s.end())), updates);

  auto cut = bytes;
  cut.pop_back();
  EXPECT_THROW(read_stream_binary(cut), Error);
  std::istringstream bad("5 x\n");
  EXPECT_THROW(read_stream_text(bad), Error);
}

}  // namespace
}  // namespace randlab
