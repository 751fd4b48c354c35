#include "randlab/harness.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>
#include <sstream>

#include "randlab/error.hpp"
#include "randlab/randsrc.hpp"

namespace randlab::harness {
namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode{};
}

TEST(Predict, SmallGoldenValues) {
  EXPECT_DOUBLE_EQ(static_cast<double>(predict("quicksort", {{"n", 2}})), 1.0);
  EXPECT_DOUBLE_EQ(static_cast<double>(predict("quicksort", {{"n", 0}})), 0.0);
  EXPECT_DOUBLE_EQ(static_cast<double>(predict("treap_depth", {{"n", 1}, {"j", 1}})), 0.0);
  EXPECT_NEAR(static_cast<double>(predict("treap_depth", {{"n", 3}, {"j", 2}})), 1.0, 1e-15);
  EXPECT_NEAR(static_cast<double>(predict("coupon_collector", {{"n", 4}})), 25.0 / 3.0, 1e-14);
  EXPECT_NEAR(static_cast<double>(predict("treap_delete_rotations", {{"n", 3}, {"l", 2}})), 1.0, 1e-15);
  EXPECT_NEAR(static_cast<double>(predict("skiplist_links", {{"p", 0.1}})), 10.0 / 9.0, 1e-15);
  EXPECT_NEAR(static_cast<double>(predict("karger_success_floor", {{"n", 4}})), 1.0 / 6.0, 1e-15);
  EXPECT_NEAR(static_cast<double>(predict("bloom_bit_probability", {{"m", 4}, {"k", 2}, {"n", 1}})),
              1 - 0.75 * 0.75, 1e-15);
  EXPECT_DOUBLE_EQ(static_cast<double>(predict("quickselect_bound", {{"n", 50}})), 200.0);
  EXPECT_DOUBLE_EQ(static_cast<double>(predict("geometric_mean", {{"p", 0.25}})), 4.0);
}

TEST(Predict, ErrorCodes) {
  EXPECT_EQ(code_of([] { predict("nonsense", {}); }), ErrorCode::unknown_metric);
  EXPECT_EQ(code_of([] { predict("treap_depth", {{"n", 3}}); }), ErrorCode::invalid_argument);
  EXPECT_EQ(code_of([] { predict("treap_depth", {{"n", 3}, {"j", 4}}); }), ErrorCode::invalid_argument);
  EXPECT_EQ(code_of([] { predict("quicksort", {{"n", 2.5}}); }), ErrorCode::invalid_argument);
  EXPECT_EQ(code_of([] { predict("skiplist_links", {{"p", 1}}); }), ErrorCode::invalid_argument);
  for (const auto& name : metric_names()) EXPECT_NE(code_of([&] { predict(name, {}); }), ErrorCode::unknown_metric);
}

TEST(Judge, VerdictKinds) {
  EXPECT_TRUE(judge("a", 1.05, 1.0, 0.1, Verdict::two_sided, "t").pass);
  EXPECT_FALSE(judge("a", 1.2, 1.0, 0.1, Verdict::two_sided, "t").pass);
  EXPECT_TRUE(judge("a", 0.1, 1.0, 0.0, Verdict::upper, "t").pass);
  EXPECT_FALSE(judge("a", 1.2, 1.0, 0.1, Verdict::upper, "t").pass);
  EXPECT_TRUE(judge("a", 5.0, 1.0, 0.0, Verdict::lower, "t").pass);
  EXPECT_FALSE(judge("a", 0.8, 1.0, 0.1, Verdict::lower, "t").pass);
  EXPECT_TRUE(judge("a", 1e9, 1.0, 0.0, Verdict::report, "t").pass);
  EXPECT_TRUE(judge("a", 2.0, 2.0, 0.0, Verdict::exact, "t").pass);
  EXPECT_FALSE(judge("a", std::nan(""), 1.0, 1.0, Verdict::two_sided, "t").pass);
}

ExperimentSpec small(std::string suite, unsigned threads = 1) {
  ExperimentSpec spec;
  spec.suite = std::move(suite);
  spec.seed = 99;
  spec.trials = 400;
  spec.threads = threads;
  spec.params = {{"n", 20}};
  return spec;
}

TEST(Run, ByteIdenticalReruns) {
  for (const char* suite : {"coupon_collector", "quicksort", "treap_depth"}) {
    const auto a = report_emit(run(small(suite)), ReportFormat::json);
    const auto b = report_emit(run(small(suite)), ReportFormat::json);
    EXPECT_EQ(a, b) << suite;
  }
}

TEST(Run, ThreadCountDoesNotChangeResults) {
  const auto one = report_emit(run(small("coupon_collector", 1)), ReportFormat::json);
  const auto four = report_emit(run(small("coupon_collector", 4)), ReportFormat::json);
  EXPECT_EQ(one, four);
}

TEST(Run, SeedChangesResults) {
  auto spec = small("coupon_collector");
  const auto a = run(spec);
  spec.seed = 100;
  const auto b = run(spec);
  EXPECT_NE(report_emit(a, ReportFormat::json), report_emit(b, ReportFormat::json));
}

TEST(Run, UnknownSuite) {
  EXPECT_EQ(code_of([] { run(small("nope")); }), ErrorCode::unknown_metric);
  const auto names = suite_names();
  EXPECT_NE(std::find(names.begin(), names.end(), "cms"), names.end());
}

TEST(Report, JsonRoundTripAndShape) {
  const auto report = run(small("coupon_collector"));
  EXPECT_EQ(report.trials, 400u);
  EXPECT_GT(report.bits_consumed, 0u);
  const auto text = report_emit(report, ReportFormat::json);
  const auto j = nlohmann::json::parse(text);
  EXPECT_EQ(j.at("suite"), "coupon_collector");
  EXPECT_EQ(j.at("seed"), 99);
  EXPECT_TRUE(j.at("runtime_ms").is_null());
  ASSERT_EQ(j.at("metrics").size(), report.metrics.size());
  for (const auto& m : j.at("metrics")) {
    for (const char* key : {"name", "observed", "predicted", "tolerance", "tolerance_source", "pass"}) {
      EXPECT_TRUE(m.contains(key)) << key;
    }
  }
  const auto back = report_from_json(text);
  EXPECT_EQ(report_emit(back, ReportFormat::json), text);
  EXPECT_THROW(report_from_json("{"), Error);
}

TEST(Report, CsvHasHeaderPlusOneRowPerMetric) {
  const auto report = run(small("quicksort"));
  const auto csv = report_emit(report, ReportFormat::csv);
  EXPECT_EQ(static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')), report.metrics.size() + 1);
  EXPECT_EQ(csv.rfind("suite,seed,trials,name,", 0), 0u);
}

TEST(Report, EmptyReportPasses) {
  ExperimentReport empty;
  EXPECT_TRUE(empty.passed());
  EXPECT_FALSE(report_emit(empty, ReportFormat::text).empty());
  EXPECT_EQ(parse_format("json"), ReportFormat::json);
  EXPECT_THROW(parse_format("xml"), Error);
}

TEST(Zipf, ProbabilitiesSumToOneAndSamplesFollow) {
  const ZipfSampler z(50, 1.1);
  double total = 0;
  for (std::uint64_t r = 1; r <= 50; ++r) total += z.probability(r);
  EXPECT_NEAR(total, 1.0, 1e-12);
  double norm = 0;
  for (int r = 1; r <= 50; ++r) norm += std::pow(r, -1.1);
  EXPECT_NEAR(z.probability(1), 1.0 / norm, 1e-12);

  RandomSource src(3);
  constexpr int kDraws = 50000;
  int ones = 0;
  for (int i = 0; i < kDraws; ++i) {
    const auto r = z(src);
    ASSERT_GE(r, 1u);
    ASSERT_LE(r, 50u);
    ones += r == 1;
  }
  const double p = z.probability(1);
  EXPECT_NEAR(static_cast<double>(ones) / kDraws, p, 4 * std::sqrt(p * (1 - p) / kDraws));
  EXPECT_THROW(ZipfSampler(0, 1.0), Error);
}

}  // namespace
}  // namespace randlab::harness
