#pragma once

// Seeded experiment runner. A suite runs `trials` independent trials, trial
// t drawing from RandomSource(seed).fork(t), and compares aggregated
// observations with closed-form predictions. Results are stored by trial
// index, so thread count never changes a report.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "randlab/randsrc.hpp"

namespace randlab::harness {

enum class Verdict {
  two_sided,  // |observed - predicted| <= tolerance
  upper,      // observed <= predicted + tolerance
  lower,      // observed >= predicted - tolerance
  exact,      // two-sided with a zero or rounding-level tolerance
  report,     // informational, always passes
};

struct Metric {
  std::string name;
  double observed = 0;
  double predicted = 0;
  double tolerance = 0;
  std::string tolerance_source;
  bool pass = false;
};

Metric judge(std::string name, double observed, double predicted, double tolerance, Verdict verdict,
             std::string tolerance_source);

using Params = std::map<std::string, double>;

struct ExperimentSpec {
  std::string suite;
  Params params;
  std::uint64_t seed = 1;
  std::optional<std::uint64_t> trials;
  unsigned threads = 1;
  bool timing = false;  // runtime_ms stays null otherwise, keeping reports byte-stable
};

struct ExperimentReport {
  int version = 1;
  std::string suite;
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;
  std::uint64_t bits_consumed = 0;
  Params params;
  std::vector<Metric> metrics;
  std::optional<double> runtime_ms;

  bool passed() const;
};

enum class ReportFormat { json, csv, text };
ReportFormat parse_format(const std::string& name);

std::vector<std::string> suite_names();
std::vector<std::string> metric_names();

/// Closed-form prediction; throws ErrorCode::unknown_metric for unknown
/// names and invalid_argument for missing or out-of-range parameters.
long double predict(const std::string& metric, const Params& params);

/// Throws ErrorCode::unknown_metric for unknown suites. Errors raised
/// inside a trial carry the trial index in their message.
ExperimentReport run(const ExperimentSpec& spec);

std::string report_emit(const ExperimentReport& report, ReportFormat format);
ExperimentReport report_from_json(const std::string& text);

/// Ranks 1..n with Pr[r] proportional to r^-s, by inverse CDF lookup.
class ZipfSampler {
 public:
  ZipfSampler(std::uint64_t n, double s);
  std::uint64_t operator()(RandomSource& src) const;
  double probability(std::uint64_t rank) const;
  std::uint64_t size() const noexcept { return cdf_.size(); }

 private:
  std::vector<double> cdf_;
};

}  // namespace randlab::harness
