#include "randlab/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>

#include <nlohmann/json.hpp>

#include "harness_internal.hpp"
#include "randlab/bounds.hpp"
#include "randlab/error.hpp"

namespace randlab::harness {
namespace {

using Json = nlohmann::ordered_json;
using SuiteFn = void (*)(detail::SuiteContext&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> suites = {
      {"coupon_collector", detail::suite_coupon_collector},
      {"geometric_mean", detail::suite_geometric_mean},
      {"quicksort", detail::suite_quicksort},
      {"quickselect", detail::suite_quickselect},
      {"karger", detail::suite_karger},
      {"treap_depth", detail::suite_treap_depth},
      {"treap_delete", detail::suite_treap_delete},
      {"skiplist_space", detail::suite_skiplist_space},
      {"skiplist_search", detail::suite_skiplist_search},
      {"hash_universality", detail::suite_hash_universality},
      {"fks", detail::suite_fks},
      {"cuckoo", detail::suite_cuckoo},
      {"bloom", detail::suite_bloom},
      {"cms", detail::suite_cms},
      {"lsh", detail::suite_lsh},
      {"bounds", detail::suite_bounds},
  };
  return suites;
}

double need(const Params& params, const std::string& key) {
  auto it = params.find(key);
  if (it == params.end()) fail(ErrorCode::invalid_argument, "missing parameter '" + key + "'");
  return it->second;
}

std::uint64_t need_count(const Params& params, const std::string& key, std::uint64_t min = 1) {
  return detail::as_count(need(params, key), key.c_str(), min);
}

std::string number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

}  // namespace

namespace detail {

std::uint64_t as_count(double value, const char* name, std::uint64_t min) {
  if (!(value >= static_cast<double>(min)) || value != std::floor(value) || value > 9.0e15) {
    fail(ErrorCode::invalid_argument,
         std::string("parameter '") + name + "' must be an integer >= " + std::to_string(min));
  }
  return static_cast<std::uint64_t>(value);
}

Summary summarize(const std::vector<double>& xs) {
  Summary s;
  if (xs.empty()) return s;
  long double sum = 0;
  for (double x : xs) sum += x;
  const long double mean = sum / static_cast<long double>(xs.size());
  long double ss = 0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  s.mean = static_cast<double>(mean);
  if (xs.size() > 1) {
    const long double var = ss / static_cast<long double>(xs.size() - 1);
    s.std_error = static_cast<double>(std::sqrt(var / static_cast<long double>(xs.size())));
  }
  return s;
}

}  // namespace detail

Metric judge(std::string name, double observed, double predicted, double tolerance, Verdict verdict,
             std::string tolerance_source) {
  Metric m{std::move(name), observed, predicted, tolerance, std::move(tolerance_source), false};
  switch (verdict) {
    case Verdict::two_sided:
    case Verdict::exact:
      m.pass = std::fabs(observed - predicted) <= tolerance;
      break;
    case Verdict::upper:
      m.pass = observed <= predicted + tolerance;
      break;
    case Verdict::lower:
      m.pass = observed >= predicted - tolerance;
      break;
    case Verdict::report:
      m.pass = true;
      break;
  }
  return m;
}

bool ExperimentReport::passed() const {
  return std::all_of(metrics.begin(), metrics.end(), [](const Metric& m) { return m.pass; });
}

ReportFormat parse_format(const std::string& name) {
  if (name == "json") return ReportFormat::json;
  if (name == "csv") return ReportFormat::csv;
  if (name == "text") return ReportFormat::text;
  fail(ErrorCode::invalid_argument, "unknown report format: " + name);
}

std::vector<std::string> suite_names() {
  std::vector<std::string> out;
  for (const auto& [name, fn] : registry()) out.push_back(name);
  return out;
}

std::vector<std::string> metric_names() {
  return {"quicksort",          "quickselect_bound", "treap_depth",      "treap_delete_rotations",
          "skiplist_links",     "bloom_bit_probability", "coupon_collector", "geometric_mean",
          "karger_success_floor"};
}

long double predict(const std::string& metric, const Params& params) {
  using bounds::harmonic;
  if (metric == "quicksort") {
    const auto n = need_count(params, "n", 0);
    const long double nn = static_cast<long double>(n);
    return 2 * (nn + 1) * harmonic(n) - 4 * nn;
  }
  if (metric == "quickselect_bound") return 4.0L * static_cast<long double>(need_count(params, "n"));
  if (metric == "treap_depth") {
    const auto n = need_count(params, "n");
    const auto j = need_count(params, "j");
    require(j <= n, "treap_depth: need 1 <= j <= n");
    return harmonic(j) + harmonic(n - j + 1) - 2;
  }
  if (metric == "treap_delete_rotations") {
    const auto n = need_count(params, "n");
    const auto l = need_count(params, "l");
    require(l <= n, "treap_delete_rotations: need 1 <= l <= n");
    return 2.0L - 1.0L / static_cast<long double>(l) - 1.0L / static_cast<long double>(n - l + 1);
  }
  if (metric == "skiplist_links") {
    const long double p = need(params, "p");
    require(p >= 0 && p < 1, "skiplist_links: p must lie in [0, 1)");
    return 1.0L / (1.0L - p);
  }
  if (metric == "bloom_bit_probability") {
    const auto m = need_count(params, "m");
    const auto k = need_count(params, "k");
    const auto n = need_count(params, "n", 0);
    const long double kn = static_cast<long double>(k) * static_cast<long double>(n);
    return -std::expm1(kn * std::log1p(-1.0L / static_cast<long double>(m)));
  }
  if (metric == "coupon_collector") {
    const auto n = need_count(params, "n");
    return static_cast<long double>(n) * harmonic(n);
  }
  if (metric == "geometric_mean") {
    const long double p = need(params, "p");
    require(p > 0 && p <= 1, "geometric_mean: p must lie in (0, 1]");
    return 1.0L / p;
  }
  if (metric == "karger_success_floor") {
    const auto n = need_count(params, "n", 2);
    const long double nn = static_cast<long double>(n);
    return 2.0L / (nn * (nn - 1));
  }
  fail(ErrorCode::unknown_metric, "unknown metric: " + metric);
}

ExperimentReport run(const ExperimentSpec& spec) {
  const auto& suites = registry();
  auto it = std::find_if(suites.begin(), suites.end(), [&](const auto& s) { return s.first == spec.suite; });
  if (it == suites.end()) fail(ErrorCode::unknown_metric, "unknown suite: " + spec.suite);

  ExperimentReport report;
  report.suite = spec.suite;
  report.seed = spec.seed;
  report.trials = 1;
  detail::SuiteContext ctx{spec, report};
  const auto start = std::chrono::steady_clock::now();
  it->second(ctx);
  if (spec.timing) {
    report.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  }
  return report;
}

std::string report_emit(const ExperimentReport& r, ReportFormat format) {
  switch (format) {
    case ReportFormat::json: {
      Json doc;
      doc["version"] = r.version;
      doc["suite"] = r.suite;
      doc["seed"] = r.seed;
      doc["trials"] = r.trials;
      doc["bits_consumed"] = r.bits_consumed;
      doc["params"] = Json::object();
      for (const auto& [k, v] : r.params) doc["params"][k] = v;
      doc["metrics"] = Json::array();
      for (const auto& m : r.metrics) {
        doc["metrics"].push_back(Json{{"name", m.name},
                                      {"observed", m.observed},
                                      {"predicted", m.predicted},
                                      {"tolerance", m.tolerance},
                                      {"tolerance_source", m.tolerance_source},
                                      {"pass", m.pass}});
      }
      doc["runtime_ms"] = r.runtime_ms ? Json(*r.runtime_ms) : Json(nullptr);
      return doc.dump(2) + "\n";
    }
    case ReportFormat::csv: {
      std::string out = "suite,seed,trials,name,observed,predicted,tolerance,tolerance_source,pass\n";
      for (const auto& m : r.metrics) {
        out += csv_field(r.suite) + ',' + std::to_string(r.seed) + ',' + std::to_string(r.trials) + ',' +
               csv_field(m.name) + ',' + number(m.observed) + ',' + number(m.predicted) + ',' +
               number(m.tolerance) + ',' + csv_field(m.tolerance_source) + ',' + (m.pass ? "true" : "false") + '\n';
      }
      return out;
    }
    case ReportFormat::text: {
      std::ostringstream out;
      out << "suite " << r.suite << "  seed " << r.seed << "  trials " << r.trials << "  bits " << r.bits_consumed
          << '\n';
      std::size_t passed = 0;
      for (const auto& m : r.metrics) {
        passed += m.pass;
        out << (m.pass ? "PASS " : "FAIL ") << m.name << "  observed " << number(m.observed) << "  predicted "
            << number(m.predicted) << "  tolerance " << number(m.tolerance) << "  [" << m.tolerance_source << "]\n";
      }
      out << passed << '/' << r.metrics.size() << " metrics passed";
      if (r.runtime_ms) out << " in " << number(*r.runtime_ms) << " ms";
      out << '\n';
      return out.str();
    }
  }
  fail(ErrorCode::invalid_argument, "unknown report format");
}

ExperimentReport report_from_json(const std::string& text) {
  try {
    const Json doc = Json::parse(text);
    ExperimentReport r;
    r.version = doc.at("version").get<int>();
    if (r.version != 1) fail(ErrorCode::parse_error, "unsupported report version");
    r.suite = doc.at("suite").get<std::string>();
    r.seed = doc.at("seed").get<std::uint64_t>();
    r.trials = doc.at("trials").get<std::uint64_t>();
    r.bits_consumed = doc.value("bits_consumed", std::uint64_t{0});
    if (doc.contains("params")) {
      for (const auto& [k, v] : doc.at("params").items()) r.params[k] = v.get<double>();
    }
    for (const auto& m : doc.at("metrics")) {
      r.metrics.push_back(Metric{m.at("name").get<std::string>(), m.at("observed").get<double>(),
                                 m.at("predicted").get<double>(), m.at("tolerance").get<double>(),
                                 m.at("tolerance_source").get<std::string>(), m.at("pass").get<bool>()});
    }
    if (!doc.at("runtime_ms").is_null()) r.runtime_ms = doc.at("runtime_ms").get<double>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::parse_error, std::string("report: ") + e.what());
  }
}

ZipfSampler::ZipfSampler(std::uint64_t n, double s) {
  require(n >= 1, "zipf: n must be positive");
  require(s > 0.0, "zipf: exponent must be positive");
  cdf_.resize(n);
  long double total = 0;
  for (std::uint64_t r = 1; r <= n; ++r) {
    total += std::pow(static_cast<long double>(r), -static_cast<long double>(s));
    cdf_[r - 1] = static_cast<double>(total);
  }
  for (auto& c : cdf_) c = static_cast<double>(c / total);
  cdf_.back() = 1.0;
}

std::uint64_t ZipfSampler::operator()(RandomSource& src) const {
  const double u = src.uniform_real();
  const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  return static_cast<std::uint64_t>(std::min<std::ptrdiff_t>(it - cdf_.begin(), static_cast<std::ptrdiff_t>(cdf_.size()) - 1)) + 1;
}

double ZipfSampler::probability(std::uint64_t rank) const {
  require(rank >= 1 && rank <= cdf_.size(), "zipf: rank out of range");
  return rank == 1 ? cdf_[0] : cdf_[rank - 1] - cdf_[rank - 2];
}

}  // namespace randlab::harness
