#pragma once

// Shared plumbing for the suite implementations.

#include <cmath>
#include <exception>
#include <functional>
#include <numeric>
#include <string>
#include <thread>
#include <vector>

#include "randlab/error.hpp"
#include "randlab/harness.hpp"

namespace randlab::harness::detail {

struct SuiteContext {
  const ExperimentSpec& spec;
  ExperimentReport& report;

  double param(const std::string& key, double fallback) {
    auto it = spec.params.find(key);
    const double value = it == spec.params.end() ? fallback : it->second;
    report.params[key] = value;
    return value;
  }

  std::uint64_t trials(std::uint64_t fallback) {
    const std::uint64_t t = spec.trials.value_or(fallback);
    require(t >= 1, "trials must be at least 1");
    report.trials = t;
    return t;
  }

  void add(Metric m) { report.metrics.push_back(std::move(m)); }
};

std::uint64_t as_count(double value, const char* name, std::uint64_t min = 1);

/// Runs fn(src_t, t) for t in [0, trials) with src_t = RandomSource(seed).fork(t)
/// and returns the outputs in trial order. Adds the bits drawn to `bits`.
template <class Out>
std::vector<Out> run_trials(std::uint64_t seed, std::uint64_t trials, unsigned threads, std::uint64_t& bits,
                            const std::function<Out(RandomSource&, std::uint64_t)>& fn) {
  std::vector<Out> out(trials);
  std::vector<std::uint64_t> used(trials, 0);
  const RandomSource root(seed);
  auto work = [&](std::uint64_t t) {
    RandomSource src = root.fork(t);
    try {
      out[t] = fn(src, t);
    } catch (const Error& e) {
      throw Error(e.code(), "trial " + std::to_string(t) + ": " + e.what());
    }
    used[t] = src.bits_consumed();
  };
  const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(std::max(1u, threads), trials));
  if (workers <= 1) {
    for (std::uint64_t t = 0; t < trials; ++t) work(t);
  } else {
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::uint64_t t = w; t < trials; t += workers) work(t);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }
  bits += std::accumulate(used.begin(), used.end(), std::uint64_t{0});
  return out;
}

struct Summary {
  double mean = 0;
  double std_error = 0;  // sample standard deviation / sqrt(count)
};

Summary summarize(const std::vector<double>& xs);

inline constexpr const char* kStdErr3 = "3 standard errors of the sample mean";
inline constexpr const char* kOneSided = "one-sided bound, no slack";
inline constexpr const char* kExact = "exact";
inline constexpr const char* kReportOnly = "reported only, no bound asserted";

// Suite entry points.
void suite_coupon_collector(SuiteContext& ctx);
void suite_geometric_mean(SuiteContext& ctx);
void suite_quicksort(SuiteContext& ctx);
void suite_quickselect(SuiteContext& ctx);
void suite_karger(SuiteContext& ctx);
void suite_treap_depth(SuiteContext& ctx);
void suite_treap_delete(SuiteContext& ctx);
void suite_skiplist_space(SuiteContext& ctx);
void suite_skiplist_search(SuiteContext& ctx);
void suite_hash_universality(SuiteContext& ctx);
void suite_fks(SuiteContext& ctx);
void suite_cuckoo(SuiteContext& ctx);
void suite_bloom(SuiteContext& ctx);
void suite_cms(SuiteContext& ctx);
void suite_lsh(SuiteContext& ctx);
void suite_bounds(SuiteContext& ctx);

}  // namespace randlab::harness::detail
