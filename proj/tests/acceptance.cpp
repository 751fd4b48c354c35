// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all pass.
// Predictions are recomputed here from closed forms instead of trusting the
// report's own "predicted" column; tolerances are pinned below.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <deque>
#include <functional>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "randlab/bounds.hpp"
#include "randlab/error.hpp"
#include "randlab/harness.hpp"
#include "randlab/treap.hpp"

namespace {

using randlab::harness::ExperimentReport;
using randlab::harness::ExperimentSpec;
using randlab::harness::Metric;
using randlab::harness::Params;

// Pinned tolerances and budgets.
constexpr double kQuicksortRelTol = 0.02;
constexpr double kSigmas = 3.0;
constexpr double kCuckooMeanDisplacements = 10.0;
constexpr double kCuckooMaxRehashes = 3.0;
constexpr double kCmsRecallFloor = 0.99;
constexpr double kLshDelta = 0.05;
constexpr double kGoldenTol = 1e-12;
constexpr double kKuwTol = 1e-6;
constexpr std::uint64_t kSeed = 20240601;

double harmonic(std::uint64_t n) {
  double h = 0;
  for (std::uint64_t i = n; i >= 1; --i) h += 1.0 / static_cast<double>(i);
  return h;
}

struct Run {
  ExperimentSpec spec;
  ExperimentReport report;
  std::string json;
  double seconds = 0;
};

std::deque<Run> all_runs;  // replayed by the determinism criterion

const Run& run(const std::string& suite, Params params, std::optional<std::uint64_t> trials = std::nullopt) {
  ExperimentSpec spec;
  spec.suite = suite;
  spec.params = std::move(params);
  spec.seed = kSeed;
  spec.trials = trials;
  const auto start = std::chrono::steady_clock::now();
  auto report = randlab::harness::run(spec);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  auto json = randlab::harness::report_emit(report, randlab::harness::ReportFormat::json);
  all_runs.push_back({spec, std::move(report), std::move(json), seconds});
  return all_runs.back();
}

const Metric& metric(const ExperimentReport& r, const std::string& name) {
  for (const auto& m : r.metrics) {
    if (m.name == name) return m;
  }
  randlab::fail(randlab::ErrorCode::contract_violation, r.suite + ": missing metric " + name);
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

struct Check {
  bool ok = true;
  std::ostringstream notes;

  void expect(bool condition, const std::string& what) {
    if (!condition) {
      ok = false;
      notes << " [violated: " << what << "]";
    }
  }
  void note(const std::string& s) { notes << " " << s; }
};

using Criterion = std::function<void(Check&)>;

void criterion_quicksort(Check& c) {
  double seconds = 0;
  for (std::uint64_t n : {10, 100, 1000}) {
    const auto& r = run("quicksort", {{"n", double(n)}, {"eps", kQuicksortRelTol}, {"delta", 0.01}});
    seconds += r.seconds;
    const double predicted = 2.0 * double(n + 1) * harmonic(n) - 4.0 * double(n);
    const double observed = metric(r.report, "mean_comparisons").observed;
    c.expect(std::abs(observed - predicted) <= kQuicksortRelTol * predicted, "n=" + std::to_string(n) + " within 2%");
    c.note("n=" + std::to_string(n) + ":" + fmt(observed) + "/" + fmt(predicted));
  }
  c.expect(seconds < 30, "runtime < 30 s");
  c.note(fmt(seconds) + "s");
}

void criterion_quickselect(Check& c) {
  const auto& r = run("quickselect", {{"n", 1000}}, 10000);
  const double observed = metric(r.report, "mean_comparisons").observed;
  c.expect(observed <= 4.0 * 1000, "mean <= 4n");
  c.expect(r.seconds < 10, "runtime < 10 s");
  c.note("mean=" + fmt(observed) + " bound=4000 " + fmt(r.seconds) + "s");
}

void criterion_karger(Check& c) {
  const auto& r = run("karger", {{"n", 8}}, 100000);
  const double observed = metric(r.report, "success_rate").observed;
  c.expect(observed >= 1.0 / 28.0, "success rate >= 1/28");
  c.expect(r.seconds < 30, "runtime < 30 s");
  c.note("rate=" + fmt(observed) + " floor=" + fmt(1.0 / 28.0) + " " + fmt(r.seconds) + "s");
}

// Mean depth of the middle key of a 3-node treap over all 3! priority orders.
double treap_middle_depth_oracle() {
  std::array<std::uint64_t, 3> priorities{1, 2, 3};
  double total = 0;
  int orders = 0;
  do {
    randlab::Treap<int> t;
    for (int key = 0; key < 3; ++key) t.insert_with_priority(key, priorities[key]);
    total += static_cast<double>(t.find(1).depth);
    ++orders;
  } while (std::next_permutation(priorities.begin(), priorities.end()));
  return total / orders;
}

void criterion_treap_depth(Check& c) {
  const auto& r = run("treap_depth", {{"n", 1000}}, 1000);
  for (std::uint64_t j : {1, 500, 1000}) {
    const auto& m = metric(r.report, "mean_depth_j=" + std::to_string(j));
    const double predicted = harmonic(j) + harmonic(1000 - j + 1) - 2.0;
    // m.tolerance is 3 standard errors; recover the standard error for the pinned band.
    const double se = m.tolerance / 3.0;
    c.expect(std::abs(m.observed - predicted) <= kSigmas * se, "j=" + std::to_string(j) + " within 3 SE");
    c.note("j=" + std::to_string(j) + ":" + fmt(m.observed) + "/" + fmt(predicted));
  }
  const double oracle = treap_middle_depth_oracle();
  c.expect(oracle == 1.0, "n=3 middle key mean depth 1.0");
  c.note("n3_middle=" + fmt(oracle));
  c.expect(r.seconds < 60, "runtime < 60 s");
  c.note(fmt(r.seconds) + "s");
}

void criterion_treap_delete(Check& c) {
  const auto& r = run("treap_delete", {{"max_n", 256}}, 100000);
  const auto& mean = metric(r.report, "mean_rotations");
  const double se = mean.tolerance / 3.0;
  c.expect(std::abs(mean.observed - mean.predicted) <= kSigmas * se, "mean within 3 SE of prediction");
  c.expect(metric(r.report, "global_mean_bound").observed <= 2.0, "global mean <= 2");
  c.expect(r.seconds < 60, "runtime < 60 s");
  c.note("mean=" + fmt(mean.observed) + " predicted=" + fmt(mean.predicted) + " " + fmt(r.seconds) + "s");
}

void criterion_skiplist_space(Check& c) {
  double seconds = 0;
  for (double p : {0.1, 0.5}) {
    const auto& r = run("skiplist_space", {{"n", 10000}, {"p", p}});
    seconds += r.seconds;
    const auto& m = metric(r.report, "mean_links_per_element");
    const double predicted = 1.0 / (1.0 - p);
    c.expect(std::abs(m.observed - predicted) <= kSigmas * (m.tolerance / 3.0), "p=" + fmt(p) + " within 3 SE");
    c.note("p=" + fmt(p) + ":" + fmt(m.observed) + "/" + fmt(predicted));
  }
  const double p01 = static_cast<double>(randlab::harness::predict("skiplist_links", {{"p", 0.1}}));
  c.expect(std::abs(p01 - 10.0 / 9.0) <= kGoldenTol, "p=0.1 prediction is 10/9");
  c.expect(seconds < 10, "runtime < 10 s");
  c.note(fmt(seconds) + "s");
}

void criterion_hash(Check& c) {
  const auto& r = run("hash_universality", {});
  c.expect(metric(r.report, "mod_p_max_collision_rate").observed <= 0.5, "mod_p pair collisions <= 1/m");
  c.expect(metric(r.report, "multiply_shift_max_collision_rate").observed <= 0.5, "multiply-shift <= 2/2^l");
  c.expect(metric(r.report, "tabulation_3wise_max_deviation").observed == 0, "tabulation 3-wise independent");
  c.expect(metric(r.report, "tabulation_4key_xor_zero_rate").observed == 1, "aa^ab^ba^bb == 0 always");
  c.expect(r.seconds < 5, "runtime < 5 s");
  c.note(fmt(r.seconds) + "s");
}

void criterion_fks(Check& c) {
  const auto& r = run("fks", {{"n", 10000}}, 100);
  c.expect(metric(r.report, "builds_with_intra_bin_collisions").observed == 0, "no intra-bin collisions");
  c.expect(metric(r.report, "max_slots_per_key").observed <= 5.0, "total slots <= 5n");
  c.expect(metric(r.report, "max_lookup_hash_evaluations").observed <= 2, "lookups use <= 2 evaluations");
  c.expect(metric(r.report, "wrong_lookups").observed == 0, "lookups correct");
  c.expect(r.seconds < 30, "runtime < 30 s");
  c.note("slots/key=" + fmt(metric(r.report, "max_slots_per_key").observed) + " " + fmt(r.seconds) + "s");
}

void criterion_cuckoo(Check& c) {
  const auto& r = run("cuckoo", {{"m_bits", 14}, {"load", 0.45}}, 20);
  c.expect(metric(r.report, "residency_violations").observed == 0, "residency invariant");
  c.expect(metric(r.report, "max_lookup_probes").observed <= 2, "lookups <= 2 probes");
  const double disp = metric(r.report, "mean_displacements_per_insert").observed;
  const double rehash = metric(r.report, "max_rehashes_per_fill").observed;
  c.expect(disp <= kCuckooMeanDisplacements, "mean displacements <= 10");
  c.expect(rehash <= kCuckooMaxRehashes, "rehashes <= 3 per fill");
  c.expect(r.seconds < 60, "runtime < 60 s");
  c.note("disp=" + fmt(disp) + " max_rehash=" + fmt(rehash) + " " + fmt(r.seconds) + "s");
}

void criterion_bloom(Check& c) {
  double seconds = 0;
  for (double eps : {0.1, 0.01}) {
    const auto& r = run("bloom", {{"n", 10000}, {"eps", eps}, {"probes", 100000}});
    seconds += r.seconds;
    c.expect(metric(r.report, "false_negatives").observed == 0, "no false negatives");
    c.expect(metric(r.report, "counting_false_negatives_after_removals").observed == 0,
             "counting variant keeps members");
    const auto& fp = metric(r.report, "false_positive_rate");
    const double m = r.report.params.at("m");
    const double k = r.report.params.at("k");
    const double predicted = std::pow(-std::expm1(k * 10000 * std::log1p(-1.0 / m)), k);
    const double se = std::sqrt(predicted * (1 - predicted) / 100000);
    c.expect(std::abs(fp.observed - predicted) <= kSigmas * se, "eps=" + fmt(eps) + " FP within 3 SE");
    c.note("eps=" + fmt(eps) + ":" + fmt(fp.observed) + "/" + fmt(predicted));
  }
  c.expect(seconds < 30, "runtime < 30 s");
  c.note(fmt(seconds) + "s");
}

void criterion_cms(Check& c) {
  const auto& r = run("cms", {{"eps", 0.01}, {"delta", 0.01}, {"updates", 100000}, {"keys", 1000}, {"phi", 0.05}},
                      100);
  c.expect(metric(r.report, "width").observed == 272, "w = 272");
  c.expect(metric(r.report, "depth").observed == 5, "d = 5");
  c.expect(metric(r.report, "underestimates").observed == 0, "no underestimates");
  const auto& viol = metric(r.report, "error_band_violation_rate");
  c.expect(viol.observed <= 0.01 + viol.tolerance, "violation rate <= delta + 3 SE");
  const double recall = metric(r.report, "heavy_hitter_recall_rate").observed;
  c.expect(recall >= kCmsRecallFloor, "heavy-hitter recall >= 99% of runs");
  c.expect(r.seconds < 60, "runtime < 60 s");
  c.note("violations=" + fmt(viol.observed) + " recall=" + fmt(recall) + " " + fmt(r.seconds) + "s");
}

void criterion_lsh(Check& c) {
  const auto& r = run("lsh", {{"d", 256}, {"n", 2048}, {"r1", 16}, {"r2", 32}, {"delta", kLshDelta}});
  const double floor = 1.0 - (1.0 / std::numbers::e + 0.5);
  const double per_replica = metric(r.report, "per_replica_success_rate").observed;
  const double aggregate = metric(r.report, "aggregate_success_rate").observed;
  c.expect(per_replica >= floor, "per-replica success >= 1 - (1/e + 1/2)");
  c.expect(aggregate >= 1.0 - kLshDelta, "aggregate success >= 1 - delta");
  c.expect(metric(r.report, "max_returned_distance").observed <= 32, "returned distance <= r2");
  const auto& cand = metric(r.report, "max_candidates_per_replica");
  c.expect(cand.observed <= cand.predicted, "candidates <= 2 ell");
  c.expect(r.seconds < 120, "runtime < 120 s");
  c.note("per_replica=" + fmt(per_replica) + " margin=" + fmt(per_replica - floor) + " aggregate=" + fmt(aggregate) +
         " " + fmt(r.seconds) + "s");
}

void criterion_bounds(Check& c) {
  const auto start = std::chrono::steady_clock::now();
  namespace b = randlab::bounds;
  b::BoundQuery q;
  q.mu = 1;
  q.delta = 1;
  const double classic = b::chernoff_upper(q, b::ChernoffVariant::classic);
  c.expect(std::abs(classic - std::numbers::e / 4) <= kGoldenTol, "classic(1,1) = e/4");

  auto rejects = [](double delta, b::ChernoffVariant v) {
    b::BoundQuery bad;
    bad.mu = 1;
    bad.delta = delta;
    try {
      b::chernoff_upper(bad, v);
    } catch (const randlab::Error& e) {
      return e.code() == randlab::ErrorCode::invalid_argument;
    }
    return false;
  };
  c.expect(rejects(1.82, b::ChernoffVariant::third), "third variant rejects 1.82");
  c.expect(rejects(4.12, b::ChernoffVariant::fourth), "fourth variant rejects 4.12");

  double worst = 0;
  for (std::uint64_t n = 1; n <= 100; ++n) {
    const double nn = static_cast<double>(n);
    const double kuw = b::kuw_expected_rounds(0, nn, [nn](double x) { return std::ceil(x) / nn; });
    worst = std::max(worst, std::abs(kuw - nn * harmonic(n)));
  }
  c.expect(worst <= kKuwTol, "KUW coupon equals nH_n within 1e-6");
  const auto& r = run("bounds", {});
  c.expect(r.report.passed(), "bounds suite passes");
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  c.expect(seconds < 5, "runtime < 5 s");
  c.note("classic=" + fmt(classic) + " kuw_max_err=" + fmt(worst) + " " + fmt(seconds) + "s");
}

void criterion_determinism(Check& c) {
  const std::size_t first_runs = all_runs.size();
  std::size_t mismatches = 0;
  for (std::size_t i = 0; i < first_runs; ++i) {
    const auto again = randlab::harness::run(all_runs[i].spec);
    if (randlab::harness::report_emit(again, randlab::harness::ReportFormat::json) != all_runs[i].json) {
      ++mismatches;
      c.note("mismatch:" + all_runs[i].spec.suite);
    }
  }
  c.expect(first_runs > 0 && mismatches == 0, "byte-identical reports");
  c.note(std::to_string(first_runs) + " reports replayed");
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, Criterion>> criteria = {
      {"quicksort mean comparisons", criterion_quicksort},
      {"quickselect mean comparisons <= 4n", criterion_quickselect},
      {"karger bridge success rate", criterion_karger},
      {"treap depth by position", criterion_treap_depth},
      {"treap delete rotations", criterion_treap_delete},
      {"skip list links per element", criterion_skiplist_space},
      {"hash family exhaustive universality", criterion_hash},
      {"fks builds", criterion_fks},
      {"cuckoo fill to 0.45", criterion_cuckoo},
      {"bloom false positives", criterion_bloom},
      {"count-min guarantees", criterion_cms},
      {"lsh planted recall", criterion_lsh},
      {"bound calculators", criterion_bounds},
      {"determinism", criterion_determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check check;
    try {
      criteria[i].second(check);
    } catch (const std::exception& e) {
      check.ok = false;
      check.note(std::string("error: ") + e.what());
    }
    failed += check.ok ? 0 : 1;
    std::printf("%s %2zu %s:%s\n", check.ok ? "PASS" : "FAIL", i + 1, criteria[i].first, check.notes.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
