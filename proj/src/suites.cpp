#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <unordered_set>

#include "harness_internal.hpp"
#include "randlab/bloom.hpp"
#include "randlab/bounds.hpp"
#include "randlab/classic.hpp"
#include "randlab/cms.hpp"
#include "randlab/cuckoo.hpp"
#include "randlab/fks.hpp"
#include "randlab/hashfam.hpp"
#include "randlab/lsh.hpp"
#include "randlab/skiplist.hpp"
#include "randlab/treap.hpp"

namespace randlab::harness::detail {
namespace {

using Row = std::vector<double>;
using TrialFn = std::function<Row(RandomSource&, std::uint64_t)>;

std::vector<Row> trials_of(SuiteContext& ctx, std::uint64_t trials, const TrialFn& fn) {
  return run_trials<Row>(ctx.spec.seed, trials, ctx.spec.threads, ctx.report.bits_consumed, fn);
}

std::vector<double> column(const std::vector<Row>& rows, std::size_t i) {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r.at(i));
  return out;
}

double column_max(const std::vector<Row>& rows, std::size_t i) {
  double best = -INFINITY;
  for (const auto& r : rows) best = std::max(best, r.at(i));
  return best;
}

double column_sum(const std::vector<Row>& rows, std::size_t i) {
  long double total = 0;
  for (const auto& r : rows) total += r.at(i);
  return static_cast<double>(total);
}

void mean_metric(SuiteContext& ctx, const std::string& name, const std::vector<double>& xs, double predicted) {
  const Summary s = summarize(xs);
  ctx.add(judge(name, s.mean, predicted, 3 * s.std_error, Verdict::two_sided, kStdErr3));
}

double binomial_slack(double rate, double samples) { return 3 * std::sqrt(rate * (1 - rate) / samples); }

// Distinct keys drawn from [0, 2^bits) (bits <= 64).
std::vector<std::uint64_t> distinct_keys(RandomSource& src, std::size_t count, unsigned bits) {
  std::unordered_set<std::uint64_t> seen;
  std::vector<std::uint64_t> out;
  out.reserve(count);
  while (out.size() < count) {
    const std::uint64_t k = src.bits(bits);
    if (seen.insert(k).second) out.push_back(k);
  }
  return out;
}

}  // namespace

void suite_coupon_collector(SuiteContext& ctx) {
  const auto n = as_count(ctx.param("n", 100), "n");
  const auto trials = ctx.trials(10000);
  auto rows = trials_of(ctx, trials, [n](RandomSource& src, std::uint64_t) {
    std::vector<bool> seen(n, false);
    std::uint64_t distinct = 0;
    std::uint64_t draws = 0;
    while (distinct < n) {
      ++draws;
      auto c = uniform_below(src, n);
      if (!seen[c]) {
        seen[c] = true;
        ++distinct;
      }
    }
    return Row{static_cast<double>(draws)};
  });
  mean_metric(ctx, "mean_draws", column(rows, 0), static_cast<double>(predict("coupon_collector", {{"n", n}})));
}

void suite_geometric_mean(SuiteContext& ctx) {
  const double p = ctx.param("p", 0.25);
  const auto trials = ctx.trials(100000);
  auto rows = trials_of(ctx, trials, [p](RandomSource& src, std::uint64_t) {
    return Row{static_cast<double>(geometric(src, p).value)};
  });
  mean_metric(ctx, "mean_trials_to_success", column(rows, 0), static_cast<double>(predict("geometric_mean", {{"p", p}})));
}

void suite_quicksort(SuiteContext& ctx) {
  const auto n = as_count(ctx.param("n", 1000), "n");
  const double eps = ctx.param("eps", 0.02);
  const double delta = ctx.param("delta", 0.01);
  const auto plan = bounds::trials_needed(eps, delta, 1.0);
  const auto trials = ctx.trials(plan.n_trials);
  std::vector<std::uint32_t> items(n);
  std::iota(items.begin(), items.end(), 0u);
  auto rows = trials_of(ctx, trials, [&items](RandomSource& src, std::uint64_t) {
    const auto trace = classic::quicksort<std::uint32_t>(src, items);
    return Row{static_cast<double>(trace.comparisons)};
  });
  const double predicted = static_cast<double>(predict("quicksort", {{"n", n}}));
  const Summary s = summarize(column(rows, 0));
  ctx.add(judge("mean_comparisons", s.mean, predicted, eps * predicted, Verdict::two_sided,
                "relative eps of the sampling plan (eps=" + std::to_string(eps) + ", delta=" + std::to_string(delta) +
                    ", planned trials=" + std::to_string(plan.n_trials) + ")"));
}

void suite_quickselect(SuiteContext& ctx) {
  const auto n = as_count(ctx.param("n", 1000), "n");
  const auto trials = ctx.trials(10000);
  std::vector<std::uint32_t> items(n);
  std::iota(items.begin(), items.end(), 0u);
  auto rows = trials_of(ctx, trials, [&items, n](RandomSource& src, std::uint64_t) {
    const auto k = static_cast<std::size_t>(1 + uniform_below(src, n));
    const auto trace = classic::quickselect<std::uint32_t>(src, items, k);
    if (trace.output.front() != k - 1) fail(ErrorCode::contract_violation, "quickselect returned the wrong element");
    return Row{static_cast<double>(trace.comparisons)};
  });
  const Summary s = summarize(column(rows, 0));
  ctx.add(judge("mean_comparisons", s.mean, static_cast<double>(predict("quickselect_bound", {{"n", n}})), 0,
                Verdict::upper, kOneSided));
}

void suite_karger(SuiteContext& ctx) {
  const auto n = as_count(ctx.param("n", 8), "n", 4);
  require(n % 2 == 0, "karger: n must be even (two equal cliques)");
  const auto trials = ctx.trials(100000);
  const auto graph = classic::bridged_cliques(static_cast<std::uint32_t>(n / 2));
  auto rows = trials_of(ctx, trials, [&graph](RandomSource& src, std::uint64_t) {
    return Row{classic::karger_contract(src, graph).cut_size == 1 ? 1.0 : 0.0};
  });
  ctx.add(judge("success_rate", summarize(column(rows, 0)).mean,
                static_cast<double>(predict("karger_success_floor", {{"n", n}})), 0, Verdict::lower, kOneSided));
}

void suite_treap_depth(SuiteContext& ctx) {
  const auto n = as_count(ctx.param("n", 1000), "n");
  const auto trials = ctx.trials(1000);
  const std::vector<std::uint64_t> positions = {1, std::max<std::uint64_t>(1, n / 2), n};
  auto rows = trials_of(ctx, trials, [n, &positions](RandomSource& src, std::uint64_t) {
    Treap<std::uint64_t> t;
    for (std::uint64_t key = 1; key <= n; ++key) t.insert(key, src);
    Row out;
    for (auto j : positions) out.push_back(static_cast<double>(t.find(j).depth));
    return out;
  });
  for (std::size_t i = 0; i < positions.size(); ++i) {
    const double predicted =
        static_cast<double>(predict("treap_depth", {{"n", n}, {"j", static_cast<double>(positions[i])}}));
    mean_metric(ctx, "mean_depth_j=" + std::to_string(positions[i]), column(rows, i), predicted);
  }
}

void suite_treap_delete(SuiteContext& ctx) {
  // n and l are drawn per trial unless fixed (0 = random).
  const auto max_n = as_count(ctx.param("max_n", 256), "max_n");
  const double fixed_n = ctx.param("n", 0);
  const double fixed_l = ctx.param("l", 0);
  const auto trials = ctx.trials(100000);
  auto rows = trials_of(ctx, trials, [&](RandomSource& src, std::uint64_t) {
    const std::uint64_t n = fixed_n > 0 ? as_count(fixed_n, "n") : 1 + uniform_below(src, max_n);
    const std::uint64_t l = fixed_l > 0 ? as_count(fixed_l, "l") : 1 + uniform_below(src, n);
    require(l <= n, "treap_delete: need l <= n");
    Treap<std::uint64_t> t;
    for (std::uint64_t key = 1; key <= n; ++key) t.insert(key, src);
    const double rotations = static_cast<double>(t.erase(l));
    const double predicted = 2.0 - 1.0 / static_cast<double>(l) - 1.0 / static_cast<double>(n - l + 1);
    return Row{rotations, predicted, rotations - predicted};
  });
  const Summary residual = summarize(column(rows, 2));
  const double observed = summarize(column(rows, 0)).mean;
  const double predicted = summarize(column(rows, 1)).mean;
  ctx.add(judge("mean_rotations", observed, predicted, 3 * residual.std_error, Verdict::two_sided,
                "3 standard errors of the per-trial residual mean"));
  ctx.add(judge("global_mean_bound", observed, 2.0, 0, Verdict::upper, kOneSided));
}

void suite_skiplist_space(SuiteContext& ctx) {
  const auto n = as_count(ctx.param("n", 10000), "n");
  const double p = ctx.param("p", 0.5);
  const auto trials = ctx.trials(20);
  auto rows = trials_of(ctx, trials, [n, p](RandomSource& src, std::uint64_t) {
    SkipList<std::uint64_t> list(p, n);
    for (std::uint64_t key = 0; key < n; ++key) list.insert(key, src);
    return Row{static_cast<double>(list.link_count()) / static_cast<double>(n)};
  });
  mean_metric(ctx, "mean_links_per_element", column(rows, 0),
              static_cast<double>(predict("skiplist_links", {{"p", p}})));
}

void suite_skiplist_search(SuiteContext& ctx) {
  const auto n = as_count(ctx.param("n", 10000), "n");
  const double p = ctx.param("p", 0.5);
  const double eps = ctx.param("eps", 0.01);
  const auto searches = as_count(ctx.param("searches", 1000), "searches");
  const auto trials = ctx.trials(10);
  require(p > 0 && p < 1, "skiplist_search: p must lie in (0, 1)");
  require(eps > 0 && eps < 1, "skiplist_search: eps must lie in (0, 1)");
  const double shrink = 1 - p + p * p;
  const double budget = std::log(static_cast<double>(n) / eps) / std::log(1 / shrink);
  auto rows = trials_of(ctx, trials, [&](RandomSource& src, std::uint64_t) {
    SkipList<std::uint64_t> list(p, n);
    for (std::uint64_t key = 0; key < n; ++key) list.insert(key, src);
    double over = 0;
    double steps_total = 0;
    for (std::uint64_t s = 0; s < searches; ++s) {
      const auto r = list.find(uniform_below(src, n));
      const double steps = static_cast<double>(r.links_traversed + r.descents);
      steps_total += steps;
      if (steps > budget) ++over;
    }
    return Row{over / static_cast<double>(searches), steps_total / static_cast<double>(searches)};
  });
  ctx.add(judge("rate_over_budget", summarize(column(rows, 0)).mean, eps, 0, Verdict::upper, kOneSided));
  ctx.add(judge("mean_search_steps", summarize(column(rows, 1)).mean, budget, 0, Verdict::upper, kOneSided));
}

void suite_hash_universality(SuiteContext& ctx) {
  // Every member of each family is enumerated; no randomness is used.
  ctx.trials(1);
  using namespace hashfam;

  // mod_p, p = 5, m = 2: worst pair collision rate vs 1/m.
  {
    const std::uint64_t p = 5, m = 2;
    double worst = 0;
    for (std::uint64_t x = 0; x < p; ++x) {
      for (std::uint64_t y = x + 1; y < p; ++y) {
        std::uint64_t hits = 0, total = 0;
        for (std::uint64_t a = 1; a < p; ++a) {
          for (std::uint64_t b = 0; b < p; ++b) {
            const auto h = ModPrimeHash::from_params(a, b, p, m);
            hits += h(x) == h(y);
            ++total;
          }
        }
        worst = std::max(worst, static_cast<double>(hits) / static_cast<double>(total));
      }
    }
    ctx.add(judge("mod_p_max_collision_rate", worst, 1.0 / static_cast<double>(m), 0, Verdict::upper, kExact));
  }
  // multiply-shift, k = 4, l = 2: worst pair collision rate vs 2^(1-l).
  {
    const unsigned k = 4, l = 2;
    double worst = 0;
    for (std::uint64_t x = 0; x < 16; ++x) {
      for (std::uint64_t y = x + 1; y < 16; ++y) {
        std::uint64_t hits = 0, total = 0;
        for (std::uint64_t a = 1; a < 16; a += 2) {
          const auto h = MultiplyShiftHash::from_params(a, k, l);
          hits += h(x) == h(y);
          ++total;
        }
        worst = std::max(worst, static_cast<double>(hits) / static_cast<double>(total));
      }
    }
    ctx.add(judge("multiply_shift_max_collision_rate", worst, std::ldexp(1.0, 1 - static_cast<int>(l)), 0,
                  Verdict::upper, kExact));
  }
  // Tabulation, two 1-bit characters, 1-bit output: 16 functions.
  {
    std::vector<TabulationHash> family;
    for (std::uint64_t mask = 0; mask < 16; ++mask) {
      family.push_back(TabulationHash::from_tables(2, 1, 1, {mask & 1, (mask >> 1) & 1, (mask >> 2) & 1, (mask >> 3) & 1}));
    }
    double worst_dev = 0;
    for (std::uint64_t x = 0; x < 4; ++x) {
      for (std::uint64_t y = x + 1; y < 4; ++y) {
        for (std::uint64_t z = y + 1; z < 4; ++z) {
          std::uint64_t counts[8] = {};
          for (const auto& h : family) ++counts[h(x) | (h(y) << 1) | (h(z) << 2)];
          for (auto c : counts) worst_dev = std::max(worst_dev, std::fabs(static_cast<double>(c) / 16.0 - 1.0 / 8.0));
        }
      }
    }
    ctx.add(judge("tabulation_3wise_max_deviation", worst_dev, 0, 0, Verdict::exact, kExact));
    // Keys aa, ab, ba, bb = 0, 1, 2, 3 (low character first).
    double xor_zero = 0;
    for (const auto& h : family) xor_zero += (h(0) ^ h(1) ^ h(2) ^ h(3)) == 0;
    ctx.add(judge("tabulation_4key_xor_zero_rate", xor_zero / 16.0, 1.0, 0, Verdict::exact, kExact));
  }
}

void suite_fks(SuiteContext& ctx) {
  const auto n = as_count(ctx.param("n", 10000), "n");
  const auto trials = ctx.trials(100);
  auto rows = trials_of(ctx, trials, [n](RandomSource& src, std::uint64_t) {
    const auto keys = distinct_keys(src, 2 * n, 32);
    const std::span<const std::uint64_t> members(keys.data(), n);
    const std::span<const std::uint64_t> others(keys.data() + n, n);
    const FksTable table = FksTable::build(src, members);
    double collisions = 0;
    try {
      table.validate();
    } catch (const Error&) {
      collisions = 1;
    }
    double max_evals = 0;
    double wrong = 0;
    for (auto k : members) {
      const auto r = table.lookup(k);
      max_evals = std::max(max_evals, static_cast<double>(r.hash_evaluations));
      wrong += !r.found || r.payload != k;
    }
    for (auto k : others) {
      const auto r = table.lookup(k);
      max_evals = std::max(max_evals, static_cast<double>(r.hash_evaluations));
      wrong += r.found;
    }
    return Row{collisions, static_cast<double>(table.total_slots()) / static_cast<double>(n), max_evals,
               static_cast<double>(table.build_stats().outer_rounds), wrong};
  });
  ctx.add(judge("builds_with_intra_bin_collisions", column_sum(rows, 0), 0, 0, Verdict::exact, kExact));
  ctx.add(judge("max_slots_per_key", column_max(rows, 1), 5, 0, Verdict::upper, kOneSided));
  ctx.add(judge("max_lookup_hash_evaluations", column_max(rows, 2), 2, 0, Verdict::upper, kOneSided));
  ctx.add(judge("mean_outer_rounds", summarize(column(rows, 3)).mean, 2, 0, Verdict::upper, kOneSided));
  ctx.add(judge("wrong_lookups", column_sum(rows, 4), 0, 0, Verdict::exact, kExact));
}

void suite_cuckoo(SuiteContext& ctx) {
  const auto slot_bits = as_count(ctx.param("m_bits", 14), "m_bits");
  const double load = ctx.param("load", 0.45);
  const auto trials = ctx.trials(20);
  require(slot_bits <= 30, "cuckoo: m_bits must be at most 30");
  const std::uint64_t m = std::uint64_t{1} << slot_bits;
  const auto fill = static_cast<std::size_t>(std::floor(load * static_cast<double>(m)));
  auto rows = trials_of(ctx, trials, [&](RandomSource& src, std::uint64_t) {
    CuckooTable::Options opts;
    opts.load_limit = load;
    CuckooTable table(src, static_cast<unsigned>(slot_bits), opts);
    const auto keys = distinct_keys(src, 2 * fill, 64);
    for (std::size_t i = 0; i < fill; ++i) table.insert(keys[i], i, src);
    double violations = 0;
    try {
      table.validate();
    } catch (const Error&) {
      violations = 1;
    }
    double max_probes = 0;
    double wrong = 0;
    for (std::size_t i = 0; i < keys.size(); ++i) {
      const auto r = table.lookup(keys[i]);
      max_probes = std::max(max_probes, static_cast<double>(r.probes));
      wrong += i < fill ? (!r.found || r.payload != i) : r.found;
    }
    const auto& st = table.stats();
    return Row{violations, max_probes, static_cast<double>(st.displacements) / static_cast<double>(fill),
               static_cast<double>(st.rehashes), wrong};
  });
  ctx.add(judge("residency_violations", column_sum(rows, 0), 0, 0, Verdict::exact, kExact));
  ctx.add(judge("max_lookup_probes", column_max(rows, 1), 2, 0, Verdict::upper, kOneSided));
  ctx.add(judge("mean_displacements_per_insert", summarize(column(rows, 2)).mean, 10, 0, Verdict::upper,
                "one-sided, documented constant"));
  ctx.add(judge("max_rehashes_per_fill", column_max(rows, 3), 3, 0, Verdict::upper, "one-sided, documented constant"));
  ctx.add(judge("wrong_lookups", column_sum(rows, 4), 0, 0, Verdict::exact, kExact));
}

void suite_bloom(SuiteContext& ctx) {
  const auto n = as_count(ctx.param("n", 10000), "n");
  const double eps = ctx.param("eps", 0.01);
  const auto probes = as_count(ctx.param("probes", 100000), "probes");
  const auto cap = as_count(ctx.param("cap", BloomFilter::kDefaultCap), "cap");
  const auto trials = ctx.trials(1);
  const BloomParams params = bloom_plan(n, eps);
  ctx.report.params["m"] = static_cast<double>(params.m);
  ctx.report.params["k"] = params.k;
  auto rows = trials_of(ctx, trials, [&](RandomSource& src, std::uint64_t) {
    BloomFilter plain(src, params);
    BloomFilter counting(src, params, BloomVariant::counting, static_cast<unsigned>(cap));
    // Members have the top bit clear, probes have it set.
    std::vector<std::uint64_t> members = distinct_keys(src, n, 63);
    for (auto k : members) {
      plain.insert(k);
      counting.insert(k);
    }
    double misses = 0;
    for (auto k : members) misses += !plain.query(k);
    double hits = 0;
    for (std::uint64_t i = 0; i < probes; ++i) hits += plain.query(src.bits(63) | (std::uint64_t{1} << 63));
    for (std::size_t i = 0; i < n / 2; ++i) counting.remove(members[i]);
    double counting_misses = 0;
    for (std::size_t i = n / 2; i < n; ++i) counting_misses += !counting.query(members[i]);
    return Row{misses, hits, counting_misses};
  });
  const double predicted = bloom_false_positive(params.m, params.k, n);
  const double total_probes = static_cast<double>(probes) * static_cast<double>(trials);
  ctx.add(judge("false_negatives", column_sum(rows, 0), 0, 0, Verdict::exact, kExact));
  ctx.add(judge("false_positive_rate", column_sum(rows, 1) / total_probes, predicted,
                binomial_slack(predicted, total_probes), Verdict::two_sided, "3 binomial standard errors"));
  ctx.add(judge("counting_false_negatives_after_removals", column_sum(rows, 2), 0, 0, Verdict::exact, kExact));
}

void suite_cms(SuiteContext& ctx) {
  const double eps = ctx.param("eps", 0.01);
  const double delta = ctx.param("delta", 0.01);
  const auto updates = as_count(ctx.param("updates", 100000), "updates");
  const auto keys = as_count(ctx.param("keys", 1000), "keys");
  const double skew = ctx.param("zipf", 1.2);
  const double phi = ctx.param("phi", 0.05);
  const auto trials = ctx.trials(100);
  const CmsParams params = CmsParams::from_error(eps, delta);
  const ZipfSampler zipf(keys, skew);
  auto rows = trials_of(ctx, trials, [&](RandomSource& src, std::uint64_t) {
    CountMinSketch sketch(src, params);
    HeavyHitterTracker tracker(phi);
    std::vector<std::int64_t> truth(keys + 1, 0);
    for (std::uint64_t u = 0; u < updates; ++u) {
      const auto i = zipf(src);
      ++truth[i];
      tracker.update(sketch, i, 1);
    }
    const double l1 = static_cast<double>(sketch.l1());
    double under = 0;
    double over = 0;
    for (std::uint64_t i = 1; i <= keys; ++i) {
      const auto est = sketch.point_query_min(i);
      under += est < truth[i];
      over += static_cast<double>(est) > static_cast<double>(truth[i]) + eps * l1;
    }
    bool all_heavy = true;
    for (std::uint64_t i = 1; i <= keys; ++i) {
      if (static_cast<double>(truth[i]) >= phi * l1 && !tracker.contains(i)) all_heavy = false;
    }
    return Row{under, over / static_cast<double>(keys), all_heavy ? 1.0 : 0.0, static_cast<double>(tracker.size())};
  });
  const double expected_width = std::ceil(std::numbers::e / eps);
  const double expected_depth = std::ceil(std::log(1.0 / delta));
  ctx.add(judge("width", static_cast<double>(params.width), expected_width, 0, Verdict::exact, kExact));
  ctx.add(judge("depth", static_cast<double>(params.depth), expected_depth, 0, Verdict::exact, kExact));
  ctx.add(judge("underestimates", column_sum(rows, 0), 0, 0, Verdict::exact, kExact));
  const double samples = static_cast<double>(keys) * static_cast<double>(trials);
  ctx.add(judge("error_band_violation_rate", summarize(column(rows, 1)).mean, delta, binomial_slack(delta, samples),
                Verdict::upper, "delta plus 3 binomial standard errors"));
  ctx.add(judge("heavy_hitter_recall_rate", summarize(column(rows, 2)).mean, 0.99, 0, Verdict::lower, kOneSided));
  ctx.add(judge("mean_tracker_size", summarize(column(rows, 3)).mean, (1 + eps) / phi, 0, Verdict::report,
                kReportOnly));
}

void suite_lsh(SuiteContext& ctx) {
  const auto dim = as_count(ctx.param("d", 256), "d");
  const auto n = as_count(ctx.param("n", 2048), "n");
  const double r1 = ctx.param("r1", 16);
  const double r2 = ctx.param("r2", 32);
  const double delta = ctx.param("delta", 0.05);
  const auto trials = ctx.trials(25);
  require(r1 >= 0 && r1 == std::floor(r1) && r1 <= static_cast<double>(dim), "lsh: r1 must be an integer in [0, d]");
  const LshParams params = LshParams::derive(n + 1, dim, r1, r2, delta);
  ctx.report.params["k"] = params.k;
  ctx.report.params["ell"] = static_cast<double>(params.ell);
  ctx.report.params["replicas"] = static_cast<double>(params.replicas);
  ctx.report.params["padded_dim"] = static_cast<double>(params.padded_dim);
  auto rows = trials_of(ctx, trials, [&](RandomSource& src, std::uint64_t) {
    std::vector<BitVector> points;
    points.reserve(n + 1);
    auto random_vector = [&] {
      BitVector v(dim);
      for (std::size_t i = 0; i < dim; ++i) v.set(i, src.bit());
      return v;
    };
    for (std::uint64_t i = 0; i < n; ++i) points.push_back(random_vector());
    const BitVector q = random_vector();
    // Plant a neighbour at distance exactly r1 in a random position.
    BitVector planted = q;
    std::vector<std::size_t> coords(dim);
    std::iota(coords.begin(), coords.end(), std::size_t{0});
    shuffle(src, std::span<std::size_t>(coords));
    for (std::size_t i = 0; i < static_cast<std::size_t>(r1); ++i) planted.flip(coords[i]);
    const auto slot = static_cast<std::size_t>(uniform_below(src, n + 1));
    points.insert(points.begin() + static_cast<std::ptrdiff_t>(slot), planted);

    const PlebIndex index = PlebIndex::build(src, std::move(points), r1, r2, delta);
    const auto& prm = index.params();
    const std::size_t replicas = prm.trivial ? 1 : prm.replicas;
    double replica_hits = 0;
    double max_distance = 0;
    double max_candidates = 0;
    for (std::size_t r = 0; r < replicas; ++r) {
      std::uint64_t seen = 0;
      const auto match = index.query_replica(q, r, seen);
      max_candidates = std::max(max_candidates, static_cast<double>(seen));
      if (match) {
        ++replica_hits;
        max_distance = std::max(max_distance, static_cast<double>(match->distance));
      }
    }
    return Row{replica_hits / static_cast<double>(replicas), replica_hits > 0 ? 1.0 : 0.0, max_distance,
               max_candidates};
  });
  const double replica_floor = 1 - (1 / std::numbers::e + 0.5);
  ctx.add(judge("per_replica_success_rate", summarize(column(rows, 0)).mean, replica_floor, 0, Verdict::lower,
                kOneSided));
  ctx.add(judge("aggregate_success_rate", summarize(column(rows, 1)).mean, 1 - delta, 0, Verdict::lower, kOneSided));
  ctx.add(judge("max_returned_distance", column_max(rows, 2), r2, 0, Verdict::upper, kOneSided));
  ctx.add(judge("max_candidates_per_replica", column_max(rows, 3), 2 * static_cast<double>(params.ell), 0,
                Verdict::upper, kOneSided));
}

void suite_bounds(SuiteContext& ctx) {
  ctx.trials(1);
  const auto max_n = as_count(ctx.param("n", 100), "n");
  bounds::BoundQuery q;
  q.mu = 1;
  q.delta = 1;
  ctx.add(judge("chernoff_classic_mu1_delta1", bounds::chernoff_upper(q, bounds::ChernoffVariant::classic),
                std::numbers::e / 4, 1e-12, Verdict::exact, "floating-point rounding"));

  auto rejects = [](double delta, bounds::ChernoffVariant v) {
    bounds::BoundQuery probe;
    probe.mu = 1;
    probe.delta = delta;
    try {
      bounds::chernoff_upper(probe, v);
    } catch (const Error& e) {
      return e.code() == ErrorCode::invalid_argument ? 1.0 : 0.0;
    }
    return 0.0;
  };
  ctx.add(judge("third_variant_rejects_delta_1.82", rejects(1.82, bounds::ChernoffVariant::third), 1, 0,
                Verdict::exact, kExact));
  ctx.add(judge("fourth_variant_rejects_delta_4.12", rejects(4.12, bounds::ChernoffVariant::fourth), 1, 0,
                Verdict::exact, kExact));

  double worst = 0;
  for (std::uint64_t n = 1; n <= max_n; ++n) {
    const double nn = static_cast<double>(n);
    const double integral = bounds::kuw_expected_rounds(0, nn, [nn](double x) { return std::ceil(x) / nn; });
    const double exact = static_cast<double>(nn * bounds::harmonic(n));
    worst = std::max(worst, std::fabs(integral - exact));
  }
  ctx.add(judge("kuw_coupon_max_abs_error", worst, 0, 1e-6, Verdict::upper, "absolute 1e-6"));
}

}  // namespace randlab::harness::detail
