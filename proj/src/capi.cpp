#include "randlab/randlab.h"

#include <cstdlib>
#include <cstring>
#include <algorithm>
#include <exception>
#include <map>
#include <optional>
#include <new>
#include <sstream>
#include <string>
#include <vector>

#include "randlab/bloom.hpp"
#include "randlab/bounds.hpp"
#include "randlab/classic.hpp"
#include "randlab/cms.hpp"
#include "randlab/cuckoo.hpp"
#include "randlab/error.hpp"
#include "randlab/fks.hpp"
#include "randlab/harness.hpp"
#include "randlab/hashfam.hpp"
#include "randlab/lsh.hpp"
#include "randlab/randsrc.hpp"
#include "randlab/skiplist.hpp"
#include "randlab/treap.hpp"

struct randlab_rng {
  randlab::RandomSource src;
};
struct randlab_hash {
  randlab::hashfam::HashFunction h;
};
struct randlab_treap {
  randlab::Treap<std::uint64_t> t;
};
struct randlab_skiplist {
  randlab::SkipList<std::uint64_t> s;
};
struct randlab_fks {
  randlab::FksTable t;
};
struct randlab_cuckoo {
  randlab::CuckooTable t;
};
struct randlab_bloom {
  randlab::BloomFilter b;
};
struct randlab_cms {
  randlab::CountMinSketch s;
};
struct randlab_nns {
  randlab::NnsIndex idx;
};

namespace {

thread_local std::string last_error;

randlab_status set_error(randlab_status status, const char* what) {
  last_error = what;
  return status;
}

// Runs fn, translating exceptions into status codes.
template <class Fn>
randlab_status guard(Fn&& fn) noexcept {
  try {
    fn();
    last_error.clear();
    return RANDLAB_OK;
  } catch (const randlab::Error& e) {
    return set_error(static_cast<randlab_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(RANDLAB_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(RANDLAB_INTERNAL, e.what());
  } catch (...) {
    return set_error(RANDLAB_INTERNAL, "unknown failure");
  }
}

void need(const void* p, const char* name) {
  if (!p) randlab::fail(randlab::ErrorCode::invalid_argument, std::string(name) + " must not be null");
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void export_bytes(const std::vector<std::uint8_t>& bytes, uint8_t** out, size_t* len) {
  need(out, "bytes");
  need(len, "len");
  auto* buf = static_cast<uint8_t*>(std::malloc(bytes.empty() ? 1 : bytes.size()));
  if (!buf) throw std::bad_alloc();
  if (!bytes.empty()) std::memcpy(buf, bytes.data(), bytes.size());
  *out = buf;
  *len = bytes.size();
}

std::span<const std::uint8_t> view(const uint8_t* bytes, size_t len) {
  if (len > 0) need(bytes, "bytes");
  return {bytes, len};
}

randlab::harness::Params collect_params(const char* const* keys, const double* values, size_t count) {
  randlab::harness::Params params;
  if (count > 0) {
    need(keys, "param_keys");
    need(values, "param_values");
  }
  for (size_t i = 0; i < count; ++i) {
    need(keys[i], "param key");
    params[keys[i]] = values[i];
  }
  return params;
}

}  // namespace

extern "C" {

const char* randlab_last_error(void) { return last_error.c_str(); }

const char* randlab_status_name(randlab_status status) {
  switch (status) {
    case RANDLAB_OK: return "ok";
    case RANDLAB_INVALID_ARGUMENT: return "invalid_argument";
    case RANDLAB_DUPLICATE_KEY: return "duplicate_key";
    case RANDLAB_MISSING_KEY: return "missing_key";
    case RANDLAB_LOAD_LIMIT: return "load_limit";
    case RANDLAB_CONTRACT_VIOLATION: return "contract_violation";
    case RANDLAB_PARSE_ERROR: return "parse_error";
    case RANDLAB_IO_ERROR: return "io_error";
    case RANDLAB_UNKNOWN_METRIC: return "unknown_metric";
    case RANDLAB_CONFIG_MISMATCH: return "config_mismatch";
    case RANDLAB_INTERNAL: return "internal";
  }
  return "unknown_status";
}

const char* randlab_version(void) { return "1.0.0"; }

void randlab_string_free(char* s) { std::free(s); }
void randlab_bytes_free(uint8_t* bytes) { std::free(bytes); }

// ---- random source

randlab_status randlab_rng_create(uint64_t seed, randlab_rng** out) {
  return guard([&] {
    need(out, "out");
    *out = new randlab_rng{randlab::RandomSource(seed)};
  });
}

void randlab_rng_destroy(randlab_rng* rng) { delete rng; }

randlab_status randlab_parse_seed(const char* text, uint64_t* out) {
  return guard([&] {
    need(text, "text");
    need(out, "out");
    *out = randlab::parse_seed(text);
  });
}

randlab_status randlab_rng_bits(randlab_rng* rng, unsigned count, uint64_t* out) {
  return guard([&] {
    need(rng, "rng");
    need(out, "out");
    randlab::require(count <= 64, "bit count must be at most 64");
    *out = rng->src.bits(count);
  });
}

randlab_status randlab_rng_uniform(randlab_rng* rng, uint64_t n, uint64_t* out) {
  return guard([&] {
    need(rng, "rng");
    need(out, "out");
    *out = randlab::uniform_below(rng->src, n);
  });
}

randlab_status randlab_rng_bits_consumed(const randlab_rng* rng, uint64_t* out) {
  return guard([&] {
    need(rng, "rng");
    need(out, "out");
    *out = rng->src.bits_consumed();
  });
}

// ---- harness

randlab_status randlab_validate(const char* suite, const char* const* param_keys, const double* param_values,
                                size_t param_count, uint64_t seed, uint64_t trials, unsigned threads,
                                const char* format, char** report_out, int* all_pass) {
  return guard([&] {
    need(suite, "suite");
    need(report_out, "report_out");
    randlab::harness::ExperimentSpec spec;
    spec.suite = suite;
    spec.params = collect_params(param_keys, param_values, param_count);
    spec.seed = seed;
    if (trials > 0) spec.trials = trials;
    spec.threads = threads == 0 ? 1 : threads;
    const auto fmt = randlab::harness::parse_format(format ? format : "json");
    const auto report = randlab::harness::run(spec);
    *report_out = dup_string(randlab::harness::report_emit(report, fmt));
    if (all_pass) *all_pass = report.passed() ? 1 : 0;
  });
}

randlab_status randlab_predict(const char* metric, const char* const* param_keys, const double* param_values,
                               size_t param_count, double* out) {
  return guard([&] {
    need(metric, "metric");
    need(out, "out");
    *out = static_cast<double>(
        randlab::harness::predict(metric, collect_params(param_keys, param_values, param_count)));
  });
}

randlab_status randlab_suite_names(char** out) {
  return guard([&] {
    need(out, "out");
    std::string joined;
    for (const auto& name : randlab::harness::suite_names()) joined += name + "\n";
    *out = dup_string(joined);
  });
}

// ---- bounds

randlab_status randlab_chernoff_upper(double mu, double delta, randlab_chernoff_variant variant, double* out) {
  return guard([&] {
    need(out, "out");
    randlab::bounds::BoundQuery q;
    q.mu = mu;
    randlab::bounds::ChernoffVariant v{};
    switch (variant) {
      case RANDLAB_CHERNOFF_CLASSIC: v = randlab::bounds::ChernoffVariant::classic; break;
      case RANDLAB_CHERNOFF_THIRD: v = randlab::bounds::ChernoffVariant::third; break;
      case RANDLAB_CHERNOFF_FOURTH: v = randlab::bounds::ChernoffVariant::fourth; break;
      case RANDLAB_CHERNOFF_POWER_OF_TWO_R: v = randlab::bounds::ChernoffVariant::power_of_two_R; break;
      default: randlab::fail(randlab::ErrorCode::invalid_argument, "unknown Chernoff variant");
    }
    if (v == randlab::bounds::ChernoffVariant::power_of_two_R) {
      q.t = delta;
    } else {
      q.delta = delta;
    }
    *out = randlab::bounds::chernoff_upper(q, v);
  });
}

randlab_status randlab_trials_needed(double epsilon, double delta, double rho, uint64_t* out) {
  return guard([&] {
    need(out, "out");
    *out = randlab::bounds::trials_needed(epsilon, delta, rho).n_trials;
  });
}

// ---- hash families

randlab_status randlab_hash_sample(randlab_rng* rng, const char* family, const char* const* param_keys,
                                   const uint64_t* param_values, size_t param_count, randlab_hash** out) {
  return guard([&] {
    need(rng, "rng");
    need(family, "family");
    need(out, "out");
    std::map<std::string, std::uint64_t> params;
    if (param_count > 0) {
      need(param_keys, "param_keys");
      need(param_values, "param_values");
    }
    for (size_t i = 0; i < param_count; ++i) {
      need(param_keys[i], "param key");
      params[param_keys[i]] = param_values[i];
    }
    auto take = [&](const char* key) {
      auto it = params.find(key);
      if (it == params.end()) randlab::fail(randlab::ErrorCode::invalid_argument, std::string("missing parameter ") + key);
      const auto v = it->second;
      params.erase(it);
      return v;
    };
    auto small = [&](const char* key) {
      const auto v = take(key);
      randlab::require(v <= 64, std::string(key) + " out of range");
      return static_cast<unsigned>(v);
    };
    namespace hf = randlab::hashfam;
    std::optional<hf::HashFunction> h;
    switch (hf::parse_family(family)) {
      case hf::Family::mod_p: {
        const auto universe_max = take("universe_max");
        h = hf::sample_mod_p(rng->src, universe_max, take("m"));
        break;
      }
      case hf::Family::multiply_shift: {
        const unsigned k = small("k");
        h = hf::sample_multiply_shift(rng->src, k, small("l"));
        break;
      }
      case hf::Family::tabulation: {
        const unsigned c = small("c");
        const unsigned char_bits = small("char_bits");
        h = hf::sample_tabulation(rng->src, c, char_bits, small("m_bits"));
        break;
      }
    }
    if (!params.empty()) {
      randlab::fail(randlab::ErrorCode::invalid_argument, "unexpected parameter " + params.begin()->first);
    }
    *out = new randlab_hash{std::move(*h)};
  });
}

void randlab_hash_destroy(randlab_hash* h) { delete h; }

randlab_status randlab_hash_eval(const randlab_hash* h, uint64_t x, uint64_t* out) {
  return guard([&] {
    need(h, "hash");
    need(out, "out");
    *out = h->h(x);
  });
}

randlab_status randlab_hash_to_json(const randlab_hash* h, char** out) {
  return guard([&] {
    need(h, "hash");
    need(out, "out");
    *out = dup_string(h->h.to_json());
  });
}

randlab_status randlab_hash_from_json(const char* text, randlab_hash** out) {
  return guard([&] {
    need(text, "text");
    need(out, "out");
    *out = new randlab_hash{randlab::hashfam::HashFunction::from_json(text)};
  });
}

randlab_status randlab_hash_serialize(const randlab_hash* h, uint8_t** bytes, size_t* len) {
  return guard([&] {
    need(h, "hash");
    export_bytes(h->h.to_bytes(), bytes, len);
  });
}

randlab_status randlab_hash_deserialize(const uint8_t* bytes, size_t len, randlab_hash** out) {
  return guard([&] {
    need(out, "out");
    *out = new randlab_hash{randlab::hashfam::HashFunction::from_bytes(view(bytes, len))};
  });
}

// ---- classic algorithms

randlab_status randlab_quicksort(randlab_rng* rng, const uint64_t* items, size_t n, uint64_t* sorted_out,
                                 uint64_t* comparisons) {
  return guard([&] {
    need(rng, "rng");
    if (n > 0) need(items, "items");
    const auto trace = randlab::classic::quicksort(rng->src, std::span<const std::uint64_t>(items, n));
    if (sorted_out) std::copy(trace.output.begin(), trace.output.end(), sorted_out);
    if (comparisons) *comparisons = trace.comparisons;
  });
}

randlab_status randlab_quickselect(randlab_rng* rng, const uint64_t* items, size_t n, size_t k, uint64_t* value,
                                   uint64_t* comparisons) {
  return guard([&] {
    need(rng, "rng");
    if (n > 0) need(items, "items");
    const auto trace = randlab::classic::quickselect(rng->src, std::span<const std::uint64_t>(items, n), k);
    if (value) *value = trace.output.front();
    if (comparisons) *comparisons = trace.comparisons;
  });
}

randlab_status randlab_mincut(randlab_rng* rng, const char* graph_text, uint64_t repetitions, uint64_t* cut_size,
                              char** side_a_out) {
  return guard([&] {
    need(rng, "rng");
    need(graph_text, "graph_text");
    std::istringstream in(graph_text);
    const auto g = randlab::classic::read_graph(in);
    const auto cut = randlab::classic::karger_amplified(rng->src, g, repetitions);
    if (cut_size) *cut_size = cut.cut_size;
    if (side_a_out) {
      std::string side;
      for (auto v : cut.side_a) side += (side.empty() ? "" : " ") + std::to_string(v);
      *side_a_out = dup_string(side);
    }
  });
}

// ---- treap

randlab_status randlab_treap_create(randlab_treap** out) {
  return guard([&] {
    need(out, "out");
    *out = new randlab_treap{};
  });
}

void randlab_treap_destroy(randlab_treap* t) { delete t; }

randlab_status randlab_treap_insert(randlab_treap* t, uint64_t key, randlab_rng* rng, uint64_t* rotations) {
  return guard([&] {
    need(t, "treap");
    need(rng, "rng");
    const auto r = t->t.insert(key, rng->src);
    if (rotations) *rotations = r;
  });
}

randlab_status randlab_treap_erase(randlab_treap* t, uint64_t key, uint64_t* rotations) {
  return guard([&] {
    need(t, "treap");
    const auto r = t->t.erase(key);
    if (rotations) *rotations = r;
  });
}

randlab_status randlab_treap_find(const randlab_treap* t, uint64_t key, int* found, uint64_t* depth) {
  return guard([&] {
    need(t, "treap");
    const auto r = t->t.find(key);
    if (found) *found = r.found ? 1 : 0;
    if (depth) *depth = r.depth;
  });
}

randlab_status randlab_treap_size(const randlab_treap* t, uint64_t* out) {
  return guard([&] {
    need(t, "treap");
    need(out, "out");
    *out = t->t.size();
  });
}

randlab_status randlab_treap_serialize(const randlab_treap* t, char** out) {
  return guard([&] {
    need(t, "treap");
    need(out, "out");
    *out = dup_string(t->t.serialize());
  });
}

// ---- skip list

randlab_status randlab_skiplist_create(double p, randlab_skiplist** out) {
  return guard([&] {
    need(out, "out");
    *out = new randlab_skiplist{randlab::SkipList<std::uint64_t>(p)};
  });
}

void randlab_skiplist_destroy(randlab_skiplist* s) { delete s; }

randlab_status randlab_skiplist_insert(randlab_skiplist* s, uint64_t key, randlab_rng* rng, uint64_t* height) {
  return guard([&] {
    need(s, "skiplist");
    need(rng, "rng");
    const auto h = s->s.insert(key, rng->src);
    if (height) *height = h;
  });
}

randlab_status randlab_skiplist_erase(randlab_skiplist* s, uint64_t key) {
  return guard([&] {
    need(s, "skiplist");
    s->s.erase(key);
  });
}

randlab_status randlab_skiplist_find(const randlab_skiplist* s, uint64_t key, int* found, uint64_t* links) {
  return guard([&] {
    need(s, "skiplist");
    const auto r = s->s.find(key);
    if (found) *found = r.found ? 1 : 0;
    if (links) *links = r.links_traversed;
  });
}

randlab_status randlab_skiplist_stats(const randlab_skiplist* s, uint64_t* size, uint64_t* link_count) {
  return guard([&] {
    need(s, "skiplist");
    if (size) *size = s->s.size();
    if (link_count) *link_count = s->s.link_count();
  });
}

randlab_status randlab_skiplist_dump(const randlab_skiplist* s, char** out) {
  return guard([&] {
    need(s, "skiplist");
    need(out, "out");
    *out = dup_string(s->s.dump());
  });
}

// ---- FKS

randlab_status randlab_fks_build(randlab_rng* rng, const uint64_t* keys, const uint64_t* payloads, size_t n,
                                 randlab_fks** out) {
  return guard([&] {
    need(rng, "rng");
    need(out, "out");
    if (n > 0) need(keys, "keys");
    std::span<const std::uint64_t> payload_span;
    if (payloads) payload_span = {payloads, n};
    *out = new randlab_fks{randlab::FksTable::build(rng->src, {keys, n}, payload_span)};
  });
}

void randlab_fks_destroy(randlab_fks* t) { delete t; }

randlab_status randlab_fks_lookup(const randlab_fks* t, uint64_t key, int* found, uint64_t* payload,
                                  unsigned* hash_evaluations) {
  return guard([&] {
    need(t, "fks");
    const auto r = t->t.lookup(key);
    if (found) *found = r.found ? 1 : 0;
    if (payload) *payload = r.payload;
    if (hash_evaluations) *hash_evaluations = r.hash_evaluations;
  });
}

randlab_status randlab_fks_total_slots(const randlab_fks* t, uint64_t* out) {
  return guard([&] {
    need(t, "fks");
    need(out, "out");
    *out = t->t.total_slots();
  });
}

randlab_status randlab_fks_serialize(const randlab_fks* t, uint8_t** bytes, size_t* len) {
  return guard([&] {
    need(t, "fks");
    export_bytes(t->t.serialize(), bytes, len);
  });
}

randlab_status randlab_fks_deserialize(const uint8_t* bytes, size_t len, randlab_fks** out) {
  return guard([&] {
    need(out, "out");
    *out = new randlab_fks{randlab::FksTable::deserialize(view(bytes, len))};
  });
}

// ---- cuckoo

randlab_status randlab_cuckoo_create(randlab_rng* rng, unsigned slot_bits, double load_limit, randlab_cuckoo** out) {
  return guard([&] {
    need(rng, "rng");
    need(out, "out");
    randlab::CuckooTable::Options options;
    if (load_limit > 0) options.load_limit = load_limit;
    *out = new randlab_cuckoo{randlab::CuckooTable(rng->src, slot_bits, options)};
  });
}

void randlab_cuckoo_destroy(randlab_cuckoo* t) { delete t; }

randlab_status randlab_cuckoo_insert(randlab_cuckoo* t, uint64_t key, uint64_t payload, randlab_rng* rng,
                                     uint64_t* displacements) {
  return guard([&] {
    need(t, "cuckoo");
    need(rng, "rng");
    const auto r = t->t.insert(key, payload, rng->src);
    if (displacements) *displacements = r.displacements;
  });
}

randlab_status randlab_cuckoo_lookup(const randlab_cuckoo* t, uint64_t key, int* found, uint64_t* payload,
                                     unsigned* probes) {
  return guard([&] {
    need(t, "cuckoo");
    const auto r = t->t.lookup(key);
    if (found) *found = r.found ? 1 : 0;
    if (payload) *payload = r.payload;
    if (probes) *probes = r.probes;
  });
}

randlab_status randlab_cuckoo_erase(randlab_cuckoo* t, uint64_t key) {
  return guard([&] {
    need(t, "cuckoo");
    t->t.erase(key);
  });
}

randlab_status randlab_cuckoo_stats(const randlab_cuckoo* t, uint64_t* size, uint64_t* displacements,
                                    uint64_t* rehashes) {
  return guard([&] {
    need(t, "cuckoo");
    if (size) *size = t->t.size();
    if (displacements) *displacements = t->t.stats().displacements;
    if (rehashes) *rehashes = t->t.stats().rehashes;
  });
}

// ---- Bloom

randlab_status randlab_bloom_create(randlab_rng* rng, uint64_t n_target, double epsilon, int counting, unsigned cap,
                                    randlab_bloom** out) {
  return guard([&] {
    need(rng, "rng");
    need(out, "out");
    const auto variant = counting ? randlab::BloomVariant::counting : randlab::BloomVariant::bits;
    const unsigned counter_cap = cap == 0 ? randlab::BloomFilter::kDefaultCap : cap;
    *out = new randlab_bloom{randlab::BloomFilter(rng->src, randlab::bloom_plan(n_target, epsilon), variant, counter_cap)};
  });
}

void randlab_bloom_destroy(randlab_bloom* b) { delete b; }

randlab_status randlab_bloom_insert(randlab_bloom* b, uint64_t key) {
  return guard([&] {
    need(b, "bloom");
    b->b.insert(key);
  });
}

randlab_status randlab_bloom_query(const randlab_bloom* b, uint64_t key, int* present) {
  return guard([&] {
    need(b, "bloom");
    need(present, "present");
    *present = b->b.query(key) ? 1 : 0;
  });
}

randlab_status randlab_bloom_remove(randlab_bloom* b, uint64_t key) {
  return guard([&] {
    need(b, "bloom");
    b->b.remove(key);
  });
}

randlab_status randlab_bloom_count(const randlab_bloom* b, uint64_t key, uint64_t* out) {
  return guard([&] {
    need(b, "bloom");
    need(out, "out");
    *out = b->b.count_estimate(key);
  });
}

randlab_status randlab_bloom_params(const randlab_bloom* b, uint64_t* m, unsigned* k) {
  return guard([&] {
    need(b, "bloom");
    if (m) *m = b->b.params().m;
    if (k) *k = b->b.params().k;
  });
}

randlab_status randlab_bloom_serialize(const randlab_bloom* b, uint8_t** bytes, size_t* len) {
  return guard([&] {
    need(b, "bloom");
    export_bytes(b->b.serialize(), bytes, len);
  });
}

randlab_status randlab_bloom_deserialize(const uint8_t* bytes, size_t len, randlab_bloom** out) {
  return guard([&] {
    need(out, "out");
    *out = new randlab_bloom{randlab::BloomFilter::deserialize(view(bytes, len))};
  });
}

// ---- count-min

randlab_status randlab_cms_create(randlab_rng* rng, double epsilon, double delta, int general, randlab_cms** out) {
  return guard([&] {
    need(rng, "rng");
    need(out, "out");
    const auto mode = general ? randlab::CmsMode::general : randlab::CmsMode::nonnegative;
    *out = new randlab_cms{randlab::CountMinSketch(rng->src, randlab::CmsParams::from_error(epsilon, delta), mode)};
  });
}

void randlab_cms_destroy(randlab_cms* s) { delete s; }

randlab_status randlab_cms_update(randlab_cms* s, uint64_t index, int64_t count) {
  return guard([&] {
    need(s, "cms");
    s->s.update(index, count);
  });
}

randlab_status randlab_cms_replay(randlab_cms* s, const uint8_t* data, size_t len, uint64_t* applied) {
  return guard([&] {
    need(s, "cms");
    const auto updates = randlab::read_stream_auto(view(data, len));
    std::uint64_t done = 0;
    try {
      for (const auto& u : updates) {
        s->s.update(u.index, u.count);
        ++done;
      }
    } catch (...) {
      if (applied) *applied = done;
      throw;
    }
    if (applied) *applied = done;
  });
}

randlab_status randlab_cms_query(const randlab_cms* s, uint64_t index, int64_t* out) {
  return guard([&] {
    need(s, "cms");
    need(out, "out");
    *out = s->s.mode() == randlab::CmsMode::general ? s->s.point_query_median(index) : s->s.point_query_min(index);
  });
}

randlab_status randlab_cms_inner_product(const randlab_cms* a, const randlab_cms* b, int64_t* out) {
  return guard([&] {
    need(a, "a");
    need(b, "b");
    need(out, "out");
    *out = randlab::CountMinSketch::inner_product(a->s, b->s);
  });
}

randlab_status randlab_cms_dimensions(const randlab_cms* s, uint64_t* width, uint64_t* depth) {
  return guard([&] {
    need(s, "cms");
    if (width) *width = s->s.params().width;
    if (depth) *depth = s->s.params().depth;
  });
}

randlab_status randlab_cms_l1(const randlab_cms* s, uint64_t* out) {
  return guard([&] {
    need(s, "cms");
    need(out, "out");
    *out = s->s.l1();
  });
}

// ---- nearest neighbour

randlab_status randlab_nns_build(randlab_rng* rng, const char* dataset_text, double epsilon, double delta,
                                 randlab_nns** out) {
  return guard([&] {
    need(rng, "rng");
    need(dataset_text, "dataset_text");
    need(out, "out");
    std::istringstream in(dataset_text);
    auto points = randlab::read_hamming_dataset(in);
    *out = new randlab_nns{randlab::NnsIndex::build(rng->src, std::move(points), epsilon, delta)};
  });
}

void randlab_nns_destroy(randlab_nns* idx) { delete idx; }

randlab_status randlab_nns_query(const randlab_nns* idx, const char* bits, int* found, uint64_t* point,
                                 uint64_t* distance) {
  return guard([&] {
    need(idx, "nns");
    need(bits, "bits");
    const auto answer = idx->idx.query(randlab::BitVector::from_string(bits));
    if (found) *found = answer ? 1 : 0;
    if (point) *point = answer ? answer->point : 0;
    if (distance) *distance = answer ? answer->distance : 0;
  });
}

randlab_status randlab_nns_query_all(const randlab_nns* idx, const char* queries_text, char** out) {
  return guard([&] {
    need(idx, "nns");
    need(queries_text, "queries_text");
    need(out, "out");
    std::istringstream in(queries_text);
    const auto queries = randlab::read_hamming_dataset(in);
    std::vector<randlab::NeighborLine> lines;
    lines.reserve(queries.size());
    for (std::size_t i = 0; i < queries.size(); ++i) {
      randlab::NeighborLine line;
      line.query_id = i;
      if (const auto answer = idx->idx.query(queries[i])) {
        line.point_id = answer->point;
        line.distance = answer->distance;
      }
      lines.push_back(line);
    }
    std::ostringstream text;
    randlab::write_neighbor_lines(text, lines);
    *out = dup_string(text.str());
  });
}

}  // extern "C"
