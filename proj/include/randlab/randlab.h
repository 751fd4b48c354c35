#ifndef RANDLAB_H
#define RANDLAB_H

/*
 * C interface to the randlab library.
 *
 * Every object is an opaque handle created by a create or build function
 * and released by the matching destroy function. Functions return a status code;
 * on failure randlab_last_error() describes the problem (thread-local,
 * valid until the next call on the same thread). Strings and byte buffers
 * returned through out-parameters are owned by the caller and released with
 * randlab_string_free / randlab_bytes_free.
 *
 * Handles are not internally synchronized: use one handle per thread, or
 * only call read-only functions concurrently.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define RANDLAB_API __declspec(dllexport)
#else
#define RANDLAB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum randlab_status {
  RANDLAB_OK = 0,
  RANDLAB_INVALID_ARGUMENT = 1,
  RANDLAB_DUPLICATE_KEY = 2,
  RANDLAB_MISSING_KEY = 3,
  RANDLAB_LOAD_LIMIT = 4,
  RANDLAB_CONTRACT_VIOLATION = 5,
  RANDLAB_PARSE_ERROR = 6,
  RANDLAB_IO_ERROR = 7,
  RANDLAB_UNKNOWN_METRIC = 8,
  RANDLAB_CONFIG_MISMATCH = 9,
  RANDLAB_INTERNAL = 100
} randlab_status;

RANDLAB_API const char* randlab_last_error(void);
RANDLAB_API const char* randlab_status_name(randlab_status status);
RANDLAB_API const char* randlab_version(void);
RANDLAB_API void randlab_string_free(char* s);
RANDLAB_API void randlab_bytes_free(uint8_t* bytes);

/* ---- random source ---- */

typedef struct randlab_rng randlab_rng;

RANDLAB_API randlab_status randlab_rng_create(uint64_t seed, randlab_rng** out);
RANDLAB_API void randlab_rng_destroy(randlab_rng* rng);
/* Decimal or 0x-prefixed hexadecimal. */
RANDLAB_API randlab_status randlab_parse_seed(const char* text, uint64_t* out);
RANDLAB_API randlab_status randlab_rng_bits(randlab_rng* rng, unsigned count, uint64_t* out);
RANDLAB_API randlab_status randlab_rng_uniform(randlab_rng* rng, uint64_t n, uint64_t* out);
RANDLAB_API randlab_status randlab_rng_bits_consumed(const randlab_rng* rng, uint64_t* out);

/* ---- experiment harness ---- */

/*
 * Runs a validation suite. trials = 0 selects the suite default. format is
 * "json", "csv" or "text". *all_pass receives 1 iff every verdict passed.
 */
RANDLAB_API randlab_status randlab_validate(const char* suite, const char* const* param_keys,
                                            const double* param_values, size_t param_count, uint64_t seed,
                                            uint64_t trials, unsigned threads, const char* format, char** report_out,
                                            int* all_pass);
RANDLAB_API randlab_status randlab_predict(const char* metric, const char* const* param_keys,
                                           const double* param_values, size_t param_count, double* out);
/* Newline-separated names. */
RANDLAB_API randlab_status randlab_suite_names(char** out);

/* ---- bounds ---- */

typedef enum randlab_chernoff_variant {
  RANDLAB_CHERNOFF_CLASSIC = 0,
  RANDLAB_CHERNOFF_THIRD = 1,
  RANDLAB_CHERNOFF_FOURTH = 2,
  RANDLAB_CHERNOFF_POWER_OF_TWO_R = 3 /* delta carries R */
} randlab_chernoff_variant;

RANDLAB_API randlab_status randlab_chernoff_upper(double mu, double delta, randlab_chernoff_variant variant,
                                                  double* out);
RANDLAB_API randlab_status randlab_trials_needed(double epsilon, double delta, double rho, uint64_t* out);

/* ---- hash families ---- */

typedef struct randlab_hash randlab_hash;

/*
 * family: "mod_p" (params universe_max, m), "multiply_shift" (k, l) or
 * "tabulation" (c, char_bits, m_bits).
 */
RANDLAB_API randlab_status randlab_hash_sample(randlab_rng* rng, const char* family, const char* const* param_keys,
                                               const uint64_t* param_values, size_t param_count, randlab_hash** out);
RANDLAB_API void randlab_hash_destroy(randlab_hash* h);
RANDLAB_API randlab_status randlab_hash_eval(const randlab_hash* h, uint64_t x, uint64_t* out);
RANDLAB_API randlab_status randlab_hash_to_json(const randlab_hash* h, char** out);
RANDLAB_API randlab_status randlab_hash_from_json(const char* text, randlab_hash** out);
RANDLAB_API randlab_status randlab_hash_serialize(const randlab_hash* h, uint8_t** bytes, size_t* len);
RANDLAB_API randlab_status randlab_hash_deserialize(const uint8_t* bytes, size_t len, randlab_hash** out);

/* ---- classic algorithms ---- */

/* sorted_out may be NULL; otherwise it must hold n values. */
RANDLAB_API randlab_status randlab_quicksort(randlab_rng* rng, const uint64_t* items, size_t n, uint64_t* sorted_out,
                                             uint64_t* comparisons);
/* k is 1-based. */
RANDLAB_API randlab_status randlab_quickselect(randlab_rng* rng, const uint64_t* items, size_t n, size_t k,
                                               uint64_t* value, uint64_t* comparisons);
/* graph_text: "n m" then m lines "u v". side_a_out (optional) receives a space-separated vertex list. */
RANDLAB_API randlab_status randlab_mincut(randlab_rng* rng, const char* graph_text, uint64_t repetitions,
                                          uint64_t* cut_size, char** side_a_out);

/* ---- treap (64-bit keys) ---- */

typedef struct randlab_treap randlab_treap;

RANDLAB_API randlab_status randlab_treap_create(randlab_treap** out);
RANDLAB_API void randlab_treap_destroy(randlab_treap* t);
RANDLAB_API randlab_status randlab_treap_insert(randlab_treap* t, uint64_t key, randlab_rng* rng, uint64_t* rotations);
RANDLAB_API randlab_status randlab_treap_erase(randlab_treap* t, uint64_t key, uint64_t* rotations);
RANDLAB_API randlab_status randlab_treap_find(const randlab_treap* t, uint64_t key, int* found, uint64_t* depth);
RANDLAB_API randlab_status randlab_treap_size(const randlab_treap* t, uint64_t* out);
RANDLAB_API randlab_status randlab_treap_serialize(const randlab_treap* t, char** out);

/* ---- skip list (64-bit keys) ---- */

typedef struct randlab_skiplist randlab_skiplist;

RANDLAB_API randlab_status randlab_skiplist_create(double p, randlab_skiplist** out);
RANDLAB_API void randlab_skiplist_destroy(randlab_skiplist* s);
RANDLAB_API randlab_status randlab_skiplist_insert(randlab_skiplist* s, uint64_t key, randlab_rng* rng,
                                                   uint64_t* height);
RANDLAB_API randlab_status randlab_skiplist_erase(randlab_skiplist* s, uint64_t key);
RANDLAB_API randlab_status randlab_skiplist_find(const randlab_skiplist* s, uint64_t key, int* found,
                                                 uint64_t* links);
RANDLAB_API randlab_status randlab_skiplist_stats(const randlab_skiplist* s, uint64_t* size, uint64_t* link_count);
RANDLAB_API randlab_status randlab_skiplist_dump(const randlab_skiplist* s, char** out);

/* ---- FKS perfect hashing ---- */

typedef struct randlab_fks randlab_fks;

/* payloads may be NULL, in which case each key is its own payload. */
RANDLAB_API randlab_status randlab_fks_build(randlab_rng* rng, const uint64_t* keys, const uint64_t* payloads,
                                             size_t n, randlab_fks** out);
RANDLAB_API void randlab_fks_destroy(randlab_fks* t);
RANDLAB_API randlab_status randlab_fks_lookup(const randlab_fks* t, uint64_t key, int* found, uint64_t* payload,
                                              unsigned* hash_evaluations);
RANDLAB_API randlab_status randlab_fks_total_slots(const randlab_fks* t, uint64_t* out);
RANDLAB_API randlab_status randlab_fks_serialize(const randlab_fks* t, uint8_t** bytes, size_t* len);
RANDLAB_API randlab_status randlab_fks_deserialize(const uint8_t* bytes, size_t len, randlab_fks** out);

/* ---- cuckoo hashing ---- */

typedef struct randlab_cuckoo randlab_cuckoo;

RANDLAB_API randlab_status randlab_cuckoo_create(randlab_rng* rng, unsigned slot_bits, double load_limit,
                                                 randlab_cuckoo** out);
RANDLAB_API void randlab_cuckoo_destroy(randlab_cuckoo* t);
RANDLAB_API randlab_status randlab_cuckoo_insert(randlab_cuckoo* t, uint64_t key, uint64_t payload, randlab_rng* rng,
                                                 uint64_t* displacements);
RANDLAB_API randlab_status randlab_cuckoo_lookup(const randlab_cuckoo* t, uint64_t key, int* found, uint64_t* payload,
                                                 unsigned* probes);
RANDLAB_API randlab_status randlab_cuckoo_erase(randlab_cuckoo* t, uint64_t key);
RANDLAB_API randlab_status randlab_cuckoo_stats(const randlab_cuckoo* t, uint64_t* size, uint64_t* displacements,
                                                uint64_t* rehashes);

/* ---- Bloom filters ---- */

typedef struct randlab_bloom randlab_bloom;

/* Parameters planned from (n_target, epsilon). cap applies to counting filters only. */
RANDLAB_API randlab_status randlab_bloom_create(randlab_rng* rng, uint64_t n_target, double epsilon, int counting,
                                                unsigned cap, randlab_bloom** out);
RANDLAB_API void randlab_bloom_destroy(randlab_bloom* b);
RANDLAB_API randlab_status randlab_bloom_insert(randlab_bloom* b, uint64_t key);
RANDLAB_API randlab_status randlab_bloom_query(const randlab_bloom* b, uint64_t key, int* present);
RANDLAB_API randlab_status randlab_bloom_remove(randlab_bloom* b, uint64_t key);
RANDLAB_API randlab_status randlab_bloom_count(const randlab_bloom* b, uint64_t key, uint64_t* out);
RANDLAB_API randlab_status randlab_bloom_params(const randlab_bloom* b, uint64_t* m, unsigned* k);
RANDLAB_API randlab_status randlab_bloom_serialize(const randlab_bloom* b, uint8_t** bytes, size_t* len);
RANDLAB_API randlab_status randlab_bloom_deserialize(const uint8_t* bytes, size_t len, randlab_bloom** out);

/* ---- count-min sketch ---- */

typedef struct randlab_cms randlab_cms;

/* general != 0 accepts negative counts and answers with the row median. */
RANDLAB_API randlab_status randlab_cms_create(randlab_rng* rng, double epsilon, double delta, int general,
                                              randlab_cms** out);
RANDLAB_API void randlab_cms_destroy(randlab_cms* s);
RANDLAB_API randlab_status randlab_cms_update(randlab_cms* s, uint64_t index, int64_t count);
/* Accepts the text "index count" format or the binary stream format. */
RANDLAB_API randlab_status randlab_cms_replay(randlab_cms* s, const uint8_t* data, size_t len, uint64_t* applied);
/* Row minimum in nonnegative mode, row median in general mode. */
RANDLAB_API randlab_status randlab_cms_query(const randlab_cms* s, uint64_t index, int64_t* out);
RANDLAB_API randlab_status randlab_cms_inner_product(const randlab_cms* a, const randlab_cms* b, int64_t* out);
RANDLAB_API randlab_status randlab_cms_dimensions(const randlab_cms* s, uint64_t* width, uint64_t* depth);
RANDLAB_API randlab_status randlab_cms_l1(const randlab_cms* s, uint64_t* out);

/* ---- locality-sensitive hashing ---- */

typedef struct randlab_nns randlab_nns;

/* dataset_text: one '0'/'1' vector per line. */
RANDLAB_API randlab_status randlab_nns_build(randlab_rng* rng, const char* dataset_text, double epsilon, double delta,
                                             randlab_nns** out);
RANDLAB_API void randlab_nns_destroy(randlab_nns* idx);
RANDLAB_API randlab_status randlab_nns_query(const randlab_nns* idx, const char* bits, int* found, uint64_t* point,
                                             uint64_t* distance);
/* Answers every query line; output lines are "query_id point_id distance". */
RANDLAB_API randlab_status randlab_nns_query_all(const randlab_nns* idx, const char* queries_text, char** out);

#ifdef __cplusplus
}
#endif

#endif /* RANDLAB_H */
