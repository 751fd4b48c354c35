// randlab command-line driver. Talks to the library only through randlab.h.

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "randlab/randlab.h"

namespace {

constexpr int kExitFailedVerdict = 1;
constexpr int kExitError = 2;

struct CliError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(randlab_status status, const std::string& context) {
  if (status != RANDLAB_OK) {
    throw CliError(context + ": " + randlab_status_name(status) + ": " + randlab_last_error());
  }
}

std::string take_string(char* s) {
  std::string out(s ? s : "");
  randlab_string_free(s);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw CliError("cannot write " + path);
}

std::uint64_t parse_seed(const std::string& text) {
  std::uint64_t seed = 0;
  check(randlab_parse_seed(text.c_str(), &seed), "seed");
  return seed;
}

template <class T, void (*Destroy)(T*)>
struct Deleter {
  void operator()(T* p) const { Destroy(p); }
};

using Rng = std::unique_ptr<randlab_rng, Deleter<randlab_rng, randlab_rng_destroy>>;

Rng make_rng(std::uint64_t seed) {
  randlab_rng* raw = nullptr;
  check(randlab_rng_create(seed, &raw), "rng");
  return Rng(raw);
}

// "key=value" pairs, comma- or repeat-separated.
std::map<std::string, std::string> split_pairs(const std::vector<std::string>& items) {
  std::map<std::string, std::string> out;
  for (const auto& item : items) {
    std::stringstream parts(item);
    std::string pair;
    while (std::getline(parts, pair, ',')) {
      if (pair.empty()) continue;
      const auto eq = pair.find('=');
      if (eq == std::string::npos || eq == 0) throw CliError("expected key=value, got '" + pair + "'");
      out[pair.substr(0, eq)] = pair.substr(eq + 1);
    }
  }
  return out;
}

// ---- validate

struct ValidateArgs {
  std::string suite;
  std::optional<double> n, p, eps, delta;
  std::vector<std::string> extra;
  std::uint64_t trials = 0;
  std::string seed = "1";
  unsigned threads = 1;
  std::string format = "json";
  std::string out;
};

int cmd_validate(const ValidateArgs& a) {
  std::map<std::string, double> params;
  for (const auto& [key, value] : split_pairs(a.extra)) {
    try {
      params[key] = std::stod(value);
    } catch (const std::exception&) {
      throw CliError("parameter " + key + " is not a number");
    }
  }
  if (a.n) params["n"] = *a.n;
  if (a.p) params["p"] = *a.p;
  if (a.eps) params["eps"] = *a.eps;
  if (a.delta) params["delta"] = *a.delta;

  std::vector<const char*> keys;
  std::vector<double> values;
  for (const auto& [key, value] : params) {
    keys.push_back(key.c_str());
    values.push_back(value);
  }
  char* report = nullptr;
  int all_pass = 0;
  check(randlab_validate(a.suite.c_str(), keys.data(), values.data(), keys.size(), parse_seed(a.seed), a.trials,
                         a.threads, a.format.c_str(), &report, &all_pass),
        "validate " + a.suite);
  write_output(take_string(report), a.out);
  return all_pass ? 0 : kExitFailedVerdict;
}

// ---- bench

struct BenchArgs {
  std::string structure;
  std::string ops;
  std::string seed = "1";
  double p = 0.5;
  unsigned slot_bits = 16;
  double load_limit = 0.45;
  std::uint64_t n = 0;
  double eps = 0.01;
  std::string out;
};

struct Op {
  std::string verb;
  std::uint64_t key = 0;
  std::uint64_t payload = 0;
};

std::vector<Op> read_ops(const std::string& path) {
  std::istringstream in(read_file(path));
  std::vector<Op> ops;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream fields(line);
    Op op;
    if (!(fields >> op.verb)) continue;
    if (!(fields >> op.key)) throw CliError(path + ":" + std::to_string(line_no) + ": missing key");
    op.payload = op.key;
    fields >> op.payload;
    if (op.verb == "delete" || op.verb == "remove") op.verb = "erase";
    if (op.verb == "lookup" || op.verb == "query") op.verb = "find";
    if (op.verb != "insert" && op.verb != "erase" && op.verb != "find") {
      throw CliError(path + ":" + std::to_string(line_no) + ": unknown operation '" + op.verb + "'");
    }
    ops.push_back(op);
  }
  return ops;
}

struct BenchTally {
  std::uint64_t inserts = 0, erases = 0, finds = 0, hits = 0;
  std::uint64_t work = 0;  // rotations, links, probes or displacements
  std::uint64_t failures = 0;
  std::string work_name;
};

void bench_treap(const std::vector<Op>& ops, randlab_rng* rng, BenchTally& tally) {
  randlab_treap* raw = nullptr;
  check(randlab_treap_create(&raw), "treap");
  std::unique_ptr<randlab_treap, Deleter<randlab_treap, randlab_treap_destroy>> t(raw);
  tally.work_name = "rotations";
  for (const auto& op : ops) {
    std::uint64_t r = 0;
    if (op.verb == "insert") {
      if (randlab_treap_insert(t.get(), op.key, rng, &r) != RANDLAB_OK) ++tally.failures;
      ++tally.inserts;
    } else if (op.verb == "erase") {
      if (randlab_treap_erase(t.get(), op.key, &r) != RANDLAB_OK) ++tally.failures;
      ++tally.erases;
    } else {
      int found = 0;
      check(randlab_treap_find(t.get(), op.key, &found, nullptr), "treap find");
      ++tally.finds;
      tally.hits += found;
    }
    tally.work += r;
  }
}

void bench_skiplist(const std::vector<Op>& ops, randlab_rng* rng, double p, BenchTally& tally) {
  randlab_skiplist* raw = nullptr;
  check(randlab_skiplist_create(p, &raw), "skiplist");
  std::unique_ptr<randlab_skiplist, Deleter<randlab_skiplist, randlab_skiplist_destroy>> s(raw);
  tally.work_name = "search_links";
  for (const auto& op : ops) {
    if (op.verb == "insert") {
      if (randlab_skiplist_insert(s.get(), op.key, rng, nullptr) != RANDLAB_OK) ++tally.failures;
      ++tally.inserts;
    } else if (op.verb == "erase") {
      if (randlab_skiplist_erase(s.get(), op.key) != RANDLAB_OK) ++tally.failures;
      ++tally.erases;
    } else {
      int found = 0;
      std::uint64_t links = 0;
      check(randlab_skiplist_find(s.get(), op.key, &found, &links), "skiplist find");
      ++tally.finds;
      tally.hits += found;
      tally.work += links;
    }
  }
}

void bench_cuckoo(const std::vector<Op>& ops, randlab_rng* rng, unsigned slot_bits, double load_limit,
                  BenchTally& tally) {
  randlab_cuckoo* raw = nullptr;
  check(randlab_cuckoo_create(rng, slot_bits, load_limit, &raw), "cuckoo");
  std::unique_ptr<randlab_cuckoo, Deleter<randlab_cuckoo, randlab_cuckoo_destroy>> t(raw);
  tally.work_name = "displacements";
  for (const auto& op : ops) {
    if (op.verb == "insert") {
      std::uint64_t d = 0;
      if (randlab_cuckoo_insert(t.get(), op.key, op.payload, rng, &d) != RANDLAB_OK) ++tally.failures;
      tally.work += d;
      ++tally.inserts;
    } else if (op.verb == "erase") {
      if (randlab_cuckoo_erase(t.get(), op.key) != RANDLAB_OK) ++tally.failures;
      ++tally.erases;
    } else {
      int found = 0;
      check(randlab_cuckoo_lookup(t.get(), op.key, &found, nullptr, nullptr), "cuckoo lookup");
      ++tally.finds;
      tally.hits += found;
    }
  }
}

void bench_bloom(const std::vector<Op>& ops, randlab_rng* rng, std::uint64_t n, double eps, bool counting,
                 BenchTally& tally) {
  if (n == 0) {
    for (const auto& op : ops) n += op.verb == "insert";
  }
  randlab_bloom* raw = nullptr;
  check(randlab_bloom_create(rng, n == 0 ? 1 : n, eps, counting ? 1 : 0, 0, &raw), "bloom");
  std::unique_ptr<randlab_bloom, Deleter<randlab_bloom, randlab_bloom_destroy>> b(raw);
  tally.work_name = "cells_per_key";
  unsigned k = 0;
  check(randlab_bloom_params(b.get(), nullptr, &k), "bloom params");
  for (const auto& op : ops) {
    if (op.verb == "insert") {
      check(randlab_bloom_insert(b.get(), op.key), "bloom insert");
      ++tally.inserts;
    } else if (op.verb == "erase") {
      if (randlab_bloom_remove(b.get(), op.key) != RANDLAB_OK) ++tally.failures;
      ++tally.erases;
    } else {
      int present = 0;
      check(randlab_bloom_query(b.get(), op.key, &present), "bloom query");
      ++tally.finds;
      tally.hits += present;
    }
  }
  tally.work = k;
}

// Static table: every insert is gathered first, then lookups run against the build.
void bench_fks(const std::vector<Op>& ops, randlab_rng* rng, BenchTally& tally) {
  std::vector<std::uint64_t> keys, payloads;
  for (const auto& op : ops) {
    if (op.verb == "insert") {
      keys.push_back(op.key);
      payloads.push_back(op.payload);
      ++tally.inserts;
    } else if (op.verb == "erase") {
      throw CliError("fks tables are static; erase is not supported");
    }
  }
  randlab_fks* raw = nullptr;
  check(randlab_fks_build(rng, keys.data(), payloads.data(), keys.size(), &raw), "fks build");
  std::unique_ptr<randlab_fks, Deleter<randlab_fks, randlab_fks_destroy>> t(raw);
  tally.work_name = "hash_evaluations";
  for (const auto& op : ops) {
    if (op.verb != "find") continue;
    int found = 0;
    unsigned evals = 0;
    check(randlab_fks_lookup(t.get(), op.key, &found, nullptr, &evals), "fks lookup");
    ++tally.finds;
    tally.hits += found;
    tally.work += evals;
  }
}

int cmd_bench(const BenchArgs& a) {
  const auto ops = read_ops(a.ops);
  auto rng = make_rng(parse_seed(a.seed));
  BenchTally tally;
  const auto start = std::chrono::steady_clock::now();
  if (a.structure == "treap") {
    bench_treap(ops, rng.get(), tally);
  } else if (a.structure == "skiplist") {
    bench_skiplist(ops, rng.get(), a.p, tally);
  } else if (a.structure == "cuckoo") {
    bench_cuckoo(ops, rng.get(), a.slot_bits, a.load_limit, tally);
  } else if (a.structure == "bloom" || a.structure == "counting_bloom") {
    bench_bloom(ops, rng.get(), a.n, a.eps, a.structure == "counting_bloom", tally);
  } else if (a.structure == "fks") {
    bench_fks(ops, rng.get(), tally);
  } else {
    throw CliError("unknown structure '" + a.structure + "' (treap, skiplist, cuckoo, bloom, counting_bloom, fks)");
  }
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  std::uint64_t bits = 0;
  check(randlab_rng_bits_consumed(rng.get(), &bits), "rng");

  std::ostringstream out;
  out << "structure " << a.structure << "\n"
      << "operations " << ops.size() << "\n"
      << "inserts " << tally.inserts << "\n"
      << "erases " << tally.erases << "\n"
      << "finds " << tally.finds << "\n"
      << "hits " << tally.hits << "\n"
      << "rejected " << tally.failures << "\n"
      << tally.work_name << " " << tally.work << "\n"
      << "bits_consumed " << bits << "\n"
      << "elapsed_ms " << ms << "\n";
  write_output(out.str(), a.out);
  return 0;
}

// ---- sketch replay

struct ReplayArgs {
  std::string input;
  std::string query;
  double eps = 0.01;
  double delta = 0.01;
  bool general = false;
  std::string seed = "1";
  std::string out;
};

int cmd_sketch_replay(const ReplayArgs& a) {
  auto rng = make_rng(parse_seed(a.seed));
  randlab_cms* raw = nullptr;
  check(randlab_cms_create(rng.get(), a.eps, a.delta, a.general ? 1 : 0, &raw), "sketch");
  std::unique_ptr<randlab_cms, Deleter<randlab_cms, randlab_cms_destroy>> sketch(raw);

  const std::string stream = read_file(a.input);
  std::uint64_t applied = 0;
  check(randlab_cms_replay(sketch.get(), reinterpret_cast<const uint8_t*>(stream.data()), stream.size(), &applied),
        "replay " + a.input);

  std::ostringstream out;
  std::istringstream queries(read_file(a.query));
  std::string line;
  while (std::getline(queries, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream fields(line);
    std::uint64_t index = 0;
    if (!(fields >> index)) continue;
    std::int64_t estimate = 0;
    check(randlab_cms_query(sketch.get(), index, &estimate), "query");
    out << index << " " << estimate << "\n";
  }
  std::cerr << "applied " << applied << " updates\n";
  write_output(out.str(), a.out);
  return 0;
}

// ---- hash sample

struct HashArgs {
  std::string family;
  std::vector<std::string> params;
  std::vector<std::uint64_t> eval;
  std::string seed = "1";
  std::string out;
};

int cmd_hash_sample(const HashArgs& a) {
  auto rng = make_rng(parse_seed(a.seed));
  const auto pairs = split_pairs(a.params);
  std::vector<const char*> keys;
  std::vector<std::uint64_t> values;
  for (const auto& [key, value] : pairs) {
    keys.push_back(key.c_str());
    try {
      values.push_back(std::stoull(value, nullptr, 0));
    } catch (const std::exception&) {
      throw CliError("parameter " + key + " is not an unsigned integer");
    }
  }
  randlab_hash* raw = nullptr;
  check(randlab_hash_sample(rng.get(), a.family.c_str(), keys.data(), values.data(), keys.size(), &raw),
        "hash sample");
  std::unique_ptr<randlab_hash, Deleter<randlab_hash, randlab_hash_destroy>> h(raw);
  char* json = nullptr;
  check(randlab_hash_to_json(h.get(), &json), "hash json");
  std::string text = take_string(json) + "\n";
  for (auto x : a.eval) {
    std::uint64_t y = 0;
    check(randlab_hash_eval(h.get(), x, &y), "hash eval");
    text += std::to_string(x) + " " + std::to_string(y) + "\n";
  }
  write_output(text, a.out);
  return 0;
}

// ---- lsh query

struct LshArgs {
  std::string data;
  std::string query;
  double eps = 1.0;
  double delta = 0.05;
  std::string seed = "1";
  std::string out;
};

int cmd_lsh_query(const LshArgs& a) {
  auto rng = make_rng(parse_seed(a.seed));
  const std::string data = read_file(a.data);
  randlab_nns* raw = nullptr;
  check(randlab_nns_build(rng.get(), data.c_str(), a.eps, a.delta, &raw), "lsh build");
  std::unique_ptr<randlab_nns, Deleter<randlab_nns, randlab_nns_destroy>> idx(raw);
  const std::string queries = read_file(a.query);
  char* lines = nullptr;
  check(randlab_nns_query_all(idx.get(), queries.c_str(), &lines), "lsh query");
  write_output(take_string(lines), a.out);
  return 0;
}

// ---- mincut

struct MincutArgs {
  std::string graph;
  std::uint64_t repetitions = 0;
  std::string seed = "1";
  std::string out;
};

int cmd_mincut(const MincutArgs& a) {
  auto rng = make_rng(parse_seed(a.seed));
  const std::string graph = read_file(a.graph);
  std::uint64_t reps = a.repetitions;
  if (reps == 0) {
    // n^2 ln n runs leave failure probability below 1/n.
    std::istringstream header(graph);
    double n = 2;
    header >> n;
    reps = static_cast<std::uint64_t>(std::max(1.0, std::ceil(n * n * std::log(std::max(n, 2.0)))));
  }
  std::uint64_t cut = 0;
  char* side = nullptr;
  check(randlab_mincut(rng.get(), graph.c_str(), reps, &cut, &side), "mincut");
  std::ostringstream out;
  out << "cut_size " << cut << "\n"
      << "repetitions " << reps << "\n"
      << "side_a " << take_string(side) << "\n";
  write_output(out.str(), a.out);
  return 0;
}

int cmd_suites() {
  char* names = nullptr;
  check(randlab_suite_names(&names), "suites");
  std::cout << take_string(names);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Randomized algorithms and sketches with a seeded verification harness"};
  app.set_version_flag("--version", std::string(randlab_version()));
  app.require_subcommand(1);

  int exit_code = 0;

  ValidateArgs va;
  auto* validate = app.add_subcommand("validate", "Run a validation suite and report verdicts");
  validate->add_option("suite", va.suite, "Suite name (see 'randlab suites')")->required();
  validate->add_option("--n", va.n, "Problem size");
  validate->add_option("--p", va.p, "Probability knob");
  validate->add_option("--eps", va.eps, "Accuracy knob");
  validate->add_option("--delta", va.delta, "Failure probability knob");
  validate->add_option("--param", va.extra, "Extra suite parameter key=value (repeatable)");
  validate->add_option("--trials", va.trials, "Trial count (default: suite plan)");
  validate->add_option("--seed", va.seed, "Seed, decimal or 0x-hex");
  validate->add_option("--threads", va.threads, "Worker threads")->check(CLI::Range(1u, 256u));
  validate->add_option("--format", va.format, "Report format")->check(CLI::IsMember({"json", "csv", "text"}));
  validate->add_option("--out", va.out, "Write the report here instead of stdout");
  validate->callback([&] { exit_code = cmd_validate(va); });

  BenchArgs ba;
  auto* bench = app.add_subcommand("bench", "Replay an operation file against a structure");
  bench->add_option("structure", ba.structure, "treap, skiplist, cuckoo, bloom, counting_bloom or fks")->required();
  bench->add_option("--ops", ba.ops, "Lines of 'insert K [payload]', 'erase K' or 'find K'")->required();
  bench->add_option("--seed", ba.seed, "Seed, decimal or 0x-hex");
  bench->add_option("--p", ba.p, "Skip-list promotion probability");
  bench->add_option("--slot-bits", ba.slot_bits, "Cuckoo table size exponent");
  bench->add_option("--load-limit", ba.load_limit, "Cuckoo load limit");
  bench->add_option("--n", ba.n, "Bloom target size (default: number of inserts)");
  bench->add_option("--eps", ba.eps, "Bloom false-positive target");
  bench->add_option("--out", ba.out, "Write the summary here instead of stdout");
  bench->callback([&] { exit_code = cmd_bench(ba); });

  ReplayArgs ra;
  auto* sketch = app.add_subcommand("sketch", "Count-min sketch tools");
  sketch->require_subcommand(1);
  auto* replay = sketch->add_subcommand("replay", "Feed a stream into a sketch and answer point queries");
  replay->add_option("--input", ra.input, "Stream file, text 'index count' lines or binary")->required();
  replay->add_option("--query", ra.query, "One index per line")->required();
  replay->add_option("--eps", ra.eps, "Additive error as a fraction of the stream mass");
  replay->add_option("--delta", ra.delta, "Failure probability");
  replay->add_flag("--general", ra.general, "Allow negative counts and answer with the row median");
  replay->add_option("--seed", ra.seed, "Seed, decimal or 0x-hex");
  replay->add_option("--out", ra.out, "Write answers here instead of stdout");
  replay->callback([&] { exit_code = cmd_sketch_replay(ra); });

  HashArgs ha;
  auto* hash = app.add_subcommand("hash", "Hash family tools");
  hash->require_subcommand(1);
  auto* sample = hash->add_subcommand("sample", "Sample a hash function and print its parameters");
  sample->add_option("--family", ha.family, "mod_p, multiply_shift or tabulation")->required();
  sample->add_option("--params", ha.params, "key=value list, e.g. universe_max=1000,m=64");
  sample->add_option("--eval", ha.eval, "Inputs to evaluate");
  sample->add_option("--seed", ha.seed, "Seed, decimal or 0x-hex");
  sample->add_option("--out", ha.out, "Write here instead of stdout");
  sample->callback([&] { exit_code = cmd_hash_sample(ha); });

  LshArgs la;
  auto* lsh = app.add_subcommand("lsh", "Approximate nearest neighbour in Hamming space");
  lsh->require_subcommand(1);
  auto* query = lsh->add_subcommand("query", "Build an index over a dataset and answer queries");
  query->add_option("--data", la.data, "One 0/1 vector per line")->required();
  query->add_option("--query", la.query, "One 0/1 vector per line")->required();
  query->add_option("--eps", la.eps, "Approximation slack: answers within (1+eps) of the nearest");
  query->add_option("--delta", la.delta, "Failure probability per query");
  query->add_option("--seed", la.seed, "Seed, decimal or 0x-hex");
  query->add_option("--out", la.out, "Write answers here instead of stdout");
  query->callback([&] { exit_code = cmd_lsh_query(la); });

  MincutArgs ma;
  auto* mincut = app.add_subcommand("mincut", "Minimum cut by repeated random contraction");
  mincut->add_option("--graph", ma.graph, "'n m' header then m lines 'u v'")->required();
  mincut->add_option("--repetitions", ma.repetitions, "Independent runs (default n^2 ln n)");
  mincut->add_option("--seed", ma.seed, "Seed, decimal or 0x-hex");
  mincut->add_option("--out", ma.out, "Write here instead of stdout");
  mincut->callback([&] { exit_code = cmd_mincut(ma); });

  auto* suites = app.add_subcommand("suites", "List validation suites");
  suites->callback([&] { exit_code = cmd_suites(); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const CliError& e) {
    std::cerr << "randlab: " << e.what() << "\n";
    return kExitError;
  }
  return exit_code;
}
