#include "randlab/lsh.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "randlab/error.hpp"

namespace randlab {
namespace {

// Mersenne prime 2^61 - 1 for folding sampled bit tuples to bucket keys.
constexpr std::uint64_t kFoldPrime = (std::uint64_t{1} << 61) - 1;

std::uint64_t mul_add_mod(std::uint64_t a, std::uint64_t x, std::uint64_t b) {
  using u128 = unsigned __int128;
  return static_cast<std::uint64_t>((u128{a} * x + b) % kFoldPrime);
}

bool skip_line(const std::string& line) {
  const auto first = line.find_first_not_of(" \t\r");
  return first == std::string::npos || line[first] == '#';
}

}  // namespace

BitVector BitVector::from_string(std::string_view text) {
  BitVector out(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '1') {
      out.set(i);
    } else if (text[i] != '0') {
      fail(ErrorCode::parse_error, "bit vector: expected only '0' and '1'");
    }
  }
  return out;
}

std::string BitVector::to_string() const {
  std::string out(dim_, '0');
  for (std::size_t i = 0; i < dim_; ++i) {
    if (get(i)) out[i] = '1';
  }
  return out;
}

void BitVector::set(std::size_t i, bool value) {
  require(i < dim_, "bit vector: coordinate out of range");
  const std::uint64_t mask = std::uint64_t{1} << (i % 64);
  words_[i / 64] = value ? (words_[i / 64] | mask) : (words_[i / 64] & ~mask);
}

void BitVector::flip(std::size_t i) {
  require(i < dim_, "bit vector: coordinate out of range");
  words_[i / 64] ^= std::uint64_t{1} << (i % 64);
}

std::size_t BitVector::popcount() const noexcept {
  std::size_t total = 0;
  for (auto w : words_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

std::uint64_t hamming(const BitVector& a, const BitVector& b) {
  require(a.dim() == b.dim(), "hamming: dimension mismatch");
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < a.words().size(); ++i) {
    total += static_cast<std::uint64_t>(std::popcount(a.words()[i] ^ b.words()[i]));
  }
  return total;
}

LshParams LshParams::derive(std::size_t n, std::size_t dim, double r1, double r2, double delta) {
  require(n >= 1, "lsh: empty dataset");
  require(dim >= 1, "lsh: zero-dimensional points");
  require(r1 >= 0.0 && r1 < r2 && r2 <= static_cast<double>(dim), "lsh: need 0 <= r1 < r2 <= d");
  require(delta > 0.0 && delta < 1.0, "lsh: delta must lie in (0, 1)");
  LshParams out;
  out.n = n;
  out.dim = dim;
  out.r1 = r1;
  out.r2 = r2;
  out.delta = delta;
  out.trivial = r2 >= static_cast<double>(dim);

  const double ln_n = std::log(static_cast<double>(n));
  out.padded_dim = dim;
  if (n > 1 && r1 / static_cast<double>(dim) >= 1.0 / ln_n) {
    out.padded = true;
    out.padded_dim = dim + static_cast<std::size_t>(std::ceil(static_cast<double>(dim) * ln_n));
  }
  const double d = static_cast<double>(out.padded_dim);
  out.p1 = 1.0 - r1 / d;
  out.p2 = 1.0 - r2 / d;
  if (out.p2 <= 0.0) {
    out.k = 1;
    out.rho = 0.0;
    out.ell = 1;
  } else {
    const double log_inv_p2 = -std::log(out.p2);
    out.k = static_cast<unsigned>(std::max(1.0, std::ceil(ln_n / log_inv_p2)));
    out.rho = -std::log(out.p1) / log_inv_p2;
    out.ell = static_cast<std::size_t>(std::max(1.0, std::ceil(std::pow(static_cast<double>(n), out.rho))));
  }
  const double replica_failure = 1.0 / std::numbers::e + 0.5;
  out.replicas =
      static_cast<std::size_t>(std::max(1.0, std::ceil(std::log(1.0 / delta) / std::log(1.0 / replica_failure))));
  return out;
}

PlebIndex PlebIndex::build(RandomSource& src, std::vector<BitVector> points, double r1, double r2, double delta) {
  return build(src, std::make_shared<const std::vector<BitVector>>(std::move(points)), r1, r2, delta);
}

PlebIndex PlebIndex::build(RandomSource& src, std::shared_ptr<const std::vector<BitVector>> points, double r1,
                           double r2, double delta) {
  require(points && !points->empty(), "lsh: empty dataset");
  const std::size_t dim = points->front().dim();
  for (const auto& p : *points) require(p.dim() == dim, "lsh: points differ in length");
  require(points->size() <= UINT32_MAX, "lsh: too many points");

  PlebIndex out;
  out.points_ = std::move(points);
  out.params_ = LshParams::derive(out.points_->size(), dim, r1, r2, delta);
  if (out.params_.trivial) return out;

  const LshParams& prm = out.params_;
  out.replicas_.resize(prm.replicas);
  for (auto& tables : out.replicas_) {
    tables.resize(prm.ell);
    for (auto& t : tables) {
      t.coords.resize(prm.k);
      for (auto& c : t.coords) c = static_cast<std::uint32_t>(uniform_below(src, prm.padded_dim));
      t.fold_a = 1 + uniform_below(src, kFoldPrime - 1);
      t.fold_b = uniform_below(src, kFoldPrime);
      t.entries.reserve(out.points_->size());
      for (std::uint32_t i = 0; i < out.points_->size(); ++i) {
        t.entries.emplace_back(out.bucket_key(t, (*out.points_)[i]), i);
      }
      std::sort(t.entries.begin(), t.entries.end());
    }
  }
  return out;
}

// Tuple bits are packed 60 to a word (below the prime) and folded through
// x -> (a x + b) mod p.
std::uint64_t PlebIndex::bucket_key(const Table& t, const BitVector& v) const {
  std::uint64_t acc = 0;
  std::uint64_t word = 0;
  unsigned filled = 0;
  for (auto c : t.coords) {
    word = (word << 1) | static_cast<std::uint64_t>(v.get(c));
    if (++filled == 60) {
      acc = mul_add_mod(t.fold_a, (acc + word) % kFoldPrime, t.fold_b);
      word = 0;
      filled = 0;
    }
  }
  if (filled > 0 || t.coords.empty()) acc = mul_add_mod(t.fold_a, (acc + word) % kFoldPrime, t.fold_b);
  return acc;
}

bool PlebIndex::same_tuple(const Table& t, const BitVector& a, const BitVector& b) {
  return std::all_of(t.coords.begin(), t.coords.end(), [&](std::uint32_t c) { return a.get(c) == b.get(c); });
}

std::optional<PlebIndex::Match> PlebIndex::query_replica(const BitVector& q, std::size_t replica,
                                                         std::uint64_t& candidates) const {
  require(q.dim() == params_.dim, "lsh: query length differs from the dataset");
  const auto& pts = *points_;
  if (params_.trivial) {
    candidates = 1;
    return Match{0, hamming(q, pts[0]), replica};
  }
  require(replica < replicas_.size(), "lsh: replica out of range");
  const std::uint64_t budget = 2 * std::uint64_t{params_.ell};
  candidates = 0;
  for (const Table& t : replicas_[replica]) {
    const std::uint64_t key = bucket_key(t, q);
    auto it = std::lower_bound(t.entries.begin(), t.entries.end(), std::make_pair(key, std::uint32_t{0}));
    for (; it != t.entries.end() && it->first == key; ++it) {
      const BitVector& p = pts[it->second];
      if (!same_tuple(t, p, q)) continue;  // folded keys collided
      if (candidates == budget) return std::nullopt;
      ++candidates;
      const std::uint64_t d = hamming(q, p);
      if (static_cast<double>(d) <= params_.r2) return Match{it->second, d, replica};
    }
  }
  return std::nullopt;
}

PlebIndex::QueryResult PlebIndex::query(const BitVector& q) const {
  QueryResult out;
  const std::size_t replicas = params_.trivial ? 1 : replicas_.size();
  for (std::size_t r = 0; r < replicas; ++r) {
    std::uint64_t seen = 0;
    out.match = query_replica(q, r, seen);
    out.candidates.push_back(seen);
    if (out.match) break;
  }
  return out;
}

std::span<const std::uint32_t> PlebIndex::coordinates(std::size_t replica, std::size_t table) const {
  require(replica < replicas_.size() && table < replicas_[replica].size(), "lsh: table out of range");
  return replicas_[replica][table].coords;
}

NnsIndex NnsIndex::build(RandomSource& src, std::vector<BitVector> points, double epsilon, double delta) {
  require(!points.empty(), "nns: empty dataset");
  require(epsilon > 0.0, "nns: epsilon must be positive");
  require(delta > 0.0 && delta < 1.0, "nns: delta must lie in (0, 1)");
  NnsIndex out;
  out.epsilon_ = epsilon;
  out.points_ = std::make_shared<const std::vector<BitVector>>(std::move(points));
  const auto& pts = *out.points_;
  const std::size_t dim = pts.front().dim();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    require(pts[i].dim() == dim, "nns: points differ in length");
    out.exact_.emplace(pts[i].words(), i);
  }

  // Nonzero distances are integers in [1, dim].
  const double step = std::sqrt(1.0 + epsilon);
  std::vector<std::pair<double, double>> radii;
  for (double r1 = 1.0; r1 < static_cast<double>(dim); r1 *= step) {
    radii.emplace_back(r1, std::min(r1 * step, static_cast<double>(dim)));
  }
  if (radii.empty() || radii.back().second < static_cast<double>(dim)) {
    radii.emplace_back(std::max(0.0, static_cast<double>(dim) - 1.0), static_cast<double>(dim));
  }
  const auto probes = static_cast<double>(std::bit_width(radii.size()) + 1);
  for (const auto& [r1, r2] : radii) {
    out.rungs_.push_back(Rung{r1, r2, PlebIndex::build(src, out.points_, r1, r2, delta / probes)});
  }
  return out;
}

std::optional<NnsIndex::Answer> NnsIndex::query(const BitVector& q) const {
  require(q.dim() == points_->front().dim(), "nns: query length differs from the dataset");
  if (auto it = exact_.find(q.words()); it != exact_.end()) return Answer{it->second, 0, std::nullopt, 0};

  std::size_t lo = 0;
  std::size_t hi = rungs_.size() - 1;
  std::size_t probes = 0;
  std::optional<PlebIndex::Match> best;
  // The top rung accepts every point, so hi always has an answer.
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    ++probes;
    auto r = rungs_[mid].index.query(q);
    if (r.match) {
      hi = mid;
      best = r.match;
    } else {
      lo = mid + 1;
    }
  }
  if (!best) {
    ++probes;
    best = rungs_[lo].index.query(q).match;
  }
  if (!best) return std::nullopt;
  return Answer{best->point, best->distance, lo, probes};
}

BitVector l1_embed(std::span<const double> v, unsigned resolution) {
  require(resolution >= 1, "l1 embed: resolution must be positive");
  BitVector out(v.size() * resolution);
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double x = v[i];
    require(x >= 0.0 && x <= 1.0, "l1 embed: coordinate outside [0, 1]");
    for (unsigned j = 0; j < resolution; ++j) {
      if (static_cast<double>(j) < x * resolution) out.set(i * resolution + j);
    }
  }
  return out;
}

std::vector<BitVector> read_hamming_dataset(std::istream& in) {
  std::vector<BitVector> out;
  std::string line;
  while (std::getline(in, line)) {
    if (skip_line(line)) continue;
    const auto first = line.find_first_not_of(" \t");
    const auto last = line.find_last_not_of(" \t\r");
    out.push_back(BitVector::from_string(std::string_view(line).substr(first, last - first + 1)));
    if (out.back().dim() != out.front().dim()) fail(ErrorCode::parse_error, "dataset: vectors differ in length");
  }
  return out;
}

std::vector<std::vector<double>> read_l1_dataset(std::istream& in) {
  std::vector<std::vector<double>> out;
  std::string line;
  while (std::getline(in, line)) {
    if (skip_line(line)) continue;
    std::istringstream fields(line);
    std::vector<double> row;
    std::string token;
    while (fields >> token) {
      std::size_t used = 0;
      double x = 0;
      try {
        x = std::stod(token, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != token.size() || !(x >= 0.0 && x <= 1.0)) {
        fail(ErrorCode::parse_error, "dataset: expected decimals in [0, 1], got '" + token + "'");
      }
      row.push_back(x);
    }
    if (!out.empty() && row.size() != out.front().size()) fail(ErrorCode::parse_error, "dataset: rows differ in length");
    out.push_back(std::move(row));
  }
  return out;
}

void write_neighbor_lines(std::ostream& out, std::span<const NeighborLine> lines) {
  for (const auto& l : lines) {
    out << l.query_id << ' ';
    if (l.point_id) {
      out << *l.point_id << ' ' << l.distance << '\n';
    } else {
      out << "- -\n";
    }
  }
}

}  // namespace randlab
