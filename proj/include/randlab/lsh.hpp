#pragma once

// Bit-sampling LSH for Hamming space.
//
// A PLEB index answers "is there a point within r1 of q" by returning some
// point within r2, using ell tables keyed by g_j(p) = (p[c_1], ..., p[c_k])
// for uniformly sampled coordinates c_i. The whole table set is replicated
// to drive the failure probability below delta.
//
// When r1/d >= 1/ln n, points are treated as carrying ceil(d ln n) extra
// zero bits. The bits are never stored: sampled coordinates at or beyond d
// read as 0 for every vector, which leaves distances unchanged.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "randlab/randsrc.hpp"

namespace randlab {

class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t dim) : dim_(dim), words_((dim + 63) / 64, 0) {}

  /// '0'/'1' characters, first character is coordinate 0.
  static BitVector from_string(std::string_view text);
  std::string to_string() const;

  std::size_t dim() const noexcept { return dim_; }
  // Coordinates at or beyond dim() read as 0.
  bool get(std::size_t i) const noexcept { return i < dim_ && ((words_[i / 64] >> (i % 64)) & 1) != 0; }
  void set(std::size_t i, bool value = true);
  void flip(std::size_t i);
  std::size_t popcount() const noexcept;
  const std::vector<std::uint64_t>& words() const noexcept { return words_; }

  friend bool operator==(const BitVector&, const BitVector&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Requires equal dimensions.
std::uint64_t hamming(const BitVector& a, const BitVector& b);

struct LshParams {
  std::size_t n = 0;           // stored points
  std::size_t dim = 0;         // stored vector length
  std::size_t padded_dim = 0;  // dim plus junk bits, if any
  bool padded = false;
  double r1 = 0, r2 = 0;
  double p1 = 1, p2 = 0;  // 1 - r / padded_dim
  double rho = 0;
  unsigned k = 1;
  std::size_t ell = 1;
  std::size_t replicas = 1;
  double delta = 0.05;
  bool trivial = false;  // r2 >= dim: every point qualifies

  /// Per-replica failure bound 1/e + 1/2; replicas = ceil(ln(1/delta) / ln(1/bound)).
  static LshParams derive(std::size_t n, std::size_t dim, double r1, double r2, double delta);
};

class PlebIndex {
 public:
  struct Match {
    std::size_t point = 0;
    std::uint64_t distance = 0;
    std::size_t replica = 0;
  };

  struct QueryResult {
    std::optional<Match> match;
    // Distance computations in each replica tried, in order.
    std::vector<std::uint64_t> candidates;
  };

  static PlebIndex build(RandomSource& src, std::shared_ptr<const std::vector<BitVector>> points, double r1,
                         double r2, double delta);
  static PlebIndex build(RandomSource& src, std::vector<BitVector> points, double r1, double r2, double delta);

  /// Tries replicas in order until one reports a point.
  QueryResult query(const BitVector& q) const;
  /// One replica; never examines more than 2 ell candidates.
  std::optional<Match> query_replica(const BitVector& q, std::size_t replica, std::uint64_t& candidates) const;

  const LshParams& params() const noexcept { return params_; }
  const std::vector<BitVector>& points() const noexcept { return *points_; }
  // Sampled coordinates of table j in a replica.
  std::span<const std::uint32_t> coordinates(std::size_t replica, std::size_t table) const;

 private:
  struct Table {
    std::vector<std::uint32_t> coords;
    std::uint64_t fold_a = 1, fold_b = 0;
    std::vector<std::pair<std::uint64_t, std::uint32_t>> entries;  // (bucket key, point), sorted
  };

  std::uint64_t bucket_key(const Table& t, const BitVector& v) const;
  static bool same_tuple(const Table& t, const BitVector& a, const BitVector& b);

  std::shared_ptr<const std::vector<BitVector>> points_;
  LshParams params_;
  std::vector<std::vector<Table>> replicas_;
};

/// (1+eps)-approximate nearest neighbour by binary search over a ladder of
/// PLEB indices with radii (1+eps')^i, eps' = sqrt(1+eps) - 1, capped by
/// the dimension. Exact matches are answered from a lookup table first.
class NnsIndex {
 public:
  struct Rung {
    double r1 = 0, r2 = 0;
    PlebIndex index;
  };

  struct Answer {
    std::size_t point = 0;
    std::uint64_t distance = 0;
    std::optional<std::size_t> rung;  // empty for an exact match
    std::size_t probes = 0;
  };

  static NnsIndex build(RandomSource& src, std::vector<BitVector> points, double epsilon, double delta);

  std::optional<Answer> query(const BitVector& q) const;

  double epsilon() const noexcept { return epsilon_; }
  const std::vector<Rung>& rungs() const noexcept { return rungs_; }
  const std::vector<BitVector>& points() const noexcept { return *points_; }

 private:
  std::shared_ptr<const std::vector<BitVector>> points_;
  double epsilon_ = 0;
  std::vector<Rung> rungs_;
  std::map<std::vector<std::uint64_t>, std::size_t> exact_;
};

/// Unary thresholds per coordinate: cell j of x is set iff j / resolution < x,
/// so x contributes ceil(x * resolution) ones.
BitVector l1_embed(std::span<const double> v, unsigned resolution);

std::vector<BitVector> read_hamming_dataset(std::istream& in);
std::vector<std::vector<double>> read_l1_dataset(std::istream& in);

struct NeighborLine {
  std::size_t query_id = 0;
  std::optional<std::size_t> point_id;
  std::uint64_t distance = 0;
};

/// "query_id point_id distance"; a query without an answer prints "- -".
void write_neighbor_lines(std::ostream& out, std::span<const NeighborLine> lines);

}  // namespace randlab
