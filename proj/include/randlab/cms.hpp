#pragma once

// Count-min sketch: d rows of w counters, row j indexed by an independent
// mod_p function h_j. An update (i, c) adds c to c[j, h_j(i)] in every row.
//
// Nonnegative mode answers point queries by the row minimum and tracks
// ||a||_1 exactly. General mode accepts negative counts, answers by the
// row median (lower median for even d) and tracks sum |c_t|, which only
// bounds ||a||_1 from above.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "randlab/hashfam.hpp"

namespace randlab {

struct CmsParams {
  double epsilon = 0.0;
  double delta = 0.0;
  std::uint64_t width = 1;  // ceil(e / epsilon)
  std::uint64_t depth = 1;  // ceil(ln(1 / delta))

  static CmsParams from_error(double epsilon, double delta);
};

enum class CmsMode : std::uint8_t { nonnegative = 0, general = 1 };

class CountMinSketch {
 public:
  static constexpr std::uint64_t kDefaultUniverseMax = hashfam::kLargestPrime64 - 1;

  CountMinSketch(RandomSource& src, const CmsParams& params, CmsMode mode = CmsMode::nonnegative,
                 std::uint64_t universe_max = kDefaultUniverseMax);

  void update(std::uint64_t index, std::int64_t count);

  std::int64_t point_query_min(std::uint64_t index) const;
  std::int64_t point_query_median(std::uint64_t index) const;

  /// min over rows of the row dot products; both sketches must share
  /// parameters and row functions and be in nonnegative mode.
  static std::int64_t inner_product(const CountMinSketch& a, const CountMinSketch& b);

  bool same_configuration(const CountMinSketch& other) const;

  const CmsParams& params() const noexcept { return params_; }
  CmsMode mode() const noexcept { return mode_; }
  // Exact ||a||_1 in nonnegative mode, sum |c_t| in general mode.
  std::uint64_t l1() const noexcept { return l1_; }
  std::int64_t cell(std::uint64_t row, std::uint64_t column) const;
  std::int64_t row_sum(std::uint64_t row) const;
  const std::vector<hashfam::ModPrimeHash>& rows() const noexcept { return rows_; }

 private:
  CmsParams params_;
  CmsMode mode_;
  std::vector<hashfam::ModPrimeHash> rows_;
  std::vector<std::int64_t> cells_;  // row-major d x w
  std::uint64_t l1_ = 0;
};

/// Keeps every index whose point estimate reached phi * ||a||_1 at its
/// last update, evicting entries whose stored estimate falls below the
/// current threshold. Since estimates never undershoot, true heavy
/// hitters are never evicted.
class HeavyHitterTracker {
 public:
  explicit HeavyHitterTracker(double phi);

  void update(CountMinSketch& sketch, std::uint64_t index, std::int64_t count);

  double phi() const noexcept { return phi_; }
  std::size_t size() const noexcept { return by_index_.size(); }
  bool contains(std::uint64_t index) const { return by_index_.count(index) != 0; }
  /// (index, stored estimate), largest estimate first.
  std::vector<std::pair<std::uint64_t, std::int64_t>> hitters() const;

 private:
  double phi_;
  std::map<std::uint64_t, std::int64_t> by_index_;
  std::set<std::pair<std::int64_t, std::uint64_t>> by_estimate_;
};

struct StreamUpdate {
  std::uint64_t index = 0;
  std::int64_t count = 0;
  friend bool operator==(const StreamUpdate&, const StreamUpdate&) = default;
};

/// "index count" per line; blank lines and lines starting with '#' are skipped.
std::vector<StreamUpdate> read_stream_text(std::istream& in);
void write_stream_text(std::ostream& out, std::span<const StreamUpdate> updates);

/// "RLST" u16 version=1 u64 count, then count pairs of (u64 index, i64 count), little-endian.
std::vector<StreamUpdate> read_stream_binary(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> write_stream_binary(std::span<const StreamUpdate> updates);

/// Accepts either format, sniffing the binary magic.
std::vector<StreamUpdate> read_stream_auto(std::span<const std::uint8_t> bytes);

}  // namespace randlab
