#include "randlab/cms.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>

#include "randlab/byteio.hpp"

namespace randlab {
namespace {

constexpr char kStreamMagic[] = "RLST";
constexpr std::uint16_t kStreamVersion = 1;

}  // namespace

CmsParams CmsParams::from_error(double epsilon, double delta) {
  require(epsilon > 0.0 && epsilon < 1.0, "cms: epsilon must lie in (0, 1)");
  require(delta > 0.0 && delta < 1.0, "cms: delta must lie in (0, 1)");
  CmsParams out;
  out.epsilon = epsilon;
  out.delta = delta;
  out.width = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(std::numbers::e / epsilon)));
  out.depth = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(std::log(1.0 / delta))));
  return out;
}

CountMinSketch::CountMinSketch(RandomSource& src, const CmsParams& params, CmsMode mode, std::uint64_t universe_max)
    : params_(params), mode_(mode) {
  require(params.width >= 1 && params.depth >= 1, "cms: width and depth must be positive");
  require(mode == CmsMode::nonnegative || mode == CmsMode::general, "cms: unknown mode");
  const std::uint64_t p = hashfam::next_prime(std::max(universe_max, params.width - 1));
  rows_.reserve(params.depth);
  for (std::uint64_t j = 0; j < params.depth; ++j) rows_.push_back(hashfam::sample_mod_prime(src, p, params.width));
  cells_.assign(params.depth * params.width, 0);
}

void CountMinSketch::update(std::uint64_t index, std::int64_t count) {
  if (count < 0 && mode_ == CmsMode::nonnegative) {
    fail(ErrorCode::invalid_argument, "cms: negative count in nonnegative mode");
  }
  const std::uint64_t w = params_.width;
  for (std::uint64_t j = 0; j < rows_.size(); ++j) cells_[j * w + rows_[j](index)] += count;
  l1_ += count < 0 ? static_cast<std::uint64_t>(-(count + 1)) + 1 : static_cast<std::uint64_t>(count);
}

std::int64_t CountMinSketch::point_query_min(std::uint64_t index) const {
  if (mode_ != CmsMode::nonnegative) fail(ErrorCode::invalid_argument, "cms: min query needs nonnegative mode");
  const std::uint64_t w = params_.width;
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  for (std::uint64_t j = 0; j < rows_.size(); ++j) best = std::min(best, cells_[j * w + rows_[j](index)]);
  return best;
}

std::int64_t CountMinSketch::point_query_median(std::uint64_t index) const {
  const std::uint64_t w = params_.width;
  std::vector<std::int64_t> values(rows_.size());
  for (std::uint64_t j = 0; j < rows_.size(); ++j) values[j] = cells_[j * w + rows_[j](index)];
  const std::size_t mid = (values.size() - 1) / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
  return values[mid];
}

bool CountMinSketch::same_configuration(const CountMinSketch& other) const {
  if (params_.width != other.params_.width || params_.depth != other.params_.depth) return false;
  for (std::size_t j = 0; j < rows_.size(); ++j) {
    const auto& x = rows_[j];
    const auto& y = other.rows_[j];
    if (x.a() != y.a() || x.b() != y.b() || x.p() != y.p() || x.m() != y.m()) return false;
  }
  return true;
}

std::int64_t CountMinSketch::inner_product(const CountMinSketch& a, const CountMinSketch& b) {
  if (!a.same_configuration(b)) fail(ErrorCode::config_mismatch, "cms: sketches differ in parameters or hashes");
  if (a.mode_ != CmsMode::nonnegative || b.mode_ != CmsMode::nonnegative) {
    fail(ErrorCode::invalid_argument, "cms: inner product needs nonnegative mode");
  }
  const std::uint64_t w = a.params_.width;
  __int128 best = 0;
  for (std::uint64_t j = 0; j < a.rows_.size(); ++j) {
    __int128 dot = 0;
    for (std::uint64_t k = 0; k < w; ++k) dot += static_cast<__int128>(a.cells_[j * w + k]) * b.cells_[j * w + k];
    best = j == 0 ? dot : std::min(best, dot);
  }
  if (best > std::numeric_limits<std::int64_t>::max()) fail(ErrorCode::contract_violation, "cms: inner product overflow");
  return static_cast<std::int64_t>(best);
}

std::int64_t CountMinSketch::cell(std::uint64_t row, std::uint64_t column) const {
  require(row < params_.depth && column < params_.width, "cms: cell out of range");
  return cells_[row * params_.width + column];
}

std::int64_t CountMinSketch::row_sum(std::uint64_t row) const {
  require(row < params_.depth, "cms: row out of range");
  std::int64_t total = 0;
  for (std::uint64_t k = 0; k < params_.width; ++k) total += cells_[row * params_.width + k];
  return total;
}

HeavyHitterTracker::HeavyHitterTracker(double phi) : phi_(phi) {
  require(phi > 0.0 && phi <= 1.0, "heavy hitters: phi must lie in (0, 1]");
}

void HeavyHitterTracker::update(CountMinSketch& sketch, std::uint64_t index, std::int64_t count) {
  sketch.update(index, count);
  const double threshold = phi_ * static_cast<double>(sketch.l1());
  const std::int64_t estimate = sketch.point_query_min(index);

  if (auto it = by_index_.find(index); it != by_index_.end()) {
    by_estimate_.erase({it->second, index});
    by_index_.erase(it);
  }
  if (static_cast<double>(estimate) >= threshold) {
    by_index_.emplace(index, estimate);
    by_estimate_.emplace(estimate, index);
  }
  // The threshold only grows, so stale entries sit at the low end.
  while (!by_estimate_.empty() && static_cast<double>(by_estimate_.begin()->first) < threshold) {
    by_index_.erase(by_estimate_.begin()->second);
    by_estimate_.erase(by_estimate_.begin());
  }
}

std::vector<std::pair<std::uint64_t, std::int64_t>> HeavyHitterTracker::hitters() const {
  std::vector<std::pair<std::uint64_t, std::int64_t>> out;
  out.reserve(by_estimate_.size());
  for (auto it = by_estimate_.rbegin(); it != by_estimate_.rend(); ++it) out.emplace_back(it->second, it->first);
  return out;
}

std::vector<StreamUpdate> read_stream_text(std::istream& in) {
  std::vector<StreamUpdate> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    StreamUpdate u;
    std::string rest;
    if (!(fields >> u.index >> u.count) || (fields >> rest)) {
      fail(ErrorCode::parse_error, "stream line " + std::to_string(line_no) + ": expected \"index count\"");
    }
    out.push_back(u);
  }
  return out;
}

void write_stream_text(std::ostream& out, std::span<const StreamUpdate> updates) {
  for (const auto& u : updates) out << u.index << ' ' << u.count << '\n';
}

std::vector<StreamUpdate> read_stream_binary(std::span<const std::uint8_t> bytes) {
  ByteReader in(bytes);
  in.expect_tag(kStreamMagic);
  if (in.get<std::uint16_t>() != kStreamVersion) fail(ErrorCode::parse_error, "stream: unsupported version");
  const auto count = in.get<std::uint64_t>();
  if (in.remaining() / 16 < count || in.remaining() != count * 16) {
    fail(ErrorCode::parse_error, "stream: record count does not match payload");
  }
  std::vector<StreamUpdate> out(count);
  for (auto& u : out) {
    u.index = in.get<std::uint64_t>();
    u.count = static_cast<std::int64_t>(in.get<std::uint64_t>());
  }
  return out;
}

std::vector<std::uint8_t> write_stream_binary(std::span<const StreamUpdate> updates) {
  ByteWriter out;
  out.put_tag(kStreamMagic);
  out.put(kStreamVersion);
  out.put(std::uint64_t{updates.size()});
  for (const auto& u : updates) {
    out.put(u.index);
    out.put(static_cast<std::uint64_t>(u.count));
  }
  return std::move(out).take();
}

std::vector<StreamUpdate> read_stream_auto(std::span<const std::uint8_t> bytes) {
  if (bytes.size() >= 4 && std::equal(bytes.begin(), bytes.begin() + 4, kStreamMagic)) {
    return read_stream_binary(bytes);
  }
  std::istringstream in(std::string(bytes.begin(), bytes.end()));
  return read_stream_text(in);
}

}  // namespace randlab
