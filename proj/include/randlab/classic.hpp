#pragma once

// Instrumented randomized QuickSort, QuickSelect and contraction min-cut.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "randlab/error.hpp"
#include "randlab/randsrc.hpp"

namespace randlab::classic {

template <class T>
struct ComparisonTrace {
  std::size_t n = 0;
  std::uint64_t comparisons = 0;  // element-vs-pivot comparisons
  std::vector<T> output;          // sorted sequence, or the selected element alone
};

namespace detail {

// Moves a uniformly chosen pivot to the front of items[lo, hi), partitions
// the rest around it and returns the pivot's final index. Charges hi-lo-1
// comparisons. Equal keys are rejected.
template <class T, BitSource S>
std::size_t partition(S& src, std::vector<T>& items, std::size_t lo, std::size_t hi,
                      std::uint64_t& comparisons) {
  const std::size_t size = hi - lo;
  const std::size_t pick = lo + static_cast<std::size_t>(uniform_below(src, size));
  std::swap(items[lo], items[pick]);
  const T& pivot = items[lo];
  std::size_t boundary = lo;
  for (std::size_t i = lo + 1; i < hi; ++i) {
    ++comparisons;
    if (items[i] < pivot) {
      std::swap(items[++boundary], items[i]);
    } else if (!(pivot < items[i])) {
      fail(ErrorCode::invalid_argument, "keys must be distinct");
    }
  }
  std::swap(items[lo], items[boundary]);
  return boundary;
}

}  // namespace detail

template <class T, BitSource S>
ComparisonTrace<T> quicksort(S& src, std::span<const T> items) {
  ComparisonTrace<T> trace;
  trace.n = items.size();
  trace.output.assign(items.begin(), items.end());
  std::vector<std::pair<std::size_t, std::size_t>> pending;
  if (trace.output.size() > 1) pending.emplace_back(0, trace.output.size());
  while (!pending.empty()) {
    auto [lo, hi] = pending.back();
    pending.pop_back();
    const std::size_t mid = detail::partition(src, trace.output, lo, hi, trace.comparisons);
    if (mid - lo > 1) pending.emplace_back(lo, mid);
    if (hi - mid - 1 > 1) pending.emplace_back(mid + 1, hi);
  }
  return trace;
}

/// k-th smallest, k in [1, n]. When the pivot has rank k it is returned
/// without further comparisons.
template <class T, BitSource S>
ComparisonTrace<T> quickselect(S& src, std::span<const T> items, std::size_t k) {
  require(k >= 1 && k <= items.size(), "quickselect: rank out of range");
  ComparisonTrace<T> trace;
  trace.n = items.size();
  std::vector<T> work(items.begin(), items.end());
  std::size_t lo = 0;
  std::size_t hi = work.size();
  const std::size_t target = k - 1;
  for (;;) {
    if (hi - lo == 1) break;
    const std::size_t mid = detail::partition(src, work, lo, hi, trace.comparisons);
    if (mid == target) {
      lo = mid;
      break;
    }
    if (target < mid) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  trace.output.push_back(work[lo]);
  return trace;
}

struct MultiGraph {
  std::uint32_t vertex_count = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;

  // Validates endpoints and the no-self-loop rule.
  static MultiGraph from_edges(std::uint32_t vertex_count,
                               std::vector<std::pair<std::uint32_t, std::uint32_t>> edges);
  bool connected() const;
};

// "n m" header line followed by m lines "u v", 0-based.
MultiGraph read_graph(std::istream& in);
void write_graph(std::ostream& out, const MultiGraph& g);

struct CutResult {
  std::vector<std::uint32_t> side_a;
  std::vector<std::uint32_t> side_b;
  std::uint64_t cut_size = 0;
};

std::uint64_t crossing_edges(const MultiGraph& g, std::span<const std::uint32_t> side_a);

/// One run of random edge contraction down to two super-vertices.
CutResult karger_contract(RandomSource& src, const MultiGraph& g);

/// Best of `repetitions` independent contraction runs.
CutResult karger_amplified(RandomSource& src, const MultiGraph& g, std::uint64_t repetitions);

// Two copies of K_clique joined by a single edge between vertex 0 and vertex clique.
MultiGraph bridged_cliques(std::uint32_t clique);

}  // namespace randlab::classic
