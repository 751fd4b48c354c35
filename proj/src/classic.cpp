#include "randlab/classic.hpp"

#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

namespace randlab::classic {
namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), std::uint32_t{0});
  }

  std::uint32_t find(std::uint32_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    return true;
  }

 private:
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint32_t> size_;
};

}  // namespace

MultiGraph MultiGraph::from_edges(std::uint32_t vertex_count,
                                  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges) {
  require(vertex_count >= 1, "graph needs at least one vertex");
  for (auto [u, v] : edges) {
    require(u < vertex_count && v < vertex_count, "edge endpoint out of range");
    require(u != v, "self-loops are not allowed");
  }
  return MultiGraph{vertex_count, std::move(edges)};
}

bool MultiGraph::connected() const {
  if (vertex_count == 0) return false;
  DisjointSets sets(vertex_count);
  std::uint32_t components = vertex_count;
  for (auto [u, v] : edges) {
    if (sets.unite(u, v)) --components;
  }
  return components == 1;
}

MultiGraph read_graph(std::istream& in) {
  std::string line;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
  };
  if (!next_line()) fail(ErrorCode::parse_error, "graph: missing header line");
  std::istringstream header(line);
  long long n = -1;
  long long m = -1;
  if (!(header >> n >> m) || n < 1 || m < 0 || n > 0xffffffffLL) {
    fail(ErrorCode::parse_error, "graph: header must be \"n m\"");
  }
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (long long i = 0; i < m; ++i) {
    if (!next_line()) fail(ErrorCode::parse_error, "graph: expected " + std::to_string(m) + " edges");
    std::istringstream row(line);
    long long u = -1;
    long long v = -1;
    if (!(row >> u >> v) || u < 0 || v < 0 || u >= n || v >= n) {
      fail(ErrorCode::parse_error, "graph: bad edge line " + std::to_string(i + 2));
    }
    if (u == v) fail(ErrorCode::parse_error, "graph: self-loop on line " + std::to_string(i + 2));
    edges.emplace_back(static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(v));
  }
  return MultiGraph::from_edges(static_cast<std::uint32_t>(n), std::move(edges));
}

void write_graph(std::ostream& out, const MultiGraph& g) {
  out << g.vertex_count << ' ' << g.edges.size() << '\n';
  for (auto [u, v] : g.edges) out << u << ' ' << v << '\n';
}

std::uint64_t crossing_edges(const MultiGraph& g, std::span<const std::uint32_t> side_a) {
  std::vector<char> in_a(g.vertex_count, 0);
  for (auto v : side_a) in_a.at(v) = 1;
  std::uint64_t count = 0;
  for (auto [u, v] : g.edges) count += in_a[u] != in_a[v];
  return count;
}

CutResult karger_contract(RandomSource& src, const MultiGraph& g) {
  require(g.vertex_count >= 2, "min cut needs at least two vertices");
  require(g.connected(), "min cut needs a connected graph");

  // Picking uniformly among all original edges and skipping those that have
  // become self-loops is the same as picking uniformly among the surviving
  // multi-edges.
  DisjointSets sets(g.vertex_count);
  std::uint32_t remaining = g.vertex_count;
  const std::uint64_t m = g.edges.size();
  while (remaining > 2) {
    const auto [u, v] = g.edges[uniform_below(src, m)];
    if (sets.unite(u, v)) --remaining;
  }

  CutResult cut;
  const std::uint32_t anchor = sets.find(0);
  for (std::uint32_t v = 0; v < g.vertex_count; ++v) {
    (sets.find(v) == anchor ? cut.side_a : cut.side_b).push_back(v);
  }
  cut.cut_size = crossing_edges(g, cut.side_a);
  return cut;
}

CutResult karger_amplified(RandomSource& src, const MultiGraph& g, std::uint64_t repetitions) {
  require(repetitions >= 1, "need at least one repetition");
  CutResult best = karger_contract(src, g);
  for (std::uint64_t i = 1; i < repetitions; ++i) {
    CutResult cut = karger_contract(src, g);
    if (cut.cut_size < best.cut_size) best = std::move(cut);
  }
  return best;
}

MultiGraph bridged_cliques(std::uint32_t clique) {
  require(clique >= 2, "clique size must be at least 2");
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  for (std::uint32_t base : {0u, clique}) {
    for (std::uint32_t i = 0; i < clique; ++i) {
      for (std::uint32_t j = i + 1; j < clique; ++j) edges.emplace_back(base + i, base + j);
    }
  }
  edges.emplace_back(0, clique);
  return MultiGraph::from_edges(2 * clique, std::move(edges));
}

}  // namespace randlab::classic
