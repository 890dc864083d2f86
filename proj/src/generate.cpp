#include "walksparse/generate.hpp"

#include <stdexcept>

#include "walksparse/random.hpp"

namespace walksparse {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace

Graph generate_gnp(std::size_t n, double p, std::uint64_t seed) {
  require(p >= 0.0 && p <= 1.0, "gnp: p must lie in [0, 1]");
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < n; ++u) {
    auto rng = SplitMix64::substream(seed, Stream::kGenerate, u);
    for (std::size_t v = u + 1; v < n; ++v) {
      if (rng.uniform() < p) edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v), 1.0});
    }
  }
  return Graph(n, std::move(edges));
}

Graph generate_connected(std::size_t n, double p, std::uint64_t seed, bool weighted) {
  require(p >= 0.0 && p <= 1.0, "connected: p must lie in [0, 1]");
  auto tree_rng = SplitMix64::substream(seed, Stream::kGenerate, n + 1);
  auto weight_rng = SplitMix64::substream(seed, Stream::kGenerate, n + 2);
  auto next_weight = [&] { return weighted ? 1.0 + 3.0 * weight_rng.uniform() : 1.0; };
  std::vector<Edge> edges;
  for (std::size_t v = 1; v < n; ++v) {
    edges.push_back({static_cast<Vertex>(tree_rng.below(v)), static_cast<Vertex>(v), next_weight()});
  }
  const Graph extra = generate_gnp(n, p, seed);
  for (const Edge& e : extra.edges()) {
    edges.push_back({e.u, e.v, next_weight()});
  }
  return Graph(n, std::move(edges));
}

Graph generate_path(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t v = 1; v < n; ++v) {
    edges.push_back({static_cast<Vertex>(v - 1), static_cast<Vertex>(v), 1.0});
  }
  return Graph(n, std::move(edges));
}

Graph generate_cycle(std::size_t n) {
  require(n >= 3, "cycle: n must be at least 3");
  const Graph path = generate_path(n);
  std::vector<Edge> edges(path.edges().begin(), path.edges().end());
  edges.push_back({static_cast<Vertex>(n - 1), 0, 1.0});
  return Graph(n, std::move(edges));
}

Graph generate_star(std::size_t n) {
  require(n >= 1, "star: n must be positive");
  std::vector<Edge> edges;
  for (std::size_t v = 1; v < n; ++v) edges.push_back({0, static_cast<Vertex>(v), 1.0});
  return Graph(n, std::move(edges));
}

Graph generate_grid(std::size_t rows, std::size_t cols) {
  require(rows >= 1 && cols >= 1, "grid: dimensions must be positive");
  std::vector<Edge> edges;
  auto id = [cols](std::size_t r, std::size_t c) { return static_cast<Vertex>(r * cols + c); };
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (c + 1 < cols) edges.push_back({id(r, c), id(r, c + 1), 1.0});
      if (r + 1 < rows) edges.push_back({id(r, c), id(r + 1, c), 1.0});
    }
  }
  return Graph(rows * cols, std::move(edges));
}

Graph generate_barbell(std::size_t clique, std::size_t bridge) {
  require(clique >= 2, "barbell: cliques need at least 2 vertices");
  const std::size_t n = 2 * clique + bridge;
  std::vector<Edge> edges;
  auto add_clique = [&](std::size_t first) {
    for (std::size_t a = 0; a < clique; ++a) {
      for (std::size_t b = a + 1; b < clique; ++b) {
        edges.push_back({static_cast<Vertex>(first + a), static_cast<Vertex>(first + b), 1.0});
      }
    }
  };
  add_clique(0);
  add_clique(clique + bridge);
  // Chain: last vertex of the first clique, bridge vertices, first of the second.
  for (std::size_t v = clique - 1; v < clique + bridge; ++v) {
    edges.push_back({static_cast<Vertex>(v), static_cast<Vertex>(v + 1), 1.0});
  }
  return Graph(n, std::move(edges));
}

}  // namespace walksparse
