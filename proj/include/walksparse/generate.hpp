#pragma once

#include <cstdint>

#include "walksparse/graph.hpp"

namespace walksparse {

/// Erdos-Renyi G(n, p) with unit weights. Pair (u, v), u < v, is kept when
/// the generate substream at index u * n + v draws below p.
Graph generate_gnp(std::size_t n, double p, std::uint64_t seed);
/// A random recursive tree (vertex v attaches to a uniform earlier vertex)
/// unioned with G(n, p). Weights are 1, or uniform in [1, 4) when `weighted`.
Graph generate_connected(std::size_t n, double p, std::uint64_t seed, bool weighted = false);
Graph generate_path(std::size_t n);
Graph generate_cycle(std::size_t n);
/// Hub 0 joined to leaves 1..n-1.
Graph generate_star(std::size_t n);
Graph generate_grid(std::size_t rows, std::size_t cols);
/// Two cliques on `clique` vertices joined by a path with `bridge` interior
/// vertices.
Graph generate_barbell(std::size_t clique, std::size_t bridge);

}  // namespace walksparse
