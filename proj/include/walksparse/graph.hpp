#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace walksparse {

using Vertex = std::uint32_t;
inline constexpr Vertex kNoVertex = static_cast<Vertex>(-1);

/// Dense square matrix used by the oracle paths only.
using DenseMatrix = Eigen::MatrixXd;

struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  double w = 0.0;

  bool is_loop() const { return u == v; }
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Size limits for the dense (cubic) oracle routines.
struct OracleCap {
  std::size_t max_vertices = 512;
  std::uint64_t max_walks = 10'000'000;
};

/// Thrown when a dense or enumerating routine would exceed its OracleCap.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Weighted undirected multigraph on vertices 0..n-1. Parallel edges are
/// kept as given; self-loops are representable but carry no Laplacian mass.
/// Immutable after construction.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n) : n_(n) {}
  /// Throws std::invalid_argument on an out-of-range endpoint or a weight
  /// that is not positive and finite.
  Graph(std::size_t n, std::vector<Edge> edges);

  std::size_t num_vertices() const { return n_; }
  std::size_t num_edges() const { return edges_.size(); }
  std::span<const Edge> edges() const { return edges_; }
  const Edge& edge(std::size_t i) const { return edges_[i]; }

  /// Weighted degrees; a self-loop of weight w adds w.
  std::vector<double> degrees() const;
  double total_weight() const;
  bool has_self_loops() const;

  /// Copy with self-loops removed.
  Graph without_self_loops() const;
  /// Copy with every weight multiplied by `factor` (> 0).
  Graph scaled(double factor) const;

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
};

/// Union of two edge lists over the same vertex set (multigraph sum).
Graph graph_union(const Graph& a, const Graph& b);

/// Compressed adjacency with parallel edges merged and, per vertex, the
/// cumulative neighbour weights used for weighted random-walk steps.
/// Self-loops appear as a neighbour entry (u, u).
class Adjacency {
 public:
  explicit Adjacency(const Graph& g);

  std::size_t num_vertices() const { return offsets_.size() - 1; }
  std::span<const Vertex> neighbors(Vertex u) const {
    return {targets_.data() + offsets_[u], targets_.data() + offsets_[u + 1]};
  }
  std::span<const double> weights(Vertex u) const {
    return {weights_.data() + offsets_[u], weights_.data() + offsets_[u + 1]};
  }
  /// Inclusive prefix sums of weights(u); the last entry is the degree.
  std::span<const double> cumulative(Vertex u) const {
    return {cumulative_.data() + offsets_[u], cumulative_.data() + offsets_[u + 1]};
  }
  double degree(Vertex u) const { return degree_[u]; }
  /// Summed weight between u and v (0 when not adjacent). O(log deg).
  double weight(Vertex u, Vertex v) const;
  /// Global index of the merged entry (u, v), or kNoSlot. O(log deg).
  std::size_t slot(Vertex u, Vertex v) const;
  std::size_t num_slots() const { return targets_.size(); }
  double slot_weight(std::size_t s) const { return weights_[s]; }
  static constexpr std::size_t kNoSlot = static_cast<std::size_t>(-1);
  /// Neighbour drawn with probability w/d: the index upper_bound would
  /// find over the cumulative weights, located through a per-vertex guide
  /// table; `unit` is uniform in [0, 1).
  Vertex step(Vertex u, double unit) const { return targets_[step_slot(u, unit)]; }
  /// Same draw, returning the slot of the chosen entry.
  std::size_t step_slot(Vertex u, double unit) const;
  Vertex slot_target(std::size_t s) const { return targets_[s]; }
  /// Slots of u are first_slot(u) .. first_slot(u + 1) - 1.
  std::size_t first_slot(Vertex u) const { return offsets_[u]; }
  /// Per-vertex guide used by step_slot: entry b is the first local index
  /// whose prefix exceeds b * degree / count.
  std::span<const std::uint32_t> guide(Vertex u) const {
    return {guide_.data() + offsets_[u], guide_.data() + offsets_[u + 1]};
  }
  /// Probability that step(u, .) returns v, read off the prefix sums.
  double step_probability(Vertex u, Vertex v) const;

  /// y = L x, self-loops ignored.
  void laplacian_apply(std::span<const double> x, std::span<double> y) const;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<Vertex> targets_;
  std::vector<double> weights_;
  std::vector<double> cumulative_;
  std::vector<std::uint32_t> guide_;
  std::vector<double> degree_;
};

/// Connected-component labels (self-loops ignored). Labels are 0..c-1 in
/// order of the smallest vertex of each component.
std::vector<std::uint32_t> component_labels(const Graph& g);
std::size_t count_components(const Graph& g);
bool is_connected(const Graph& g);

/// L = D - A. Self-loops cancel.
DenseMatrix laplacian(const Graph& g);

/// Weight of the walk u_0..u_k: the product of step weights divided by the
/// degrees of the interior vertices. Parallel edges use their summed weight.
/// Throws std::invalid_argument when a step is not an edge or k < 1.
double walk_weight(const Graph& g, std::span<const Vertex> walk);
double walk_weight(const Adjacency& adj, std::span<const Vertex> walk);

/// The k-step walk graph with adjacency A (D^-1 A)^(k-1), self-loops
/// included. Dense; gated by `cap`.
Graph walk_graph_dense(const Graph& g, int k, const OracleCap& cap = {});
/// Laplacian of the k-step walk graph, D - A (D^-1 A)^(k-1).
DenseMatrix walk_laplacian_dense(const Graph& g, int k, const OracleCap& cap = {});

/// Bipartite double cover: vertex x maps to x (side A) and x + n (side B);
/// input edge j becomes edges 2j = (u, v+n) and 2j+1 = (u+n, v).
Graph double_cover(const Graph& g);

/// Eliminates the vertices in `eliminate` one at a time with the pairwise
/// rule w(u,v1) w(u,v2) / d(u), where d(u) excludes self-loops at u.
/// Returns a graph on the remaining vertices, renumbered in increasing order
/// of their original ids. Throws std::invalid_argument when an eliminated
/// vertex is isolated at its elimination step.
Graph schur_complement_graph(const Graph& g, std::span<const Vertex> eliminate);

/// Algebraic Schur complement M[C,C] - M[C,F] M[F,F]^-1 M[F,C], with C the
/// complement of F in increasing order.
DenseMatrix schur_complement(const DenseMatrix& m, std::span<const Vertex> eliminate);

}  // namespace walksparse
