#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "walksparse/graph.hpp"

namespace walksparse {

/// Thrown by build_tree on a disconnected input.
class DisconnectedGraph : public std::invalid_argument {
 public:
  DisconnectedGraph(Vertex a, Vertex b);
  Vertex first() const { return first_; }
  Vertex second() const { return second_; }

 private:
  Vertex first_;
  Vertex second_;
};

/// Rooted spanning tree (or forest, one root per component) with an
/// ancestor-doubling LCA index and root-to-vertex resistance prefix sums.
class RootedTree {
 public:
  RootedTree() = default;
  /// `parent[root] == kNoVertex`; `parent_weight[v]` is the weight of the
  /// edge (v, parent[v]) and is ignored for roots. Throws on cycles.
  RootedTree(std::vector<Vertex> parent, std::vector<double> parent_weight);

  /// Tree on n vertices spanned by `edges`, rooted at the smallest vertex of
  /// each component (or `root` for the component containing it).
  static RootedTree from_edges(std::size_t n, std::span<const Edge> edges,
                               Vertex root = 0);

  std::size_t num_vertices() const { return parent_.size(); }
  std::size_t num_roots() const { return num_roots_; }
  bool is_spanning_tree() const { return num_roots_ == 1; }

  Vertex parent(Vertex v) const { return parent_[v]; }
  double parent_weight(Vertex v) const { return parent_weight_[v]; }
  std::uint32_t depth(Vertex v) const { return depth_[v]; }
  Vertex root_of(Vertex v) const { return root_[v]; }
  /// Sum of 1/w along the path from the root to v.
  double root_resistance(Vertex v) const { return root_resistance_[v]; }
  /// Vertices in breadth-first order, roots first.
  std::span<const Vertex> order() const { return order_; }

  /// Deepest common ancestor; nullopt when u and v lie in different trees.
  std::optional<Vertex> lca(Vertex u, Vertex v) const;
  /// Resistance of the tree path between u and v; +inf across trees.
  double path_resistance(Vertex u, Vertex v) const;

  /// Tree edges (v, parent(v), w) in increasing order of v.
  std::vector<Edge> edges() const;
  Graph as_graph() const;

  /// Total stretch recorded by build_tree (NaN otherwise).
  double recorded_stretch() const { return recorded_stretch_; }
  void set_recorded_stretch(double s) { recorded_stretch_ = s; }

 private:
  std::vector<Vertex> parent_;
  std::vector<double> parent_weight_;
  std::vector<std::uint32_t> depth_;
  std::vector<Vertex> root_;
  std::vector<double> root_resistance_;
  std::vector<Vertex> order_;
  std::vector<std::vector<Vertex>> up_;  // up_[j][v]: 2^j-th ancestor (or root)
  std::size_t num_roots_ = 0;
  double recorded_stretch_ = std::numeric_limits<double>::quiet_NaN();
};

/// Candidate-portfolio tree: the maximum-weight spanning tree plus
/// shortest-path trees (edge length 1/w) grown from seeded random roots.
/// Every candidate's total stretch over `g` is measured exactly and the
/// minimiser is returned with its stretch recorded. Throws DisconnectedGraph.
RootedTree build_tree(const Graph& g, std::uint64_t seed, int candidates = 8);

/// Same portfolio on each component; never throws on disconnection.
RootedTree build_spanning_forest(const Graph& g, std::uint64_t seed, int candidates = 8);

/// w_e times the tree-path resistance between the endpoints; +inf when the
/// endpoints lie in different trees; 0 for a self-loop.
double edge_stretch(const RootedTree& t, const Edge& e);
double total_stretch(const RootedTree& t, const Graph& g);

struct StretchSplit {
  Graph kept;
  Graph removed;
  /// Indices into the input edge list, ascending.
  std::vector<std::size_t> kept_index;
  std::vector<std::size_t> removed_index;
};

/// Removes the ceil(fraction * m) edges of largest stretch, ties broken by
/// ascending edge index. Requires 0 < fraction < 1.
StretchSplit split_high_stretch(const Graph& g, const RootedTree& t, double fraction);

/// Parent-array text form: one line `v parent(v) w` per vertex, root parent -1.
void write_tree(std::ostream& out, const RootedTree& t);
RootedTree read_tree(std::istream& in);

}  // namespace walksparse
