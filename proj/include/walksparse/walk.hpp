#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "walksparse/graph.hpp"
#include "walksparse/resistance.hpp"
#include "walksparse/sampling.hpp"
#include "walksparse/sparsify.hpp"

namespace walksparse {

struct WalkSample {
  std::vector<Vertex> vertices;  // u_0 .. u_k
  int anchor = 0;                // i: the step u_i u_{i+1} is the sampled edge
  bool reversed = false;         // sampled edge (u, v) placed as u_i = v, u_{i+1} = u
  double walk_weight = 0.0;
  double resistance_sum = 0.0;   // sum_i r(u_i, u_{i+1})
  double sparsifier_weight = 0.0;
};

/// Draws length-k walks with probability
///   w(walk) * sum_i r(u_i, u_{i+1}) / (2 k <w, r>)
/// over ordered walks: anchor index uniform, anchor edge by w_e r_e, uniform
/// orientation, then random-walk extension in both directions.
class WalkSampler {
 public:
  /// Throws on k < 1, self-loops in g, or bounds that do not match g.
  WalkSampler(const Graph& g, const ResistanceBounds& bounds, int k);

  int length() const { return k_; }
  const Graph& graph() const { return *graph_; }
  const Adjacency& adjacency() const { return adjacency_; }
  const PrefixSampler& edges() const { return edges_; }
  /// <w, r> = sum_e w_e r_e.
  double edge_mass() const { return edges_.total(); }
  /// Bound on the pair (u, v): sum of w_e r_e over parallel edges divided by
  /// their summed weight. 0 when u, v are not adjacent.
  double pair_resistance(Vertex u, Vertex v) const;

  /// Sample `index` of the stream keyed by seed. Uses the edge-sampling
  /// substream for (i, edge, orientation) and the walk-extension substream for
  /// the steps, both at `index`.
  WalkSample sample(std::uint64_t seed, std::uint64_t index) const;
  /// Samples first_index .. first_index + out.size() - 1 of the same stream;
  /// out[j] equals sample(seed, first_index + j). Interleaves walks to
  /// overlap their memory accesses.
  void sample_batch(std::uint64_t seed, std::uint64_t first_index, std::span<WalkSample> out) const;

 private:
  const Graph* graph_;
  int k_;
  Adjacency adjacency_;
  PrefixSampler edges_;
  // Everything a step reads, packed per adjacency slot so one step touches
  // one or two cache lines.
  struct Slot {
    double cumulative;
    double weight;
    double resistance;  // pair bound
    Vertex target;
    std::uint32_t guide;
  };
  std::vector<Slot> slots_;
  std::size_t step(Vertex u, double unit) const;
  std::size_t step_bucket(Vertex u, double unit) const;
  struct Anchor {
    Vertex u, v;
    std::size_t forward;  // slot of (u, v)
    std::size_t reverse;  // slot of (v, u)
  };
  std::vector<Anchor> anchors_;  // per edge, so one draw touches one record
};

/// Normalisation k * <w, r> that sets the walk count N = ceil(h * walk_mass).
double walk_mass(const Graph& g, const ResistanceBounds& bounds, int k);

enum class Estimator { kExact, kJl, kTree };

std::string_view to_string(Estimator e);
/// Accepts "exact", "jl", "tree"; throws std::invalid_argument otherwise.
Estimator parse_estimator(std::string_view name);

struct WalkOptions {
  Estimator estimator = Estimator::kExact;
  double jl_delta = 0.5;
  JlOptions jl{};
  int tree_candidates = 8;
  OracleCap cap{};
};

struct WalkBounds {
  ResistanceBounds bounds;
  /// Components of the double cover for even k, of G for odd k.
  std::size_t components = 0;
};

/// Resistance bounds valid for G^k on the edges of G. Odd k: twice the
/// estimator's bounds on G. Even k: the estimator on the double cover,
/// read at (u, v + n) for each edge (u, v).
WalkBounds walk_bounds(const Graph& g, int k, const WalkOptions& options, std::uint64_t seed);

struct WalkSparsifyResult {
  Graph graph;
  ResistanceBounds bounds;
  SparsifyReport report;
};

/// Sparsifier of G^k from N = ceil(h k <w, r>) sampled walks. Each walk
/// adds an edge (u_0, u_k) of weight k <w, r> / (N sum_i r(u_i, u_{i+1})),
/// which makes E[L_H] = L_{G^k}. Walks with u_0 = u_k are drawn but dropped.
/// Repeated endpoint pairs are merged; edges come out sorted by (u, v).
WalkSparsifyResult sparsify_gk(const Graph& g, int k, const SamplerConfig& cfg,
                               const WalkOptions& options = {});

/// Same, with caller-supplied bounds (skips estimation).
WalkSparsifyResult sparsify_gk_with_bounds(const Graph& g, int k, const ResistanceBounds& bounds,
                                           const SamplerConfig& cfg);

}  // namespace walksparse
