#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "walksparse/graph.hpp"
#include "walksparse/report.hpp"
#include "walksparse/resistance.hpp"
#include "walksparse/tree.hpp"

namespace walksparse {

inline constexpr std::uint64_t kDefaultSeed = 20180101;

struct SamplerConfig {
  double epsilon = 0.5;
  double oversample = 9.0;  // C in N = ceil(C eps^-2 ln n sum(tau))
  std::uint64_t seed = kDefaultSeed;
  /// Round every tau up to a multiple of 1/n before sampling.
  bool round_to_n_inverse = false;
  /// Use the serial reference kernels instead of the OpenMP ones.
  bool serial = false;

  /// Throws std::invalid_argument unless 0 < epsilon < 1 and oversample > 0.
  void validate() const;
  /// Sampling overhead h = C eps^-2 ln n (ln taken as at least ln 2).
  double overhead(std::size_t n) const;
};

/// N = ceil(h * total) for h = cfg.overhead(n).
std::uint64_t sample_count(const SamplerConfig& cfg, std::size_t n, double total);

struct SparsifyResult {
  Graph graph;
  SparsifyReport report;
};

/// Importance sampling by leverage upper bounds. N edges are drawn with
/// probability p_e = tau_e / sum(tau); each draw of e adds w_e / (N p_e).
/// Repeated draws of an edge are merged, so the output lists each sampled
/// input edge once, in input order, and E[L_out] = L_G. Throws on negative
/// or all-zero bounds.
SparsifyResult ideal_sample(const Graph& g, const ResistanceBounds& bounds,
                            const SamplerConfig& cfg);

struct TreeSparsifyResult {
  Graph graph;
  ResistanceBounds bounds;
  SparsifyReport report;
};

/// Builds a low-stretch tree T of the guide `gp` (which must satisfy
/// L_gp <= kappa L_g), bounds every edge of g by kappa times its T-path
/// resistance, and runs ideal_sample with those bounds.
TreeSparsifyResult tree_sparsify(const Graph& g, const Graph& gp, double kappa,
                                 const SamplerConfig& cfg, int tree_candidates = 8);

/// The graph base + scale * tree, held implicitly. Edges [0, m_base) are the
/// base edges; edges [m_base, m_base + n - 1) are the tree edges, weight
/// multiplied by scale.
class TreeAugmentedGraph {
 public:
  TreeAugmentedGraph(const Graph& base, const RootedTree& tree, double scale);

  std::size_t num_vertices() const { return base_->num_vertices(); }
  std::size_t num_edges() const { return base_->num_edges() + tree_edges_.size(); }
  Edge edge(std::size_t i) const;
  double scale() const { return scale_; }

  /// Leverage bounds from the graph's own tree: str_T(e) / scale for base
  /// edges, exactly 1 for tree edges.
  std::vector<double> own_tree_leverage() const;
  /// Leverage bounds kappa * w_e * R_guide(e) from another tree.
  std::vector<double> guide_tree_leverage(const RootedTree& guide, double kappa) const;

  DenseMatrix laplacian() const;
  /// Explicit edge list; used by the oracle checks only.
  Graph materialize() const;

 private:
  const Graph* base_;
  std::vector<Edge> tree_edges_;
  double scale_;
};

struct ChainOptions {
  double jl_delta = 0.5;
  JlOptions jl{};
  int tree_candidates = 8;
  /// Measure kappa of every level against its implicit graph when n fits
  /// under `cap`.
  bool check_levels = false;
  OracleCap cap{};
};

struct ChainLevelReport {
  int level = 0;
  double tree_scale = 1.0;
  double kappa_bound = 1.0;
  double sum_tau_crude = 0.0;
  std::uint64_t samples_crude = 0;
  std::size_t edges_crude = 0;
  double sum_tau_final = 0.0;
  std::uint64_t samples_final = 0;
  std::size_t edges_final = 0;
  std::optional<double> kappa_crude;
  std::optional<double> kappa_final;
};

struct ChainResult {
  Graph graph;
  ResistanceBounds bounds;
  SparsifyReport report;
  std::vector<ChainLevelReport> levels;
  bool bypassed = false;
};

/// Density-independent sparsifier built backwards along the chain
/// G_i = G_hat + 2^i T. Inputs with n < 4 or m <= 2n are sampled directly with
/// exact (or, above the oracle cap, JL) leverage bounds. Throws
/// DisconnectedGraph on a disconnected input.
ChainResult chain_sparsify(const Graph& g, const SamplerConfig& cfg,
                           const ChainOptions& options = {});

/// Highest chain level, ceil(log2(log2 n)).
int chain_top_level(std::size_t n);
/// Fraction of edges split off before building the chain, 1 / log2(n)^2.
double chain_split_fraction(std::size_t n);

}  // namespace walksparse
