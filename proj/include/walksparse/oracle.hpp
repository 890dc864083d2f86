#pragma once

#include <map>
#include <vector>

#include "walksparse/graph.hpp"
#include "walksparse/resistance.hpp"

namespace walksparse {

/// Extremal generalized eigenvalues of (L_B, L_A) on the complement of the
/// shared null space: lambda_min L_A <= L_B <= lambda_max L_A.
struct SimilarityCert {
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  double kappa = 1.0;  // +inf when the component partitions differ
  std::size_t null_dim = 0;
  bool components_match = true;
};

SimilarityCert spectral_similarity(const Graph& a, const Graph& b, const OracleCap& cap = {});
/// Same, from Laplacians; components are read off the off-diagonal pattern.
SimilarityCert spectral_similarity(const DenseMatrix& la, const DenseMatrix& lb);

/// kappa threshold (1 + eps) / (1 - eps) that defines an eps-sparsifier.
double sparsifier_kappa_bound(double eps);

/// True iff spectral_similarity(g, h).kappa <= (1 + eps) / (1 - eps).
bool is_eps_sparsifier(const Graph& g, const Graph& h, double eps, const OracleCap& cap = {});

struct EnumeratedWalk {
  std::vector<Vertex> vertices;
  double weight = 0.0;
};

/// Every ordered walk of length k with its weight. Refuses with CapExceeded
/// when n^(k+1) exceeds cap.max_walks.
std::vector<EnumeratedWalk> enumerate_walks(const Graph& g, int k, const OracleCap& cap = {});

/// Exact probability of every walk the walk sampler can emit, folded from
/// its decision tree (anchor index, anchor edge, orientation, extension
/// steps) using the sampler's own prefix sums.
std::map<std::vector<Vertex>, double> sampler_distribution(const Graph& g,
                                                           const ResistanceBounds& bounds, int k,
                                                           const OracleCap& cap = {});

}  // namespace walksparse
