#include "walksparse/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "walksparse/walk.hpp"

namespace walksparse {

namespace {

std::vector<std::uint32_t> pattern_components(const DenseMatrix& l) {
  const auto n = static_cast<std::size_t>(l.rows());
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto a = static_cast<Eigen::Index>(i);
      const auto b = static_cast<Eigen::Index>(j);
      if (l(a, b) != 0.0 || l(b, a) != 0.0) {
        edges.push_back({static_cast<Vertex>(i), static_cast<Vertex>(j), 1.0});
      }
    }
  }
  return component_labels(Graph(n, std::move(edges)));
}

void check_walk_cap(std::size_t n, int k, const OracleCap& cap) {
  double count = 1.0;
  for (int i = 0; i <= k; ++i) count *= static_cast<double>(n);
  if (count > cap.max_walks) {
    std::ostringstream msg;
    msg << "walk enumeration needs n^(k+1) = " << count << " > cap " << cap.max_walks;
    throw CapExceeded(msg.str());
  }
}

}  // namespace

SimilarityCert spectral_similarity(const DenseMatrix& la, const DenseMatrix& lb) {
  if (la.rows() != la.cols() || lb.rows() != lb.cols() || la.rows() != lb.rows()) {
    throw std::invalid_argument("spectral_similarity: matrices must be square and equal size");
  }
  const auto n = static_cast<std::size_t>(la.rows());
  SimilarityCert cert;
  const auto comp_a = pattern_components(la);
  if (comp_a != pattern_components(lb)) {
    cert.components_match = false;
    cert.kappa = std::numeric_limits<double>::infinity();
    return cert;
  }
  const std::size_t c = n == 0 ? 0 : *std::max_element(comp_a.begin(), comp_a.end()) + 1;
  cert.null_dim = c;
  const std::size_t r = n - c;
  if (r == 0) {
    cert.lambda_min = cert.lambda_max = 1.0;
    return cert;
  }

  // Project out the component indicators, then keep the top n - c
  // eigenvectors of L_A: that is the complement of the shared null space.
  DenseMatrix p = DenseMatrix::Identity(la.rows(), la.cols());
  std::vector<double> size(c, 0.0);
  for (auto label : comp_a) size[label] += 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (comp_a[i] == comp_a[j]) {
        p(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) -= 1.0 / size[comp_a[i]];
      }
    }
  }
  const DenseMatrix pa = p * la * p;
  const Eigen::SelfAdjointEigenSolver<DenseMatrix> eig(0.5 * (pa + pa.transpose()));
  const auto ri = static_cast<Eigen::Index>(r);
  const DenseMatrix v = eig.eigenvectors().rightCols(ri);
  const Eigen::VectorXd lam = eig.eigenvalues().tail(ri);
  if (!(lam.minCoeff() > 0.0)) {
    cert.kappa = std::numeric_limits<double>::infinity();
    return cert;
  }
  const Eigen::VectorXd inv_sqrt = lam.cwiseSqrt().cwiseInverse();
  const DenseMatrix s = inv_sqrt.asDiagonal() * v.transpose();
  DenseMatrix m = s * lb * s.transpose();
  m = 0.5 * (m + m.transpose());
  const Eigen::SelfAdjointEigenSolver<DenseMatrix> gen(m, Eigen::EigenvaluesOnly);
  cert.lambda_min = gen.eigenvalues()(0);
  cert.lambda_max = gen.eigenvalues()(ri - 1);
  cert.kappa = cert.lambda_min > 0.0 ? cert.lambda_max / cert.lambda_min
                                     : std::numeric_limits<double>::infinity();
  return cert;
}

SimilarityCert spectral_similarity(const Graph& a, const Graph& b, const OracleCap& cap) {
  if (a.num_vertices() != b.num_vertices()) {
    throw std::invalid_argument("spectral_similarity: graphs have different vertex counts");
  }
  if (a.num_vertices() > cap.max_vertices) {
    std::ostringstream msg;
    msg << "spectral_similarity: n = " << a.num_vertices() << " exceeds oracle cap "
        << cap.max_vertices;
    throw CapExceeded(msg.str());
  }
  return spectral_similarity(laplacian(a), laplacian(b));
}

double sparsifier_kappa_bound(double eps) { return (1.0 + eps) / (1.0 - eps); }

bool is_eps_sparsifier(const Graph& g, const Graph& h, double eps, const OracleCap& cap) {
  return spectral_similarity(g, h, cap).kappa <= sparsifier_kappa_bound(eps);
}

std::vector<EnumeratedWalk> enumerate_walks(const Graph& g, int k, const OracleCap& cap) {
  if (k < 1) throw std::invalid_argument("walk length k must be at least 1");
  const std::size_t n = g.num_vertices();
  check_walk_cap(n, k, cap);
  const Adjacency adj(g);
  std::vector<EnumeratedWalk> out;
  std::vector<Vertex> walk;
  walk.reserve(static_cast<std::size_t>(k) + 1);

  // weight carries prod w / prod d over the interior vertices seen so far.
  auto extend = [&](auto&& self, double weight) -> void {
    if (walk.size() == static_cast<std::size_t>(k) + 1) {
      out.push_back({walk, weight});
      return;
    }
    const Vertex u = walk.back();
    const double interior = walk.size() > 1 ? adj.degree(u) : 1.0;
    const auto nbrs = adj.neighbors(u);
    const auto ws = adj.weights(u);
    for (std::size_t j = 0; j < nbrs.size(); ++j) {
      walk.push_back(nbrs[j]);
      self(self, weight * ws[j] / interior);
      walk.pop_back();
    }
  };
  for (Vertex u = 0; u < n; ++u) {
    walk.assign(1, u);
    extend(extend, 1.0);
  }
  return out;
}

std::map<std::vector<Vertex>, double> sampler_distribution(const Graph& g,
                                                           const ResistanceBounds& bounds, int k,
                                                           const OracleCap& cap) {
  check_walk_cap(g.num_vertices(), k, cap);
  const WalkSampler sampler(g, bounds, k);
  const Adjacency& adj = sampler.adjacency();
  const PrefixSampler& edges = sampler.edges();
  const auto len = static_cast<std::size_t>(k) + 1;

  std::map<std::vector<Vertex>, double> dist;
  std::vector<Vertex> walk(len, kNoVertex);

  // Forward extension from position j (walk[j] fixed) to the end.
  auto forward = [&](auto&& self, std::size_t j, double p) -> void {
    if (j + 1 == len) {
      dist[walk] += p;
      return;
    }
    for (Vertex v : adj.neighbors(walk[j])) {
      walk[j + 1] = v;
      self(self, j + 1, p * adj.step_probability(walk[j], v));
    }
  };
  // Backward extension from position j down to 0, then forward from start.
  auto backward = [&](auto&& self, std::size_t j, std::size_t start, double p) -> void {
    if (j == 0) {
      forward(forward, start, p);
      return;
    }
    for (Vertex v : adj.neighbors(walk[j])) {
      walk[j - 1] = v;
      self(self, j - 1, start, p * adj.step_probability(walk[j], v));
    }
  };

  const double p_index = 1.0 / static_cast<double>(k);
  for (std::size_t i = 0; i < static_cast<std::size_t>(k); ++i) {
    for (std::size_t e = 0; e < g.num_edges(); ++e) {
      const double pe = edges.probability(e);
      if (pe == 0.0) continue;
      const Edge& edge = g.edge(e);
      for (int orient = 0; orient < 2; ++orient) {
        walk[i] = orient ? edge.v : edge.u;
        walk[i + 1] = orient ? edge.u : edge.v;
        backward(backward, i, i + 1, p_index * pe * 0.5);
      }
    }
  }
  return dist;
}

}  // namespace walksparse
