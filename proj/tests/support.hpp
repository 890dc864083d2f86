#pragma once

// Independent reference computations used only by the tests. Nothing here
// calls into the library's own dense paths, so agreement is meaningful.

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "walksparse/graph.hpp"
#include "walksparse/tree.hpp"

namespace ref {

using walksparse::DenseMatrix;
using walksparse::Edge;
using walksparse::Graph;
using walksparse::Vertex;

inline DenseMatrix adjacency(const Graph& g) {
  const auto n = static_cast<Eigen::Index>(g.num_vertices());
  DenseMatrix a = DenseMatrix::Zero(n, n);
  for (const Edge& e : g.edges()) {
    a(e.u, e.v) += e.w;
    if (e.u != e.v) a(e.v, e.u) += e.w;
  }
  return a;
}

inline DenseMatrix laplacian(const Graph& g) {
  const DenseMatrix a = ref::adjacency(g);
  DenseMatrix l = -a;
  l.diagonal() += a.rowwise().sum();
  return l;
}

/// Every ordered walk u_0..u_k with nonzero walk weight, by brute force
/// over all vertex sequences.
struct Walk {
  std::vector<Vertex> v;
  double w;
};

inline std::vector<Walk> walks(const Graph& g, int k) {
  const DenseMatrix a = ref::adjacency(g);
  const Eigen::VectorXd d = a.rowwise().sum();
  const std::size_t n = g.num_vertices();
  std::vector<Walk> out;
  std::vector<Vertex> seq(static_cast<std::size_t>(k) + 1, 0);
  std::size_t total = 1;
  for (int i = 0; i <= k; ++i) total *= n;
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t c = code;
    for (auto& x : seq) {
      x = static_cast<Vertex>(c % n);
      c /= n;
    }
    double w = 1.0;
    for (int i = 0; i < k && w != 0.0; ++i) w *= a(seq[i], seq[i + 1]);
    if (w == 0.0) continue;
    for (int i = 1; i < k; ++i) w /= d(seq[i]);
    out.push_back({seq, w});
  }
  return out;
}

/// Walk-graph adjacency by enumeration: M_uv = total weight of walks u to v.
inline DenseMatrix walk_matrix(const Graph& g, int k) {
  const auto n = static_cast<Eigen::Index>(g.num_vertices());
  DenseMatrix m = DenseMatrix::Zero(n, n);
  for (const Walk& w : ref::walks(g, k)) m(w.v.front(), w.v.back()) += w.w;
  return m;
}

inline DenseMatrix walk_laplacian(const Graph& g, int k) {
  const DenseMatrix m = ref::walk_matrix(g, k);
  DenseMatrix l = -m;
  l.diagonal() += m.rowwise().sum();
  return l;
}

/// R(u, v) for a connected graph through the grounded system
/// (L + 11^T / n) x = e_u - e_v.
inline double resistance(const DenseMatrix& l, Vertex u, Vertex v) {
  const auto n = l.rows();
  const DenseMatrix g = l + DenseMatrix::Constant(n, n, 1.0 / static_cast<double>(n));
  Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
  b(u) += 1.0;
  b(v) -= 1.0;
  const Eigen::VectorXd x = g.fullPivLu().solve(b);
  return b.dot(x);
}

inline double resistance(const Graph& g, Vertex u, Vertex v) {
  return resistance(ref::laplacian(g), u, v);
}

/// Generalized eigenvalues of (lb, la) for connected graphs, ascending. The
/// all-ones direction is lifted to a far-away eigenvalue and dropped.
inline std::vector<double> generalized_eigenvalues(const DenseMatrix& la, const DenseMatrix& lb) {
  const auto n = la.rows();
  const DenseMatrix j = DenseMatrix::Constant(n, n, 1.0 / static_cast<double>(n));
  const double lift = 1e6 * std::max(1.0, lb.cwiseAbs().maxCoeff());
  Eigen::GeneralizedSelfAdjointEigenSolver<DenseMatrix> es(lb + lift * j, la + j);
  std::vector<double> out(es.eigenvalues().data(), es.eigenvalues().data() + n);
  std::sort(out.begin(), out.end());
  out.pop_back();
  return out;
}

/// Tree-path resistance by walking parent pointers.
inline double tree_path(const walksparse::RootedTree& t, Vertex u, Vertex v) {
  std::map<Vertex, double> up;
  double acc = 0.0;
  for (Vertex x = u;; x = t.parent(x)) {
    up[x] = acc;
    if (t.parent(x) == walksparse::kNoVertex) break;
    acc += 1.0 / t.parent_weight(x);
  }
  acc = 0.0;
  for (Vertex x = v;; x = t.parent(x)) {
    auto it = up.find(x);
    if (it != up.end()) return acc + it->second;
    if (t.parent(x) == walksparse::kNoVertex) break;
    acc += 1.0 / t.parent_weight(x);
  }
  return std::numeric_limits<double>::infinity();
}

inline double total_variation(const std::map<std::vector<Vertex>, double>& p,
                              const std::map<std::vector<Vertex>, double>& q) {
  double tv = 0.0;
  for (const auto& [walk, x] : p) {
    auto it = q.find(walk);
    tv += std::abs(x - (it == q.end() ? 0.0 : it->second));
  }
  for (const auto& [walk, y] : q) {
    if (!p.count(walk)) tv += std::abs(y);
  }
  return 0.5 * tv;
}

/// Entrywise running mean and standard error of random matrices.
class MatrixMean {
 public:
  explicit MatrixMean(Eigen::Index n) : sum_(DenseMatrix::Zero(n, n)), sq_(DenseMatrix::Zero(n, n)) {}

  void add(const DenseMatrix& x) {
    sum_ += x;
    sq_ += x.cwiseProduct(x);
    ++count_;
  }

  DenseMatrix mean() const { return sum_ / static_cast<double>(count_); }

  DenseMatrix standard_error() const {
    const double c = static_cast<double>(count_);
    const DenseMatrix m = mean();
    DenseMatrix var = (sq_ / c - m.cwiseProduct(m)).cwiseMax(0.0) * (c / (c - 1.0));
    return (var / c).cwiseSqrt();
  }

  /// Largest |mean - target| / SE over entries; entries with zero spread
  /// must match to 1e-12 (reported as +inf otherwise).
  double max_z(const DenseMatrix& target) const {
    const DenseMatrix m = mean();
    const DenseMatrix se = standard_error();
    double worst = 0.0;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      for (Eigen::Index j = 0; j < m.cols(); ++j) {
        const double diff = std::abs(m(i, j) - target(i, j));
        const double tol = 1e-12 * std::max(1.0, std::abs(target(i, j)));
        if (se(i, j) <= tol) {
          if (diff > tol) worst = std::numeric_limits<double>::infinity();
        } else {
          worst = std::max(worst, diff / se(i, j));
        }
      }
    }
    return worst;
  }

 private:
  DenseMatrix sum_;
  DenseMatrix sq_;
  std::size_t count_ = 0;
};

inline double frobenius_rel(const DenseMatrix& a, const DenseMatrix& b) {
  const double scale = std::max(1.0, b.norm());
  return (a - b).norm() / scale;
}

}  // namespace ref
