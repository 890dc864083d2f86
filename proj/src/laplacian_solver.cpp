#include "walksparse/laplacian_solver.hpp"

#include <cmath>
#include <numeric>

namespace walksparse {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

LaplacianSolver::LaplacianSolver(const Graph& g, RootedTree forest, SolverOptions options)
    : LaplacianSolver(g, options) {
  if (forest.num_vertices() != g.num_vertices()) {
    throw std::invalid_argument("LaplacianSolver: forest does not span the graph");
  }
  forest_ = std::move(forest);
}

LaplacianSolver::LaplacianSolver(const Graph& g, SolverOptions options)
    : adjacency_(g), component_(component_labels(g)), options_(options) {
  const std::size_t n = g.num_vertices();
  degree_.resize(n);
  for (std::size_t v = 0; v < n; ++v) {
    // Laplacian diagonal, self-loops excluded.
    double d = 0.0;
    auto nbrs = adjacency_.neighbors(static_cast<Vertex>(v));
    auto ws = adjacency_.weights(static_cast<Vertex>(v));
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      if (nbrs[i] != v) d += ws[i];
    }
    degree_[v] = d;
  }
  std::uint32_t comps = 0;
  for (auto c : component_) comps = std::max(comps, c + 1);
  component_size_.assign(comps, 0.0);
  for (auto c : component_) component_size_[c] += 1.0;
}

void LaplacianSolver::project(std::span<double> x) const {
  std::vector<double> sum(component_size_.size(), 0.0);
  for (std::size_t v = 0; v < x.size(); ++v) sum[component_[v]] += x[v];
  for (std::size_t v = 0; v < x.size(); ++v) x[v] -= sum[component_[v]] / component_size_[component_[v]];
}

void LaplacianSolver::precondition(std::span<const double> r, std::span<double> z) const {
  if (!forest_) {
    for (std::size_t v = 0; v < r.size(); ++v) z[v] = degree_[v] > 0.0 ? r[v] / degree_[v] : 0.0;
    project(z);
    return;
  }
  // Exact forest solve: subtree sums give the current on each tree edge.
  const RootedTree& t = *forest_;
  std::vector<double> flow(r.begin(), r.end());
  auto order = t.order();
  for (std::size_t i = order.size(); i-- > 0;) {
    const Vertex v = order[i];
    const Vertex p = t.parent(v);
    if (p != kNoVertex) flow[p] += flow[v];
  }
  for (const Vertex v : order) {
    const Vertex p = t.parent(v);
    z[v] = p == kNoVertex ? 0.0 : z[p] + flow[v] / t.parent_weight(v);
  }
  project(z);
}

SolveResult LaplacianSolver::solve(std::span<const double> b_in, std::span<double> x) const {
  const std::size_t n = b_in.size();
  std::vector<double> b(b_in.begin(), b_in.end());
  project(b);
  std::fill(x.begin(), x.end(), 0.0);
  SolveResult result;
  const double b_norm = std::sqrt(dot(b, b));
  if (b_norm == 0.0) {
    result.converged = true;
    return result;
  }

  std::vector<double> r(b), z(n), p(n), q(n);
  precondition(r, z);
  p = z;
  double rz = dot(r, z);
  for (int it = 1; it <= options_.max_iterations; ++it) {
    adjacency_.laplacian_apply(p, q);
    const double pq = dot(p, q);
    if (!(pq > 0.0)) break;
    const double alpha = rz / pq;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] += alpha * p[i];
      r[i] -= alpha * q[i];
    }
    result.iterations = it;
    result.relative_residual = std::sqrt(dot(r, r)) / b_norm;
    if (result.relative_residual <= options_.tolerance) {
      result.converged = true;
      break;
    }
    precondition(r, z);
    const double rz_next = dot(r, z);
    const double beta = rz_next / rz;
    rz = rz_next;
    for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
  }
  project(x);
  if (result.converged) {
    // Confirm against the true residual; the recurrence can drift.
    std::vector<double> lx(n);
    adjacency_.laplacian_apply(x, lx);
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += (b[i] - lx[i]) * (b[i] - lx[i]);
    result.relative_residual = std::sqrt(s) / b_norm;
    result.converged = result.relative_residual <= 10.0 * options_.tolerance;
  }
  return result;
}

}  // namespace walksparse
