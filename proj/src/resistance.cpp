#include "walksparse/resistance.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

#include "walksparse/graph_io.hpp"
#include "walksparse/random.hpp"

namespace walksparse {

ResistanceBounds::ResistanceBounds(const Graph& g, std::vector<double> resistance)
    : resistance_(std::move(resistance)) {
  if (resistance_.size() != g.num_edges()) {
    throw std::invalid_argument("ResistanceBounds: one bound per edge required");
  }
  leverage_.resize(resistance_.size());
  for (std::size_t e = 0; e < resistance_.size(); ++e) {
    const double r = resistance_[e];
    if (!(r >= 0.0) || !std::isfinite(r)) {
      std::ostringstream msg;
      msg << "ResistanceBounds: bound " << r << " on edge " << e << " is negative or not finite";
      throw std::invalid_argument(msg.str());
    }
    if (g.edge(e).is_loop()) resistance_[e] = 0.0;
    leverage_[e] = g.edge(e).w * resistance_[e];
    total_ += leverage_[e];
  }
}

ResistanceBounds ResistanceBounds::scaled(const Graph& g, double factor) const {
  std::vector<double> r(resistance_);
  for (double& x : r) x *= factor;
  return ResistanceBounds(g, std::move(r));
}

void write_bounds(std::ostream& out, const Graph& g, const ResistanceBounds& bounds) {
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    out << g.edge(e).u << ' ' << g.edge(e).v << ' ' << format_double(bounds.resistance(e))
        << '\n';
  }
  out << "# total_tau " << format_double(bounds.total_leverage()) << '\n';
}

ExactResistance::ExactResistance(const Graph& g, const OracleCap& cap)
    : component_(component_labels(g)) {
  if (g.num_vertices() > cap.max_vertices) {
    std::ostringstream msg;
    msg << "exact resistance: n = " << g.num_vertices() << " exceeds the oracle cap of "
        << cap.max_vertices;
    throw CapExceeded(msg.str());
  }
  const DenseMatrix l = laplacian(g);
  Eigen::SelfAdjointEigenSolver<DenseMatrix> eig(l);
  const Eigen::VectorXd& lambda = eig.eigenvalues();
  const double lambda_max = lambda.size() > 0 ? lambda.maxCoeff() : 0.0;
  const double threshold = 1e-9 * lambda_max;
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(lambda.size());
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    if (lambda(i) > threshold && lambda(i) > 0.0) inv(i) = 1.0 / lambda(i);
  }
  pinv_ = eig.eigenvectors() * inv.asDiagonal() * eig.eigenvectors().transpose();
}

double ExactResistance::operator()(Vertex u, Vertex v) const {
  if (u == v) return 0.0;
  if (component_[u] != component_[v]) return kInfiniteResistance;
  return pinv_(u, u) + pinv_(v, v) - 2.0 * pinv_(u, v);
}

double exact_resistance(const Graph& g, Vertex u, Vertex v, const OracleCap& cap) {
  return ExactResistance(g, cap)(u, v);
}

ResistanceBounds leverage_scores(const Graph& g, const OracleCap& cap) {
  const ExactResistance oracle(g, cap);
  std::vector<double> r(g.num_edges());
  for (std::size_t e = 0; e < g.num_edges(); ++e) r[e] = oracle(g.edge(e).u, g.edge(e).v);
  return ResistanceBounds(g, std::move(r));
}

std::size_t jl_rows(std::size_t n, double delta, double c_jl) {
  const double logn = std::log(static_cast<double>(std::max<std::size_t>(n, 2)));
  return static_cast<std::size_t>(std::ceil(c_jl * logn / (delta * delta)));
}

ResistanceBounds jl_resistance_bounds(const Graph& g, double delta, std::uint64_t seed,
                                      const JlOptions& options) {
  if (!(delta > 0.0 && delta <= 1.0)) {
    throw std::invalid_argument("jl_resistance_bounds: delta must lie in (0, 1]");
  }
  if (delta == 1.0) {
    throw std::invalid_argument("jl_resistance_bounds: delta = 1 gives no finite upper bound");
  }
  const std::size_t n = g.num_vertices();
  const std::size_t m = g.num_edges();
  const std::size_t q = jl_rows(n, delta, options.c_jl);
  const double scale = 1.0 / std::sqrt(static_cast<double>(q));

  const LaplacianSolver tree_solver(g, build_spanning_forest(g, seed, options.tree_candidates),
                                    options.solver);
  const LaplacianSolver jacobi_solver(g, options.solver);

  std::vector<double> sqrt_w(m);
  for (std::size_t e = 0; e < m; ++e) sqrt_w[e] = std::sqrt(g.edge(e).w);

  // Row j of the sketch, solved against L, in z[j * n .. (j + 1) * n).
  std::vector<double> z(q * n, 0.0);
  std::vector<int> failed(q, 0);
#pragma omp parallel for schedule(dynamic)
  for (std::size_t j = 0; j < q; ++j) {
    auto rng = SplitMix64::substream(seed, Stream::kJlSketch, j);
    std::vector<double> rhs(n, 0.0);
    for (std::size_t e = 0; e < m; ++e) {
      const Edge& edge = g.edge(e);
      const double s = rng.coin() ? scale : -scale;
      if (edge.is_loop()) continue;
      rhs[edge.u] += s * sqrt_w[e];
      rhs[edge.v] -= s * sqrt_w[e];
    }
    std::span<double> out(z.data() + j * n, n);
    if (!tree_solver.solve(rhs, out).converged && !jacobi_solver.solve(rhs, out).converged) {
      failed[j] = 1;
    }
  }
  for (std::size_t j = 0; j < q; ++j) {
    if (failed[j]) {
      throw SolverError("jl_resistance_bounds: Laplacian solve for sketch row " +
                        std::to_string(j) + " did not converge");
    }
  }

  std::vector<double> r(m, 0.0);
  const double inflate = 1.0 / (1.0 - delta);
#pragma omp parallel for schedule(static)
  for (std::size_t e = 0; e < m; ++e) {
    const Edge& edge = g.edge(e);
    if (edge.is_loop()) continue;
    double acc = 0.0;
    for (std::size_t j = 0; j < q; ++j) {
      const double d = z[j * n + edge.u] - z[j * n + edge.v];
      acc += d * d;
    }
    r[e] = acc * inflate;
  }
  return ResistanceBounds(g, std::move(r));
}

ResistanceBounds tree_resistance_bounds(const Graph& g, const RootedTree& t, double kappa) {
  if (t.num_vertices() != g.num_vertices()) {
    throw std::invalid_argument("tree_resistance_bounds: tree does not span the graph");
  }
  std::vector<double> r(g.num_edges());
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    const Edge& edge = g.edge(e);
    r[e] = edge.is_loop() ? 0.0 : kappa * t.path_resistance(edge.u, edge.v);
  }
  return ResistanceBounds(g, std::move(r));
}

}  // namespace walksparse
