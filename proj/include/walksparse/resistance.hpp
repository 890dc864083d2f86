#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <span>
#include <vector>

#include "walksparse/graph.hpp"
#include "walksparse/laplacian_solver.hpp"
#include "walksparse/tree.hpp"

namespace walksparse {

/// Disconnected pairs have infinite resistance; this is the only value used
/// to encode it.
inline constexpr double kInfiniteResistance = std::numeric_limits<double>::infinity();

/// Per-edge resistance upper bounds r_e, aligned with a graph's edge order,
/// and the induced leverage bounds tau_e = w_e r_e. Self-loops carry 0.
class ResistanceBounds {
 public:
  ResistanceBounds() = default;
  /// Throws std::invalid_argument on a size mismatch or a negative or NaN
  /// bound.
  ResistanceBounds(const Graph& g, std::vector<double> resistance);

  std::size_t size() const { return resistance_.size(); }
  std::span<const double> resistance() const { return resistance_; }
  std::span<const double> leverage() const { return leverage_; }
  double resistance(std::size_t e) const { return resistance_[e]; }
  double leverage(std::size_t e) const { return leverage_[e]; }
  double total_leverage() const { return total_; }

  /// Bounds multiplied by `factor`; used for the odd-k inflation and for
  /// kappa-scaled tree bounds.
  ResistanceBounds scaled(const Graph& g, double factor) const;

 private:
  std::vector<double> resistance_;
  std::vector<double> leverage_;
  double total_ = 0.0;
};

/// Lines `u v r` in edge order, then `# total_tau <value>`.
void write_bounds(std::ostream& out, const Graph& g, const ResistanceBounds& bounds);

/// Dense pseudoinverse oracle. Eigenvalues below 1e-9 * lambda_max are
/// treated as zero.
class ExactResistance {
 public:
  explicit ExactResistance(const Graph& g, const OracleCap& cap = {});

  /// chi_uv^T L^+ chi_uv; kInfiniteResistance across components.
  double operator()(Vertex u, Vertex v) const;
  const DenseMatrix& pseudoinverse() const { return pinv_; }

 private:
  DenseMatrix pinv_;
  std::vector<std::uint32_t> component_;
};

double exact_resistance(const Graph& g, Vertex u, Vertex v, const OracleCap& cap = {});

/// Exact leverage scores; their total is n minus the number of components.
ResistanceBounds leverage_scores(const Graph& g, const OracleCap& cap = {});

struct JlOptions {
  double c_jl = 10.0;
  SolverOptions solver{};
  int tree_candidates = 8;
};

/// Johnson-Lindenstrauss estimate of every edge resistance: q =
/// ceil(c_jl ln n / delta^2) random +-1/sqrt(q) projections of the weighted
/// incidence operator, each solved against L by tree-preconditioned CG
/// (Jacobi fallback). The raw estimate r_hat lies in (1 +- delta) R_eff with
/// high probability; the returned bound is r_hat / (1 - delta), which is at
/// least R_eff on that event. Throws SolverError naming the row that failed.
ResistanceBounds jl_resistance_bounds(const Graph& g, double delta, std::uint64_t seed,
                                      const JlOptions& options = {});

/// Number of sketch rows used by jl_resistance_bounds.
std::size_t jl_rows(std::size_t n, double delta, double c_jl);

/// r_e = kappa * (tree-path resistance between the endpoints of e).
ResistanceBounds tree_resistance_bounds(const Graph& g, const RootedTree& t, double kappa = 1.0);

}  // namespace walksparse
