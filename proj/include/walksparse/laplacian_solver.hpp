#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "walksparse/graph.hpp"
#include "walksparse/tree.hpp"

namespace walksparse {

class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SolverOptions {
  double tolerance = 1e-8;  // relative residual
  int max_iterations = 2000;
};

struct SolveResult {
  int iterations = 0;
  double relative_residual = 0.0;
  bool converged = false;
};

/// Preconditioned conjugate gradient for L x = b on a (possibly
/// disconnected) graph Laplacian. The right-hand side is projected onto the
/// range of L (zero sum per component) and the solution is returned with
/// zero mean per component. Preconditioner: exact solve on a spanning
/// forest when one is given, Jacobi otherwise.
class LaplacianSolver {
 public:
  LaplacianSolver(const Graph& g, RootedTree forest, SolverOptions options = {});
  explicit LaplacianSolver(const Graph& g, SolverOptions options = {});

  SolveResult solve(std::span<const double> b, std::span<double> x) const;
  bool uses_tree_preconditioner() const { return forest_.has_value(); }

 private:
  void precondition(std::span<const double> r, std::span<double> z) const;
  void project(std::span<double> x) const;

  Adjacency adjacency_;
  std::optional<RootedTree> forest_;
  std::vector<double> degree_;
  std::vector<std::uint32_t> component_;
  std::vector<double> component_size_;
  SolverOptions options_;
};

}  // namespace walksparse
