// Serial reference vs OpenMP kernels on the two sampling loops.

#include <chrono>
#include <cstdio>
#include <vector>

#include "walksparse/generate.hpp"
#include "walksparse/sampling.hpp"
#include "walksparse/sparsify.hpp"
#include "walksparse/tree.hpp"
#include "walksparse/walk.hpp"

#ifdef WALKSPARSE_HAVE_OPENMP
#include <omp.h>
#endif

namespace ws = walksparse;
using Clock = std::chrono::steady_clock;

template <class F>
double best_ms(F&& f, int reps = 3) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t = Clock::now();
    f();
    best = std::min(best, std::chrono::duration<double, std::milli>(Clock::now() - t).count());
  }
  return best;
}

int main() {
  int threads = 1;
#ifdef WALKSPARSE_HAVE_OPENMP
  threads = omp_get_max_threads();
#endif
  std::printf("threads %d\n", threads);
  std::printf("%-28s %12s %12s %8s %6s\n", "kernel", "serial_ms", "parallel_ms", "speedup", "same");

  const ws::Graph g = ws::generate_gnp(400, 0.03, 1);
  const ws::RootedTree t = ws::build_spanning_forest(g, 1);
  const ws::ResistanceBounds bounds = ws::tree_resistance_bounds(g, t);

  {
    const ws::PrefixSampler sampler(bounds.leverage());
    const std::uint64_t draws = 20'000'000;
    std::vector<std::uint64_t> a, b;
    const double s = best_ms([&] { a = ws::draw_counts_serial(sampler, draws, 7); });
    const double p = best_ms([&] { b = ws::draw_counts(sampler, draws, 7); });
    std::printf("%-28s %12.1f %12.1f %8.2f %6s\n", "edge draws (2e7)", s, p, s / p,
                a == b ? "yes" : "no");
  }
  for (int k : {2, 3}) {
    ws::SamplerConfig serial;
    serial.serial = true;
    ws::SamplerConfig parallel;
    ws::WalkSparsifyResult a, b;
    const double s = best_ms([&] { a = ws::sparsify_gk_with_bounds(g, k, bounds, serial); }, 1);
    const double p = best_ms([&] { b = ws::sparsify_gk_with_bounds(g, k, bounds, parallel); }, 1);
    bool same = a.graph.num_edges() == b.graph.num_edges();
    for (std::size_t e = 0; same && e < a.graph.num_edges(); ++e) {
      same = a.graph.edge(e).u == b.graph.edge(e).u && a.graph.edge(e).v == b.graph.edge(e).v &&
             a.graph.edge(e).w == b.graph.edge(e).w;
    }
    char label[64];
    std::snprintf(label, sizeof label, "walk samples k=%d (%llu)", k,
                  static_cast<unsigned long long>(a.report.samples));
    std::printf("%-28s %12.1f %12.1f %8.2f %6s\n", label, s, p, s / p, same ? "yes" : "no");
  }
  return 0;
}
