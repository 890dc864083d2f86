#include <doctest.h>

#include "support.hpp"
#include "walksparse/generate.hpp"
#include "walksparse/oracle.hpp"
#include "walksparse/sparsify.hpp"

using namespace walksparse;

namespace {

Graph k3() { return Graph(3, {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}}); }

SamplerConfig seeded(std::uint64_t seed, double eps = 0.5) {
  SamplerConfig cfg;
  cfg.seed = seed;
  cfg.epsilon = eps;
  return cfg;
}

}  // namespace

TEST_CASE("sampler config validation") {
  SamplerConfig cfg;
  cfg.epsilon = 1.5;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.epsilon = 0.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.epsilon = 0.5;
  cfg.oversample = 0.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.oversample = 9.0;
  CHECK(cfg.overhead(100) == doctest::Approx(36.0 * std::log(100.0)));
  CHECK(sample_count(cfg, 100, 2.0) ==
        static_cast<std::uint64_t>(std::ceil(72.0 * std::log(100.0))));
}

TEST_CASE("single edge comes back with its own weight") {
  const Graph g(2, {{0, 1, 2.75}});
  const ResistanceBounds tau(g, {1.0 / 2.75});
  const SparsifyResult r = ideal_sample(g, tau, seeded(1));
  REQUIRE(r.graph.num_edges() == 1);
  CHECK(r.graph.edge(0).w == 2.75);
  CHECK(r.report.samples == sample_count(seeded(1), 2, 1.0));
}

TEST_CASE("ideal sample report and edge count") {
  const Graph g = generate_connected(40, 0.3, 2, true);
  const SparsifyResult r = ideal_sample(g, leverage_scores(g), seeded(4));
  CHECK(r.report.n == 40);
  CHECK(r.report.m_in == g.num_edges());
  CHECK(r.report.m_out == r.graph.num_edges());
  CHECK(r.report.m_out <= r.report.samples);
  CHECK(r.report.sum_tau == doctest::Approx(39.0));
  const auto j = to_json(r.report);
  for (const char* key : {"n", "m_in", "m_out", "N", "sum_tau", "epsilon", "seed", "elapsed_ms"}) {
    CHECK(j.contains(key));
  }
  CHECK_FALSE(j.contains("kappa_measured"));
  // Output lists sampled edges once each, in input order.
  for (std::size_t i = 1; i < r.graph.num_edges(); ++i) {
    const Edge& a = r.graph.edge(i - 1);
    const Edge& b = r.graph.edge(i);
    CHECK((a.u != b.u || a.v != b.v));
  }
}

TEST_CASE("ideal sample rejects bad bounds") {
  const Graph g = generate_path(3);
  CHECK_THROWS_AS(ideal_sample(g, ResistanceBounds(g, {0.0, 0.0}), seeded(1)),
                  std::invalid_argument);
  CHECK_THROWS_AS(ResistanceBounds(g, {-1.0, 1.0}), std::invalid_argument);
}

TEST_CASE("serial and parallel ideal sample agree") {
  const Graph g = generate_connected(60, 0.2, 7, true);
  SamplerConfig a = seeded(3);
  a.serial = true;
  const SamplerConfig b = seeded(3);
  const SparsifyResult ra = ideal_sample(g, leverage_scores(g), a);
  const SparsifyResult rb = ideal_sample(g, leverage_scores(g), b);
  REQUIRE(ra.graph.num_edges() == rb.graph.num_edges());
  for (std::size_t e = 0; e < ra.graph.num_edges(); ++e) CHECK(ra.graph.edge(e).w == rb.graph.edge(e).w);
}

TEST_CASE("ideal sample is unbiased on a tree") {
  const Graph t = generate_connected(6, 0.0, 3, true);
  const ResistanceBounds tau = leverage_scores(t);
  ref::MatrixMean mean(6);
  for (std::uint64_t seed = 0; seed < 2000; ++seed) mean.add(laplacian(ideal_sample(t, tau, seeded(seed)).graph));
  CHECK(mean.max_z(ref::laplacian(t)) <= 4.0);
}

TEST_CASE("per-edge weight conservation") {
  const Graph g = generate_connected(7, 0.5, 5, true);
  const ResistanceBounds tau = leverage_scores(g);
  const std::size_t m = g.num_edges();
  std::vector<double> sum(m, 0.0), sq(m, 0.0);
  const int runs = 3000;
  for (int s = 0; s < runs; ++s) {
    SamplerConfig cfg = seeded(static_cast<std::uint64_t>(s));
    cfg.oversample = 1.0;
    const Graph h = ideal_sample(g, tau, cfg).graph;
    // Output is in input order; match by walking both lists.
    std::size_t j = 0;
    for (std::size_t e = 0; e < m && j < h.num_edges(); ++e) {
      if (h.edge(j).u == g.edge(e).u && h.edge(j).v == g.edge(e).v) {
        const double x = h.edge(j).w / g.edge(e).w;
        sum[e] += x;
        sq[e] += x * x;
        ++j;
      }
    }
  }
  for (std::size_t e = 0; e < m; ++e) {
    const double mean = sum[e] / runs;
    const double se = std::sqrt((sq[e] / runs - mean * mean) / runs);
    CHECK(std::abs(mean - 1.0) <= 4.0 * se + 1e-12);
  }
}

TEST_CASE("K3 sparsifiers meet the kappa bound") {
  int ok = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Graph h = ideal_sample(k3(), leverage_scores(k3()), seeded(seed)).graph;
    ok += is_eps_sparsifier(k3(), h, 0.5);
  }
  CHECK(ok >= 18);
}

TEST_CASE("rounding bounds to multiples of 1/n") {
  const Graph g = generate_connected(30, 0.3, 4, true);
  SamplerConfig cfg = seeded(2);
  cfg.round_to_n_inverse = true;
  const ResistanceBounds tau = leverage_scores(g);
  const SparsifyResult r = ideal_sample(g, tau, cfg);
  const double before = r.report.extra["sum_tau_unrounded"].get<double>();
  CHECK(before == doctest::Approx(tau.total_leverage()));
  CHECK(r.report.sum_tau >= before);
  CHECK(r.report.sum_tau - before <= static_cast<double>(g.num_edges()) / 30.0 + 1e-9);
  CHECK(r.report.sum_tau * 30.0 == doctest::Approx(std::round(r.report.sum_tau * 30.0)));
}

TEST_CASE("tree sparsify examples") {
  const Graph t = generate_connected(25, 0.0, 6, true);
  const TreeSparsifyResult a = tree_sparsify(t, t, 1.0, seeded(1));
  for (double x : a.bounds.leverage()) CHECK(x == doctest::Approx(1.0));
  CHECK(a.report.samples == static_cast<std::uint64_t>(std::ceil(9.0 / 0.25 * std::log(25.0) * 24.0)));

  const Graph c4 = generate_cycle(4);
  const TreeSparsifyResult b = tree_sparsify(c4, c4, 1.0, seeded(1));
  CHECK(b.report.sum_tau == doctest::Approx(6.0));
  CHECK_THROWS_AS(tree_sparsify(c4, c4, 0.5, seeded(1)), std::invalid_argument);
}

TEST_CASE("tree sparsify guided by a sparsifier") {
  int ok = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Graph g = generate_gnp(100, 0.2, 50 + seed);
    REQUIRE(is_connected(g));
    const Graph gp = ideal_sample(g, leverage_scores(g), seeded(seed)).graph;
    const TreeSparsifyResult r = tree_sparsify(g, gp, 3.0, seeded(1000 + seed));
    const ExactResistance exact(g);
    for (std::size_t e = 0; e < g.num_edges(); e += 13) {
      CHECK(r.bounds.resistance(e) >= exact(g.edge(e).u, g.edge(e).v) * (1.0 - 1e-9));
    }
    ok += is_eps_sparsifier(g, r.graph, 0.5);
  }
  CHECK(ok >= 18);
}

TEST_CASE("tree augmented graph") {
  const Graph g = generate_connected(30, 0.2, 9, true);
  const RootedTree t = build_tree(g, 9);
  const TreeAugmentedGraph aug(g, t, 4.0);
  CHECK(aug.num_edges() == g.num_edges() + 29);
  const Graph mat = aug.materialize();
  CHECK(ref::frobenius_rel(aug.laplacian(), ref::laplacian(mat)) <= 1e-14);
  const auto own = aug.own_tree_leverage();
  const ResistanceBounds exact = leverage_scores(mat);
  for (std::size_t e = 0; e < own.size(); ++e) CHECK(exact.leverage(e) <= own[e] * (1.0 + 1e-10));
}

TEST_CASE("chain level helpers") {
  CHECK(chain_top_level(200) == 3);
  CHECK(chain_top_level(16) == 2);
  CHECK(chain_split_fraction(256) == doctest::Approx(1.0 / 64.0));
}

TEST_CASE("chain on a tree bypasses and stays accurate") {
  const Graph t = generate_connected(60, 0.0, 1, true);
  ChainOptions opts;
  opts.check_levels = true;
  const ChainResult r = chain_sparsify(t, seeded(1), opts);
  CHECK(r.bypassed);
  REQUIRE(r.report.kappa_measured.has_value());
  CHECK(*r.report.kappa_measured <= 3.0);
}

TEST_CASE("chain levels pass their checks") {
  const Graph g = generate_gnp(128, 0.3, 21);
  REQUIRE(is_connected(g));
  ChainOptions opts;
  opts.check_levels = true;
  const ChainResult r = chain_sparsify(g, seeded(5), opts);
  CHECK_FALSE(r.bypassed);
  REQUIRE(r.levels.size() == static_cast<std::size_t>(chain_top_level(128)) + 1);
  const double level_bound = sparsifier_kappa_bound(0.25);
  for (const ChainLevelReport& lr : r.levels) {
    REQUIRE(lr.kappa_crude.has_value());
    CHECK(*lr.kappa_crude <= level_bound);
    CHECK(*lr.kappa_final <= level_bound * level_bound);
  }
  // Stretch against a scaled tree shrinks as the scale grows.
  for (std::size_t i = 1; i < r.levels.size(); ++i) {
    CHECK(r.levels[i - 1].sum_tau_crude <= r.levels[i].sum_tau_crude);
  }
  CHECK(*r.report.kappa_measured <= 3.0);
  CHECK(r.report.m_out <= r.report.samples);
}

TEST_CASE("chain bounds dominate exact resistances") {
  const Graph g = generate_gnp(80, 0.3, 4);
  const ChainResult r = chain_sparsify(g, seeded(2));
  const ExactResistance exact(g);
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    CHECK(r.bounds.resistance(e) >= exact(g.edge(e).u, g.edge(e).v) * (1.0 - 1e-9));
  }
}

TEST_CASE("chain rejects disconnected input") {
  const Graph g(8, {{0, 1, 1.0}, {1, 2, 1.0}, {4, 5, 1.0}});
  CHECK_THROWS_AS(chain_sparsify(g, seeded(1)), DisconnectedGraph);
}
