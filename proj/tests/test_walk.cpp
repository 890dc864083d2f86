#include <doctest.h>

#include <map>
#include <set>

#include "support.hpp"
#include "walksparse/generate.hpp"
#include "walksparse/oracle.hpp"
#include "walksparse/walk.hpp"

using namespace walksparse;

namespace {

Graph p3() { return generate_path(3); }

/// Target law: w(walk) * sum_i r(u_i, u_{i+1}), normalised over all walks.
/// Pair bounds are w-weighted averages over parallel edges.
std::map<std::vector<Vertex>, double> target(const Graph& g, const ResistanceBounds& b, int k) {
  std::map<std::pair<Vertex, Vertex>, double> lev, wt;
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    const Edge& x = g.edge(e);
    for (auto key : {std::pair{x.u, x.v}, std::pair{x.v, x.u}}) {
      lev[key] += b.leverage(e);
      wt[key] += x.w;
    }
  }
  std::map<std::vector<Vertex>, double> out;
  double total = 0.0;
  for (const ref::Walk& w : ref::walks(g, k)) {
    double rs = 0.0;
    for (int i = 0; i < k; ++i) {
      const std::pair key{w.v[i], w.v[i + 1]};
      rs += lev[key] / wt[key];
    }
    out[w.v] += w.w * rs;
    total += w.w * rs;
  }
  for (auto& [walk, p] : out) p /= total;
  return out;
}

SamplerConfig seeded(std::uint64_t seed) {
  SamplerConfig cfg;
  cfg.seed = seed;
  return cfg;
}

ResistanceBounds ones(const Graph& g) { return ResistanceBounds(g, std::vector<double>(g.num_edges(), 1.0)); }

}  // namespace

TEST_CASE("k = 1 samples are the anchor edge") {
  const Graph g(3, {{0, 1, 1.0}, {1, 2, 3.0}});
  const ResistanceBounds b(g, {1.0, 0.5});
  const WalkSampler s(g, b, 1);
  for (std::uint64_t i = 0; i < 100; ++i) {
    const WalkSample w = s.sample(1, i);
    CHECK(w.vertices.size() == 2);
    CHECK(w.anchor == 0);
    CHECK(w.walk_weight == (w.vertices[0] + w.vertices[1] == 3 ? 3.0 : 1.0));
  }
  const auto d = sampler_distribution(g, b, 1);
  CHECK(d.at({0, 1}) == doctest::Approx(1.0 / 5.0));
  CHECK(d.at({1, 0}) == doctest::Approx(1.0 / 5.0));
  CHECK(d.at({1, 2}) == doctest::Approx(1.5 / 5.0));
  CHECK(d.at({2, 1}) == doctest::Approx(1.5 / 5.0));
}

TEST_CASE("P3, k = 2: analytic law matches the target") {
  const auto d = sampler_distribution(p3(), ones(p3()), 2);
  CHECK(d.size() == 6);
  CHECK(ref::total_variation(d, target(p3(), ones(p3()), 2)) < 1e-12);
  CHECK(d.at({0, 1, 2}) == doctest::Approx(0.125));
  CHECK(d.at({1, 0, 1}) == doctest::Approx(0.25));
}

TEST_CASE("star, k = 2: leaf-to-leaf walks are equally likely") {
  const Graph star = generate_star(4);
  const auto d = sampler_distribution(star, ones(star), 2);
  std::set<double> leaf_probs;
  double total = 0.0;
  for (const auto& [walk, p] : d) {
    total += p;
    if (walk[0] != 0 && walk[2] != 0 && walk[0] != walk[2]) leaf_probs.insert(std::round(p * 1e12));
  }
  CHECK(leaf_probs.size() == 1);
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("analytic law matches the target on weighted graphs") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const Graph g = generate_connected(4 + seed % 3, 0.4, seed, true);
    std::vector<double> r(g.num_edges());
    for (std::size_t e = 0; e < r.size(); ++e) r[e] = 0.3 + 0.1 * static_cast<double>((e * 7) % 5);
    const ResistanceBounds b(g, r);
    for (int k = 1; k <= 3; ++k) CHECK(ref::total_variation(sampler_distribution(g, b, k), target(g, b, k)) < 1e-12);
  }
}

TEST_CASE("sampled walks follow the analytic law") {
  const Graph g(4, {{0, 1, 1.0}, {1, 2, 2.0}, {2, 3, 1.0}, {0, 2, 0.5}, {1, 2, 1.0}});
  const ResistanceBounds b(g, {1.0, 0.4, 0.9, 1.3, 0.2});
  const WalkSampler s(g, b, 3);
  const auto d = sampler_distribution(g, b, 3);
  std::map<std::vector<Vertex>, int> count;
  const int draws = 200000;
  for (int i = 0; i < draws; ++i) ++count[s.sample(42, static_cast<std::uint64_t>(i)).vertices];
  for (const auto& [walk, c] : count) REQUIRE(d.count(walk) == 1);
  for (const auto& [walk, p] : d) {
    const double expect = p * draws;
    const double sd = std::sqrt(expect * (1.0 - p));
    const auto it = count.find(walk);
    const double seen = it == count.end() ? 0.0 : it->second;
    CHECK(std::abs(seen - expect) <= 5.0 * sd + 1.0);
  }
}

TEST_CASE("walk mass and the ordered-walk total") {
  CHECK(walk_mass(p3(), ones(p3()), 2) == 4.0);
  double ordered = 0.0;
  for (const ref::Walk& w : ref::walks(p3(), 2)) ordered += w.w * 2.0;
  CHECK(ordered == doctest::Approx(8.0));

  const Graph edge(2, {{0, 1, 2.5}});
  const auto walks = ref::walks(edge, 3);
  CHECK(walks.size() == 2);
  double total = 0.0;
  for (const ref::Walk& w : walks) {
    CHECK(w.w == doctest::Approx(2.5));
    total += w.w * 3.0;
  }
  CHECK(total == doctest::Approx(6.0 * 2.5));
  CHECK(total == doctest::Approx(2.0 * walk_mass(edge, ones(edge), 3)));

  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Graph g = generate_connected(5, 0.5, seed, true);
    std::vector<double> r(g.num_edges());
    for (std::size_t e = 0; e < r.size(); ++e) r[e] = 1.0 + static_cast<double>(e % 3);
    const ResistanceBounds b(g, r);
    for (int k = 1; k <= 4; ++k) {
      double sum = 0.0;
      for (const ref::Walk& w : ref::walks(g, k)) {
        double rs = 0.0;
        for (int i = 0; i < k; ++i) {
          double lev = 0.0, wt = 0.0;
          for (std::size_t e = 0; e < g.num_edges(); ++e) {
            const Edge& x = g.edge(e);
            if ((x.u == w.v[i] && x.v == w.v[i + 1]) || (x.v == w.v[i] && x.u == w.v[i + 1])) {
              lev += b.leverage(e);
              wt += x.w;
            }
          }
          rs += lev / wt;
        }
        sum += w.w * rs;
      }
      CHECK(sum == doctest::Approx(2.0 * walk_mass(g, b, k)).epsilon(1e-12));
    }
  }
}

TEST_CASE("anchored walk mass equals the edge weight") {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const Graph g = generate_connected(4 + seed % 3, 0.4, seed, true);
    const DenseMatrix a = ref::adjacency(g);
    for (int k = 1; k <= 4; ++k) {
      std::map<std::tuple<int, Vertex, Vertex>, double> mass;
      for (const ref::Walk& w : ref::walks(g, k)) {
        for (int i = 0; i < k; ++i) mass[{i, w.v[i], w.v[i + 1]}] += w.w;
      }
      for (const auto& [key, m] : mass) {
        const double expect = a(std::get<1>(key), std::get<2>(key));
        CHECK(std::abs(m - expect) <= 1e-10 * expect);
      }
    }
  }
}

TEST_CASE("walk bounds dominate walk-graph resistances") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Graph g = generate_connected(8, 0.3, seed, true);
    for (int k = 1; k <= 4; ++k) {
      const ExactResistance rk(walk_graph_dense(g, k));
      for (Estimator est : {Estimator::kExact, Estimator::kTree}) {
        WalkOptions opts;
        opts.estimator = est;
        const ResistanceBounds b = walk_bounds(g, k, opts, seed).bounds;
        // Edge by edge only for odd k; even-k bounds live on the double cover.
        for (std::size_t e = 0; e < g.num_edges() && k % 2 == 1; ++e) {
          const double exact = rk(g.edge(e).u, g.edge(e).v);
          if (std::isfinite(exact)) CHECK(b.resistance(e) >= exact * (1.0 - 1e-9));
        }
        // Summed along any walk, the bounds cover the endpoint resistance.
        const WalkSampler s(g, b, k);
        for (std::uint64_t i = 0; i < 200; ++i) {
          const WalkSample w = s.sample(seed, i);
          double rs = 0.0;
          for (int j = 0; j < k; ++j) rs += s.pair_resistance(w.vertices[j], w.vertices[j + 1]);
          const double exact = rk(w.vertices.front(), w.vertices.back());
          if (std::isfinite(exact)) CHECK(rs >= exact * (1.0 - 1e-9));
        }
      }
    }
  }
}

TEST_CASE("even-k bounds come from the double cover") {
  const Graph g = generate_connected(7, 0.4, 3, true);
  const ExactResistance rc(double_cover(g));
  WalkOptions opts;
  const ResistanceBounds b = walk_bounds(g, 2, opts, 1).bounds;
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    CHECK(b.resistance(e) == doctest::Approx(rc(g.edge(e).u, g.edge(e).v + 7)).epsilon(1e-12));
  }
  const ResistanceBounds odd = walk_bounds(g, 3, opts, 1).bounds;
  const ExactResistance rg(g);
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    CHECK(odd.resistance(e) == doctest::Approx(2.0 * rg(g.edge(e).u, g.edge(e).v)).epsilon(1e-12));
  }
}

TEST_CASE("P3, k = 2: output supported on the end pair") {
  const WalkSparsifyResult r = sparsify_gk(p3(), 2, seeded(3));
  REQUIRE(r.graph.num_edges() == 1);
  CHECK(r.graph.edge(0).u == 0);
  CHECK(r.graph.edge(0).v == 2);
  CHECK(r.report.m_out <= r.report.samples);
  const double loops = r.report.extra["self_loop_fraction"].get<double>();
  CHECK(loops > 0.5);
  CHECK(loops < 1.0);
}

TEST_CASE("P3, k = 2: unbiased") {
  DenseMatrix golden(3, 3);
  golden << 0.5, 0, -0.5, 0, 0, 0, -0.5, 0, 0.5;
  ref::MatrixMean mean(3);
  for (std::uint64_t s = 0; s < 3000; ++s) mean.add(laplacian(sparsify_gk(p3(), 2, seeded(s)).graph));
  CHECK(mean.max_z(golden) <= 4.0);
}

TEST_CASE("serial and parallel walk kernels agree bit for bit") {
  const Graph g = generate_connected(40, 0.2, 8, true);
  SamplerConfig a = seeded(5);
  a.serial = true;
  for (int k : {2, 3}) {
    const WalkSparsifyResult ra = sparsify_gk(g, k, a);
    const WalkSparsifyResult rb = sparsify_gk(g, k, seeded(5));
    REQUIRE(ra.graph.num_edges() == rb.graph.num_edges());
    for (std::size_t e = 0; e < ra.graph.num_edges(); ++e) {
      CHECK(ra.graph.edge(e).u == rb.graph.edge(e).u);
      CHECK(ra.graph.edge(e).v == rb.graph.edge(e).v);
      CHECK(ra.graph.edge(e).w == rb.graph.edge(e).w);
    }
  }
}

TEST_CASE("walk sparsifier output is sorted and within the sample count") {
  const Graph g = generate_connected(30, 0.2, 2, true);
  WalkOptions opts;
  opts.estimator = Estimator::kJl;
  const WalkSparsifyResult r = sparsify_gk(g, 3, seeded(8), opts);
  CHECK(r.report.m_out <= r.report.samples);
  for (std::size_t e = 0; e < r.graph.num_edges(); ++e) {
    CHECK(r.graph.edge(e).u < r.graph.edge(e).v);
    if (e > 0) {
      const Edge& p = r.graph.edge(e - 1);
      const Edge& q = r.graph.edge(e);
      CHECK((p.u < q.u || (p.u == q.u && p.v < q.v)));
    }
  }
  const auto j = to_json(r.report);
  for (const char* key : {"k", "parity", "estimator", "walks_sampled", "self_loop_fraction"}) {
    CHECK(j.contains(key));
  }
  CHECK(j["estimator"] == "jl");
  CHECK(j["parity"] == "odd");
}

TEST_CASE("bipartite input splits the double cover") {
  const Graph grid = generate_grid(3, 3);
  WalkOptions opts;
  opts.estimator = Estimator::kTree;
  const WalkSparsifyResult r = sparsify_gk(grid, 4, seeded(1), opts);
  CHECK(r.report.extra["double_cover_components"].get<std::size_t>() == 2);
  CHECK(is_eps_sparsifier(walk_graph_dense(grid, 4), r.graph, 0.5));
}

TEST_CASE("walk sparsifier input validation") {
  CHECK_THROWS_AS(sparsify_gk(p3(), 0, seeded(1)), std::invalid_argument);
  const Graph loop(2, {{0, 1, 1.0}, {1, 1, 1.0}});
  CHECK_THROWS_AS(sparsify_gk(loop, 2, seeded(1)), std::invalid_argument);
  CHECK(parse_estimator("tree") == Estimator::kTree);
  CHECK_THROWS_AS(parse_estimator("magic"), std::invalid_argument);
}

TEST_CASE("walk sparsifiers of G(60, 0.2) are accurate") {
  const Graph g = generate_gnp(60, 0.2, 12);
  REQUIRE(is_connected(g));
  for (int k = 1; k <= 4; ++k) {
    WalkOptions opts;
    opts.estimator = Estimator::kJl;
    const WalkSparsifyResult r = sparsify_gk(g, k, seeded(static_cast<std::uint64_t>(k)), opts);
    CHECK(is_eps_sparsifier(walk_graph_dense(g, k), r.graph, 0.5));
  }
}

TEST_CASE("batched walks equal single draws") {
  const Graph g = generate_connected(30, 0.2, 4, true);
  const ResistanceBounds b = leverage_scores(g);
  for (int k : {1, 2, 5}) {
    const WalkSampler s(g, b, k);
    std::vector<WalkSample> batch(37);
    s.sample_batch(9, 5, batch);
    for (std::size_t j = 0; j < batch.size(); ++j) {
      const WalkSample one = s.sample(9, 5 + j);
      CHECK(batch[j].vertices == one.vertices);
      CHECK(batch[j].anchor == one.anchor);
      CHECK(batch[j].reversed == one.reversed);
      CHECK(batch[j].walk_weight == one.walk_weight);
      CHECK(batch[j].resistance_sum == one.resistance_sum);
      CHECK(one.walk_weight == doctest::Approx(walk_weight(g, one.vertices)).epsilon(1e-14));
    }
  }
}
