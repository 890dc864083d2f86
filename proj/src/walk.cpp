#include "walksparse/walk.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "walksparse/random.hpp"
#include "walksparse/tree.hpp"

#ifdef WALKSPARSE_HAVE_OPENMP
#include <omp.h>
#endif

namespace walksparse {

namespace {

const Graph& checked_graph(const Graph& g, const ResistanceBounds& bounds, int k) {
  if (k < 1) throw std::invalid_argument("walk length k must be at least 1");
  if (g.has_self_loops()) throw std::invalid_argument("walk sampling needs a loop-free graph");
  if (bounds.size() != g.num_edges()) {
    throw std::invalid_argument("resistance bounds do not match the graph");
  }
  return g;
}

}  // namespace

WalkSampler::WalkSampler(const Graph& g, const ResistanceBounds& bounds, int k)
    : graph_(&checked_graph(g, bounds, k)),
      k_(k),
      adjacency_(g),
      edges_(bounds.leverage()),
      slots_(adjacency_.num_slots()),
      anchors_(g.num_edges()) {
  for (Vertex u = 0; u < g.num_vertices(); ++u) {
    const std::size_t first = adjacency_.first_slot(u);
    const auto cum = adjacency_.cumulative(u);
    const auto guide = adjacency_.guide(u);
    for (std::size_t i = 0; i < cum.size(); ++i) {
      const std::size_t s = first + i;
      slots_[s] = {cum[i], adjacency_.slot_weight(s), 0.0, adjacency_.slot_target(s), guide[i]};
    }
  }
  for (std::size_t j = 0; j < g.num_edges(); ++j) {
    const Edge& e = g.edge(j);
    anchors_[j] = {e.u, e.v, adjacency_.slot(e.u, e.v), adjacency_.slot(e.v, e.u)};
    slots_[anchors_[j].forward].resistance += bounds.leverage(j);
    slots_[anchors_[j].reverse].resistance += bounds.leverage(j);
  }
  for (Slot& s : slots_) s.resistance /= s.weight;
}

std::size_t WalkSampler::step(Vertex u, double unit) const {
  // Mirrors Adjacency::step_slot on the packed records.
  const std::size_t first = adjacency_.first_slot(u);
  const std::size_t count = adjacency_.first_slot(u + 1) - first;
  const Slot* cum = slots_.data() + first;
  const double target = unit * adjacency_.degree(u);
  auto bucket = static_cast<std::size_t>(unit * static_cast<double>(count));
  if (bucket >= count) bucket = count - 1;
  std::size_t idx = cum[bucket].guide;
  if (idx > 0 && cum[idx - 1].cumulative > target) {
    idx = static_cast<std::size_t>(
        std::upper_bound(cum, cum + count, target,
                         [](double t, const Slot& s) { return t < s.cumulative; }) -
        cum);
  } else {
    while (idx < count && cum[idx].cumulative <= target) ++idx;
  }
  if (idx >= count) idx = count - 1;
  return first + idx;
}

double WalkSampler::pair_resistance(Vertex u, Vertex v) const {
  const std::size_t s = adjacency_.slot(u, v);
  return s == Adjacency::kNoSlot ? 0.0 : slots_[s].resistance;
}

WalkSample WalkSampler::sample(std::uint64_t seed, std::uint64_t index) const {
  WalkSample s;
  sample_batch(seed, index, {&s, 1});
  return s;
}

std::size_t WalkSampler::step_bucket(Vertex u, double unit) const {
  const std::size_t first = adjacency_.first_slot(u);
  const std::size_t count = adjacency_.first_slot(u + 1) - first;
  auto bucket = static_cast<std::size_t>(unit * static_cast<double>(count));
  if (bucket >= count) bucket = count - 1;
  return first + bucket;
}

void WalkSampler::sample_batch(std::uint64_t seed, std::uint64_t first_index,
                               std::span<WalkSample> out) const {
  // Walks advance in lockstep over groups of kLanes. Each stage prefetches
  // the line the next stage of the same walk reads, so the misses of
  // different walks overlap instead of queueing.
  constexpr std::size_t kLanes = 16;
  const auto k = static_cast<std::size_t>(k_);
  std::vector<std::size_t> slots(kLanes * k);
  std::vector<SplitMix64> walk;
  walk.reserve(kLanes);
  std::array<double, kLanes> unit{};
  std::array<std::size_t, kLanes> at{};
  std::array<const std::size_t*, kLanes> guide{};

  // Vertex a walk's step t starts from: backward steps first, then forward.
  const auto from = [&](const WalkSample& s, std::size_t t) {
    const auto i = static_cast<std::size_t>(s.anchor);
    return t < i ? s.vertices[i - t] : s.vertices[t + 1];
  };
  const auto queue_step = [&](std::size_t b, const WalkSample& s, std::size_t t) {
    unit[b] = walk[b].uniform();
    __builtin_prefetch(&slots_[step_bucket(from(s, t), unit[b])]);
  };

  for (std::size_t base = 0; base < out.size(); base += kLanes) {
    const std::size_t lanes = std::min(kLanes, out.size() - base);
    WalkSample* group = out.data() + base;
    walk.clear();

    for (std::size_t b = 0; b < lanes; ++b) {
      WalkSample& s = group[b];
      auto pick = SplitMix64::substream(seed, Stream::kEdgeSampling, first_index + base + b);
      walk.push_back(SplitMix64::substream(seed, Stream::kWalkExtension, first_index + base + b));
      s.anchor = static_cast<int>(pick.below(static_cast<std::uint64_t>(k_)));
      unit[b] = pick.uniform();
      s.reversed = pick.coin();
      guide[b] = edges_.guide_entry(unit[b]);
      __builtin_prefetch(guide[b]);
    }
    for (std::size_t b = 0; b < lanes; ++b) {
      at[b] = *guide[b];
      __builtin_prefetch(edges_.prefix_data() + (at[b] > 1 ? at[b] - 2 : 0));
    }
    for (std::size_t b = 0; b < lanes; ++b) {
      at[b] = edges_.draw_from(unit[b], at[b]);
      __builtin_prefetch(&anchors_[at[b]]);
    }
    for (std::size_t b = 0; b < lanes; ++b) {
      WalkSample& s = group[b];
      const Anchor& e = anchors_[at[b]];
      const auto i = static_cast<std::size_t>(s.anchor);
      s.vertices.assign(k + 1, kNoVertex);
      s.vertices[i] = s.reversed ? e.v : e.u;
      s.vertices[i + 1] = s.reversed ? e.u : e.v;
      // slots[j] is the adjacency entry of step j; weight and bound are
      // symmetric, so a backward step may record the reverse entry.
      slots[b * k + i] = s.reversed ? e.reverse : e.forward;
      if (k > 1) queue_step(b, s, 0);
    }
    for (std::size_t t = 0; t + 1 < k; ++t) {
      for (std::size_t b = 0; b < lanes; ++b) {
        WalkSample& s = group[b];
        const auto i = static_cast<std::size_t>(s.anchor);
        const std::size_t slot = step(from(s, t), unit[b]);
        const std::size_t j = t < i ? i - t - 1 : t + 1;
        slots[b * k + j] = slot;
        s.vertices[t < i ? j : j + 1] = slots_[slot].target;
        if (t + 2 < k) queue_step(b, s, t + 1);
      }
    }
    for (std::size_t b = 0; b < lanes; ++b) {
      WalkSample& s = group[b];
      double numerator = 1.0;
      double denominator = 1.0;
      s.resistance_sum = 0.0;
      for (std::size_t j = 0; j < k; ++j) {
        const Slot& slot = slots_[slots[b * k + j]];
        numerator *= slot.weight;
        if (j > 0) denominator *= adjacency_.degree(s.vertices[j]);
        s.resistance_sum += slot.resistance;
      }
      s.walk_weight = numerator / denominator;
      s.sparsifier_weight = 0.0;
    }
  }
}

double walk_mass(const Graph& g, const ResistanceBounds& bounds, int k) {
  if (k < 1) throw std::invalid_argument("walk length k must be at least 1");
  if (bounds.size() != g.num_edges()) {
    throw std::invalid_argument("resistance bounds do not match the graph");
  }
  return static_cast<double>(k) * bounds.total_leverage();
}

std::string_view to_string(Estimator e) {
  switch (e) {
    case Estimator::kExact:
      return "exact";
    case Estimator::kJl:
      return "jl";
    case Estimator::kTree:
      return "tree";
  }
  return "unknown";
}

Estimator parse_estimator(std::string_view name) {
  if (name == "exact") return Estimator::kExact;
  if (name == "jl") return Estimator::kJl;
  if (name == "tree") return Estimator::kTree;
  throw std::invalid_argument("unknown estimator '" + std::string(name) + "'");
}

namespace {

std::vector<double> estimate(const Graph& h, const std::vector<std::pair<Vertex, Vertex>>& pairs,
                             const WalkOptions& options, std::uint64_t seed) {
  std::vector<double> r(pairs.size());
  switch (options.estimator) {
    case Estimator::kExact: {
      const ExactResistance exact(h, options.cap);
      for (std::size_t j = 0; j < pairs.size(); ++j) r[j] = exact(pairs[j].first, pairs[j].second);
      break;
    }
    case Estimator::kTree: {
      const RootedTree forest = build_spanning_forest(h, seed, options.tree_candidates);
      for (std::size_t j = 0; j < pairs.size(); ++j) {
        r[j] = forest.path_resistance(pairs[j].first, pairs[j].second);
      }
      break;
    }
    case Estimator::kJl:
      // Handled by the caller: JL bounds are edge-aligned.
      break;
  }
  return r;
}

}  // namespace

WalkBounds walk_bounds(const Graph& g, int k, const WalkOptions& options, std::uint64_t seed) {
  if (k < 1) throw std::invalid_argument("walk length k must be at least 1");
  if (g.has_self_loops()) throw std::invalid_argument("walk sampling needs a loop-free graph");
  const std::size_t n = g.num_vertices();
  const std::size_t m = g.num_edges();
  const std::uint64_t est_seed = splitmix64_mix(seed ^ 0x77616c6b626e6473ULL);

  WalkBounds out;
  std::vector<double> r(m);
  if (k % 2 == 1) {
    out.components = count_components(g);
    if (options.estimator == Estimator::kJl) {
      const ResistanceBounds b = jl_resistance_bounds(g, options.jl_delta, est_seed, options.jl);
      r.assign(b.resistance().begin(), b.resistance().end());
    } else {
      std::vector<std::pair<Vertex, Vertex>> pairs(m);
      for (std::size_t j = 0; j < m; ++j) pairs[j] = {g.edge(j).u, g.edge(j).v};
      r = estimate(g, pairs, options, est_seed);
    }
    for (double& x : r) x *= 2.0;
  } else {
    const Graph cover = double_cover(g);
    out.components = count_components(cover);
    if (options.estimator == Estimator::kJl) {
      const ResistanceBounds b =
          jl_resistance_bounds(cover, options.jl_delta, est_seed, options.jl);
      for (std::size_t j = 0; j < m; ++j) r[j] = b.resistance(2 * j);
    } else {
      std::vector<std::pair<Vertex, Vertex>> pairs(m);
      for (std::size_t j = 0; j < m; ++j) {
        pairs[j] = {g.edge(j).u, static_cast<Vertex>(g.edge(j).v + n)};
      }
      r = estimate(cover, pairs, options, est_seed);
    }
  }
  out.bounds = ResistanceBounds(g, std::move(r));
  return out;
}

namespace {

struct Contribution {
  std::uint64_t key;  // u * n + v with u < v; kLoopKey for u_0 = u_k
  double weight;
};

constexpr std::uint64_t kLoopKey = ~std::uint64_t{0};
constexpr std::uint64_t kChunk = 256;

Contribution contribution(const WalkSample& s, std::uint64_t n, double scale) {
  const Vertex a = s.vertices.front();
  const Vertex b = s.vertices.back();
  if (a == b) return {kLoopKey, 0.0};
  const std::uint64_t lo = std::min(a, b);
  const std::uint64_t hi = std::max(a, b);
  return {lo * n + hi, scale / s.resistance_sum};
}

}  // namespace

WalkSparsifyResult sparsify_gk_with_bounds(const Graph& g, int k, const ResistanceBounds& bounds,
                                           const SamplerConfig& cfg) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  const WalkSampler sampler(g, bounds, k);
  const std::size_t n = g.num_vertices();
  const double mass = walk_mass(g, bounds, k);
  const double h = cfg.overhead(n);
  const auto samples = static_cast<std::uint64_t>(std::ceil(h * mass));
  const double scale = mass / static_cast<double>(samples);

  // Per-sample results land in index order, so both kernels aggregate the
  // same sequence and produce identical bits.
  std::vector<Contribution> contrib(samples);
  const auto chunks = static_cast<std::int64_t>((samples + kChunk - 1) / kChunk);
  const auto fill = [&](std::int64_t c, std::vector<WalkSample>& buf) {
    const auto first = static_cast<std::uint64_t>(c) * kChunk;
    const std::size_t len = std::min<std::uint64_t>(kChunk, samples - first);
    sampler.sample_batch(cfg.seed, first, {buf.data(), len});
    for (std::size_t j = 0; j < len; ++j) contrib[first + j] = contribution(buf[j], n, scale);
  };
  if (cfg.serial) {
    std::vector<WalkSample> buf(kChunk);
    for (std::int64_t c = 0; c < chunks; ++c) fill(c, buf);
  } else {
#pragma omp parallel
    {
      std::vector<WalkSample> buf(kChunk);
#pragma omp for schedule(static)
      for (std::int64_t c = 0; c < chunks; ++c) fill(c, buf);
    }
  }

  std::uint64_t loops = 0;
  for (const Contribution& c : contrib) loops += c.key == kLoopKey;
  std::stable_sort(contrib.begin(), contrib.end(),
                   [](const Contribution& x, const Contribution& y) { return x.key < y.key; });
  std::vector<Edge> edges;
  for (std::size_t s = 0; s < contrib.size() && contrib[s].key != kLoopKey;) {
    const std::uint64_t key = contrib[s].key;
    double w = 0.0;
    for (; s < contrib.size() && contrib[s].key == key; ++s) w += contrib[s].weight;
    edges.push_back({static_cast<Vertex>(key / n), static_cast<Vertex>(key % n), w});
  }

  WalkSparsifyResult result;
  result.graph = Graph(n, std::move(edges));
  result.bounds = bounds;
  SparsifyReport& r = result.report;
  r.n = n;
  r.m_in = g.num_edges();
  r.m_out = result.graph.num_edges();
  r.samples = samples;
  r.sum_tau = bounds.total_leverage();
  r.epsilon = cfg.epsilon;
  r.seed = cfg.seed;
  r.extra["k"] = k;
  r.extra["parity"] = k % 2 == 0 ? "even" : "odd";
  r.extra["walks_sampled"] = samples;
  r.extra["self_loop_fraction"] =
      samples == 0 ? 0.0 : static_cast<double>(loops) / static_cast<double>(samples);
  r.extra["walk_mass"] = mass;
  r.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return result;
}

WalkSparsifyResult sparsify_gk(const Graph& g, int k, const SamplerConfig& cfg,
                               const WalkOptions& options) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  WalkBounds wb = walk_bounds(g, k, options, cfg.seed);
  WalkSparsifyResult result = sparsify_gk_with_bounds(g, k, wb.bounds, cfg);
  auto& extra = result.report.extra;
  extra["estimator"] = std::string(to_string(options.estimator));
  if (k % 2 == 0) {
    extra["double_cover_components"] = wb.components;
  } else {
    extra["bound_inflation"] = 2.0;
  }
  result.report.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace walksparse
