#include "walksparse/sparsify.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "walksparse/oracle.hpp"
#include "walksparse/random.hpp"
#include "walksparse/sampling.hpp"

namespace walksparse {

void SamplerConfig::validate() const {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw std::invalid_argument("epsilon must lie in (0, 1)");
  }
  if (!(oversample > 0.0) || !std::isfinite(oversample)) {
    throw std::invalid_argument("oversampling constant must be positive");
  }
}

double SamplerConfig::overhead(std::size_t n) const {
  const double logn = std::log(static_cast<double>(std::max<std::size_t>(n, 2)));
  return oversample * logn / (epsilon * epsilon);
}

std::uint64_t sample_count(const SamplerConfig& cfg, std::size_t n, double total) {
  return static_cast<std::uint64_t>(std::ceil(cfg.overhead(n) * total));
}

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) {
  return splitmix64_mix(seed ^ splitmix64_mix(tag + 0x5eed));
}

template <class EdgeAt>
SparsifyResult sample_edges(std::size_t n, std::size_t m, EdgeAt edge_at,
                            std::vector<double> tau, const SamplerConfig& cfg) {
  cfg.validate();
  const auto start = Clock::now();
  double unrounded = 0.0;
  for (double t : tau) unrounded += t;
  if (cfg.round_to_n_inverse) {
    const double nn = static_cast<double>(n);
    for (double& t : tau) t = std::ceil(t * nn) / nn;
  }
  const PrefixSampler sampler(tau);
  const std::uint64_t samples = sample_count(cfg, n, sampler.total());
  const auto counts = cfg.serial ? draw_counts_serial(sampler, samples, cfg.seed)
                                 : draw_counts(sampler, samples, cfg.seed);

  std::vector<Edge> out;
  const double total_draws = static_cast<double>(samples);
  for (std::size_t e = 0; e < m; ++e) {
    if (counts[e] == 0) continue;
    Edge edge = edge_at(e);
    edge.w *= static_cast<double>(counts[e]) / (total_draws * sampler.probability(e));
    out.push_back(edge);
  }

  SparsifyResult result;
  result.graph = Graph(n, std::move(out));
  SparsifyReport& r = result.report;
  r.n = n;
  r.m_in = m;
  r.m_out = result.graph.num_edges();
  r.samples = samples;
  r.sum_tau = sampler.total();
  r.epsilon = cfg.epsilon;
  r.seed = cfg.seed;
  if (cfg.round_to_n_inverse) r.extra["sum_tau_unrounded"] = unrounded;
  r.elapsed_ms = elapsed_ms(start);
  return result;
}

}  // namespace

SparsifyResult ideal_sample(const Graph& g, const ResistanceBounds& bounds,
                            const SamplerConfig& cfg) {
  if (bounds.size() != g.num_edges()) {
    throw std::invalid_argument("ideal_sample: bounds do not match the graph");
  }
  std::vector<double> tau(bounds.leverage().begin(), bounds.leverage().end());
  return sample_edges(
      g.num_vertices(), g.num_edges(), [&](std::size_t e) { return g.edge(e); }, std::move(tau),
      cfg);
}

TreeSparsifyResult tree_sparsify(const Graph& g, const Graph& gp, double kappa,
                                 const SamplerConfig& cfg, int tree_candidates) {
  if (gp.num_vertices() != g.num_vertices()) {
    throw std::invalid_argument("tree_sparsify: guide has a different vertex set");
  }
  if (!(kappa >= 1.0) || !std::isfinite(kappa)) {
    throw std::invalid_argument("tree_sparsify: kappa must be finite and >= 1");
  }
  const RootedTree tree = build_tree(gp, derive_seed(cfg.seed, 1), tree_candidates);
  ResistanceBounds bounds = tree_resistance_bounds(g, tree, kappa);
  SparsifyResult sampled = ideal_sample(g, bounds, cfg);
  sampled.report.extra["kappa"] = kappa;
  sampled.report.extra["guide_tree_stretch"] = tree.recorded_stretch();
  return {std::move(sampled.graph), std::move(bounds), std::move(sampled.report)};
}

TreeAugmentedGraph::TreeAugmentedGraph(const Graph& base, const RootedTree& tree, double scale)
    : base_(&base), tree_edges_(tree.edges()), scale_(scale) {
  if (tree.num_vertices() != base.num_vertices()) {
    throw std::invalid_argument("TreeAugmentedGraph: tree does not span the base graph");
  }
  if (!(scale > 0.0)) throw std::invalid_argument("TreeAugmentedGraph: scale must be positive");
}

Edge TreeAugmentedGraph::edge(std::size_t i) const {
  const std::size_t m = base_->num_edges();
  if (i < m) return base_->edge(i);
  Edge e = tree_edges_[i - m];
  e.w *= scale_;
  return e;
}

std::vector<double> TreeAugmentedGraph::own_tree_leverage() const {
  // R over the scaled tree is R_T / scale; the scaled tree is a subgraph.
  const RootedTree tree = RootedTree::from_edges(num_vertices(), tree_edges_);
  std::vector<double> tau(num_edges());
  for (std::size_t i = 0; i < base_->num_edges(); ++i) {
    tau[i] = edge_stretch(tree, base_->edge(i)) / scale_;
  }
  for (std::size_t i = base_->num_edges(); i < tau.size(); ++i) tau[i] = 1.0;
  return tau;
}

std::vector<double> TreeAugmentedGraph::guide_tree_leverage(const RootedTree& guide,
                                                            double kappa) const {
  std::vector<double> tau(num_edges());
  for (std::size_t i = 0; i < tau.size(); ++i) tau[i] = kappa * edge_stretch(guide, edge(i));
  return tau;
}

DenseMatrix TreeAugmentedGraph::laplacian() const {
  DenseMatrix l = walksparse::laplacian(*base_);
  for (const Edge& e : tree_edges_) {
    const double w = scale_ * e.w;
    l(e.u, e.u) += w;
    l(e.v, e.v) += w;
    l(e.u, e.v) -= w;
    l(e.v, e.u) -= w;
  }
  return l;
}

Graph TreeAugmentedGraph::materialize() const {
  std::vector<Edge> edges;
  edges.reserve(num_edges());
  for (std::size_t i = 0; i < num_edges(); ++i) edges.push_back(edge(i));
  return Graph(num_vertices(), std::move(edges));
}

int chain_top_level(std::size_t n) {
  const double log2n = std::log2(static_cast<double>(std::max<std::size_t>(n, 4)));
  return static_cast<int>(std::ceil(std::log2(log2n)));
}

double chain_split_fraction(std::size_t n) {
  const double log2n = std::log2(static_cast<double>(std::max<std::size_t>(n, 4)));
  return 1.0 / (log2n * log2n);
}

namespace {

double level_kappa(double eps_level, double tree_gap) {
  const double ratio = sparsifier_kappa_bound(eps_level);
  return tree_gap * ratio * ratio;
}

}  // namespace

ChainResult chain_sparsify(const Graph& g_in, const SamplerConfig& cfg,
                           const ChainOptions& options) {
  cfg.validate();
  const auto start = Clock::now();
  const Graph g = g_in.has_self_loops() ? g_in.without_self_loops() : g_in;
  const std::size_t n = g.num_vertices();
  const std::size_t m = g.num_edges();

  const auto labels = component_labels(g);
  for (std::size_t v = 1; v < n; ++v) {
    if (labels[v] != labels[0]) throw DisconnectedGraph(0, static_cast<Vertex>(v));
  }

  ChainResult result;
  const bool can_check = options.check_levels && n <= options.cap.max_vertices;

  if (n < 4 || m <= 2 * n) {
    ResistanceBounds bounds =
        n <= options.cap.max_vertices
            ? leverage_scores(g, options.cap)
            : jl_resistance_bounds(g, options.jl_delta, derive_seed(cfg.seed, 2), options.jl);
    SparsifyResult direct = ideal_sample(g, bounds, cfg);
    result.graph = std::move(direct.graph);
    result.bounds = std::move(bounds);
    result.report = std::move(direct.report);
    result.report.extra["mode"] = "chain";
    result.report.extra["chain_bypassed"] = true;
    if (can_check) result.report.kappa_measured = spectral_similarity(g, result.graph).kappa;
    result.bypassed = true;
    result.report.elapsed_ms = elapsed_ms(start);
    return result;
  }

  SamplerConfig half = cfg;
  half.epsilon = cfg.epsilon / 2.0;
  std::uint64_t stage = 100;
  auto next_cfg = [&]() {
    SamplerConfig c = half;
    c.seed = derive_seed(cfg.seed, stage++);
    return c;
  };
  auto resparsify = [&](const Graph& crude) {
    const ResistanceBounds b =
        jl_resistance_bounds(crude, options.jl_delta, derive_seed(cfg.seed, stage++), options.jl);
    return ideal_sample(crude, b, next_cfg());
  };

  const RootedTree tree = build_tree(g, derive_seed(cfg.seed, 3), options.tree_candidates);
  const StretchSplit split = split_high_stretch(g, tree, chain_split_fraction(n));
  const Graph& g_hat = split.kept;
  const int top = chain_top_level(n);

  // Top of the chain: the scaled tree alone bounds every leverage score.
  Graph guide;
  {
    const TreeAugmentedGraph level(g_hat, tree, std::ldexp(1.0, top));
    SparsifyResult crude = sample_edges(
        n, level.num_edges(), [&](std::size_t e) { return level.edge(e); },
        level.own_tree_leverage(), next_cfg());
    SparsifyResult fine = resparsify(crude.graph);
    ChainLevelReport lr;
    lr.level = top;
    lr.tree_scale = level.scale();
    lr.sum_tau_crude = crude.report.sum_tau;
    lr.samples_crude = crude.report.samples;
    lr.edges_crude = crude.graph.num_edges();
    lr.sum_tau_final = fine.report.sum_tau;
    lr.samples_final = fine.report.samples;
    lr.edges_final = fine.graph.num_edges();
    if (can_check) {
      const DenseMatrix l = level.laplacian();
      lr.kappa_crude = spectral_similarity(l, laplacian(crude.graph)).kappa;
      lr.kappa_final = spectral_similarity(l, laplacian(fine.graph)).kappa;
    }
    result.levels.push_back(lr);
    guide = std::move(fine.graph);
  }

  // Each level is guided by the sparsifier of the level above; the tree
  // term doubles between levels, so L_{i+1} <= 2 L_i.
  const double kappa_step = level_kappa(half.epsilon, 2.0);
  for (int i = top - 1; i >= 1; --i) {
    const TreeAugmentedGraph level(g_hat, tree, std::ldexp(1.0, i));
    const RootedTree guide_tree =
        build_tree(guide, derive_seed(cfg.seed, stage++), options.tree_candidates);
    SparsifyResult crude = sample_edges(
        n, level.num_edges(), [&](std::size_t e) { return level.edge(e); },
        level.guide_tree_leverage(guide_tree, kappa_step), next_cfg());
    SparsifyResult fine = resparsify(crude.graph);
    ChainLevelReport lr;
    lr.level = i;
    lr.tree_scale = level.scale();
    lr.kappa_bound = kappa_step;
    lr.sum_tau_crude = crude.report.sum_tau;
    lr.samples_crude = crude.report.samples;
    lr.edges_crude = crude.graph.num_edges();
    lr.sum_tau_final = fine.report.sum_tau;
    lr.samples_final = fine.report.samples;
    lr.edges_final = fine.graph.num_edges();
    if (can_check) {
      const DenseMatrix l = level.laplacian();
      lr.kappa_crude = spectral_similarity(l, laplacian(crude.graph)).kappa;
      lr.kappa_final = spectral_similarity(l, laplacian(fine.graph)).kappa;
    }
    result.levels.push_back(lr);
    guide = std::move(fine.graph);
  }

  // Level 0 is G itself (G_hat plus the split-off edges). G_hat + 2T + removed
  // = G + 2T <= 3 L_G because T is a subgraph of G.
  const double kappa_last = level_kappa(half.epsilon, 3.0);
  TreeSparsifyResult crude =
      tree_sparsify(g, guide, kappa_last, next_cfg(), options.tree_candidates);
  SparsifyResult fine = resparsify(crude.graph);
  {
    ChainLevelReport lr;
    lr.level = 0;
    lr.tree_scale = 0.0;
    lr.kappa_bound = kappa_last;
    lr.sum_tau_crude = crude.report.sum_tau;
    lr.samples_crude = crude.report.samples;
    lr.edges_crude = crude.graph.num_edges();
    lr.sum_tau_final = fine.report.sum_tau;
    lr.samples_final = fine.report.samples;
    lr.edges_final = fine.graph.num_edges();
    if (can_check) {
      const DenseMatrix l = laplacian(g);
      lr.kappa_crude = spectral_similarity(l, laplacian(crude.graph)).kappa;
      lr.kappa_final = spectral_similarity(l, laplacian(fine.graph)).kappa;
    }
    result.levels.push_back(lr);
  }

  result.graph = std::move(fine.graph);
  result.bounds = std::move(crude.bounds);
  SparsifyReport& r = result.report;
  r = fine.report;
  r.n = n;
  r.m_in = m;
  r.m_out = result.graph.num_edges();
  r.epsilon = cfg.epsilon;
  r.seed = cfg.seed;
  if (can_check) r.kappa_measured = result.levels.back().kappa_final;
  r.extra = nlohmann::ordered_json::object();
  r.extra["mode"] = "chain";
  r.extra["chain_bypassed"] = false;
  r.extra["chain_levels"] = top + 1;
  r.extra["split_removed"] = split.removed.num_edges();
  r.extra["tree_stretch"] = tree.recorded_stretch();
  r.extra["sum_tau_bounds"] = result.bounds.total_leverage();
  for (const ChainLevelReport& lr : result.levels) {
    const std::string p = "level_" + std::to_string(lr.level) + "_";
    r.extra[p + "samples_crude"] = lr.samples_crude;
    r.extra[p + "edges_crude"] = lr.edges_crude;
    r.extra[p + "sum_tau_crude"] = lr.sum_tau_crude;
    r.extra[p + "edges_final"] = lr.edges_final;
    if (lr.kappa_crude) r.extra[p + "kappa_crude"] = *lr.kappa_crude;
    if (lr.kappa_final) r.extra[p + "kappa_final"] = *lr.kappa_final;
  }
  r.elapsed_ms = elapsed_ms(start);
  return result;
}

}  // namespace walksparse
