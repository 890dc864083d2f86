// Command-line front end: generate | sparsify | walk-sparsify | verify | resistance.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "walksparse/generate.hpp"
#include "walksparse/graph_io.hpp"
#include "walksparse/laplacian_solver.hpp"
#include "walksparse/oracle.hpp"
#include "walksparse/report.hpp"
#include "walksparse/resistance.hpp"
#include "walksparse/sampling.hpp"
#include "walksparse/sparsify.hpp"
#include "walksparse/tree.hpp"
#include "walksparse/walk.hpp"

namespace ws = walksparse;

namespace {

enum Exit : int { kOk = 0, kVerifyFailed = 1, kUsage = 2, kResource = 3 };

struct Common {
  std::string input;
  std::string output;
  std::string report;
  std::uint64_t seed = ws::kDefaultSeed;
  int threads = 0;
  std::size_t oracle_cap = 512;
  bool serial = false;
};

struct Options {
  Common common;
  // generate
  std::string kind = "gnp";
  std::size_t n = 100;
  double p = 0.1;
  std::size_t rows = 4;
  std::size_t cols = 4;
  std::size_t clique = 5;
  std::size_t bridge = 2;
  // sampling
  double epsilon = 0.5;
  double oversample = 9.0;
  std::string mode = "exact";
  int k = 1;
  std::string estimator = "exact";
  double delta = 0.5;
  double c_jl = ws::JlOptions{}.c_jl;
  // verify
  std::string candidate;
  std::optional<int> verify_k;
};

void add_common(CLI::App* cmd, Common& c, bool needs_input) {
  auto* in = cmd->add_option("--input", c.input, "Edge-list file");
  if (needs_input) in->required()->check(CLI::ExistingFile);
  cmd->add_option("--output", c.output, "Output file (stdout when omitted)");
  cmd->add_option("--report", c.report, "Write the JSON report here");
  cmd->add_option("--seed", c.seed, "Random seed")->capture_default_str();
  cmd->add_option("--threads", c.threads, "Worker cap for the parallel kernels")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--oracle-cap", c.oracle_cap, "Largest n for dense oracle work")
      ->capture_default_str();
  cmd->add_flag("--serial", c.serial, "Use the serial reference kernels");
}

ws::OracleCap cap_of(const Common& c) {
  ws::OracleCap cap;
  cap.max_vertices = c.oracle_cap;
  return cap;
}

void emit_graph(const Common& c, const ws::Graph& g) {
  if (c.output.empty()) {
    ws::write_edge_list(std::cout, g);
  } else {
    ws::write_edge_list(c.output, g);
  }
}

void emit_report(const Common& c, const nlohmann::ordered_json& j) {
  if (c.report.empty()) return;
  std::ofstream out(c.report);
  if (!out) throw std::runtime_error("cannot write report " + c.report);
  out << j.dump(2) << '\n';
}

void attach_labels(nlohmann::ordered_json& j, const ws::LabeledGraph& in) {
  if (!in.labels.empty()) j["labels"] = in.labels;
}

ws::SamplerConfig sampler_config(const Options& o) {
  ws::SamplerConfig cfg;
  cfg.epsilon = o.epsilon;
  cfg.oversample = o.oversample;
  cfg.seed = o.common.seed;
  cfg.serial = o.common.serial;
  cfg.validate();
  return cfg;
}

int run_generate(const Options& o) {
  ws::Graph g;
  if (o.kind == "gnp") {
    g = ws::generate_gnp(o.n, o.p, o.common.seed);
  } else if (o.kind == "path") {
    g = ws::generate_path(o.n);
  } else if (o.kind == "cycle") {
    g = ws::generate_cycle(o.n);
  } else if (o.kind == "star") {
    g = ws::generate_star(o.n);
  } else if (o.kind == "grid") {
    g = ws::generate_grid(o.rows, o.cols);
  } else {
    g = ws::generate_barbell(o.clique, o.bridge);
  }
  emit_graph(o.common, g);
  return kOk;
}

int run_sparsify(const Options& o) {
  const ws::SamplerConfig cfg = sampler_config(o);
  const ws::LabeledGraph in = ws::read_edge_list(o.common.input);
  const ws::Graph g = in.graph.without_self_loops();
  const ws::OracleCap cap = cap_of(o.common);
  const bool oracle = g.num_vertices() <= cap.max_vertices;

  ws::SparsifyReport report;
  ws::Graph out;
  if (o.mode == "exact") {
    const ws::ResistanceBounds bounds = ws::leverage_scores(g, cap);
    ws::SparsifyResult r = ws::ideal_sample(g, bounds, cfg);
    out = std::move(r.graph);
    report = std::move(r.report);
    report.extra["mode"] = "exact";
  } else {
    ws::ChainOptions chain;
    chain.cap = cap;
    chain.jl.c_jl = o.c_jl;
    ws::ChainResult r = ws::chain_sparsify(g, cfg, chain);
    out = std::move(r.graph);
    report = std::move(r.report);
  }
  if (oracle) report.kappa_measured = ws::spectral_similarity(g, out, cap).kappa;
  emit_graph(o.common, out);
  auto j = ws::to_json(report);
  attach_labels(j, in);
  emit_report(o.common, j);
  return kOk;
}

int run_walk_sparsify(const Options& o) {
  if (o.k < 1) throw std::invalid_argument("--k must be at least 1");
  const ws::SamplerConfig cfg = sampler_config(o);
  const ws::LabeledGraph in = ws::read_edge_list(o.common.input);
  const ws::Graph& g = in.graph;
  const ws::OracleCap cap = cap_of(o.common);

  ws::WalkOptions opts;
  opts.estimator = ws::parse_estimator(o.estimator);
  opts.jl_delta = o.delta;
  opts.jl.c_jl = o.c_jl;
  opts.cap = cap;
  ws::WalkSparsifyResult r = ws::sparsify_gk(g, o.k, cfg, opts);
  if (g.num_vertices() <= cap.max_vertices) {
    r.report.kappa_measured =
        ws::spectral_similarity(ws::walk_graph_dense(g, o.k, cap), r.graph, cap).kappa;
  }
  emit_graph(o.common, r.graph);
  auto j = ws::to_json(r.report);
  attach_labels(j, in);
  emit_report(o.common, j);
  return kOk;
}

int run_verify(const Options& o) {
  const ws::OracleCap cap = cap_of(o.common);
  const ws::Graph a = ws::read_edge_list(o.common.input).graph;
  const ws::Graph b = ws::read_edge_list(o.candidate).graph;
  if (a.num_vertices() != b.num_vertices()) {
    throw std::invalid_argument("graphs have different vertex counts");
  }
  if (o.epsilon <= 0.0 || o.epsilon >= 1.0) throw std::invalid_argument("epsilon must lie in (0, 1)");
  const ws::Graph target = o.verify_k ? ws::walk_graph_dense(a, *o.verify_k, cap) : a;
  const ws::SimilarityCert cert = ws::spectral_similarity(target, b, cap);
  const bool ok = cert.kappa <= ws::sparsifier_kappa_bound(o.epsilon);

  nlohmann::ordered_json j;
  j["n"] = a.num_vertices();
  j["m_reference"] = a.num_edges();
  j["m_candidate"] = b.num_edges();
  if (o.verify_k) j["k"] = *o.verify_k;
  j["epsilon"] = o.epsilon;
  j["lambda_min"] = cert.lambda_min;
  j["lambda_max"] = cert.lambda_max;
  j["kappa"] = cert.kappa;
  j["kappa_bound"] = ws::sparsifier_kappa_bound(o.epsilon);
  j["components_match"] = cert.components_match;
  j["verified"] = ok;
  std::cout << "kappa " << ws::format_double(cert.kappa) << (ok ? " ok" : " exceeds bound") << '\n';
  emit_report(o.common, j);
  return ok ? kOk : kVerifyFailed;
}

int run_resistance(const Options& o) {
  const ws::Graph g = ws::read_edge_list(o.common.input).graph.without_self_loops();
  const ws::OracleCap cap = cap_of(o.common);
  ws::ResistanceBounds bounds;
  switch (ws::parse_estimator(o.estimator)) {
    case ws::Estimator::kExact:
      bounds = ws::leverage_scores(g, cap);
      break;
    case ws::Estimator::kJl: {
      ws::JlOptions jl;
      jl.c_jl = o.c_jl;
      bounds = ws::jl_resistance_bounds(g, o.delta, o.common.seed, jl);
      break;
    }
    case ws::Estimator::kTree:
      bounds = ws::tree_resistance_bounds(g, ws::build_spanning_forest(g, o.common.seed));
      break;
  }
  if (o.common.output.empty()) {
    ws::write_bounds(std::cout, g, bounds);
  } else {
    std::ofstream out(o.common.output);
    if (!out) throw std::runtime_error("cannot write " + o.common.output);
    ws::write_bounds(out, g, bounds);
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral sparsifiers of graphs and of their random-walk powers"};
  app.require_subcommand(1);
  Options o;

  auto* gen = app.add_subcommand("generate", "Write a synthetic graph");
  add_common(gen, o.common, false);
  gen->add_option("--kind", o.kind)
      ->check(CLI::IsMember({"gnp", "path", "cycle", "star", "grid", "barbell"}))
      ->capture_default_str();
  gen->add_option("--n", o.n, "Vertex count (gnp, path, cycle, star)")->capture_default_str();
  gen->add_option("--p", o.p, "Edge probability (gnp)")->capture_default_str();
  gen->add_option("--rows", o.rows)->capture_default_str();
  gen->add_option("--cols", o.cols)->capture_default_str();
  gen->add_option("--clique", o.clique, "Clique size (barbell)")->capture_default_str();
  gen->add_option("--bridge", o.bridge, "Bridge path vertices (barbell)")->capture_default_str();

  auto* sp = app.add_subcommand("sparsify", "Spectral sparsifier of the input graph");
  add_common(sp, o.common, true);
  sp->add_option("--epsilon", o.epsilon)->capture_default_str();
  sp->add_option("--oversample", o.oversample, "Sampling constant C")->capture_default_str();
  sp->add_option("--mode", o.mode)->check(CLI::IsMember({"exact", "chain"}))->capture_default_str();
  sp->add_option("--c-jl", o.c_jl, "JL row constant (chain mode)")->capture_default_str();

  auto* wk = app.add_subcommand("walk-sparsify", "Sparsifier of the k-step random-walk graph");
  add_common(wk, o.common, true);
  wk->add_option("--k", o.k, "Walk length")->capture_default_str();
  wk->add_option("--epsilon", o.epsilon)->capture_default_str();
  wk->add_option("--oversample", o.oversample, "Sampling constant C")->capture_default_str();
  wk->add_option("--estimator", o.estimator)
      ->check(CLI::IsMember({"exact", "jl", "tree"}))
      ->capture_default_str();
  wk->add_option("--delta", o.delta, "JL accuracy")->capture_default_str();
  wk->add_option("--c-jl", o.c_jl, "JL row constant")->capture_default_str();

  auto* vf = app.add_subcommand("verify", "Check that a candidate is an eps-sparsifier");
  add_common(vf, o.common, true);
  vf->add_option("--candidate", o.candidate, "Candidate sparsifier")
      ->required()
      ->check(CLI::ExistingFile);
  vf->add_option("--k", o.verify_k, "Compare against the k-step walk graph of --input");
  vf->add_option("--epsilon", o.epsilon)->capture_default_str();

  auto* rs = app.add_subcommand("resistance", "Dump per-edge resistance bounds");
  add_common(rs, o.common, true);
  rs->add_option("--estimator", o.estimator)
      ->check(CLI::IsMember({"exact", "jl", "tree"}))
      ->capture_default_str();
  rs->add_option("--delta", o.delta, "JL accuracy")->capture_default_str();
  rs->add_option("--c-jl", o.c_jl, "JL row constant")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  if (o.common.threads > 0) ws::set_thread_limit(o.common.threads);

  try {
    if (gen->parsed()) return run_generate(o);
    if (sp->parsed()) return run_sparsify(o);
    if (wk->parsed()) return run_walk_sparsify(o);
    if (vf->parsed()) return run_verify(o);
    return run_resistance(o);
  } catch (const ws::CapExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kResource;
  } catch (const ws::SolverError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kResource;
  } catch (const ws::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kResource;
  }
}
