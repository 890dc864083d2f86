#include "walksparse/graph.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

namespace walksparse {

Graph::Graph(std::size_t n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    if (e.u >= n_ || e.v >= n_) {
      std::ostringstream msg;
      msg << "edge " << i << " (" << e.u << ", " << e.v << ") has an endpoint outside [0, " << n_
          << ")";
      throw std::invalid_argument(msg.str());
    }
    if (!(e.w > 0.0) || !std::isfinite(e.w)) {
      std::ostringstream msg;
      msg << "edge " << i << " has non-positive or non-finite weight " << e.w;
      throw std::invalid_argument(msg.str());
    }
  }
}

std::vector<double> Graph::degrees() const {
  std::vector<double> d(n_, 0.0);
  for (const Edge& e : edges_) {
    d[e.u] += e.w;
    if (!e.is_loop()) d[e.v] += e.w;
  }
  return d;
}

double Graph::total_weight() const {
  double total = 0.0;
  for (const Edge& e : edges_) total += e.w;
  return total;
}

bool Graph::has_self_loops() const {
  return std::any_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.is_loop(); });
}

Graph Graph::without_self_loops() const {
  std::vector<Edge> kept;
  kept.reserve(edges_.size());
  std::copy_if(edges_.begin(), edges_.end(), std::back_inserter(kept),
               [](const Edge& e) { return !e.is_loop(); });
  return Graph(n_, std::move(kept));
}

Graph Graph::scaled(double factor) const {
  if (!(factor > 0.0) || !std::isfinite(factor)) {
    throw std::invalid_argument("scale factor must be positive and finite");
  }
  std::vector<Edge> out(edges_);
  for (Edge& e : out) e.w *= factor;
  return Graph(n_, std::move(out));
}

Graph graph_union(const Graph& a, const Graph& b) {
  if (a.num_vertices() != b.num_vertices()) {
    throw std::invalid_argument("graph_union: vertex counts differ");
  }
  std::vector<Edge> edges(a.edges().begin(), a.edges().end());
  edges.insert(edges.end(), b.edges().begin(), b.edges().end());
  return Graph(a.num_vertices(), std::move(edges));
}

Adjacency::Adjacency(const Graph& g)
    : offsets_(g.num_vertices() + 1, 0) {
  const std::size_t n = g.num_vertices();
  std::vector<std::size_t> count(n, 0);
  for (const Edge& e : g.edges()) {
    ++count[e.u];
    if (!e.is_loop()) ++count[e.v];
  }
  std::vector<std::size_t> raw_offsets(n + 1, 0);
  for (std::size_t u = 0; u < n; ++u) raw_offsets[u + 1] = raw_offsets[u] + count[u];
  std::vector<std::pair<Vertex, double>> raw(raw_offsets[n]);
  std::vector<std::size_t> fill(raw_offsets.begin(), raw_offsets.end() - 1);
  for (const Edge& e : g.edges()) {
    raw[fill[e.u]++] = {e.v, e.w};
    if (!e.is_loop()) raw[fill[e.v]++] = {e.u, e.w};
  }

  targets_.reserve(raw.size());
  weights_.reserve(raw.size());
  for (std::size_t u = 0; u < n; ++u) {
    auto first = raw.begin() + static_cast<std::ptrdiff_t>(raw_offsets[u]);
    auto last = raw.begin() + static_cast<std::ptrdiff_t>(raw_offsets[u + 1]);
    std::stable_sort(first, last, [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto it = first; it != last; ++it) {
      if (!targets_.empty() && targets_.size() > offsets_[u] && targets_.back() == it->first) {
        weights_.back() += it->second;
      } else {
        targets_.push_back(it->first);
        weights_.push_back(it->second);
      }
    }
    offsets_[u + 1] = targets_.size();
  }
  cumulative_.resize(weights_.size());
  guide_.resize(weights_.size());
  degree_.assign(n, 0.0);
  for (std::size_t u = 0; u < n; ++u) {
    double running = 0.0;
    for (std::size_t i = offsets_[u]; i < offsets_[u + 1]; ++i) {
      running += weights_[i];
      cumulative_[i] = running;
    }
    degree_[u] = running;
    // guide_[off + b]: first local index whose prefix exceeds b * d / count.
    const std::size_t count = offsets_[u + 1] - offsets_[u];
    const double* cum = cumulative_.data() + offsets_[u];
    std::uint32_t idx = 0;
    for (std::size_t b = 0; b < count; ++b) {
      const double bound = static_cast<double>(b) * running / static_cast<double>(count);
      while (idx < count && cum[idx] <= bound) ++idx;
      guide_[offsets_[u] + b] = idx;
    }
  }
}

double Adjacency::weight(Vertex u, Vertex v) const {
  auto nbrs = neighbors(u);
  auto it = std::lower_bound(nbrs.begin(), nbrs.end(), v);
  if (it == nbrs.end() || *it != v) return 0.0;
  return weights_[offsets_[u] + static_cast<std::size_t>(it - nbrs.begin())];
}

std::size_t Adjacency::slot(Vertex u, Vertex v) const {
  auto nbrs = neighbors(u);
  auto it = std::lower_bound(nbrs.begin(), nbrs.end(), v);
  if (it == nbrs.end() || *it != v) return kNoSlot;
  return offsets_[u] + static_cast<std::size_t>(it - nbrs.begin());
}

std::size_t Adjacency::step_slot(Vertex u, double unit) const {
  // Same index as upper_bound over cumulative(u), started from the guide.
  auto cum = cumulative(u);
  const std::size_t count = cum.size();
  const double target = unit * degree_[u];
  auto bucket = static_cast<std::size_t>(unit * static_cast<double>(count));
  if (bucket >= count) bucket = count - 1;
  std::size_t idx = guide_[offsets_[u] + bucket];
  if (idx > 0 && cum[idx - 1] > target) {
    idx = static_cast<std::size_t>(std::upper_bound(cum.begin(), cum.end(), target) - cum.begin());
  } else {
    while (idx < count && cum[idx] <= target) ++idx;
  }
  if (idx >= count) idx = count - 1;
  return offsets_[u] + idx;
}

double Adjacency::step_probability(Vertex u, Vertex v) const {
  auto nbrs = neighbors(u);
  auto it = std::lower_bound(nbrs.begin(), nbrs.end(), v);
  if (it == nbrs.end() || *it != v) return 0.0;
  auto cum = cumulative(u);
  const std::size_t idx = static_cast<std::size_t>(it - nbrs.begin());
  const double lo = idx == 0 ? 0.0 : cum[idx - 1];
  return (cum[idx] - lo) / cum.back();
}

void Adjacency::laplacian_apply(std::span<const double> x, std::span<double> y) const {
  const std::size_t n = num_vertices();
  for (std::size_t u = 0; u < n; ++u) {
    double acc = 0.0;
    for (std::size_t i = offsets_[u]; i < offsets_[u + 1]; ++i) {
      acc += weights_[i] * (x[u] - x[targets_[i]]);
    }
    y[u] = acc;
  }
}

std::vector<std::uint32_t> component_labels(const Graph& g) {
  const std::size_t n = g.num_vertices();
  std::vector<std::uint32_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0u);
  auto find = [&](std::uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (const Edge& e : g.edges()) {
    std::uint32_t a = find(e.u), b = find(e.v);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::uint32_t> label(n, 0);
  std::vector<std::uint32_t> root_label(n, static_cast<std::uint32_t>(-1));
  std::uint32_t next = 0;
  for (std::uint32_t v = 0; v < n; ++v) {
    std::uint32_t r = find(v);
    if (root_label[r] == static_cast<std::uint32_t>(-1)) root_label[r] = next++;
    label[v] = root_label[r];
  }
  return label;
}

std::size_t count_components(const Graph& g) {
  auto labels = component_labels(g);
  if (labels.empty()) return 0;
  return *std::max_element(labels.begin(), labels.end()) + 1;
}

bool is_connected(const Graph& g) { return count_components(g) <= 1; }

DenseMatrix laplacian(const Graph& g) {
  const auto n = static_cast<Eigen::Index>(g.num_vertices());
  DenseMatrix l = DenseMatrix::Zero(n, n);
  for (const Edge& e : g.edges()) {
    if (e.is_loop()) continue;
    l(e.u, e.u) += e.w;
    l(e.v, e.v) += e.w;
    l(e.u, e.v) -= e.w;
    l(e.v, e.u) -= e.w;
  }
  return l;
}

double walk_weight(const Adjacency& adj, std::span<const Vertex> walk) {
  if (walk.size() < 2) throw std::invalid_argument("walk_weight: a walk needs k >= 1 steps");
  double numerator = 1.0;
  double denominator = 1.0;
  for (std::size_t i = 1; i < walk.size(); ++i) {
    const double w = adj.weight(walk[i - 1], walk[i]);
    if (w == 0.0) {
      std::ostringstream msg;
      msg << "walk_weight: step " << i << " (" << walk[i - 1] << ", " << walk[i]
          << ") is not an edge";
      throw std::invalid_argument(msg.str());
    }
    numerator *= w;
    if (i + 1 < walk.size()) denominator *= adj.degree(walk[i]);
  }
  return numerator / denominator;
}

double walk_weight(const Graph& g, std::span<const Vertex> walk) {
  for (Vertex v : walk) {
    if (v >= g.num_vertices()) throw std::invalid_argument("walk_weight: vertex out of range");
  }
  return walk_weight(Adjacency(g), walk);
}

namespace {

void check_dense_cap(const Graph& g, const OracleCap& cap, const char* what) {
  if (g.num_vertices() > cap.max_vertices) {
    std::ostringstream msg;
    msg << what << ": n = " << g.num_vertices() << " exceeds the oracle cap of "
        << cap.max_vertices << " vertices";
    throw CapExceeded(msg.str());
  }
}

// A (D^-1 A)^(k-1), with D^-1 taken as 0 on isolated vertices.
DenseMatrix walk_adjacency(const Graph& g, int k) {
  if (k < 1) throw std::invalid_argument("walk graph requires k >= 1");
  const auto n = static_cast<Eigen::Index>(g.num_vertices());
  DenseMatrix a = DenseMatrix::Zero(n, n);
  for (const Edge& e : g.edges()) {
    a(e.u, e.v) += e.w;
    if (!e.is_loop()) a(e.v, e.u) += e.w;
  }
  Eigen::VectorXd dinv = a.rowwise().sum();
  for (Eigen::Index i = 0; i < n; ++i) dinv(i) = dinv(i) > 0.0 ? 1.0 / dinv(i) : 0.0;
  const DenseMatrix transition = dinv.asDiagonal() * a;
  DenseMatrix m = a;
  for (int step = 1; step < k; ++step) m = m * transition;
  return m;
}

}  // namespace

Graph walk_graph_dense(const Graph& g, int k, const OracleCap& cap) {
  check_dense_cap(g, cap, "walk_graph_dense");
  const DenseMatrix m = walk_adjacency(g, k);
  const auto n = m.rows();
  std::vector<Edge> edges;
  for (Eigen::Index u = 0; u < n; ++u) {
    for (Eigen::Index v = u; v < n; ++v) {
      const double w = u == v ? m(u, u) : 0.5 * (m(u, v) + m(v, u));
      if (w > 0.0) edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v), w});
    }
  }
  return Graph(g.num_vertices(), std::move(edges));
}

DenseMatrix walk_laplacian_dense(const Graph& g, int k, const OracleCap& cap) {
  check_dense_cap(g, cap, "walk_laplacian_dense");
  const DenseMatrix m = walk_adjacency(g, k);
  const DenseMatrix sym = 0.5 * (m + m.transpose());
  DenseMatrix l = -sym;
  l.diagonal() += sym.rowwise().sum();
  return l;
}

Graph double_cover(const Graph& g) {
  const auto n = static_cast<Vertex>(g.num_vertices());
  std::vector<Edge> edges;
  edges.reserve(2 * g.num_edges());
  for (const Edge& e : g.edges()) {
    edges.push_back({e.u, e.v + n, e.w});
    edges.push_back({e.u + n, e.v, e.w});
  }
  return Graph(2 * g.num_vertices(), std::move(edges));
}

Graph schur_complement_graph(const Graph& g, std::span<const Vertex> eliminate) {
  const std::size_t n = g.num_vertices();
  std::vector<bool> removed(n, false);
  for (Vertex u : eliminate) {
    if (u >= n) throw std::invalid_argument("schur_complement_graph: vertex out of range");
    if (removed[u]) throw std::invalid_argument("schur_complement_graph: duplicate vertex");
    removed[u] = true;
  }

  std::vector<std::map<Vertex, double>> adj(n);
  std::vector<double> loops(n, 0.0);
  for (const Edge& e : g.edges()) {
    if (e.is_loop()) {
      loops[e.u] += e.w;
    } else {
      adj[e.u][e.v] += e.w;
      adj[e.v][e.u] += e.w;
    }
  }

  for (Vertex u : eliminate) {
    std::vector<std::pair<Vertex, double>> nbrs(adj[u].begin(), adj[u].end());
    double d = 0.0;
    for (const auto& [v, w] : nbrs) d += w;
    if (!(d > 0.0)) {
      std::ostringstream msg;
      msg << "schur_complement_graph: vertex " << u << " is isolated when eliminated";
      throw std::invalid_argument(msg.str());
    }
    for (const auto& [v, w] : nbrs) adj[v].erase(u);
    adj[u].clear();
    loops[u] = 0.0;
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      const auto [v1, w1] = nbrs[i];
      loops[v1] += w1 * w1 / d;
      for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
        const auto [v2, w2] = nbrs[j];
        const double w = w1 * w2 / d;
        adj[v1][v2] += w;
        adj[v2][v1] += w;
      }
    }
  }

  std::vector<Vertex> relabel(n, kNoVertex);
  Vertex next = 0;
  for (std::size_t v = 0; v < n; ++v) {
    if (!removed[v]) relabel[v] = next++;
  }
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < n; ++u) {
    if (removed[u]) continue;
    if (loops[u] > 0.0) edges.push_back({relabel[u], relabel[u], loops[u]});
    for (const auto& [v, w] : adj[u]) {
      if (v > u && w > 0.0) edges.push_back({relabel[u], relabel[v], w});
    }
  }
  return Graph(next, std::move(edges));
}

DenseMatrix schur_complement(const DenseMatrix& m, std::span<const Vertex> eliminate) {
  const auto n = m.rows();
  std::vector<bool> in_f(static_cast<std::size_t>(n), false);
  for (Vertex v : eliminate) in_f.at(v) = true;
  std::vector<Eigen::Index> f, c;
  for (Eigen::Index i = 0; i < n; ++i) (in_f[static_cast<std::size_t>(i)] ? f : c).push_back(i);
  const auto nf = static_cast<Eigen::Index>(f.size());
  const auto nc = static_cast<Eigen::Index>(c.size());
  DenseMatrix mff(nf, nf), mfc(nf, nc), mcc(nc, nc);
  for (Eigen::Index i = 0; i < nf; ++i) {
    for (Eigen::Index j = 0; j < nf; ++j) mff(i, j) = m(f[i], f[j]);
    for (Eigen::Index j = 0; j < nc; ++j) mfc(i, j) = m(f[i], c[j]);
  }
  for (Eigen::Index i = 0; i < nc; ++i) {
    for (Eigen::Index j = 0; j < nc; ++j) mcc(i, j) = m(c[i], c[j]);
  }
  if (nf == 0) return mcc;
  return mcc - mfc.transpose() * mff.ldlt().solve(mfc);
}

}  // namespace walksparse
