#include "walksparse/tree.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <queue>
#include <sstream>

#include "walksparse/graph_io.hpp"
#include "walksparse/random.hpp"

namespace walksparse {

namespace {

std::string disconnected_message(Vertex a, Vertex b) {
  std::ostringstream msg;
  msg << "graph is disconnected: vertex " << b << " is unreachable from vertex " << a;
  return msg.str();
}

}  // namespace

DisconnectedGraph::DisconnectedGraph(Vertex a, Vertex b)
    : std::invalid_argument(disconnected_message(a, b)), first_(a), second_(b) {}

RootedTree::RootedTree(std::vector<Vertex> parent, std::vector<double> parent_weight)
    : parent_(std::move(parent)), parent_weight_(std::move(parent_weight)) {
  const std::size_t n = parent_.size();
  if (parent_weight_.size() != n) {
    throw std::invalid_argument("RootedTree: parent and weight arrays differ in length");
  }
  std::vector<std::vector<Vertex>> children(n);
  for (std::size_t v = 0; v < n; ++v) {
    if (parent_[v] == kNoVertex) continue;
    if (parent_[v] >= n || parent_[v] == v) {
      throw std::invalid_argument("RootedTree: invalid parent of vertex " + std::to_string(v));
    }
    if (!(parent_weight_[v] > 0.0) || !std::isfinite(parent_weight_[v])) {
      throw std::invalid_argument("RootedTree: non-positive weight on vertex " +
                                  std::to_string(v));
    }
    children[parent_[v]].push_back(static_cast<Vertex>(v));
  }

  depth_.assign(n, 0);
  root_.assign(n, kNoVertex);
  root_resistance_.assign(n, 0.0);
  order_.clear();
  order_.reserve(n);
  for (std::size_t r = 0; r < n; ++r) {
    if (parent_[r] != kNoVertex) continue;
    ++num_roots_;
    root_[r] = static_cast<Vertex>(r);
    order_.push_back(static_cast<Vertex>(r));
  }
  for (std::size_t head = 0; head < order_.size(); ++head) {
    const Vertex u = order_[head];
    for (Vertex c : children[u]) {
      depth_[c] = depth_[u] + 1;
      root_[c] = root_[u];
      root_resistance_[c] = root_resistance_[u] + 1.0 / parent_weight_[c];
      order_.push_back(c);
    }
  }
  if (order_.size() != n) throw std::invalid_argument("RootedTree: parent array has a cycle");

  std::size_t levels = 1;
  while ((std::size_t{1} << levels) < n) ++levels;
  up_.assign(levels, std::vector<Vertex>(n));
  for (std::size_t v = 0; v < n; ++v) {
    up_[0][v] = parent_[v] == kNoVertex ? static_cast<Vertex>(v) : parent_[v];
  }
  for (std::size_t j = 1; j < levels; ++j) {
    for (std::size_t v = 0; v < n; ++v) up_[j][v] = up_[j - 1][up_[j - 1][v]];
  }
}

RootedTree RootedTree::from_edges(std::size_t n, std::span<const Edge> edges, Vertex root) {
  std::vector<std::vector<std::pair<Vertex, double>>> adj(n);
  for (const Edge& e : edges) {
    if (e.u >= n || e.v >= n || e.is_loop()) {
      throw std::invalid_argument("RootedTree::from_edges: invalid tree edge");
    }
    adj[e.u].push_back({e.v, e.w});
    adj[e.v].push_back({e.u, e.w});
  }
  std::vector<Vertex> parent(n, kNoVertex);
  std::vector<double> weight(n, 0.0);
  std::vector<bool> seen(n, false);
  std::vector<Vertex> stack;
  std::size_t reached_edges = 0;
  auto grow = [&](Vertex r) {
    seen[r] = true;
    stack.push_back(r);
    while (!stack.empty()) {
      const Vertex u = stack.back();
      stack.pop_back();
      for (const auto& [v, w] : adj[u]) {
        if (seen[v]) continue;
        seen[v] = true;
        parent[v] = u;
        weight[v] = w;
        ++reached_edges;
        stack.push_back(v);
      }
    }
  };
  if (root < n) grow(root);
  for (std::size_t v = 0; v < n; ++v) {
    if (!seen[v]) grow(static_cast<Vertex>(v));
  }
  if (reached_edges != edges.size()) {
    throw std::invalid_argument("RootedTree::from_edges: edges contain a cycle");
  }
  return RootedTree(std::move(parent), std::move(weight));
}

std::optional<Vertex> RootedTree::lca(Vertex u, Vertex v) const {
  if (root_[u] != root_[v]) return std::nullopt;
  if (depth_[u] < depth_[v]) std::swap(u, v);
  std::uint32_t diff = depth_[u] - depth_[v];
  for (std::size_t j = 0; diff != 0; ++j, diff >>= 1) {
    if (diff & 1u) u = up_[j][u];
  }
  if (u == v) return u;
  for (std::size_t j = up_.size(); j-- > 0;) {
    if (up_[j][u] != up_[j][v]) {
      u = up_[j][u];
      v = up_[j][v];
    }
  }
  return parent_[u];
}

double RootedTree::path_resistance(Vertex u, Vertex v) const {
  if (u == v) return 0.0;
  const auto a = lca(u, v);
  if (!a) return std::numeric_limits<double>::infinity();
  return root_resistance_[u] + root_resistance_[v] - 2.0 * root_resistance_[*a];
}

std::vector<Edge> RootedTree::edges() const {
  std::vector<Edge> out;
  out.reserve(parent_.size());
  for (std::size_t v = 0; v < parent_.size(); ++v) {
    if (parent_[v] != kNoVertex) out.push_back({static_cast<Vertex>(v), parent_[v], parent_weight_[v]});
  }
  return out;
}

Graph RootedTree::as_graph() const { return Graph(parent_.size(), edges()); }

double edge_stretch(const RootedTree& t, const Edge& e) {
  if (e.is_loop()) return 0.0;
  return e.w * t.path_resistance(e.u, e.v);
}

double total_stretch(const RootedTree& t, const Graph& g) {
  double total = 0.0;
  for (const Edge& e : g.edges()) total += edge_stretch(t, e);
  return total;
}

namespace {

// Maximum-weight spanning forest by Kruskal; ties by edge index.
std::vector<Edge> max_weight_forest(const Graph& g) {
  std::vector<std::size_t> idx(g.num_edges());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return g.edge(a).w > g.edge(b).w; });
  std::vector<Vertex> dsu(g.num_vertices());
  std::iota(dsu.begin(), dsu.end(), Vertex{0});
  auto find = [&](Vertex x) {
    while (dsu[x] != x) {
      dsu[x] = dsu[dsu[x]];
      x = dsu[x];
    }
    return x;
  };
  std::vector<Edge> forest;
  for (std::size_t i : idx) {
    const Edge& e = g.edge(i);
    if (e.is_loop()) continue;
    const Vertex a = find(e.u), b = find(e.v);
    if (a == b) continue;
    dsu[a] = b;
    forest.push_back(e);
  }
  return forest;
}

// Shortest-path forest under edge length 1/w, one source per component.
std::vector<Edge> shortest_path_forest(const Graph& g, std::span<const Vertex> sources) {
  const std::size_t n = g.num_vertices();
  std::vector<std::vector<std::size_t>> incident(n);
  for (std::size_t i = 0; i < g.num_edges(); ++i) {
    const Edge& e = g.edge(i);
    if (e.is_loop()) continue;
    incident[e.u].push_back(i);
    incident[e.v].push_back(i);
  }
  std::vector<double> dist(n, std::numeric_limits<double>::infinity());
  std::vector<std::size_t> via(n, static_cast<std::size_t>(-1));
  using Item = std::pair<double, Vertex>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  for (Vertex s : sources) {
    dist[s] = 0.0;
    heap.push({0.0, s});
  }
  while (!heap.empty()) {
    const auto [d, u] = heap.top();
    heap.pop();
    if (d > dist[u]) continue;
    for (std::size_t i : incident[u]) {
      const Edge& e = g.edge(i);
      const Vertex v = e.u == u ? e.v : e.u;
      const double nd = d + 1.0 / e.w;
      if (nd < dist[v]) {
        dist[v] = nd;
        via[v] = i;
        heap.push({nd, v});
      }
    }
  }
  std::vector<Edge> forest;
  for (std::size_t v = 0; v < n; ++v) {
    if (via[v] != static_cast<std::size_t>(-1)) forest.push_back(g.edge(via[v]));
  }
  return forest;
}

RootedTree best_candidate(const Graph& g, std::uint64_t seed, int candidates) {
  if (candidates < 1) throw std::invalid_argument("build_tree: candidates must be >= 1");
  const std::size_t n = g.num_vertices();
  const auto labels = component_labels(g);
  std::vector<std::vector<Vertex>> members;
  for (std::size_t v = 0; v < n; ++v) {
    if (labels[v] >= members.size()) members.resize(labels[v] + 1);
    members[labels[v]].push_back(static_cast<Vertex>(v));
  }

  RootedTree best = RootedTree::from_edges(n, max_weight_forest(g), 0);
  double best_stretch = total_stretch(best, g);
  for (int c = 1; c < candidates; ++c) {
    auto rng = SplitMix64::substream(seed, Stream::kTreeRoots, static_cast<std::uint64_t>(c));
    std::vector<Vertex> sources;
    sources.reserve(members.size());
    for (const auto& comp : members) sources.push_back(comp[rng.below(comp.size())]);
    RootedTree tree = RootedTree::from_edges(n, shortest_path_forest(g, sources),
                                             sources.empty() ? 0 : sources.front());
    const double s = total_stretch(tree, g);
    if (s < best_stretch) {
      best_stretch = s;
      best = std::move(tree);
    }
  }
  best.set_recorded_stretch(best_stretch);
  return best;
}

}  // namespace

RootedTree build_tree(const Graph& g, std::uint64_t seed, int candidates) {
  const auto labels = component_labels(g);
  for (std::size_t v = 1; v < labels.size(); ++v) {
    if (labels[v] != labels[0]) throw DisconnectedGraph(0, static_cast<Vertex>(v));
  }
  return best_candidate(g, seed, candidates);
}

RootedTree build_spanning_forest(const Graph& g, std::uint64_t seed, int candidates) {
  return best_candidate(g, seed, candidates);
}

StretchSplit split_high_stretch(const Graph& g, const RootedTree& t, double fraction) {
  if (!(fraction > 0.0 && fraction < 1.0)) {
    throw std::invalid_argument("split_high_stretch: fraction must lie in (0, 1)");
  }
  const std::size_t m = g.num_edges();
  std::vector<double> stretch(m);
  for (std::size_t i = 0; i < m; ++i) stretch[i] = edge_stretch(t, g.edge(i));
  const auto remove_count =
      std::min(m, static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(m))));

  std::vector<std::size_t> idx(m);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return stretch[a] > stretch[b]; });
  std::vector<bool> drop(m, false);
  for (std::size_t r = 0; r < remove_count; ++r) drop[idx[r]] = true;

  StretchSplit out;
  std::vector<Edge> kept, removed;
  for (std::size_t i = 0; i < m; ++i) {
    if (drop[i]) {
      removed.push_back(g.edge(i));
      out.removed_index.push_back(i);
    } else {
      kept.push_back(g.edge(i));
      out.kept_index.push_back(i);
    }
  }
  out.kept = Graph(g.num_vertices(), std::move(kept));
  out.removed = Graph(g.num_vertices(), std::move(removed));
  return out;
}

void write_tree(std::ostream& out, const RootedTree& t) {
  for (std::size_t v = 0; v < t.num_vertices(); ++v) {
    const Vertex p = t.parent(static_cast<Vertex>(v));
    if (p == kNoVertex) {
      out << v << " -1 0\n";
    } else {
      out << v << ' ' << p << ' ' << format_double(t.parent_weight(static_cast<Vertex>(v)))
          << '\n';
    }
  }
}

RootedTree read_tree(std::istream& in) {
  std::vector<std::tuple<long long, long long, double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream fields(line);
    long long v = 0, p = 0;
    double w = 0.0;
    if (!(fields >> v)) continue;
    if (!(fields >> p >> w)) throw ParseError("tree line: expected `v parent w`");
    rows.emplace_back(v, p, w);
  }
  const std::size_t n = rows.size();
  std::vector<Vertex> parent(n, kNoVertex);
  std::vector<double> weight(n, 0.0);
  std::vector<bool> seen(n, false);
  for (const auto& [v, p, w] : rows) {
    if (v < 0 || static_cast<std::size_t>(v) >= n || seen[static_cast<std::size_t>(v)]) {
      throw ParseError("tree: vertex ids must be a permutation of 0..n-1");
    }
    seen[static_cast<std::size_t>(v)] = true;
    if (p >= 0) {
      if (static_cast<std::size_t>(p) >= n) throw ParseError("tree: parent out of range");
      parent[static_cast<std::size_t>(v)] = static_cast<Vertex>(p);
      weight[static_cast<std::size_t>(v)] = w;
    }
  }
  return RootedTree(std::move(parent), std::move(weight));
}

}  // namespace walksparse
