#include "walksparse/graph_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>

namespace walksparse {

namespace {

std::string strip_comment(const std::string& line) {
  const auto hash = line.find('#');
  return hash == std::string::npos ? line : line.substr(0, hash);
}

bool parse_index(const std::string& token, std::size_t& out) {
  const char* first = token.data();
  const char* last = first + token.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

struct RawEdge {
  std::string u, v;
  double w;
  std::size_t line;
};

}  // namespace

std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 17);
  if (ec != std::errc()) throw std::runtime_error("format_double: conversion failed");
  return std::string(buf, ptr);
}

LabeledGraph read_edge_list(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::optional<std::pair<std::size_t, std::size_t>> header;
  std::vector<RawEdge> raw;

  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream tokens(strip_comment(line));
    std::vector<std::string> fields;
    for (std::string t; tokens >> t;) fields.push_back(t);
    if (fields.empty()) continue;

    if (!header) {
      std::size_t n = 0, m = 0;
      if (fields.size() != 2 || !parse_index(fields[0], n) || !parse_index(fields[1], m)) {
        throw ParseError("line " + std::to_string(line_no) + ": expected header `n m`");
      }
      header = {n, m};
      continue;
    }
    if (fields.size() != 3) {
      throw ParseError("line " + std::to_string(line_no) + ": expected `u v w`");
    }
    double w = 0.0;
    const std::string& wt = fields[2];
    auto [ptr, ec] = std::from_chars(wt.data(), wt.data() + wt.size(), w);
    if (ec != std::errc() || ptr != wt.data() + wt.size()) {
      throw ParseError("line " + std::to_string(line_no) + ": bad weight `" + wt + "`");
    }
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw ParseError("line " + std::to_string(line_no) + ": weight must be positive");
    }
    raw.push_back({fields[0], fields[1], w, line_no});
  }
  if (!header) throw ParseError("missing header `n m`");
  const auto [n, m] = *header;
  if (raw.size() != m) {
    throw ParseError("header declares " + std::to_string(m) + " edges but " +
                     std::to_string(raw.size()) + " were read");
  }

  bool dense_ids = true;
  for (const RawEdge& e : raw) {
    std::size_t a = 0, b = 0;
    if (!parse_index(e.u, a) || !parse_index(e.v, b) || a >= n || b >= n) {
      dense_ids = false;
      break;
    }
  }

  LabeledGraph out;
  std::vector<Edge> edges;
  edges.reserve(raw.size());
  if (dense_ids) {
    for (const RawEdge& e : raw) {
      std::size_t a = 0, b = 0;
      parse_index(e.u, a);
      parse_index(e.v, b);
      edges.push_back({static_cast<Vertex>(a), static_cast<Vertex>(b), e.w});
    }
  } else {
    std::unordered_map<std::string, Vertex> ids;
    auto id_of = [&](const std::string& label) {
      auto [it, inserted] = ids.emplace(label, static_cast<Vertex>(out.labels.size()));
      if (inserted) out.labels.push_back(label);
      return it->second;
    };
    for (const RawEdge& e : raw) {
      const Vertex a = id_of(e.u);
      const Vertex b = id_of(e.v);
      edges.push_back({a, b, e.w});
    }
    if (out.labels.size() > n) {
      throw ParseError("file uses " + std::to_string(out.labels.size()) +
                       " distinct labels but declares n = " + std::to_string(n));
    }
  }
  out.graph = Graph(n, std::move(edges));
  return out;
}

LabeledGraph read_edge_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << g.num_vertices() << ' ' << g.num_edges() << '\n';
  for (const Edge& e : g.edges()) {
    out << e.u << ' ' << e.v << ' ' << format_double(e.w) << '\n';
  }
}

void write_edge_list(const std::filesystem::path& path, const Graph& g) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_edge_list(out, g);
}

}  // namespace walksparse
