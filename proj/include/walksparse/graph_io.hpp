#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "walksparse/graph.hpp"

namespace walksparse {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parsed edge list. `labels` is empty when the file already used dense
/// 0-based integer ids; otherwise labels[i] is the original label of vertex i
/// (assigned in order of first appearance).
struct LabeledGraph {
  Graph graph;
  std::vector<std::string> labels;
};

/// Edge-list text: a header `n m`, then m lines `u v w`. Blank lines and
/// anything after `#` are ignored.
LabeledGraph read_edge_list(std::istream& in);
LabeledGraph read_edge_list(const std::filesystem::path& path);

void write_edge_list(std::ostream& out, const Graph& g);
void write_edge_list(const std::filesystem::path& path, const Graph& g);

/// Shortest decimal form with 17 significant digits (round-trips exactly).
std::string format_double(double x);

}  // namespace walksparse
