#include <doctest.h>

#include <sstream>

#include "walksparse/graph_io.hpp"
#include "walksparse/resistance.hpp"
#include "walksparse/tree.hpp"

using namespace walksparse;

TEST_CASE("edge list round trip keeps weights bit-exact") {
  const Graph g(4, {{0, 1, 0.1}, {1, 2, 1.0 / 3.0}, {2, 3, 1e-300}, {3, 0, 12345.678901234567}});
  std::stringstream buf;
  write_edge_list(buf, g);
  const LabeledGraph back = read_edge_list(buf);
  CHECK(back.labels.empty());
  REQUIRE(back.graph.num_edges() == g.num_edges());
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    CHECK(back.graph.edge(e).u == g.edge(e).u);
    CHECK(back.graph.edge(e).v == g.edge(e).v);
    CHECK(back.graph.edge(e).w == g.edge(e).w);
  }
}

TEST_CASE("comments and blank lines are skipped") {
  std::istringstream in("# header follows\n3 2\n\n0 1 1.5 # first\n# nothing\n1 2 2\n");
  const LabeledGraph g = read_edge_list(in);
  CHECK(g.graph.num_vertices() == 3);
  CHECK(g.graph.num_edges() == 2);
  CHECK(g.graph.edge(0).w == 1.5);
}

TEST_CASE("non-integer labels are remapped in order of appearance") {
  std::istringstream in("3 2\nalice bob 1\nbob carol 2\n");
  const LabeledGraph g = read_edge_list(in);
  REQUIRE(g.labels.size() == 3);
  CHECK(g.labels[0] == "alice");
  CHECK(g.labels[1] == "bob");
  CHECK(g.labels[2] == "carol");
  CHECK(g.graph.edge(1).u == 1);
  CHECK(g.graph.edge(1).v == 2);
}

TEST_CASE("malformed input is rejected") {
  std::istringstream no_header("");
  CHECK_THROWS_AS(read_edge_list(no_header), ParseError);
  std::istringstream short_body("3 2\n0 1 1\n");
  CHECK_THROWS_AS(read_edge_list(short_body), ParseError);
  std::istringstream bad_weight("2 1\n0 1 -2\n");
  CHECK_THROWS(read_edge_list(bad_weight));
  std::istringstream missing_weight("2 1\n0 1\n");
  CHECK_THROWS_AS(read_edge_list(missing_weight), ParseError);
}

TEST_CASE("format_double uses 17 significant digits") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(1.0) == "1");
  CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("bounds serialise in edge order with the total") {
  const Graph g(3, {{0, 1, 1.0}, {1, 2, 2.0}});
  const ResistanceBounds b(g, {1.0, 0.5});
  std::ostringstream out;
  write_bounds(out, g, b);
  CHECK(out.str() == "0 1 1\n1 2 0.5\n# total_tau 2\n");
}

TEST_CASE("trees serialise as parent arrays") {
  const RootedTree t({kNoVertex, 0, 1, 1}, {0.0, 2.0, 0.5, 4.0});
  std::ostringstream out;
  write_tree(out, t);
  CHECK(out.str() == "0 -1 0\n1 0 2\n2 1 0.5\n3 1 4\n");
  std::istringstream in(out.str());
  const RootedTree back = read_tree(in);
  CHECK(back.parent(3) == 1);
  CHECK(back.parent_weight(2) == 0.5);
  CHECK(back.path_resistance(2, 3) == doctest::Approx(2.25));
}
