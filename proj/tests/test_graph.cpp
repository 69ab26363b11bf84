#include <doctest.h>

#include <vector>

#include "dagas/errors.hpp"
#include "dagas/graph.hpp"

using namespace dagas;

namespace {
std::vector<VertexId> kids(const AgreeableGraph& g, VertexId v) {
  const auto c = g.children(v);
  return {c.begin(), c.end()};
}
}  // namespace

TEST_CASE("square lattice children and ancestry") {
  const auto g = AgreeableGraph::square_lattice();
  CHECK(kids(g, {0, 0}) == std::vector<VertexId>{{0, 1}, {1, 1}});
  CHECK(kids(g, {-3, 5}) == std::vector<VertexId>{{-3, 6}, {-2, 6}});
  CHECK(g.is_ancestor({0, 0}, {1, 2}));
  CHECK(g.is_ancestor({0, 0}, {0, 3}));
  CHECK_FALSE(g.is_ancestor({0, 0}, {3, 2}));
  CHECK_FALSE(g.is_ancestor({0, 0}, {-1, 1}));
  CHECK_FALSE(g.is_ancestor({0, 0}, {0, 0}));
  const std::vector<VertexId> row{{0, 0}, {1, 0}, {5, 0}};
  CHECK(g.is_free(row));
  const std::vector<VertexId> chain{{0, 0}, {1, 1}};
  CHECK_FALSE(g.is_free(chain));
  CHECK(g.name({2, -1}) == "2,-1");
  CHECK(g.parse_vertex("2,-1") == VertexId{2, -1});
  CHECK_THROWS_AS(g.parse_vertex("2"), ParseError);
  CHECK(g.max_out_degree() == 2);
}

TEST_CASE("cylinder wraps around") {
  const auto g = AgreeableGraph::cylinder(3);
  CHECK(kids(g, {2, 0}) == std::vector<VertexId>{{2, 1}, {0, 1}});
  CHECK(g.contains({2, 7}));
  CHECK_FALSE(g.contains({3, 0}));
  CHECK_THROWS_AS(g.children({3, 0}), DomainError);
  // Every cell two rows below is reachable once n = 2.
  const auto two = AgreeableGraph::cylinder(2);
  CHECK(two.is_ancestor({0, 0}, {1, 1}));
  CHECK(two.is_ancestor({0, 0}, {0, 1}));
  CHECK_THROWS_AS(AgreeableGraph::cylinder(1), DomainError);
  CHECK(g.describe() == "cyl:3");
}

TEST_CASE("k-ary tree") {
  const auto g = AgreeableGraph::kary_tree(3);
  CHECK(kids(g, {1, 1}) == std::vector<VertexId>{{3, 2}, {4, 2}, {5, 2}});
  CHECK(g.is_ancestor({0, 0}, {8, 2}));
  CHECK_FALSE(g.is_ancestor({1, 1}, {2, 2}));
  CHECK_FALSE(g.contains({1, 0}));
  CHECK_THROWS_AS(AgreeableGraph::kary_tree(0), DomainError);
}

TEST_CASE("finite DAG validation") {
  const auto g = AgreeableGraph::finite_dag({"a", "b", "c"}, {{"a", "c"}, {"a", "b"}, {"b", "c"}});
  const auto a = g.parse_vertex("a");
  const auto b = g.parse_vertex("b");
  const auto c = g.parse_vertex("c");
  CHECK(kids(g, a) == std::vector<VertexId>{c, b});  // declaration order
  CHECK(g.is_ancestor(a, c));
  CHECK_FALSE(g.is_ancestor(c, a));
  CHECK(g.vertex_count() == 3);
  CHECK(g.topological_order().front() == a);
  CHECK(g.name(b) == "b");
  CHECK_THROWS_AS(g.parse_vertex("z"), DomainError);

  CHECK_THROWS_AS(AgreeableGraph::finite_dag({"a", "b"}, {{"a", "b"}, {"b", "a"}}), AgreeabilityError);
  CHECK_THROWS_AS(AgreeableGraph::finite_dag({"a", "b"}, {{"a", "b"}, {"a", "b"}}), AgreeabilityError);
  CHECK_THROWS_AS(AgreeableGraph::finite_dag({"a"}, {{"a", "a"}}), AgreeabilityError);
  CHECK_THROWS_AS(AgreeableGraph::finite_dag({"a"}, {{"a", "q"}}), DomainError);
}

TEST_CASE("graph specs and DAG files") {
  CHECK(parse_graph_spec("sq").kind() == GraphKind::square_lattice);
  CHECK(parse_graph_spec("cyl:5").parameter() == 5);
  CHECK(parse_graph_spec("tree:2").kind() == GraphKind::kary_tree);
  CHECK_THROWS_AS(parse_graph_spec("hex"), ParseError);
  CHECK_THROWS_AS(parse_graph_spec("cyl:x"), ParseError);

  const auto g = load_dag(R"({"vertices": ["x", "y"], "edges": [["x", "y"]]})");
  CHECK(g.is_ancestor(g.parse_vertex("x"), g.parse_vertex("y")));
  CHECK_THROWS_AS(load_dag("{"), ParseError);
  CHECK_THROWS_AS(load_dag(R"({"edges": []})"), ParseError);
  CHECK_THROWS_AS(load_dag(R"({"vertices": ["x"], "edges": [["x"]]})"), ParseError);
  CHECK_THROWS_AS(load_dag_file("/nonexistent/file.json"), ParseError);
}
