#include <doctest.h>

#include "graphrep/document.hpp"
#include "graphrep/fixtures.hpp"

using namespace graphrep;

namespace {

ControlledGraphMap rose() { return rose_example(); }

}  // namespace

TEST_CASE("darts pair up by edge") {
  CHECK(edge_of(forward_dart(3)) == 3);
  CHECK(edge_of(backward_dart(3)) == 3);
  CHECK(is_backward(backward_dart(2)));
  CHECK_FALSE(is_backward(forward_dart(2)));
}

TEST_CASE("rose graph structure") {
  auto m = rose();
  const auto& g = m.graph;
  CHECK(g.vertex_count() == 1);
  CHECK(g.edge_count() == 2);
  CHECK(euler_characteristic(g) == -1);
  CHECK(connected_components(g) == 1);
  CHECK(trace_boundary_loops(g).size() == 1);
  CHECK(validate_graph(g).ok());
  Dart a = *g.find_dart("a");
  CHECK(g.rev(a) == *g.find_dart("~a"));
  CHECK(g.succ(a) == *g.find_dart("b"));
  CHECK(g.pred(a) == *g.find_dart("~b"));
}

TEST_CASE("paths tighten and reverse") {
  auto m = rose();
  const auto& g = m.graph;
  auto p = *parse_path(g, "a b ~b ~a b");
  CHECK(is_continuous(g, p));
  CHECK_FALSE(is_tight(g, p));
  auto t = tighten_path(g, p);
  CHECK(path_to_string(g, t) == "b");
  CHECK(path_to_string(g, reversed(g, *parse_path(g, "a b"))) == "~b ~a");
  auto full = tighten_path(g, *parse_path(g, "a ~a"));
  CHECK(full.empty());
  CHECK(full.anchor == *g.find_vertex("v"));
}

TEST_CASE("map images respect reversal") {
  auto m = rose();
  Dart a = *m.graph.find_dart("a");
  CHECK(path_to_string(m.graph, m.image(a)) == "a b");
  CHECK(path_to_string(m.graph, m.image(m.graph.rev(a))) == "~b ~a");
  CHECK(m.derivative(a) == a);
  CHECK(validate_map(m).ok());
  CHECK(is_embeddable(m));
}

TEST_CASE("validation reports a broken rotation") {
  ControlledRibbonGraph g;
  auto v = g.add_vertex("v");
  auto w = g.add_vertex("w");
  auto e = g.add_edge("e", EdgeKind::Free, v, w);
  g.set_rotation(v, {forward_dart(e)});
  g.set_rotation(w, {});
  CHECK_FALSE(validate_graph(g).ok());
}

TEST_CASE("parse errors carry positions") {
  SUBCASE("empty document") {
    try {
      parse_document("");
      FAIL("expected an error");
    } catch (const SyntaxError& e) {
      CHECK(e.line == 1);
      CHECK(e.column == 1);
    }
  }
  SUBCASE("unknown section") {
    CHECK_THROWS_AS(parse_document("graphmap x\nfoo:\n"), SyntaxError);
  }
  SUBCASE("duplicate edge") {
    const std::string text =
        "graphmap x\nvertices:\n  v -> v\nedges:\n  a free v v\n  a free v v\norder:\n"
        "  v: a ~a a ~a\nmap:\n  a -> a\n";
    CHECK_THROWS_AS(parse_document(text), SemanticError);
  }
  SUBCASE("unknown edge kind") {
    CHECK_THROWS_AS(parse_document("graphmap x\nvertices:\n  v -> v\nedges:\n  a wobbly v v\n"),
                    SyntaxError);
  }
}

TEST_CASE("documents round trip") {
  for (const auto& ex : builtin_examples()) {
    CAPTURE(ex.name);
    Document d = parse_document(ex.text);
    CHECK(serialize(d) == ex.text);
    CHECK(serialize(parse_document(serialize(d))) == serialize(d));
  }
}

TEST_CASE("json and dot export") {
  auto j = map_to_json(rose());
  CHECK(j.contains("edges"));
  auto dot = map_to_dot(rose(), "rose");
  CHECK(dot.find("digraph") != std::string::npos);
}
