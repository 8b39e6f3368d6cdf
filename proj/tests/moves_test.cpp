#include <doctest.h>

#include <algorithm>

#include "graphrep/analysis.hpp"
#include "graphrep/fixtures.hpp"
#include "graphrep/moves.hpp"

using namespace graphrep;

namespace {

Dart dart(const ControlledGraphMap& m, const std::string& name) { return *m.graph.find_dart(name); }

std::vector<std::string> names(const ControlledGraphMap& m, const std::vector<EdgeId>& es) {
  std::vector<std::string> out;
  for (EdgeId e : es) out.push_back(m.graph.edge_name(e));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("split then collapse restores the map") {
  auto m = rose_example();
  VertexId v = *m.graph.find_vertex("v");
  auto split = split_vertex(m, v, {dart(m, "a"), dart(m, "b")});
  REQUIRE(split.ok());
  REQUIRE(split.created.size() >= 1);
  CHECK(split.map.graph.vertex_count() == 2);
  CHECK(euler_characteristic(split.map.graph) == euler_characteristic(m.graph));
  CHECK(trace_boundary_loops(split.map.graph).size() == trace_boundary_loops(m.graph).size());
  CHECK(validate_map(split.map).ok());
  EdgeId e0 = -1;
  for (const auto& n : split.created)
    if (auto e = split.map.graph.find_edge(n)) e0 = *e;
  REQUIRE(e0 >= 0);
  CHECK(split.map.edge_image[e0].empty());
  auto back = collapse_edge(split.map, e0);
  REQUIRE(back.ok());
  CHECK(graphs_conjugate(back.map, m));
}

TEST_CASE("move preconditions are reported") {
  auto h = henon_example();
  auto c = control_edges(h.graph);
  REQUIRE_FALSE(c.empty());
  CHECK(collapse_edge(h, c.front()).error == "control edge");
  VertexId v = *h.graph.find_vertex("O");
  CHECK(h.graph.valence(v) == 4);
  CHECK(valence3_homotopy(h, v).error == "vertex not valence 3");
  auto bad = fold_turn(h, dart(h, "a0"), dart(h, "b0"));
  CHECK_FALSE(bad.ok());
  CHECK(bad.map.graph.edge_count() == h.graph.edge_count());
}

TEST_CASE("tidy is idempotent") {
  auto once = tidy(algorithm2_example());
  REQUIRE(once.ok());
  CHECK(is_tidy(once.map));
  auto twice = tidy(once.map);
  REQUIRE(twice.ok());
  CHECK(twice.records.empty());
  CHECK(graphs_conjugate(once.map, twice.map));
}

TEST_CASE("invariant forest of the worked example") {
  auto m = algorithm2_example();
  auto forest = find_invariant_forest(m);
  REQUIRE_FALSE(forest.empty());
  for (EdgeId e : forest) CHECK(m.graph.kind(e) == EdgeKind::Free);
  auto collapsed = collapse_invariant_forest(m, forest);
  REQUIRE(collapsed.ok());
  CHECK(euler_characteristic(collapsed.map.graph) == euler_characteristic(m.graph));
  CHECK(validate_map(collapsed.map).ok());
}

TEST_CASE("first fold of the worked example") {
  auto m = tidy(algorithm2_example()).map;
  auto f = fold_turn(m, dart(m, "p0"), dart(m, "~p1"));
  REQUIRE(f.ok());
  CHECK(euler_characteristic(f.map.graph) == euler_characteristic(m.graph));
  CHECK(control_edges(f.map.graph).size() == control_edges(m.graph).size());
  auto t = tidy(f.map);
  REQUIRE(t.ok());
  CHECK(validate_map(t.map).ok());
}

TEST_CASE("essential subgraph of the Henon map") {
  auto h = henon_example();
  auto ess = names(h, essential_edges(h));
  for (const char* gone : {"z1", "z3", "z5", "z7", "d"})
    CHECK(std::find(ess.begin(), ess.end(), gone) == ess.end());
  CHECK(ess.size() == static_cast<std::size_t>(h.graph.edge_count()) - 5);
}

TEST_CASE("random re-presentations stay valid") {
  auto h = henon_example();
  for (std::uint64_t s = 0; s < 30; ++s) {
    auto r = random_representation(h, s, 5);
    CAPTURE(s);
    CHECK(validate_map(r).ok());
    CHECK(euler_characteristic(r.graph) == euler_characteristic(h.graph));
    CHECK(control_edges(r.graph).size() == control_edges(h.graph).size());
  }
}
