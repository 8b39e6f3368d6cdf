#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "graphrep/analysis.hpp"
#include "graphrep/fixtures.hpp"
#include "graphrep/optimize.hpp"

using namespace graphrep;

namespace {

std::vector<std::string> zeta_stages(const AlgorithmOutcome& out) {
  std::vector<std::string> s;
  for (const auto& e : out.trace) s.push_back(e.control_zeta.to_string(3));
  return s;
}

bool contains(const std::vector<std::string>& v, const std::string& x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

std::vector<std::string> peripheral_names(const ControlledGraphMap& m) {
  std::vector<std::string> out;
  for (EdgeId e : m.graph.edges())
    if (m.graph.kind(e) == EdgeKind::Peripheral) out.push_back(m.graph.edge_name(e));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("turn classification") {
  auto m = tidy(restrict_to_essential(tidy(algorithm2_example()).map).map).map;
  auto turns = classify_turns(m);
  CHECK(std::any_of(turns.begin(), turns.end(),
                    [](const TurnClassification& t) { return t.cls == TurnClass::Bad; }));
  auto cert = is_optimal(m);
  CHECK_FALSE(cert.holds);
  REQUIRE(cert.turn);
  CHECK(cert.turn->cls != TurnClass::Good);
  CHECK_FALSE(turns_taken(m, 2).empty());
}

TEST_CASE("Henon map is already optimal") {
  auto h = essential_representative(henon_example());
  CHECK(is_optimal(h).holds);
  auto out = run_main_algorithm(henon_example());
  CHECK(out.result == AlgorithmResult::Optimal);
  CHECK(out.moves == 0);
  CHECK(graphs_conjugate(out.map, h));
}

TEST_CASE("worked example run") {
  auto out = run_main_algorithm(algorithm2_example());
  REQUIRE(out.result == AlgorithmResult::Optimal);
  auto stages = zeta_stages(out);
  REQUIRE_FALSE(stages.empty());
  CHECK(stages.front() == "5 + 13t + 25t^2 + ...");
  CHECK(contains(stages, "5 + 11t + 19t^2 + ..."));
  CHECK(contains(stages, "5 + 9t + 17t^2 + ..."));
  CHECK(stages.back() == "5 + 9t + 15t^2 + ...");
  CHECK(out.zeta.to_string(3) == "5 + 9t + 15t^2 + ...");
  CHECK(peripheral_names(out.map) == std::vector<std::string>{"p1", "q1"});
  CHECK(out.trace.back().peripheral_edges == 2);
  CHECK(is_optimal(out.map).holds);
  CHECK(validate_map(out.map).ok());
}

TEST_CASE("move budget is enforced") {
  AlgorithmLimits limits;
  limits.max_moves = 1;
  CHECK_THROWS_WITH_AS(run_main_algorithm(algorithm2_example(), limits), "move budget exceeded", Error);
}

TEST_CASE("attractor-repellor reduction") {
  auto g = ar_reduction_example();
  auto out = run_main_algorithm(g);
  REQUIRE(out.result == AlgorithmResult::Reduction);
  REQUIRE(out.reduction);
  const auto& f = *out.reduction;
  CHECK(f.kind == ReductionKind::AttractorRepellor);
  CHECK(f.h_has_control);
  CHECK(f.complement_has_control);
  std::string why;
  CHECK_MESSAGE(verify_reduction(out.map, f, &why), why);
  std::vector<EdgeId> h;
  for (const auto& n : f.edges) h.push_back(*out.map.graph.find_edge(n));
  auto a = restrict_to_invariant(out.map, h);
  CHECK(a.graph.edge_count() == static_cast<int>(h.size()));
  CHECK(validate_map(a).ok());
  CHECK_THROWS_WITH_AS(restrict_to_invariant(out.map, {h.front()}), "H violates preconditions", Error);
  CHECK_FALSE(find_attractor_repellor(henon_example()));
}

TEST_CASE("invariant curve reductions") {
  // Identity on a theta graph: the free subgraph is invariant and not a forest.
  ControlledRibbonGraph g;
  auto u = g.add_vertex("u");
  auto v = g.add_vertex("v");
  auto a = g.add_edge("a", EdgeKind::Free, u, v);
  auto b = g.add_edge("b", EdgeKind::Free, u, v);
  auto c = g.add_edge("c", EdgeKind::Control, u, v, "x");
  g.set_rotation(u, {forward_dart(a), forward_dart(b), forward_dart(c)});
  g.set_rotation(v, {backward_dart(a), backward_dart(c), backward_dart(b)});
  auto m = identity_map(g);
  REQUIRE(validate_map(m).ok());
  auto sub = find_invariant_free_subgraph(m);
  REQUIRE(sub);
  CHECK_FALSE(sub->is_forest);
  auto f = find_invariant_curve_reduction(m);
  REQUIRE(f);
  CHECK(f->kind != ReductionKind::None);
  CHECK(f->kind != ReductionKind::AttractorRepellor);
}

TEST_CASE("peripheral and puncture algorithms") {
  SUBCASE("punctured disc") {
    auto out = run_peripheral_algorithm(punctured_disc_example());
    CHECK(out.result == AlgorithmResult::Efficient);
    CHECK(is_efficient(out.map).holds);
    auto tm = transition_matrix(out.map);
    CHECK(growth_rate(tm).growth ==
          doctest::Approx(power_iteration_growth(tm.entries, 1e-13).growth).epsilon(1e-9));
  }
  SUBCASE("rose") {
    auto out = run_puncture_algorithm(rose_example());
    CHECK(out.result == AlgorithmResult::Efficient);
    CHECK(std::abs(growth_rate(transition_matrix(out.map)).growth - (1 + std::sqrt(5.0)) / 2) < 1e-9);
  }
  SUBCASE("finite order") {
    auto out = run_peripheral_algorithm(finite_order_example());
    auto r = growth_rate(transition_matrix(out.map));
    CHECK(r.growth == 1.0);
    CHECK(r.exact);
    CHECK(nielsen_entropy(out) == 0.0);
  }
}
