#include <doctest.h>

#include <cmath>
#include <set>

#include "graphrep/document.hpp"
#include "graphrep/optimize.hpp"
#include "graphrep/symbolic.hpp"
#include "graphrep/trellis.hpp"

using namespace graphrep;

TEST_CASE("branch slots parse") {
  for (BranchSlot s : {BranchSlot::UnstablePlus, BranchSlot::StablePlus, BranchSlot::UnstableMinus,
                       BranchSlot::StableMinus})
    CHECK(parse_branch_slot(to_string(s)) == s);
  CHECK_FALSE(parse_branch_slot("sideways"));
}

TEST_CASE("horseshoe trellis") {
  Trellis t = horseshoe();
  CHECK(validate_trellis(t.encoding).ok());
  CHECK(validate_trellis_map(t).ok());
  CHECK_FALSE(stable_segments(t.encoding).empty());
  CHECK_FALSE(unstable_pieces(t.encoding).empty());

  RegionDecomposition rd = compute_regions(t.encoding);
  REQUIRE_FALSE(rd.regions.empty());
  int unbounded = 0, bigons = 0, rectangles = 0;
  for (const auto& r : rd.regions) {
    unbounded += r.kind == RegionKind::Unbounded;
    bigons += r.kind == RegionKind::Bigon;
    rectangles += r.kind == RegionKind::Rectangle;
  }
  CHECK(rd.regions.size() == 8);
  CHECK(unbounded == 1);
  CHECK(bigons == 3);
  CHECK(rectangles == 4);
  for (const auto& r : rd.regions)
    if (r.kind == RegionKind::Bigon) {
      CHECK(r.stable_sides == 1);
      CHECK(r.unstable_sides == 1);
    }

  auto g = build_compatible_graph(t.encoding);
  CHECK(validate_graph(g).ok());
  CHECK_FALSE(control_edges(g).empty());

  auto m = derive_initial_map(t);
  CHECK(validate_map(m).ok());
  CHECK(euler_characteristic(m.graph) == euler_characteristic(g));
}

TEST_CASE("horseshoe itineraries") {
  Trellis t = horseshoe();
  auto out = run_main_algorithm(derive_initial_map(t));
  REQUIRE(out.result == AlgorithmResult::Optimal);
  auto r = growth_rate(transition_matrix(out.map));
  CHECK(r.growth == 2.0);
  CHECK(r.exact);
  CHECK(nielsen_entropy(out) == doctest::Approx(std::log(2.0)).epsilon(1e-12));

  auto table = itineraries(out.map, trellis_region_labels(t.encoding), 10, {"R0", "R1"});
  CHECK(table.alphabet == std::vector<std::string>{"R0", "R1"});
  std::vector<std::set<std::vector<std::string>>> by_length(11);
  for (const auto& w : table.words) by_length[w.size()].insert(w);
  for (std::size_t n = 1; n <= 10; ++n) {
    CAPTURE(n);
    CHECK(by_length[n].size() == (1u << n));
    CHECK(table.closed_counts[n] == (1 << n));
  }
  CHECK_FALSE(table.words_truncated);
  CHECK(itinerary_dot(table).find("R0") != std::string::npos);
  CHECK_THROWS_AS(itineraries(out.map, RegionLabels{}, 3), Error);
}

TEST_CASE("crossing-free trellis") {
  Trellis t = crossing_free_trellis();
  CHECK(validate_trellis_map(t).ok());
  auto m = derive_initial_map(t);
  CHECK(validate_map(m).ok());
  auto out = run_peripheral_algorithm(m);
  CHECK(growth_rate(transition_matrix(out.map)).growth == 1.0);
}

TEST_CASE("trellis documents round trip") {
  for (const Trellis& t : {horseshoe(), crossing_free_trellis()}) {
    std::string text = serialize(trellis_document(t));
    Document d = parse_document(text);
    CHECK(d.kind == DocumentKind::Trellis);
    CHECK(serialize(d) == text);
  }
}

TEST_CASE("invalid trellis is rejected") {
  Trellis t = horseshoe();
  t.encoding.points.push_back(t.encoding.points.front());
  CHECK(validate_trellis(t.encoding).has("duplicate point"));
}
