#include <doctest.h>

#include <cmath>

#include "graphrep/analysis.hpp"
#include "graphrep/complexity.hpp"
#include "graphrep/fixtures.hpp"
#include "support/cases.hpp"

using namespace graphrep;

TEST_CASE("zeta series formatting") {
  ZetaSeries z{{5, 9, 15, 23}};
  CHECK(z.to_string(3) == "5 + 9t + 15t^2 + ...");
  CHECK(z.to_string() == "5 + 9t + 15t^2 + 23t^3 + ...");
  CHECK(z.order() == 3);
}

TEST_CASE("zeta comparison is lexicographic") {
  ZetaSeries a{{5, 9, 15}}, b{{5, 9, 17}}, c{{5, 9}};
  auto r = zeta_compare(a, b);
  CHECK(r.verdict == Ordering::Less);
  CHECK(r.index == 2);
  CHECK(zeta_compare(b, a).verdict == Ordering::Greater);
  CHECK(zeta_compare(a, a).verdict == Ordering::Equal);
  CHECK(zeta_compare(a, a).index == -1);
  CHECK_THROWS_AS(zeta_compare(a, c), Error);
}

TEST_CASE("norms agree with explicit iterated words") {
  for (const auto& [name, m] : testing::fixture_maps()) {
    CAPTURE(name);
    for (const EdgeMask& h : {control_mask(m.graph), peripheral_mask(m.graph)}) {
      if (mask_size(m.graph, h) == 0) continue;
      for (int k = 0; k <= 3; ++k)
        for (NormRule rule : {NormRule::CancelH, NormRule::Raw, NormRule::Tight}) {
          CAPTURE(k);
          CHECK(h_norm(m, h, k, rule) == h_norm_by_words(m, h, k, rule));
        }
    }
  }
}

TEST_CASE("worked example starts at 5 + 13t + 25t^2") {
  auto m = tidy(restrict_to_essential(tidy(algorithm2_example()).map).map).map;
  auto z = zeta_truncated(m, control_mask(m.graph), default_truncation(m));
  CHECK(z.to_string(3) == "5 + 13t + 25t^2 + ...");
  CHECK(default_truncation(m) == m.graph.edge_count());
}

TEST_CASE("norm growth ratio approaches the growth rate") {
  auto m = run_main_algorithm(henon_example()).map;
  const EdgeMask all(static_cast<std::size_t>(m.graph.edge_slots()), 1);
  const double lambda = growth_rate(transition_matrix(m)).growth;
  const double a = static_cast<double>(h_norm(m, all, 14, NormRule::Raw));
  const double b = static_cast<double>(h_norm(m, all, 15, NormRule::Raw));
  CHECK(std::abs(std::log(b / a) - std::log(lambda)) <= 0.1 * std::log(lambda));
}

TEST_CASE("h-length counts darts in H") {
  auto m = rose_example();
  auto h = edge_mask(m.graph, {*m.graph.find_edge("a")});
  auto p = *parse_path(m.graph, "a b ~a a");
  CHECK(h_length(p, h) == 3);
}
