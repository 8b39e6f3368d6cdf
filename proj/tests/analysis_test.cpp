#include <doctest.h>

#include <cmath>

#include "graphrep/analysis.hpp"
#include "graphrep/fixtures.hpp"

using namespace graphrep;

TEST_CASE("characteristic polynomial") {
  CHECK(characteristic_polynomial({{1, 1}, {1, 0}}) == std::vector<std::int64_t>{1, -1, -1});
  CHECK(characteristic_polynomial({{0, 1, 0}, {0, 0, 1}, {2, 0, 1}}) ==
        std::vector<std::int64_t>{1, -1, 0, -2});
}

TEST_CASE("spectral radius") {
  SUBCASE("golden ratio") {
    auto r = growth_rate(IntMatrix{{1, 1}, {1, 0}});
    CHECK(r.growth == doctest::Approx((1 + std::sqrt(5.0)) / 2).epsilon(1e-12));
    CHECK(r.method == SpectralMethod::CharPoly);
  }
  SUBCASE("permutation") {
    auto r = growth_rate(IntMatrix{{0, 1, 0}, {0, 0, 1}, {1, 0, 0}});
    CHECK(r.growth == 1.0);
    CHECK(r.entropy == 0.0);
    CHECK(r.exact);
  }
  SUBCASE("integer root") {
    auto r = growth_rate(IntMatrix{{1, 1}, {1, 1}});
    CHECK(r.growth == 2.0);
    CHECK(r.exact);
  }
  SUBCASE("large blocks use power iteration") {
    IntMatrix a(14, std::vector<std::int64_t>(14, 0));
    for (int i = 0; i < 14; ++i) a[i][(i + 1) % 14] = 1;
    a[13][0] = 2;
    auto r = growth_rate(a);
    CHECK(r.method == SpectralMethod::PowerIteration);
    CHECK(r.growth == doctest::Approx(std::pow(2.0, 1.0 / 14)).epsilon(1e-9));
    auto p = power_iteration_growth(IntMatrix{{1, 1}, {1, 0}});
    CHECK(p.growth == doctest::Approx((1 + std::sqrt(5.0)) / 2).epsilon(1e-9));
  }
}

TEST_CASE("matrix helpers") {
  IntMatrix a{{1, 1}, {1, 0}};
  CHECK(matrix_power(a, 5) == IntMatrix{{8, 5}, {5, 3}});
  CHECK(trace(matrix_power(a, 5)) == 11);
  IntMatrix b{{1, 1, 0}, {0, 1, 0}, {0, 1, 1}};
  auto blocks = irreducible_blocks(b);
  CHECK(blocks.size() == 3);
  CHECK(submatrix(b, {0, 1}) == IntMatrix{{1, 1}, {0, 1}});
}

TEST_CASE("Henon representatives") {
  auto out = run_main_algorithm(henon_example());
  REQUIRE(out.result == AlgorithmResult::Optimal);
  CHECK(out.moves == 0);
  auto top = topological_representative(out.map);
  CHECK(top.graph.edge_count() == 3);
  auto tm = transition_matrix(top);
  auto r = growth_rate(tm);
  CHECK(std::abs(r.growth - 1.695620769559862) < 1e-9);
  CHECK(nielsen_entropy(out) == doctest::Approx(0.528).epsilon(5e-4 / 0.528));
  CHECK(map_entropy(out.map) == doctest::Approx(r.entropy));
  auto ess = essential_representative(henon_example());
  CHECK(ess.graph.edge_count() == henon_example().graph.edge_count() - 5);
  CHECK(graphs_conjugate(ess, out.map));
  auto tmx = transition_matrix(out.map, MatrixScope::Expanding);
  CHECK(growth_rate(tmx).growth == doctest::Approx(r.growth));
}

TEST_CASE("conjugacy search") {
  auto m = henon_example();
  auto w = graphs_conjugate(m, m);
  REQUIRE(w);
  for (VertexId v : m.graph.vertices()) CHECK(w->vertex_map[v] == v);
  auto renamed = m;
  for (EdgeId e : renamed.graph.edges()) renamed.graph.rename_edge(e, "r" + renamed.graph.edge_name(e));
  CHECK(graphs_conjugate(m, renamed));
  CHECK_FALSE(graphs_conjugate(m, rose_example()));
}

TEST_CASE("minimal iterate path") {
  auto m = rose_example();
  auto p = minimal_iterate_path(m, *parse_path(m.graph, "a ~b"));
  CHECK(path_to_string(m.graph, p) == "a b ~a");
}
