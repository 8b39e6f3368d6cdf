#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "graphrep/document.hpp"
#include "graphrep/fixtures.hpp"

using namespace graphrep;

TEST_CASE("fixture files match the built-in examples") {
  const std::filesystem::path dir = GRAPHREP_FIXTURE_DIR;
  for (const auto& ex : builtin_examples()) {
    CAPTURE(ex.name);
    std::ifstream f(dir / (ex.name + ".gm"));
    REQUIRE(f);
    std::stringstream ss;
    ss << f.rdbuf();
    CHECK(ss.str() == ex.text);
    CHECK_FALSE(ex.summary.empty());
  }
  CHECK_FALSE(find_example("no-such-example"));
}

TEST_CASE("built-in graph maps are valid") {
  for (auto mk : {henon_example, algorithm2_example, ar_reduction_example, punctured_disc_example,
                  rose_example, finite_order_example}) {
    auto m = mk();
    CHECK(validate_map(m).ok());
    CHECK(is_embeddable(m));
  }
}
