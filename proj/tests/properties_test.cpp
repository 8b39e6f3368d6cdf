#include <doctest.h>

#include "graphrep/fixtures.hpp"
#include "support/cases.hpp"

using namespace graphrep;

TEST_CASE("moves preserve euler characteristic and control count") {
  auto r = testing::move_invariants_suite(1000);
  CHECK(r.cases >= 1000);
  CHECK_MESSAGE(r.ok(), r.summary());
}

TEST_CASE("valence-3 homotopy lemma") {
  auto r = testing::valence3_lemma_suite(1000);
  CHECK(r.cases >= 1000);
  CHECK_MESSAGE(r.ok(), r.summary());
}

TEST_CASE("trace key drops at every move") {
  auto r = testing::trace_monotone_suite(1000);
  CHECK(r.cases >= 1000);
  CHECK_MESSAGE(r.ok(), r.summary());
}

TEST_CASE("runs terminate within the move budget") {
  auto r = testing::termination_suite(1000);
  CHECK(r.cases >= 1000);
  CHECK_MESSAGE(r.ok(), r.summary());
}

TEST_CASE("re-presentations give conjugate outputs") {
  for (auto mk : {henon_example, algorithm2_example}) {
    auto r = testing::uniqueness_suite(mk(), 50);
    CHECK(r.cases == 50 * 49 / 2);
    CHECK_MESSAGE(r.ok(), r.summary());
  }
}
