#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "graphrep/analysis.hpp"
#include "graphrep/optimize.hpp"

namespace graphrep::testing {

struct NamedMap {
  std::string name;
  ControlledGraphMap map;
};

// Built-in graph maps plus the initial maps of the built-in trellises.
const std::vector<NamedMap>& fixture_maps();
// Fixture maps that carry control edges.
std::vector<NamedMap> controlled_fixture_maps();

// Random re-presentation of a fixture map, chosen by the seed.
ControlledGraphMap random_case(std::uint64_t seed);
ControlledGraphMap random_controlled_case(std::uint64_t seed);

// Main, peripheral or puncture algorithm depending on the edge kinds present.
AlgorithmOutcome run_for(const ControlledGraphMap& g, const AlgorithmLimits& limits = {});

// Result of a randomized or exhaustive suite.
struct SuiteResult {
  int cases = 0;
  int failures = 0;
  std::string first_failure;

  bool ok() const { return failures == 0; }
  void fail(const std::string& what) {
    if (failures++ == 0) first_failure = what;
  }
  std::string summary() const;
};

// Random moves followed by tidy keep the map valid with the same Euler
// characteristic and number of control edges.
SuiteResult move_invariants_suite(int cases, std::uint64_t seed = 1);
// On a tidy map, a vertex homotopy is undone by a valence-3 homotopy; the control zeta then
// agrees below the first index n at which g^(n-1)(beta) meets a control edge
// and drops at n, with n <= |G| - |H|.
SuiteResult valence3_lemma_suite(int cases, std::uint64_t seed = 1);
// Along main-algorithm runs the key (control zeta, -|P|, peripheral zeta)
// drops at every move, with witness index within the zeta order.
SuiteResult trace_monotone_suite(int cases, std::uint64_t seed = 1);
// Every run stops within the move budget with a valid map of the same Euler
// characteristic and control count.
SuiteResult termination_suite(int cases, std::uint64_t seed = 1);
// Optimized outputs of re-presentations of one map are pairwise conjugate.
SuiteResult uniqueness_suite(const ControlledGraphMap& g, int presentations,
                             std::uint64_t seed = 1);

// trace(A^n) against brute-force closed edge-word counts.
SuiteResult closed_word_oracle_suite(int max_edges = 8, int max_n = 6);
// tighten_path against exhaustive cancellation of random words.
SuiteResult tighten_oracle_suite(int words, int max_length = 10, std::uint64_t seed = 1);

}  // namespace graphrep::testing
