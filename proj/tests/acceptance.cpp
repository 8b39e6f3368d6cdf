// Prints one PASS/FAIL line per acceptance criterion; exits 1 if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "cli.hpp"
#include "graphrep/analysis.hpp"
#include "graphrep/fixtures.hpp"
#include "graphrep/symbolic.hpp"
#include "graphrep/trellis.hpp"
#include "support/cases.hpp"

using namespace graphrep;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Report {
  std::vector<std::string> problems;
  void require(bool ok, const std::string& what) {
    if (!ok) problems.push_back(what);
  }
};

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(12);
  s << x;
  return s.str();
}

// Largest real root of x^3 - x^2 - 2 by bisection.
double henon_root() {
  double lo = 1, hi = 2;
  for (int i = 0; i < 200; ++i) {
    double mid = (lo + hi) / 2;
    (mid * mid * mid - mid * mid - 2 > 0 ? hi : lo) = mid;
  }
  return lo;
}

std::vector<std::string> sorted_names(const ControlledGraphMap& m) {
  std::vector<std::string> v;
  for (EdgeId e : m.graph.edges()) v.push_back(m.graph.edge_name(e));
  std::sort(v.begin(), v.end());
  return v;
}

// Equal up to a simultaneous permutation of rows and columns.
bool same_matrix_up_to_order(const IntMatrix& a, const IntMatrix& b) {
  if (a.size() != b.size()) return false;
  std::vector<std::size_t> p(a.size());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = i;
  do {
    bool eq = true;
    for (std::size_t i = 0; i < p.size() && eq; ++i)
      for (std::size_t j = 0; j < p.size() && eq; ++j) eq = a[p[i]][p[j]] == b[i][j];
    if (eq) return true;
  } while (std::next_permutation(p.begin(), p.end()));
  return false;
}

void henon(Report& r) {
  const auto t0 = Clock::now();
  ControlledGraphMap h = henon_example();
  std::vector<std::string> all = sorted_names(h), kept = sorted_names(essential_representative(h));
  std::vector<std::string> dropped;
  std::set_difference(all.begin(), all.end(), kept.begin(), kept.end(), std::back_inserter(dropped));
  r.require(dropped == std::vector<std::string>{"d", "z1", "z3", "z5", "z7"},
            "essential representative drops the wrong edges");
  ControlledGraphMap top = topological_representative(h);
  TransitionMatrix tm = transition_matrix(top);
  r.require(same_matrix_up_to_order(tm.entries, {{1, 2, 0}, {0, 0, 1}, {1, 0, 0}}),
            "topological transition matrix differs");
  SpectralResult s = growth_rate(tm);
  r.require(std::abs(s.growth - henon_root()) < 1e-9, "growth " + fmt(s.growth));
  AlgorithmOutcome out = run_main_algorithm(h);
  const double entropy = nielsen_entropy(out);
  r.require(std::abs(entropy - 0.528) < 5e-4, "entropy " + fmt(entropy));
  const double secs = seconds_since(t0);
  r.require(secs < 1.0, "runtime " + fmt(secs) + " s");
}

void worked_example(Report& r) {
  const auto t0 = Clock::now();
  AlgorithmOutcome out = run_main_algorithm(algorithm2_example());
  const double secs = seconds_since(t0);
  r.require(out.result == AlgorithmResult::Optimal, "result " + std::string(to_string(out.result)));
  std::vector<std::vector<std::uint64_t>> stages;
  for (const auto& e : out.trace) {
    const auto& c = e.control_zeta.coefficients;
    stages.push_back({c.begin(), c.begin() + static_cast<long>(std::min<std::size_t>(3, c.size()))});
  }
  auto has = [&](std::vector<std::uint64_t> s) {
    return std::find(stages.begin(), stages.end(), s) != stages.end();
  };
  r.require(has({5, 13, 25}), "trace misses (5,13,25)");
  r.require(has({5, 11, 19}), "trace misses (5,11,19)");
  r.require(has({5, 9, 17}), "trace misses (5,9,17)");
  r.require(!stages.empty() && stages.back() == std::vector<std::uint64_t>{5, 9, 15},
            "trace does not end at (5,9,15)");
  std::vector<std::string> p;
  for (EdgeId e : out.map.graph.edges())
    if (out.map.graph.kind(e) == EdgeKind::Peripheral) p.push_back(out.map.graph.edge_name(e));
  std::sort(p.begin(), p.end());
  r.require(p == std::vector<std::string>{"p1", "q1"}, "peripheral subgraph differs");
  r.require(secs < 5.0, "runtime " + fmt(secs) + " s");
}

void horseshoe_check(Report& r) {
  Trellis t = horseshoe();
  AlgorithmOutcome out = run_main_algorithm(derive_initial_map(t));
  r.require(out.result == AlgorithmResult::Optimal, "not optimal");
  SpectralResult s = growth_rate(transition_matrix(out.map));
  r.require(s.growth == 2.0 && s.exact && s.method == SpectralMethod::CharPoly,
            "growth " + fmt(s.growth) + " not an exact integer root");
  r.require(std::abs(nielsen_entropy(out) - std::log(2.0)) < 1e-12, "entropy is not log 2");
  ItineraryTable it = itineraries(out.map, trellis_region_labels(t.encoding), 10, {"R0", "R1"});
  std::vector<std::set<std::vector<std::string>>> words(11);
  for (const auto& w : it.words)
    if (w.size() <= 10) words[w.size()].insert(w);
  for (std::size_t n = 1; n <= 10; ++n) {
    bool binary = words[n].size() == (1u << n);
    for (const auto& w : words[n])
      for (const auto& x : w) binary = binary && (x == "R0" || x == "R1");
    r.require(binary, "words of length " + std::to_string(n) + " are not all binary words");
    r.require(it.closed_counts.size() > n && it.closed_counts[n] == (1 << n),
              "closed count at " + std::to_string(n));
  }
}

void reduction(Report& r) {
  AlgorithmOutcome out = run_main_algorithm(ar_reduction_example());
  r.require(out.result == AlgorithmResult::Reduction && out.reduction &&
                out.reduction->kind == ReductionKind::AttractorRepellor,
            "no attractor-repellor finding");
  if (out.reduction) {
    r.require(out.reduction->h_has_control, "H has no control edge");
    r.require(out.reduction->complement_has_control, "complement has no control edge");
    r.require(verify_reduction(out.map, *out.reduction), "finding does not verify");
  }
  std::ostringstream o, e;
  int status = cli::run({"optimize", "ar-reduction", "--expect-optimal"}, o, e);
  r.require(status == 2, "optimize --expect-optimal exited " + std::to_string(status));
}

void suite(Report& r, const std::string& name, const testing::SuiteResult& s, int min_cases) {
  r.require(s.cases >= min_cases, name + ": only " + std::to_string(s.cases) + " cases");
  r.require(s.ok(), name + ": " + s.summary());
}

void properties(Report& r) {
  suite(r, "move invariants", testing::move_invariants_suite(1000, 101), 1000);
  suite(r, "valence-3 lemma", testing::valence3_lemma_suite(1000, 101), 1000);
  suite(r, "trace monotonicity", testing::trace_monotone_suite(1000, 101), 1000);
  suite(r, "termination", testing::termination_suite(1000, 101), 1000);
}

void uniqueness(Report& r) {
  suite(r, "worked example", testing::uniqueness_suite(algorithm2_example(), 50, 101), 50 * 49 / 2);
  suite(r, "henon", testing::uniqueness_suite(henon_example(), 50, 101), 50 * 49 / 2);
}

void oracles(Report& r) {
  suite(r, "closed words", testing::closed_word_oracle_suite(8, 6), 1);
  suite(r, "tightening", testing::tighten_oracle_suite(10000, 10, 101), 10000);
}

void other_maps(Report& r) {
  AlgorithmOutcome rose = run_puncture_algorithm(rose_example());
  const double g = growth_rate(transition_matrix(rose.map)).growth;
  r.require(std::abs(g - (1 + std::sqrt(5.0)) / 2) < 1e-9, "rose growth " + fmt(g));
  AlgorithmOutcome fin = run_peripheral_algorithm(finite_order_example());
  SpectralResult s = growth_rate(transition_matrix(fin.map));
  r.require(s.growth == 1.0 && s.exact, "finite-order growth " + fmt(s.growth));
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Report&)>>> criteria = {
      {"Henon representative", henon},
      {"worked example", worked_example},
      {"Smale horseshoe", horseshoe_check},
      {"attractor-repellor reduction", reduction},
      {"property suites", properties},
      {"uniqueness", uniqueness},
      {"oracles", oracles},
      {"rose and finite-order maps", other_maps},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Report r;
    try {
      criteria[i].second(r);
    } catch (const std::exception& e) {
      r.problems.push_back(std::string("exception: ") + e.what());
    }
    std::cout << (r.problems.empty() ? "PASS " : "FAIL ") << i + 1 << " " << criteria[i].first;
    for (const auto& p : r.problems) std::cout << " | " << p;
    std::cout << std::endl;
    if (!r.problems.empty()) ++failed;
  }
  return failed ? 1 : 0;
}
