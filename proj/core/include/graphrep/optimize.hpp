#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "graphrep/complexity.hpp"
#include "graphrep/moves.hpp"

namespace graphrep {

enum class TurnClass { Good, FullyControlled, HalfControlled, Bad, Inefficient };
const char* to_string(TurnClass c);

struct TurnClassification {
  VertexId vertex = -1;
  Dart first = kNoDart;   // e0
  Dart second = kNoDart;  // e1 = succ(e0)
  TurnClass cls = TurnClass::Good;
};

// Every turn (d, succ d) at every vertex of valence >= 2.
std::vector<TurnClassification> classify_turns(const ControlledGraphMap& g);

// Unordered turns {a, b} crossed by some g^n(e), 1 <= n <= depth (closure of
// the turns inside single images under the derivative map).
std::vector<std::pair<Dart, Dart>> turns_taken(const ControlledGraphMap& g, int depth);

struct Certificate {
  bool holds = true;
  std::optional<TurnClassification> turn;
  std::vector<EdgeId> forest;
  std::string reason;
};

// No bad turns and every invariant forest contains a control edge.
Certificate is_optimal(const ControlledGraphMap& g);
// No inefficient turns and no invariant forest of free edges.
Certificate is_efficient(const ControlledGraphMap& g);

struct FreeSubgraph {
  std::vector<EdgeId> edges;
  bool is_forest = true;
};

// Maximal invariant subgraph of free non-peripheral edges, if nonempty.
std::optional<FreeSubgraph> find_invariant_free_subgraph(const ControlledGraphMap& g);

enum class ReductionKind { None, SeparatingCurve, NonSeparatingCurve, AttractorRepellor };
const char* to_string(ReductionKind k);

struct ReductionFinding {
  ReductionKind kind = ReductionKind::None;
  std::vector<std::string> edges;  // names of the edges of H
  int euler = 0;
  int components = 0;
  bool h_has_control = false;
  bool complement_has_control = false;
};

// Checks the defining conditions of the finding's kind against g.
bool verify_reduction(const ControlledGraphMap& g, const ReductionFinding& f,
                      std::string* why = nullptr);
// Invariant free subgraph that is not a forest and not inside the peripheral subgraph.
std::optional<ReductionFinding> find_invariant_curve_reduction(const ControlledGraphMap& g);
// Forward closure H of an edge with chi(H) < 0 or a union of non-peripheral
// circles, where H and the rest of the graph both carry control edges.
std::optional<ReductionFinding> find_attractor_repellor(const ControlledGraphMap& g);

struct AlgorithmLimits {
  int max_moves = 10000;
  int zeta_order = -1;  // -1: number of edges of the input
};

struct TraceEntry {
  MoveRecord move;
  ZetaSeries control_zeta;
  int peripheral_edges = 0;
  ZetaSeries peripheral_zeta;
};

enum class AlgorithmResult { Optimal, Efficient, Reduction };
const char* to_string(AlgorithmResult r);

struct AlgorithmOutcome {
  AlgorithmResult result = AlgorithmResult::Optimal;
  ControlledGraphMap map;
  std::vector<TraceEntry> trace;
  ZetaSeries zeta;  // control zeta of the final map
  std::optional<ReductionFinding> reduction;
  int moves = 0;  // non-tidy moves
};

// Lexicographic key (control zeta, -|P|, peripheral zeta) comparison.
ZetaComparison compare_trace_keys(const TraceEntry& a, const TraceEntry& b);

AlgorithmOutcome run_main_algorithm(const ControlledGraphMap& g, const AlgorithmLimits& limits = {});
AlgorithmOutcome run_peripheral_algorithm(const ControlledGraphMap& g,
                                          const AlgorithmLimits& limits = {});
AlgorithmOutcome run_puncture_algorithm(const ControlledGraphMap& g,
                                        const AlgorithmLimits& limits = {});

struct SeparatingReduction {
  std::vector<ControlledGraphMap> components;  // g^n restricted to each H-component
  ControlledGraphMap outside;                  // map on G minus H plus frontier loops
};
SeparatingReduction reduce_separating(const ControlledGraphMap& g, const std::vector<EdgeId>& h);

// Restriction of g to an invariant subgraph H, keeping edge kinds and marked
// points. Throws Error("H violates preconditions") when H is not invariant.
ControlledGraphMap restrict_to_invariant(const ControlledGraphMap& g, const std::vector<EdgeId>& h);

struct NonSeparatingReduction {
  ControlledGraphMap map;
  // Pairs of names of the doubled peripheral loops (plus side, minus side).
  std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>> pairing;
};
NonSeparatingReduction reduce_nonseparating(const ControlledGraphMap& g,
                                            const std::vector<EdgeId>& h);

}  // namespace graphrep
