#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "graphrep/complexity.hpp"
#include "graphrep/graph_map.hpp"

namespace graphrep {

struct MapSummary {
  int vertices = 0;
  int edges = 0;
  int euler = 0;
  int control_edges = 0;
  std::vector<std::uint64_t> zeta_head;  // leading coefficients, control H
};

MapSummary summarize(const ControlledGraphMap& g, int zeta_terms = 3);

struct MoveRecord {
  std::string kind;
  std::vector<std::string> operands;
  MapSummary before;
  MapSummary after;
  std::string note;
};

std::string to_string(const MoveRecord& r);

// Result of a move: on failure `map` is the unmodified input and `error` holds
// the reason.
struct MoveResult {
  ControlledGraphMap map;
  std::vector<MoveRecord> records;
  std::string error;
  // Names of edges or vertices created by the move.
  std::vector<std::string> created;

  bool ok() const { return error.empty(); }
};

// The public moves work on a copy, compact the result and never throw on
// precondition failures.
MoveResult tighten_edge_images(const ControlledGraphMap& g);
MoveResult vertex_homotopy(const ControlledGraphMap& g, VertexId v, const EdgePath& path);
MoveResult collapse_edge(const ControlledGraphMap& g, EdgeId e, bool allow_peripheral = false);
MoveResult split_vertex(const ControlledGraphMap& g, VertexId v, const std::vector<Dart>& arc);
MoveResult collapse_invariant_forest(const ControlledGraphMap& g,
                                     const std::vector<EdgeId>& forest);
MoveResult fold_turn(const ControlledGraphMap& g, Dart first, Dart second);
MoveResult valence3_homotopy(const ControlledGraphMap& g, VertexId v);
MoveResult tidy(const ControlledGraphMap& g);
MoveResult restrict_to_essential(const ControlledGraphMap& g);

// Another presentation of the same class: `steps` random splits of arcs of
// free darts and insertions of dangling free edges with trivial image.
ControlledGraphMap random_representation(const ControlledGraphMap& g, std::uint64_t seed,
                                         int steps);

// Edges whose iterated images stay nonempty: S0 = E, S(k+1) = support g(Sk).
std::vector<EdgeId> essential_edges(const ControlledGraphMap& g);

// Maximal invariant subforest of free non-peripheral edges, as a list of edges
// (empty when none).
std::vector<EdgeId> find_invariant_forest(const ControlledGraphMap& g);

// Maximal common prefix of two paths.
EdgePath common_prefix(const ControlledRibbonGraph& g, const EdgePath& a, const EdgePath& b);

bool is_tidy(const ControlledGraphMap& g);

// In-place variants used by the algorithms. They operate on uncompacted maps
// and return an empty string on success or the error text.
namespace inplace {
std::string tighten_images(ControlledGraphMap& g, bool* changed = nullptr);
std::string homotope(ControlledGraphMap& g, VertexId v, const EdgePath& path);
std::string collapse(ControlledGraphMap& g, EdgeId e, bool allow_peripheral);
std::string split(ControlledGraphMap& g, VertexId v, const std::vector<Dart>& arc,
                  VertexId* new_vertex, EdgeId* new_edge);
std::string collapse_forest(ControlledGraphMap& g, const std::vector<EdgeId>& forest);
std::string fold(ControlledGraphMap& g, Dart first, Dart second, EdgeId* new_edge);
std::string valence3(ControlledGraphMap& g, VertexId v);
// One tidying step: returns the kind of step taken, or "" when already tidy.
std::string tidy_step(ControlledGraphMap& g, std::vector<std::string>* operands);
void restrict_essential(ControlledGraphMap& g);
// Structural contraction of a non-loop edge: its far end merges into its
// origin and its darts are removed from all images.
void contract(ControlledGraphMap& g, EdgeId e);
}  // namespace inplace

}  // namespace graphrep
