#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "graphrep/graph_map.hpp"
#include "graphrep/optimize.hpp"

namespace graphrep {

using IntMatrix = std::vector<std::vector<std::int64_t>>;

enum class MatrixScope { All, Essential, Expanding, Component };

struct TransitionMatrix {
  std::vector<EdgeId> edges;
  std::vector<std::string> index;  // edge names, row/column order
  IntMatrix entries;

  std::size_t size() const { return edges.size(); }
};

// a_ij = occurrences of edge j (either orientation) in the image of edge i.
// Expanding: free edges of the essential subgraph. Component: the k-th
// irreducible block (strongly connected, ordered by lowest edge id) of the
// essential subgraph that is not a single edge without self-occurrence.
TransitionMatrix transition_matrix(const ControlledGraphMap& g,
                                   MatrixScope scope = MatrixScope::All, int component = 0);

enum class SpectralMethod { CharPoly, PowerIteration };
const char* to_string(SpectralMethod m);

struct SpectralResult {
  double growth = 0;
  double entropy = 0;  // log(growth), 0 when growth <= 1
  SpectralMethod method = SpectralMethod::CharPoly;
  double residual = 0;
  bool exact = false;  // growth is an integer root verified exactly
};

// Characteristic polynomial det(xI - A), leading coefficient first.
std::vector<std::int64_t> characteristic_polynomial(const IntMatrix& a);

// Spectral radius. Blocks of size <= 12 use the characteristic polynomial
// (Newton from the row-sum bound); larger blocks use power iteration on A + I
// with Collatz-Wielandt bounds.
SpectralResult growth_rate(const IntMatrix& a, double tol = 1e-12,
                           int max_iterations = 1000000);
SpectralResult growth_rate(const TransitionMatrix& m, double tol = 1e-12);
SpectralResult power_iteration_growth(const IntMatrix& a, double tol = 1e-12,
                                      int max_iterations = 1000000);

// Strongly connected components of the occurrence graph (row i -> column j
// when a_ij > 0), in order of their smallest index.
std::vector<std::vector<int>> irreducible_blocks(const IntMatrix& a);
IntMatrix submatrix(const IntMatrix& a, const std::vector<int>& idx);
IntMatrix matrix_power(const IntMatrix& a, int n);
std::int64_t trace(const IntMatrix& a);

// Entropy of a representative: a lower bound for the topological entropy of
// every map in the class.
double nielsen_entropy(const AlgorithmOutcome& outcome);
double map_entropy(const ControlledGraphMap& g);

ControlledGraphMap essential_representative(const ControlledGraphMap& g);
// Collapses control edges of the essential representative to marked vertices;
// with `join`, merges pairs of free edges through valence-2 vertices that are
// not vertex images. Images are kept as computed (topological, not tightened).
ControlledGraphMap topological_representative(const ControlledGraphMap& g, bool join = true);

struct ConjugacyWitness {
  std::vector<Dart> dart_map;  // dart of g1 -> dart of g2
  std::vector<VertexId> vertex_map;
  bool reflected = false;
};

// Ribbon-graph isomorphism intertwining the maps (edge kinds and marked
// vertices preserved, cyclic orders preserved up to one global reflection).
std::optional<ConjugacyWitness> graphs_conjugate(const ControlledGraphMap& g1,
                                                 const ControlledGraphMap& g2,
                                                 std::size_t budget = 1u << 22);

// tighten(g(alpha)) with marked-vertex-respecting tightening.
EdgePath minimal_iterate_path(const ControlledGraphMap& g, const EdgePath& alpha);

}  // namespace graphrep
