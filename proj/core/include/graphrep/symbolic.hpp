#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "graphrep/analysis.hpp"

namespace graphrep {

// Region labels: for each control edge name, the labels of the region on its
// origin side and on its target side. Vertex names may also be labelled.
struct RegionLabels {
  std::map<std::string, std::pair<std::string, std::string>> control_sides;
  std::map<std::string, std::string> vertices;

  bool empty() const { return control_sides.empty() && vertices.empty(); }
};

struct ItineraryTable {
  // Symbol states: components of G minus the marked points of control edges.
  std::vector<std::string> state_labels;          // "" when unlabelled
  std::vector<std::vector<VertexId>> state_vertices;
  IntMatrix transitions;                          // 0/1 relation
  std::vector<std::string> alphabet;              // labels in use, sorted
  std::vector<std::vector<std::string>> words;    // admissible words of length <= n
  std::vector<std::int64_t> closed_counts;        // index k: closed words of length k
  bool words_truncated = false;
};

// States restricted to `keep` labels when it is nonempty. Words are label
// sequences of state paths; closed counts are traces of powers of the
// restricted transition matrix. Throws Error("no region labeling") without labels.
ItineraryTable itineraries(const ControlledGraphMap& g, const RegionLabels& labels, int n,
                           const std::vector<std::string>& keep = {},
                           std::size_t max_words = 200000);

std::string itinerary_dot(const ItineraryTable& t);

}  // namespace graphrep
