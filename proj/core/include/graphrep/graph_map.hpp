#pragma once

#include <string>
#include <vector>

#include "graphrep/graph.hpp"

namespace graphrep {

// Graph map: vertex images plus the image path of every forward dart. The
// image of a backward dart is the reversal, so g(rev d) = reverse(g(d)) holds
// by construction.
struct ControlledGraphMap {
  ControlledRibbonGraph graph;
  std::vector<VertexId> vertex_image;
  std::vector<EdgePath> edge_image;

  EdgePath image(Dart d) const;
  void set_image(Dart d, const EdgePath& p);
  // First dart of the image, or kNoDart for a trivial image.
  Dart derivative(Dart d) const;
};

ControlledGraphMap identity_map(const ControlledRibbonGraph& g);
// Drops deleted vertices/edges and renumbers ids.
ControlledGraphMap compact(const ControlledGraphMap& g);

ValidationReport validate_map(const ControlledGraphMap& g);
// Combinatorial embeddability: images of the darts at each vertex appear in
// weakly cyclically monotone order in the target rotation, with the same sense
// of rotation at every vertex (orientation-reversing maps are accepted).
bool is_embeddable(const ControlledGraphMap& g, std::string* witness = nullptr);

// Image of a path under g, without tightening.
EdgePath apply_map(const ControlledGraphMap& g, const EdgePath& p);
// Image with tightening.
EdgePath apply_map_tight(const ControlledGraphMap& g, const EdgePath& p);

struct PeripheralSubgraph {
  std::vector<EdgeId> edges;
  std::vector<EdgeId> pre_peripheral;
  std::vector<std::vector<Dart>> loops;
};

PeripheralSubgraph detect_peripheral_subgraph(const ControlledGraphMap& g);
// Marks exactly the detected peripheral edges with EdgeKind::Peripheral.
void refresh_peripheral_kinds(ControlledGraphMap& g);

// Support closure: edges reachable from `start` under iterated images.
std::vector<char> forward_closure(const ControlledGraphMap& g,
                                  const std::vector<EdgeId>& start);
std::vector<EdgeId> control_edges(const ControlledRibbonGraph& g);
std::vector<EdgeId> free_edges(const ControlledRibbonGraph& g);

std::string describe_map(const ControlledGraphMap& g);

}  // namespace graphrep
