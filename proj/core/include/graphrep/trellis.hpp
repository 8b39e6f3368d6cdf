#pragma once

#include <map>
#include <string>
#include <vector>

#include "graphrep/graph_map.hpp"
#include "graphrep/symbolic.hpp"

namespace graphrep {

// Branch slots at a periodic point, in anticlockwise order.
enum class BranchSlot { UnstablePlus, StablePlus, UnstableMinus, StableMinus };
const char* to_string(BranchSlot s);
std::optional<BranchSlot> parse_branch_slot(const std::string& s);
inline bool is_unstable(BranchSlot s) {
  return s == BranchSlot::UnstablePlus || s == BranchSlot::UnstableMinus;
}

struct PeriodicPoint {
  std::string name;
  int period = 1;
  std::string image;  // next point of the orbit
};

// Crossings listed outward from the periodic point. Unstable branches end in
// a free end after their last crossing; stable branches end at their last
// crossing unless `open_end` is set (which violates properness).
struct Branch {
  std::string point;
  BranchSlot slot = BranchSlot::UnstablePlus;
  std::vector<std::string> crossings;
  bool open_end = false;
};

// A puncture lies in the face on the right of `side` (an unstable piece or a
// stable segment, "~" prefix for the reversed direction). Its loop is placed
// after the last stable side reached along that face up to `side`.
struct Puncture {
  std::string name;
  std::string side;
  std::string image;
  bool at_infinity = false;
  // Optional explicit image of the loop as a word in the compatible graph.
  std::string image_word;
};

struct TrellisEncoding {
  std::string name;
  std::vector<PeriodicPoint> points;
  std::vector<Branch> branches;
  std::map<std::string, int> signs;  // crossing -> +1 / -1
  std::vector<Puncture> punctures;
  // Region labels: label -> side reference of a dart bounding the region.
  std::map<std::string, std::string> region_labels;
};

// A point of f(T^U) on the stable set: an old crossing or a new point in the
// interior of a stable segment with the crossing sign of the image curve.
struct ImagePoint {
  std::string vertex;   // old crossing or periodic point
  std::string segment;  // new point: stable segment
  int sign = 0;
  bool is_new() const { return vertex.empty(); }
};

struct TrellisMapData {
  std::map<std::string, std::string> stable_segment_image;
  std::map<std::string, ImagePoint> vertex_image;
  // Unstable piece -> crossings of its image with the stable set, outward
  // order, excluding the images of its endpoints.
  std::map<std::string, std::vector<ImagePoint>> piece_image;
};

struct Trellis {
  TrellisEncoding encoding;
  TrellisMapData map;
};

// Names: stable segments are "<inner>-<outer>", unstable pieces
// "u:<inner>-<outer>", the free end of an unstable branch is the vertex
// "<point>.<slot>.end".
std::vector<std::string> stable_segments(const TrellisEncoding& t);
std::vector<std::string> unstable_pieces(const TrellisEncoding& t);

ValidationReport validate_trellis(const TrellisEncoding& t);
ValidationReport validate_trellis_map(const Trellis& t);

enum class RegionKind { Rectangle, Bigon, OtherDisc, Annulus, Unbounded };
const char* to_string(RegionKind k);

struct Region {
  std::string label;
  std::vector<std::string> boundary;  // pieces and segments, "~" for reversed
  RegionKind kind = RegionKind::OtherDisc;
  int stable_sides = 0;
  int unstable_sides = 0;
  std::vector<std::string> punctures;
};

struct RegionDecomposition {
  std::vector<Region> regions;
  int vertices = 0;
  int edges = 0;
};

// Throws Error("non-planar data") when the Euler count fails.
RegionDecomposition compute_regions(const TrellisEncoding& t);

// One control edge per stable segment, a hub per region with a spoke to each
// port, a peripheral loop per puncture. Throws Error("unsupported face
// topology") for faces with several boundary cycles.
ControlledRibbonGraph build_compatible_graph(const TrellisEncoding& t);

// Untidied map on the compatible graph. Throws Error("inconsistent map data:
// ...") at the first crossing that does not match the region structure.
ControlledGraphMap derive_raw_map(const Trellis& t);
// derive_raw_map followed by validation and tidying.
ControlledGraphMap derive_initial_map(const Trellis& t);

// Region labels of the control edges of the compatible graph.
RegionLabels trellis_region_labels(const TrellisEncoding& t);

Trellis horseshoe();
// Saddle with no crossings and the identity map.
Trellis crossing_free_trellis();

}  // namespace graphrep
