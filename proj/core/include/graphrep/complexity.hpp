#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "graphrep/graph_map.hpp"

namespace graphrep {

using EdgeMask = std::vector<char>;

EdgeMask edge_mask(const ControlledRibbonGraph& g, const std::vector<EdgeId>& edges);
EdgeMask control_mask(const ControlledRibbonGraph& g);
EdgeMask peripheral_mask(const ControlledRibbonGraph& g);
int mask_size(const ControlledRibbonGraph& g, const EdgeMask& h);

struct ZetaSeries {
  std::vector<std::uint64_t> coefficients;

  int order() const { return static_cast<int>(coefficients.size()) - 1; }
  std::uint64_t operator[](std::size_t i) const { return coefficients[i]; }
  // "a0 + a1t + a2t^2 + ..." in the order given.
  std::string to_string(int terms = -1) const;
};

enum class Ordering { Less, Equal, Greater };

struct ZetaComparison {
  Ordering verdict = Ordering::Equal;
  int index = -1;  // first differing coefficient, -1 when equal
};

// Lexicographic comparison; throws Error("truncation mismatch") on unequal orders.
ZetaComparison zeta_compare(const ZetaSeries& a, const ZetaSeries& b);

// Number of darts of p whose edge lies in H.
std::uint64_t h_length(const EdgePath& p, const EdgeMask& h);

// How iterated images are reduced before counting.
enum class NormRule {
  // Cancel back-tracks in H edges only; free back-tracks are kept. This is the
  // counting that reproduces the worked example's stage values.
  CancelH,
  // No cancellation: occurrence counts from matrix powers.
  Raw,
  // Full tightening of the iterated image (diagnostic).
  Tight,
};

// ||g^k||_H summed over unoriented edges.
std::uint64_t h_norm(const ControlledGraphMap& g, const EdgeMask& h, int k,
                     NormRule rule = NormRule::CancelH);
// H-length of g^k(p).
std::uint64_t h_norm_of_path(const ControlledGraphMap& g, const EdgeMask& h,
                             const EdgePath& p, int k, NormRule rule = NormRule::Raw);

ZetaSeries zeta_truncated(const ControlledGraphMap& g, const EdgeMask& h, int n,
                          NormRule rule = NormRule::CancelH);
int default_truncation(const ControlledGraphMap& g);

// Word-materialising oracle: builds g^k(e) explicitly (k small).
std::uint64_t h_norm_by_words(const ControlledGraphMap& g, const EdgeMask& h, int k,
                              NormRule rule);

}  // namespace graphrep
