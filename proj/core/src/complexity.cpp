#include "graphrep/complexity.hpp"

#include <limits>
#include <sstream>

namespace graphrep {

EdgeMask edge_mask(const ControlledRibbonGraph& g, const std::vector<EdgeId>& edges) {
  EdgeMask m(g.edge_slots(), 0);
  for (EdgeId e : edges) m[e] = 1;
  return m;
}

EdgeMask control_mask(const ControlledRibbonGraph& g) {
  EdgeMask m(g.edge_slots(), 0);
  for (EdgeId e : g.edges()) m[e] = g.is_control(e) ? 1 : 0;
  return m;
}

EdgeMask peripheral_mask(const ControlledRibbonGraph& g) {
  EdgeMask m(g.edge_slots(), 0);
  for (EdgeId e : g.edges()) m[e] = g.kind(e) == EdgeKind::Peripheral ? 1 : 0;
  return m;
}

int mask_size(const ControlledRibbonGraph& g, const EdgeMask& h) {
  int n = 0;
  for (EdgeId e : g.edges())
    if (e < static_cast<int>(h.size()) && h[e]) ++n;
  return n;
}

std::string ZetaSeries::to_string(int terms) const {
  std::ostringstream os;
  int n = terms < 0 ? static_cast<int>(coefficients.size())
                    : std::min<int>(terms, static_cast<int>(coefficients.size()));
  for (int i = 0; i < n; ++i) {
    if (i) os << " + ";
    os << coefficients[i];
    if (i == 1) os << "t";
    if (i > 1) os << "t^" << i;
  }
  os << " + ...";
  return os.str();
}

ZetaComparison zeta_compare(const ZetaSeries& a, const ZetaSeries& b) {
  if (a.coefficients.size() != b.coefficients.size()) throw Error("truncation mismatch");
  for (std::size_t i = 0; i < a.coefficients.size(); ++i) {
    if (a.coefficients[i] < b.coefficients[i]) return {Ordering::Less, static_cast<int>(i)};
    if (a.coefficients[i] > b.coefficients[i]) return {Ordering::Greater, static_cast<int>(i)};
  }
  return {Ordering::Equal, -1};
}

std::uint64_t h_length(const EdgePath& p, const EdgeMask& h) {
  std::uint64_t n = 0;
  for (Dart d : p.darts)
    if (edge_of(d) < static_cast<int>(h.size()) && h[edge_of(d)]) ++n;
  return n;
}

namespace {

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  if (a > std::numeric_limits<std::uint64_t>::max() - b)
    throw Error("H-norm overflow");
  return a + b;
}

// Compressed H-reduced word: leading and trailing H-blocks, plus the H-length
// of the frozen middle between the first and last non-H dart.
struct Compressed {
  bool has_free = false;
  std::vector<Dart> head;  // whole word when !has_free
  std::uint64_t middle = 0;
  std::vector<Dart> tail;

  std::uint64_t length() const {
    return has_free ? checked_add(checked_add(head.size(), middle), tail.size()) : head.size();
  }
};

void reduce_into(const ControlledRibbonGraph& g, std::vector<Dart>& acc,
                 const std::vector<Dart>& more) {
  for (Dart d : more) {
    if (!acc.empty() && acc.back() == g.rev(d))
      acc.pop_back();
    else
      acc.push_back(d);
  }
}

Compressed reverse_of(const ControlledRibbonGraph& g, const Compressed& c) {
  Compressed r;
  r.has_free = c.has_free;
  r.middle = c.middle;
  auto rev_block = [&](const std::vector<Dart>& b) {
    std::vector<Dart> out;
    for (auto it = b.rbegin(); it != b.rend(); ++it) out.push_back(g.rev(*it));
    return out;
  };
  if (c.has_free) {
    r.head = rev_block(c.tail);
    r.tail = rev_block(c.head);
  } else {
    r.head = rev_block(c.head);
  }
  return r;
}

void append(const ControlledRibbonGraph& g, Compressed& a, const Compressed& b) {
  if (!a.has_free && !b.has_free) {
    reduce_into(g, a.head, b.head);
  } else if (!a.has_free) {
    std::vector<Dart> h = a.head;
    reduce_into(g, h, b.head);
    a.head = std::move(h);
    a.has_free = true;
    a.middle = b.middle;
    a.tail = b.tail;
  } else if (!b.has_free) {
    reduce_into(g, a.tail, b.head);
  } else {
    std::vector<Dart> junction = a.tail;
    reduce_into(g, junction, b.head);
    a.middle = checked_add(checked_add(a.middle, junction.size()), b.middle);
    a.tail = b.tail;
  }
}

std::uint64_t cancel_h_norm(const ControlledGraphMap& m, const EdgeMask& h, int k) {
  const auto& g = m.graph;
  std::vector<Compressed> cur(g.edge_slots());
  for (EdgeId e : g.edges()) {
    Compressed c;
    if (h[e]) {
      c.head = {forward_dart(e)};
    } else {
      c.has_free = true;
    }
    cur[e] = std::move(c);
  }
  for (int step = 0; step < k; ++step) {
    std::vector<Compressed> next(g.edge_slots());
    for (EdgeId e : g.edges()) {
      Compressed acc;
      for (Dart d : m.edge_image[e].darts) {
        const Compressed& piece = cur[edge_of(d)];
        if (is_backward(d))
          append(g, acc, reverse_of(g, piece));
        else
          append(g, acc, piece);
      }
      next[e] = std::move(acc);
    }
    cur = std::move(next);
  }
  std::uint64_t total = 0;
  for (EdgeId e : g.edges()) total = checked_add(total, cur[e].length());
  return total;
}

std::uint64_t raw_norm(const ControlledGraphMap& m, const EdgeMask& h, int k) {
  const auto& g = m.graph;
  std::vector<std::uint64_t> cnt(g.edge_slots(), 0);
  for (EdgeId e : g.edges()) cnt[e] = h[e] ? 1 : 0;
  for (int step = 0; step < k; ++step) {
    std::vector<std::uint64_t> next(g.edge_slots(), 0);
    for (EdgeId e : g.edges())
      for (Dart d : m.edge_image[e].darts) next[e] = checked_add(next[e], cnt[edge_of(d)]);
    cnt = std::move(next);
  }
  std::uint64_t total = 0;
  for (EdgeId e : g.edges()) total = checked_add(total, cnt[e]);
  return total;
}

std::vector<Dart> reduce_word(const ControlledGraphMap& m, const EdgeMask& h,
                              const std::vector<Dart>& w, NormRule rule) {
  if (rule == NormRule::Raw) return w;
  std::vector<Dart> out;
  for (Dart d : w) {
    bool cancellable = !out.empty() && out.back() == m.graph.rev(d) &&
                       (rule == NormRule::Tight || h[edge_of(d)]);
    if (cancellable)
      out.pop_back();
    else
      out.push_back(d);
  }
  return out;
}

std::vector<Dart> word_image(const ControlledGraphMap& m, const std::vector<Dart>& w) {
  std::vector<Dart> out;
  for (Dart d : w) {
    EdgePath p = m.image(d);
    out.insert(out.end(), p.darts.begin(), p.darts.end());
  }
  return out;
}

constexpr std::size_t kWordLimit = 50'000'000;

}  // namespace

std::uint64_t h_norm_by_words(const ControlledGraphMap& m, const EdgeMask& h, int k,
                              NormRule rule) {
  std::uint64_t total = 0;
  for (EdgeId e : m.graph.edges()) {
    std::vector<Dart> w = {forward_dart(e)};
    for (int i = 0; i < k; ++i) {
      w = reduce_word(m, h, word_image(m, w), rule);
      if (w.size() > kWordLimit) throw Error("word oracle size limit exceeded");
    }
    total += h_length(EdgePath{w, -1}, h);
  }
  return total;
}

std::uint64_t h_norm(const ControlledGraphMap& g, const EdgeMask& h, int k, NormRule rule) {
  if (k < 0) throw Error("negative order");
  switch (rule) {
    case NormRule::CancelH: return cancel_h_norm(g, h, k);
    case NormRule::Raw: return raw_norm(g, h, k);
    case NormRule::Tight: return h_norm_by_words(g, h, k, NormRule::Tight);
  }
  return 0;
}

std::uint64_t h_norm_of_path(const ControlledGraphMap& m, const EdgeMask& h,
                             const EdgePath& p, int k, NormRule rule) {
  if (rule == NormRule::Raw) {
    const auto& g = m.graph;
    std::vector<std::uint64_t> cnt(g.edge_slots(), 0);
    for (EdgeId e : g.edges()) cnt[e] = h[e] ? 1 : 0;
    for (int step = 0; step < k; ++step) {
      std::vector<std::uint64_t> next(g.edge_slots(), 0);
      for (EdgeId e : g.edges())
        for (Dart d : m.edge_image[e].darts) next[e] = checked_add(next[e], cnt[edge_of(d)]);
      cnt = std::move(next);
    }
    std::uint64_t total = 0;
    for (Dart d : p.darts) total = checked_add(total, cnt[edge_of(d)]);
    return total;
  }
  std::vector<Dart> w = reduce_word(m, h, p.darts, rule);
  for (int i = 0; i < k; ++i) w = reduce_word(m, h, word_image(m, w), rule);
  return h_length(EdgePath{w, -1}, h);
}

ZetaSeries zeta_truncated(const ControlledGraphMap& g, const EdgeMask& h, int n,
                          NormRule rule) {
  if (n < 0) throw Error("negative truncation order");
  ZetaSeries z;
  if (rule == NormRule::Tight) {
    for (int k = 0; k <= n; ++k) z.coefficients.push_back(h_norm(g, h, k, rule));
    return z;
  }
  for (int k = 0; k <= n; ++k) z.coefficients.push_back(h_norm(g, h, k, rule));
  return z;
}

int default_truncation(const ControlledGraphMap& g) { return g.graph.edge_count(); }

}  // namespace graphrep
