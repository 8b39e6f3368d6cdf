#include "graphrep/fixtures.hpp"

#include "graphrep/document.hpp"
#include "graphrep/trellis.hpp"

namespace graphrep {

namespace {

const char* const kHenon = R"gm(# Graph representative of a Henon-type trellis with nine stable segments.
graphmap henon
vertices:
  O -> O
  A -> E
  B -> I
  C -> E
  D -> D
  E -> F
  F -> O
  I -> J
  J -> K
  K -> K
  X1 -> K
  X3 -> X1
  X5 -> X3
  X7 -> I
  Dv -> E
edges:
  a0 free O A
  b0 free C D
  b1 free E D
  b2 free F D
  d free O Dv
  z0 control K O
  z1 control X1 O
  z2 control J F
  z3 control X3 F
  z4 control I E
  z5 control X5 E
  z6 control B C
  z7 control X7 A
  z8 control B A
order:
  O: a0 d ~z0 ~z1
  A: ~a0 ~z7 ~z8
  B: z6 z8
  C: b0 ~z6
  D: ~b0 ~b1 ~b2
  E: b1 ~z4 ~z5
  F: b2 ~z2 ~z3
  I: z4
  J: z2
  K: z0
  X1: z1
  X3: z3
  X5: z5
  X7: z7
  Dv: ~d
map:
  a0 -> a0 ~z8 z6 b0 ~b1
  b0 -> b1
  b1 -> b2
  b2 -> a0 ~z8 z6 b0
  d -> a0 ~z8 z6 b0 ~b1
  z0 -> z0
  z1 -> z0
  z2 -> z0
  z3 -> z1
  z4 -> z2
  z5 -> z3
  z6 -> z4
  z7 -> z4
  z8 -> z4
)gm";

const char* const kAlgorithm2 = R"gm(# Initial compatible graph for a trellis with a period-2 orbit of punctures p, q.
graphmap algorithm2
vertices:
  P -> P
  A -> D
  B1 -> F
  B2 -> F
  C -> D
  Q -> D
  D -> E
  E -> P
  F -> Gv
  Gv -> H
  H -> H
  Pe -> Pe
  V1 -> Pe
  V2 -> V1
  Dd -> D
  X1 -> H
  X3 -> X1
  X5 -> X3
  X7 -> F
  X8 -> F
  X9 -> F
edges:
  p0 free P A
  p1 free A P
  q0 free C D
  q1 free D E
  q2 free E Q
  q3 free Q C
  c free B1 B2
  z10 control B1 A
  z6 control B2 C
  z4 control F D
  z2 control Gv E
  z0 control H P
  e0 free P Pe
  e1 free E V1
  e2 free D V2
  d free E Dd
  z1 control X1 E
  z3 control X3 D
  z5 control X5 C
  z7 control X7 A
  z8 control X8 C
  z9 control X9 A
order:
  P: p0 ~p1 ~z0 e0
  A: p1 ~p0 ~z9 ~z7 ~z10
  B1: z10 c
  B2: ~c z6
  C: q0 ~q3 ~z5 ~z8 ~z6
  Q: ~q2 q3
  D: q1 ~q0 ~z3 ~z4 e2
  E: q2 d ~q1 ~z1 ~z2 e1
  F: z4
  Gv: z2
  H: z0
  Pe: ~e0
  V1: ~e1
  V2: ~e2
  Dd: ~d
  X1: z1
  X3: z3
  X5: z5
  X7: z7
  X8: z8
  X9: z9
map:
  p0 -> p0 ~z10 c z6 q0
  p1 -> q1 q2 q3 ~z6 ~c z10 ~p0
  q0 -> q1
  q1 -> q2 q3 ~z6 ~c z10 p1
  q2 -> p0 ~z10 c z6 ~q3 ~q2 ~q1
  q3 -> ·
  c -> ·
  z10 -> z4
  z6 -> z4
  z4 -> z2
  z2 -> z0
  z0 -> z0
  e0 -> e0
  e1 -> e0
  e2 -> e1
  d -> p0 ~z10 c z6 ~q3 ~q2 ~q1
  z1 -> z0
  z3 -> z1
  z5 -> z3
  z7 -> z4
  z8 -> z4
  z9 -> z4
)gm";

const char* const kArReduction = R"gm(# Henon-type repellor glued to an invariant attractor subgraph on the c edges.
graphmap ar-reduction
vertices:
  O -> O
  A -> E
  B -> I
  C -> E
  D -> D
  E -> F
  F -> O
  I -> J
  J -> K
  K -> K
  X1 -> K
  X3 -> X1
  X5 -> X3
  X7 -> I
  Dv -> E
  U0 -> U1
  V0 -> V1
  U1 -> U0
  V1 -> V0
  Xc1 -> U1
  Xc2 -> U1
  Xc3 -> Xcm1
  Xc4 -> Xcm2
  Xc5 -> Xcm3
  Xc6 -> Xcm4
  Xc7 -> Xcm4
  Xc8 -> Xcm4
  Xc9 -> Xcm5
  Xc10 -> Xcm6
  Xc11 -> Xcm7
  Xc12 -> Xcm7
  Xc13 -> Xcm7
  Xcm1 -> U0
  Xcm2 -> Xc1
  Xcm3 -> Xc2
  Xcm4 -> Xc2
  Xcm5 -> Xc2
  Xcm6 -> Xc3
  Xcm7 -> Xc3
edges:
  a0 free O A
  b0 free C D
  b1 free E D
  b2 free F D
  d free O Dv
  z0 control K O
  z1 control X1 O
  z2 control J F
  z3 control X3 F
  z4 control I E
  z5 control X5 E
  z6 control B C
  z7 control X7 A
  z8 control B A
  k free D U0
  x free V0 U1
  y free V1 U0
  c0 control U0 V0
  c1 control Xc1 V0
  c2 control Xc2 V0
  c3 control Xc3 V0
  c4 control Xc4 V0
  c5 control Xc5 V0
  c6 control Xc6 V0
  c7 control Xc7 V0
  c8 control Xc8 V0
  c9 control Xc9 V0
  c10 control Xc10 V0
  c11 control Xc11 V0
  c12 control Xc12 V0
  c13 control Xc13 V0
  cm0 control U1 V1
  cm1 control Xcm1 V1
  cm2 control Xcm2 V1
  cm3 control Xcm3 V1
  cm4 control Xcm4 V1
  cm5 control Xcm5 V1
  cm6 control Xcm6 V1
  cm7 control Xcm7 V1
order:
  O: a0 d ~z0 ~z1
  A: ~a0 ~z7 ~z8
  B: z6 z8
  C: b0 ~z6
  D: ~b0 ~b1 ~b2 k
  E: b1 ~z4 ~z5
  F: b2 ~z2 ~z3
  I: z4
  J: z2
  K: z0
  X1: z1
  X3: z3
  X5: z5
  X7: z7
  Dv: ~d
  U0: c0 ~k ~y
  V0: ~c0 ~c1 ~c2 ~c3 ~c4 ~c5 ~c6 ~c7 ~c8 ~c9 ~c10 ~c11 ~c12 ~c13 x
  U1: ~x cm0
  V1: ~cm0 ~cm1 ~cm2 ~cm3 ~cm4 ~cm5 ~cm6 ~cm7 y
  Xc1: c1
  Xc2: c2
  Xc3: c3
  Xc4: c4
  Xc5: c5
  Xc6: c6
  Xc7: c7
  Xc8: c8
  Xc9: c9
  Xc10: c10
  Xc11: c11
  Xc12: c12
  Xc13: c13
  Xcm1: cm1
  Xcm2: cm2
  Xcm3: cm3
  Xcm4: cm4
  Xcm5: cm5
  Xcm6: cm6
  Xcm7: cm7
map:
  a0 -> a0 ~z8 z6 b0 ~b1
  b0 -> b1
  b1 -> b2
  b2 -> a0 ~z8 z6 b0 k c0 x cm0 y ~k
  d -> a0 ~z8 z6 b0 ~b1
  z0 -> z0
  z1 -> z0
  z2 -> z0
  z3 -> z1
  z4 -> z2
  z5 -> z3
  z6 -> z4
  z7 -> z4
  z8 -> z4
  k -> k c0 x
  x -> y
  y -> x
  c0 -> cm0
  c1 -> cm0
  c2 -> cm0
  c3 -> cm1
  c4 -> cm2
  c5 -> cm3
  c6 -> cm4
  c7 -> cm4
  c8 -> cm4
  c9 -> cm5
  c10 -> cm6
  c11 -> cm7
  c12 -> cm7
  c13 -> cm7
  cm0 -> c0
  cm1 -> c0
  cm2 -> c1
  cm3 -> c2
  cm4 -> c2
  cm5 -> c2
  cm6 -> c3
  cm7 -> c3
)gm";

const char* const kPuncturedDisc = R"gm(# Map of a disc with four punctures; p1..p5 are peripheral.
graphmap punctured-disc
vertices:
  X -> Z
  Z -> X
  Y1 -> Y2
  Y2 -> W3
  W3 -> Y1
edges:
  a free X Y1
  b free X Y2
  c free Z W3
  p1 free Y1 Y1
  p2 free Y2 Y2
  p3 free W3 W3
  p4 free Z X
  p5 free X Z
order:
  X: a ~p4 p5 b
  Z: c ~p5 p4
  Y1: ~a ~p1 p1
  Y2: ~b ~p2 p2
  W3: ~c ~p3 p3
map:
  a -> c ~p3 ~c ~p5 b
  b -> c ~p3 ~c ~p5 b ~p2 ~b p5 c
  c -> a
  p1 -> p2
  p2 -> p3
  p3 -> p1
  p4 -> p5
  p5 -> p4
)gm";

const char* const kRose = R"gm(# Fibonacci automorphism a -> ab, b -> a on a once-punctured torus.
graphmap rose
vertices:
  v -> v
edges:
  a free v v
  b free v v
order:
  v: a b ~a ~b
map:
  a -> a b
  b -> a
)gm";

const char* const kFiniteOrder = R"gm(# Period-2 map swapping two peripheral loops.
graphmap finite-order
vertices:
  v1 -> v2
  v2 -> v1
edges:
  p1 free v1 v1
  p2 free v2 v2
  x free v1 v2
order:
  v1: x p1 ~p1
  v2: ~x p2 ~p2
map:
  p1 -> p2
  p2 -> p1
  x -> ~x
)gm";

ControlledGraphMap load(const char* text) { return parse_document(text).map; }

std::string first_comment(const char* text) {
  std::string s(text);
  return s.substr(2, s.find('\n') - 2);
}

}  // namespace

const std::vector<Example>& builtin_examples() {
  static const std::vector<Example> all = [] {
    std::vector<Example> v;
    v.push_back({"henon", first_comment(kHenon), kHenon});
    v.push_back({"algorithm2", first_comment(kAlgorithm2), kAlgorithm2});
    v.push_back({"ar-reduction", first_comment(kArReduction), kArReduction});
    v.push_back({"punctured-disc", first_comment(kPuncturedDisc), kPuncturedDisc});
    v.push_back({"rose", first_comment(kRose), kRose});
    v.push_back({"finite-order", first_comment(kFiniteOrder), kFiniteOrder});
    const std::pair<Trellis, const char*> trellises[] = {
        {horseshoe(), "Smale horseshoe trellis of a fixed saddle."},
        {crossing_free_trellis(), "Saddle with no crossings and the identity map."}};
    for (const auto& [t, summary] : trellises) {
      Document d = trellis_document(t);
      d.comments = {summary};
      v.push_back({t.encoding.name, summary, serialize(d)});
    }
    return v;
  }();
  return all;
}

std::optional<Example> find_example(const std::string& name) {
  for (const auto& e : builtin_examples())
    if (e.name == name) return e;
  return std::nullopt;
}

ControlledGraphMap henon_example() { return load(kHenon); }
ControlledGraphMap algorithm2_example() { return load(kAlgorithm2); }
ControlledGraphMap ar_reduction_example() { return load(kArReduction); }
ControlledGraphMap punctured_disc_example() { return load(kPuncturedDisc); }
ControlledGraphMap rose_example() { return load(kRose); }
ControlledGraphMap finite_order_example() { return load(kFiniteOrder); }

}  // namespace graphrep
