"""Automorphism groups and the orbit graphs they induce.

Run:  python3 demos/automorphism_orbits.py
"""

import ringgraph as rg

# The orbit graph joins two distinct elements when an automorphism maps one
# to the other, so it is a disjoint union of cliques: one per orbit.
for text in ["Z9", "GF(8)", "Z5[x]/(x^2)", "Z7[x]/(x^2)", "Z2 x Z2 x Z2"]:
    ring = rg.make_ring(rg.parse_ring_expr(text))
    graph = rg.aut_orbit_graph(ring)
    sizes = sorted((len(b) for b in graph.blocks), reverse=True)
    print(f"{text:14} |Aut|={rg.aut_group_order(ring):4}  type={graph.graph_type():2}  "
          f"planar={graph.is_planar()!s:5}  orbit sizes={sizes}")

print()

# Z5[x]/(x^2): each automorphism rescales x by a unit, so the nilpotents
# minus zero form a single 4-clique.
dual = rg.make_ring(rg.PolyQuot(5, (0, 0, 1)))
group = rg.automorphisms(dual)
print("Aut(Z5[x]/(x^2)) order", group.order, "abelian:", group.is_abelian())
print("orbit of x:", sorted(dual.name(y) for y in group.orbit(5)))

# The ring automorphisms always sit inside the graph automorphisms, but the
# containment can be enormous: Z4 is rigid while its edgeless graph on four
# vertices admits all 24 vertex permutations.
z4 = rg.make_ring(rg.Zn(4))
print("Z4: |Aut R| =", rg.aut_group_order(z4),
      " vs  |Aut graph| =", rg.aut_orbit_graph(z4).graph_aut_order(),
      " embeds:", rg.aut_embeds_in_graph_aut(z4))

print()

# Restricting to a subgroup coarsens nothing and refines the partition:
# under the squared Frobenius, GF(64) splits into more, smaller orbits.
f64 = rg.make_ring(rg.gf(64))
frob = rg.RingMorphism(f64, f64, [f64.pow(v, 2) for v in range(64)])
sub = rg.subgroup_closure(f64, [rg.compose(frob, frob)])
full_sizes = sorted(len(b) for b in rg.aut_orbit_graph(f64).blocks)
sub_sizes = sorted(len(b) for b in rg.build_graph(f64, sub).blocks)
print("GF(64) orbit sizes under full Aut:", full_sizes)
print("GF(64) orbit sizes under <Frob^2>:", sub_sizes)

# A group too large to list is still countable: the order-64 square-zero
# ring over Z2 carries all invertible 5x5 matrices over F2.
big = rg.make_ring(rg.SquareZero(rg.Zn(2), 5))
print()
print("|Aut(SZ(Z2,5))| =", rg.aut_group_order(big), "(counted, not enumerated)")
