"""A walking tour of the ring constructors and structure queries.

Run:  python3 demos/tour_of_small_rings.py
"""

import ringgraph as rg

# Every ring starts life as an expression.  Tables are built on demand and
# cached, so constructing the same ring twice is free.
for text in ["Z12", "GF(9)", "Z5[x]/(x^2)", "SZ(Z2,2)", "Z4 x GF(4)"]:
    expr = rg.parse_ring_expr(text)
    ring = rg.make_ring(expr)
    ls = rg.local_structure(ring)
    print(f"{text:14} order={ring.order:3}  char={ring.characteristic:3}  "
          f"units={len(ring.units):3}  nilpotents={len(ring.nilpotents):3}  "
          f"local={ls.is_local}")

print()

# Element names follow the constructor: integers, polynomials in x, the
# square-zero generators x1..xm, or component tuples.
dual = rg.make_ring(rg.PolyQuot(5, (0, 0, 1)))
print("Z5[x]/(x^2) elements:", ", ".join(dual.element_names))
x = 5  # carrier index of the class of x
print("x * x =", dual.name(dual.mul(x, x)), " (the defining relation)")
print("annihilator of x:", sorted(dual.name(a) for a in rg.annihilator(dual, x)))

print()

# Local structure: Z4 is local with maximal ideal {0, 2}; Z6 splits.
z4 = rg.make_ring(rg.Zn(4))
print("Z4 local:", rg.local_structure(z4))
print("socle of Z8:", sorted(rg.socle(rg.make_ring(rg.Zn(8)))))

z12 = rg.make_ring(rg.Zn(12))
factors, iso = rg.decompose_local(z12)
print("Z12 decomposes into orders", [f.order for f in factors],
      "| map verified:", iso.is_homomorphism and iso.is_bijective)

# The square-zero family glues an m-dimensional zero-multiplication ideal
# onto a base ring; these are exactly the rings whose ideal is one orbit.
sz = rg.make_ring(rg.SquareZero(rg.Zn(2), 2))
print("SZ(Z2,2) socle:", sorted(sz.name(a) for a in rg.socle(sz)))
