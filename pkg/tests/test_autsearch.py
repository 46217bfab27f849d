import math

import numpy as np
import pytest

import ringgraph as rg
from _oracle import naive_generating_set, oracle_automorphism_images


def fresh_copy(ring):
    """Same tables, empty caches; for tests that must not see cached results."""
    return rg.FiniteRing(
        ring.add_table, ring.mul_table, ring.zero, ring.one,
        ring.presentation, ring.element_names,
    )


# -- automorphism group sizes -------------------------------------------------


@pytest.mark.parametrize("n", [2, 4, 9, 12, 36])
def test_zn_is_rigid(n):
    assert rg.aut_group_order(rg.make_ring(rg.Zn(n))) == 1


def test_aut_orders_of_named_rings():
    assert rg.automorphisms(rg.make_ring(rg.PolyQuot(5, (0, 0, 1)))).order == 4
    assert rg.automorphisms(rg.make_ring(rg.PolyQuot(9, (0, 0, 1)))).order == 6
    assert rg.automorphisms(rg.make_ring(rg.Prod((rg.Zn(4), rg.Zn(4))))).order == 2
    assert rg.automorphisms(rg.make_ring(rg.gf(8))).order == 3


def test_aut_group_order_matches_enumeration(entries32):
    for entry in entries32:
        group = rg.automorphisms(entry.ring)
        assert rg.aut_group_order(entry.ring) == group.order, str(entry.expr)


def test_chain_counts_large_group_without_enumeration():
    ring = rg.make_ring(rg.SquareZero(rg.Zn(2), 5))
    # |GL_5(F_2)| = (32-1)(32-2)(32-4)(32-8)(32-16)
    assert rg.aut_group_order(ring) == 31 * 30 * 28 * 24 * 16
    with pytest.raises(rg.SearchBudgetExceeded):
        rg.automorphisms(ring)


# -- morphism mechanics -------------------------------------------------------


def test_is_homomorphism_examples():
    z4 = rg.make_ring(rg.Zn(4))
    assert rg.is_homomorphism(rg.identity_automorphism(z4))
    swap = rg.RingMorphism(z4, z4, [0, 3, 2, 1])
    assert not swap.is_homomorphism  # does not fix 1
    f4 = rg.make_ring(rg.gf(4))
    frob = rg.RingMorphism(f4, f4, [f4.pow(x, 2) for x in range(4)])
    assert frob.is_homomorphism and frob.is_bijective


def test_compose_and_inverse_laws():
    f4 = rg.make_ring(rg.gf(4))
    frob = rg.RingMorphism(f4, f4, [f4.pow(x, 2) for x in range(4)])
    ident = rg.identity_automorphism(f4)
    assert rg.compose(frob, ident) == frob
    assert rg.compose(frob, rg.inverse(frob)) == ident
    assert rg.compose(frob, frob) == ident  # x -> x^4 = x
    z6 = rg.make_ring(rg.Zn(6))
    with pytest.raises(rg.NotComposable):
        rg.compose(frob, rg.identity_automorphism(z6))
    collapse = rg.RingMorphism(z6, z6, [0] * 6)
    with pytest.raises(rg.NotBijective):
        rg.inverse(collapse)


def test_isomorphism_examples():
    z4 = rg.make_ring(rg.Zn(4))
    dual2 = rg.make_ring(rg.PolyQuot(2, (0, 0, 1)))
    assert rg.isomorphism(z4, dual2) is None  # characteristics 4 vs 2
    a = rg.make_ring(rg.PolyQuot(2, (1, 1, 1)))
    b = rg.make_ring(rg.GF(2, 2, (1, 1, 1)))
    iso = rg.isomorphism(a, b)
    assert iso is not None and iso.is_homomorphism and iso.is_bijective
    c = rg.make_ring(rg.Zn(15))
    d = rg.make_ring(rg.Prod((rg.Zn(3), rg.Zn(5))))
    assert rg.isomorphism(c, d) is not None


def test_subgroup_closure():
    f8 = rg.make_ring(rg.gf(8))
    assert rg.subgroup_closure(f8, []).order == 1
    frob = rg.RingMorphism(f8, f8, [f8.pow(x, 2) for x in range(8)])
    assert rg.subgroup_closure(f8, [frob]).order == 3
    full = rg.automorphisms(f8)
    assert rg.subgroup_closure(f8, list(full)).order == full.order
    z6 = rg.make_ring(rg.Zn(6))
    with pytest.raises(rg.NotAutomorphism):
        rg.subgroup_closure(z6, [rg.RingMorphism(z6, z6, [0] * 6)])


def test_group_queries():
    triv = rg.automorphisms(rg.make_ring(rg.Zn(9)))
    assert triv.order == 1 and triv.is_abelian()
    assert triv.element_order(triv.elements[0]) == 1
    g = rg.automorphisms(rg.make_ring(rg.PolyQuot(9, (0, 0, 1))))
    assert g.order == 6 and g.is_abelian()
    orders = sorted(g.element_order(s) for s in g)
    assert orders == [1, 2, 3, 3, 6, 6]  # cyclic of order 6, like the units of Z9


def test_orbits():
    d = rg.make_ring(rg.PolyQuot(5, (0, 0, 1)))
    g = rg.automorphisms(d)
    assert g.orbit(0) == {0} and g.orbit(1) == {1}
    assert g.orbit(5) == {5, 10, 15, 20}
    f4 = rg.make_ring(rg.gf(4))
    assert rg.automorphisms(f4).orbit(2) == {2, 3}


def test_group_lookup_tables():
    g = rg.automorphisms(rg.make_ring(rg.PolyQuot(5, (0, 0, 1))))
    for i in range(g.order):
        assert g.compose_indices(i, g.inverse_index(i)) == 0
        for j in range(g.order):
            composed = g.elements[i].image[g.elements[j].image]
            k = g.compose_indices(j, i)  # elements[j] applied first
            assert np.array_equal(g.elements[k].image, composed)


# -- invariants over the catalog ----------------------------------------------


def test_soundness_and_prime_subring_fixing(entries32):
    for entry in entries32:
        ring = entry.ring
        group = rg.automorphisms(ring)
        chain = ring.prime_subring
        for sigma in group:
            assert sigma.is_homomorphism and sigma.is_bijective
            for x in chain:
                assert sigma(x) == x, str(entry.expr)


def test_orbit_sizes_divide_group_order(entries32):
    for entry in entries32:
        group = rg.automorphisms(entry.ring)
        for block in group.orbits():
            assert group.order % len(block) == 0, str(entry.expr)


def test_identity_is_element_zero(entries32):
    for entry in entries32:
        group = rg.automorphisms(entry.ring)
        assert np.array_equal(group.elements[0].image, np.arange(entry.ring.order))


def test_product_of_distinct_locals_aut_factorizes():
    samples = [
        (rg.Zn(4), rg.Zn(3)),
        (rg.gf(4), rg.PolyQuot(5, (0, 0, 1)), rg.Zn(3)),
        (rg.Zn(8), rg.Zn(9)),
        (rg.SquareZero(rg.Zn(2), 2), rg.Zn(5)),
    ]
    for exprs in samples:
        rings = [rg.make_ring(e) for e in exprs]
        prod = rg.make_ring(rg.Prod(tuple(exprs)))
        expected = 1
        for r in rings:
            expected *= rg.aut_group_order(r)
        group = rg.automorphisms(prod)
        assert group.order == expected
        # every automorphism fixes each primitive idempotent, i.e. restricts
        prims = sorted(
            e
            for e in rg.idempotents(prod)
            if e != prod.zero
            and not any(
                f not in (prod.zero, e) and prod.mul(e, f) == f
                for f in rg.idempotents(prod)
            )
        )
        for sigma in group:
            for e in prims:
                assert sigma(e) == e


def test_product_with_repeated_factor_has_even_aut():
    for exprs in [(rg.Zn(4), rg.Zn(4)), (rg.gf(4), rg.gf(4), rg.Zn(3))]:
        prod = rg.make_ring(rg.Prod(tuple(exprs)))
        order = rg.aut_group_order(prod)
        assert order > 1 and order % 2 == 0


def test_symmetric_power_aut_is_factorial():
    for p, k, m in ((2, 2, 2), (3, 1, 2), (2, 1, 1)):
        prod = rg.make_ring(rg.Prod(tuple(rg.Zn(p**k) for _ in range(m))))
        assert rg.aut_group_order(prod) == math.factorial(m)


# -- engine behavior ----------------------------------------------------------


def test_search_budget_raises_on_fresh_ring():
    ring = fresh_copy(rg.make_ring(rg.PolyQuot(5, (0, 0, 1))))
    with pytest.raises(rg.SearchBudgetExceeded):
        rg.automorphisms(ring, budget=3)


def test_enumeration_is_deterministic():
    a = fresh_copy(rg.make_ring(rg.SquareZero(rg.Zn(2), 2)))
    b = fresh_copy(rg.make_ring(rg.SquareZero(rg.Zn(2), 2)))
    ga, gb = rg.automorphisms(a), rg.automorphisms(b)
    assert [tuple(s.image) for s in ga] == [tuple(s.image) for s in gb]


def test_generating_set_matches_naive(entries32):
    for entry in entries32:
        if entry.ring.order > 16:
            continue
        assert list(rg.generating_set(entry.ring)) == naive_generating_set(entry.ring)


def test_oracle_equivalence_sample():
    for expr in [rg.Zn(16), rg.gf(16), rg.PolyQuot(3, (0, 0, 1)), rg.Prod((rg.Zn(2),) * 3)]:
        ring = rg.make_ring(expr)
        mine = {tuple(map(int, s.image)) for s in rg.automorphisms(ring)}
        assert mine == oracle_automorphism_images(ring), str(expr)


def shuffled_copy(ring, rng):
    """Relabel the carrier by a random permutation; an isomorphic ring."""
    n = ring.order
    perm = rng.permutation(n)
    inv = np.empty(n, dtype=np.int64)
    inv[perm] = np.arange(n)
    add = perm[np.asarray(ring.add_table, dtype=np.int64)[np.ix_(inv, inv)]]
    mul = perm[np.asarray(ring.mul_table, dtype=np.int64)[np.ix_(inv, inv)]]
    names = [ring.element_names[int(inv[i])] for i in range(n)]
    return rg.FiniteRing(
        add.astype(ring.add_table.dtype),
        mul.astype(ring.mul_table.dtype),
        int(perm[ring.zero]),
        int(perm[ring.one]),
        None,
        names,
    ), perm


def test_isomorphism_found_under_relabeling(entries32):
    rng = np.random.default_rng(20240817)
    for entry in entries32:
        if entry.ring.order > 24:
            continue
        twisted, perm = shuffled_copy(entry.ring, rng)
        iso = rg.isomorphism(entry.ring, twisted)
        assert iso is not None, str(entry.expr)
        assert iso.is_homomorphism and iso.is_bijective


def test_search_matches_oracle_on_relabeled_rings():
    rng = np.random.default_rng(7)
    exprs = [
        rg.SquareZero(rg.Zn(2), 2),
        rg.gf(16),
        rg.PolyQuot(4, (1, 1, 1)),
        rg.Prod((rg.Zn(2), rg.Zn(2), rg.Zn(4))),
        rg.PolyQuot(3, (0, 0, 0, 1)),
    ]
    for expr in exprs:
        base = rg.make_ring(expr)
        twisted, _ = shuffled_copy(base, rng)
        mine = {tuple(map(int, s.image)) for s in rg.automorphisms(twisted)}
        assert mine == oracle_automorphism_images(twisted), str(expr)
        assert len(mine) == rg.aut_group_order(base), str(expr)


def test_field_aut_orders_are_extension_degrees():
    from ringgraph.expr import prime_power

    for q in (4, 8, 9, 16, 25, 27, 32, 49, 64, 81, 121, 125, 128, 169, 243, 256):
        _, e = prime_power(q)
        field = rg.make_ring(rg.gf(q))
        assert rg.aut_group_order(field) == e, q
        # the whole group is generated by the squaring/p-th power map
        group = rg.automorphisms(field)
        p = prime_power(field.characteristic)[0]
        frob = rg.RingMorphism(field, field, [field.pow(x, p) for x in range(q)])
        assert rg.subgroup_closure(field, [frob]).order == group.order


def test_odd_dual_number_aut_is_unit_count():
    for n in (3, 5, 7, 9, 11, 15, 21, 25, 27):
        ring = rg.make_ring(rg.PolyQuot(n, (0, 0, 1)))
        assert rg.aut_group_order(ring) == rg.euler_phi(n), n
