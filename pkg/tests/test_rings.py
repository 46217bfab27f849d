import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import ringgraph as rg


def assert_ring_axioms(ring):
    """Exhaustive commutative-ring-with-identity check, independent loops."""
    n = ring.order
    add = np.asarray(ring.add_table, dtype=np.int64)
    mul = np.asarray(ring.mul_table, dtype=np.int64)
    idx = np.arange(n)
    assert (add == add.T).all() and (mul == mul.T).all()
    assert (add[ring.zero] == idx).all()
    assert (mul[ring.one] == idx).all()
    assert (add == ring.zero).any(axis=1).all()  # additive inverses
    step = max(1, 4_000_000 // (n * n))
    for lo in range(0, n, step):
        a = idx[lo : lo + step][:, None, None]
        b = idx[None, :, None]
        c = idx[None, None, :]
        assert (add[add[a, b], c] == add[a, add[b, c]]).all()
        assert (mul[mul[a, b], c] == mul[a, mul[b, c]]).all()
        assert (mul[a, add[b, c]] == add[mul[a, b], mul[a, c]]).all()


# -- construction -----------------------------------------------------------


def test_make_zn6():
    r = rg.make_ring(rg.Zn(6))
    assert r.order == 6 and r.characteristic == 6
    assert r.units == {1, 5}


def test_make_gf4():
    r = rg.make_ring(rg.GF(2, 2, (1, 1, 1)))
    assert r.order == 4 and r.characteristic == 2
    assert len(r.units) == 3


def test_make_dual_numbers_mod5():
    r = rg.make_ring(rg.PolyQuot(5, (0, 0, 1)))
    assert r.order == 25
    # brute force over all 25 elements straight off the tables
    units = {x for x in range(25) if any(r.mul(x, y) == r.one for y in range(25))}
    nilp = {x for x in range(25) if any(r.pow(x, k) == r.zero for k in range(1, 26))}
    assert r.units == units and len(units) == 20
    assert r.nilpotents == nilp
    assert sorted(r.name(x) for x in nilp) == ["0", "2x", "3x", "4x", "x"]


def test_make_ring_errors():
    with pytest.raises(rg.InvalidModulus):
        rg.make_ring(rg.GF(2, 2, (1, 0, 1)))  # x^2+1 = (x+1)^2 over F_2
    with pytest.raises(rg.OrderLimitExceeded):
        rg.make_ring(rg.Zn(5000))
    with pytest.raises(rg.OrderLimitExceeded):
        rg.make_ring(rg.Zn(10), max_order=5)


def test_arithmetic_ops():
    r = rg.make_ring(rg.Zn(7))
    assert r.add(3, 5) == 1
    assert r.pow(3, 0) == 1
    assert r.neg(3) == 4
    d = rg.make_ring(rg.PolyQuot(5, (0, 0, 1)))
    x = 5  # the class of the variable
    assert d.mul(x, x) == 0
    with pytest.raises(rg.IndexOutOfRange):
        r.add(0, 7)
    with pytest.raises(rg.IndexOutOfRange):
        r.mul(-1, 0)


def test_zero_ring_is_degenerate_but_usable():
    r = rg.make_ring(rg.Zn(1))
    assert r.order == 1 and r.zero == r.one
    assert r.characteristic == 1
    assert not rg.local_structure(r).is_local


# -- structure queries --------------------------------------------------------


def test_local_structure_examples():
    z4 = rg.local_structure(rg.make_ring(rg.Zn(4)))
    assert z4.is_local and z4.maximal_ideal == {0, 2} and z4.residue_field_order == 2
    assert not rg.local_structure(rg.make_ring(rg.Zn(6))).is_local
    d = rg.local_structure(rg.make_ring(rg.PolyQuot(5, (0, 0, 1))))
    assert d.is_local and len(d.maximal_ideal) == 5 and d.residue_field_order == 5


def test_decompose_z12():
    r = rg.make_ring(rg.Zn(12))
    factors, iso = rg.decompose_local(r)
    assert [f.order for f in factors] == [3, 4]
    assert rg.isomorphism(factors[0], rg.make_ring(rg.Zn(3))) is not None
    assert rg.isomorphism(factors[1], rg.make_ring(rg.Zn(4))) is not None
    assert iso.is_homomorphism and iso.is_bijective


def test_decompose_local_ring_is_identity():
    r = rg.make_ring(rg.Zn(8))
    factors, iso = rg.decompose_local(r)
    assert factors == [r]
    assert np.array_equal(iso.image, np.arange(8))


def test_decompose_product():
    r = rg.make_ring(rg.Prod((rg.gf(4), rg.Zn(9))))
    factors, iso = rg.decompose_local(r)
    assert sorted(f.order for f in factors) == [4, 9]
    assert iso.is_homomorphism and iso.is_bijective


def test_decompose_catalog(catalog64):
    for entry in catalog64.entries:
        factors, iso = rg.decompose_local(entry.ring)
        prod = 1
        for f in factors:
            assert rg.local_structure(f).is_local, str(entry.expr)
            prod *= f.order
        assert prod == entry.ring.order
        assert iso.is_homomorphism and iso.is_bijective, str(entry.expr)


def test_idempotents():
    assert rg.idempotents(rg.make_ring(rg.Zn(4))) == {0, 1}
    assert rg.idempotents(rg.make_ring(rg.Zn(6))) == {0, 1, 3, 4}
    assert rg.idempotents(rg.make_ring(rg.gf(9))) == {0, 1}


def test_annihilator():
    z8 = rg.make_ring(rg.Zn(8))
    assert rg.annihilator(z8, 2) == {0, 4}
    assert rg.annihilator(z8, 0) == set(range(8))
    d = rg.make_ring(rg.PolyQuot(5, (0, 0, 1)))
    assert rg.annihilator(d, 5) == {0, 5, 10, 15, 20}


def test_socle():
    assert rg.socle(rg.make_ring(rg.Zn(8))) == {0, 4}
    f9 = rg.make_ring(rg.gf(9))
    assert rg.socle(f9) == set(range(9))  # zero maximal ideal: degenerate case
    sz = rg.make_ring(rg.SquareZero(rg.Zn(2), 2))
    names = {sz.name(x) for x in rg.socle(sz)}
    assert names == {"0", "x1", "x2", "x1+x2"}
    with pytest.raises(rg.NotLocal):
        rg.socle(rg.make_ring(rg.Zn(6)))


def test_euler_phi():
    assert rg.euler_phi(9) == 6
    assert rg.euler_phi(1) == 1
    assert rg.euler_phi(15) == 8
    with pytest.raises(ValueError):
        rg.euler_phi(0)


def test_units_count_equals_phi():
    for n in range(1, 201):
        r = rg.make_ring(rg.Zn(n))
        assert len(r.units) == rg.euler_phi(n), n


def test_prime_power_unit_counts():
    for p in (2, 3, 5, 7):
        for k in (1, 2, 3):
            r = rg.make_ring(rg.Zn(p**k))
            assert len(r.units) == p ** (k - 1) * (p - 1)


def test_fingerprint_examples():
    z4 = rg.make_ring(rg.Zn(4))
    assert rg.element_fingerprint(z4, 0) == rg.element_fingerprint(z4, 0)
    f1 = rg.element_fingerprint(z4, 1)
    f3 = rg.element_fingerprint(z4, 3)
    assert f1 != f3 and f1[3] == 1 and f3[3] == 2  # multiplicative orders
    d = rg.make_ring(rg.PolyQuot(5, (0, 0, 1)))
    fps = {rg.element_fingerprint(d, x) for x in (5, 10, 15, 20)}
    assert len(fps) == 1


def test_fingerprints_against_naive(catalog64):
    from _oracle import naive_fingerprint

    for entry in catalog64.entries:
        if entry.ring.order > 16:
            continue
        for x in range(entry.ring.order):
            assert rg.element_fingerprint(entry.ring, x) == naive_fingerprint(
                entry.ring, x
            ), (str(entry.expr), x)


def test_generating_set():
    assert rg.generating_set(rg.make_ring(rg.Zn(12))) == ()
    d = rg.make_ring(rg.PolyQuot(5, (0, 0, 1)))
    assert rg.generating_set(d) == (5,)  # the class of x
    assert len(rg.generating_set(rg.make_ring(rg.gf(4)))) == 1


def test_ring_axioms_catalog(catalog64):
    for entry in catalog64.entries:
        assert_ring_axioms(entry.ring)


@pytest.mark.parametrize(
    "expr",
    [
        rg.Zn(256),
        rg.gf(256),
        rg.SquareZero(rg.Zn(2), 7),
        rg.PolyQuot(6, (1, 2, 0, 1)),
        rg.Prod((rg.Zn(16), rg.gf(16))),
    ],
)
def test_ring_axioms_order_256(expr):
    assert_ring_axioms(rg.make_ring(expr))


def test_crt_isomorphism_all_coprime_pairs_up_to_30():
    for m in range(2, 31):
        for n in range(m + 1, 31):
            if math.gcd(m, n) != 1 or m * n > 900:
                continue
            a = rg.make_ring(rg.Zn(m * n))
            b = rg.make_ring(rg.Prod((rg.Zn(m), rg.Zn(n))))
            iso = rg.isomorphism(a, b)
            assert iso is not None and iso.is_homomorphism and iso.is_bijective, (m, n)


def test_fingerprint_invariance_under_automorphisms(catalog64):
    for entry in catalog64.entries:
        ring = entry.ring
        if rg.aut_group_order(ring) <= 2000:
            sigmas = [s.image for s in rg.automorphisms(ring)]
        else:
            # the stabilizer-chain representatives are the computed maps
            from ringgraph.autsearch import _stabilizer_chain

            sigmas = [rep for level in _stabilizer_chain(ring) for _, rep in level]
        fps = ring.fingerprints
        for img in sigmas:
            for x in range(ring.order):
                assert fps[x] == fps[int(img[x])], str(entry.expr)


def test_immutable_tables():
    r = rg.make_ring(rg.Zn(6))
    with pytest.raises(ValueError):
        r.add_table[0, 0] = 3


@st.composite
def small_exprs(draw):
    kind = draw(st.sampled_from(["zn", "gf", "quot", "sz", "prod"]))
    if kind == "zn":
        return rg.Zn(draw(st.integers(1, 48)))
    if kind == "gf":
        return rg.gf(draw(st.sampled_from([2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 32])))
    if kind == "quot":
        n = draw(st.integers(2, 6))
        deg = draw(st.integers(1, 2))
        coeffs = tuple(draw(st.integers(0, n - 1)) for _ in range(deg)) + (1,)
        return rg.PolyQuot(n, coeffs)
    if kind == "sz":
        base = draw(st.sampled_from([rg.Zn(2), rg.Zn(3), rg.Zn(4), rg.gf(4)]))
        m = draw(st.integers(0, 2))
        return rg.SquareZero(base, m)
    parts = draw(st.lists(st.sampled_from([rg.Zn(2), rg.Zn(3), rg.Zn(4), rg.gf(4), rg.Zn(5)]), min_size=1, max_size=3))
    return rg.Prod(tuple(parts))


@settings(max_examples=40, deadline=None)
@given(small_exprs())
def test_ring_axioms_hypothesis(expr):
    if rg.expr_order(expr) > 64:
        return
    assert_ring_axioms(rg.make_ring(expr))
