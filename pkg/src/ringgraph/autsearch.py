"""Automorphism enumeration and ring isomorphism testing.

The engine backtracks over images of a greedy generating set.  Candidate
images are restricted to elements with the same fingerprint, and every
assignment is propagated through the operation tables (sums and products
of mapped elements force further images), so a conflicting branch dies as
early as possible.  Whole groups are assembled from a stabilizer chain of
coset representatives, which keeps huge symmetric-type groups countable
without enumerating them.
"""

from __future__ import annotations

import math
from collections import deque

import numpy as np

from .errors import (
    NotAutomorphism,
    NotBijective,
    NotComposable,
    SearchBudgetExceeded,
)
from .rings import FiniteRing, generating_set

__all__ = [
    "DEFAULT_SEARCH_BUDGET",
    "RingMorphism",
    "AutGroup",
    "identity_automorphism",
    "is_homomorphism",
    "automorphisms",
    "aut_group_order",
    "aut_orbits",
    "isomorphism",
    "compose",
    "inverse",
    "subgroup_closure",
]

DEFAULT_SEARCH_BUDGET = 10_000_000


class RingMorphism:
    """Total map between two ring carriers, with lazy validity checks."""

    __slots__ = ("source", "target", "image", "_hom", "_bij")

    def __init__(self, source: FiniteRing, target: FiniteRing, image):
        image = np.ascontiguousarray(image, dtype=np.int64)
        if image.shape != (source.order,):
            raise ValueError("image must assign every source element")
        if image.size and (image.min() < 0 or image.max() >= target.order):
            raise ValueError("image values outside target carrier")
        image.setflags(write=False)
        self.source = source
        self.target = target
        self.image = image
        self._hom = None
        self._bij = None

    def __call__(self, x: int) -> int:
        return int(self.image[self.source._check(x)])

    @property
    def is_homomorphism(self) -> bool:
        if self._hom is None:
            self._hom = _verify_hom(self.source, self.target, self.image)
        return self._hom

    @property
    def is_bijective(self) -> bool:
        if self._bij is None:
            self._bij = (
                self.source.order == self.target.order
                and len(np.unique(self.image)) == self.source.order
            )
        return self._bij

    @property
    def is_automorphism(self) -> bool:
        return self.source is self.target and self.is_bijective and self.is_homomorphism

    def __eq__(self, other):
        return (
            isinstance(other, RingMorphism)
            and self.source is other.source
            and self.target is other.target
            and np.array_equal(self.image, other.image)
        )

    def __hash__(self):
        return hash((id(self.source), id(self.target), self.image.tobytes()))

    def __repr__(self):
        return f"RingMorphism({self.source!r} -> {self.target!r})"


def identity_automorphism(ring: FiniteRing) -> RingMorphism:
    return RingMorphism(ring, ring, np.arange(ring.order, dtype=np.int64))


def is_homomorphism(morphism: RingMorphism) -> bool:
    """Full O(n^2) table check of both operations plus the identity."""
    return morphism.is_homomorphism


def _verify_hom(source: FiniteRing, target: FiniteRing, image) -> bool:
    img = np.asarray(image, dtype=np.int64)
    if int(img[source.one]) != target.one:
        return False
    pair = target.add_table[img[:, None], img[None, :]]
    if not np.array_equal(img[source.add_table], pair):
        return False
    pair = target.mul_table[img[:, None], img[None, :]]
    return np.array_equal(img[source.mul_table], pair)


def _batch_verify(source: FiniteRing, target: FiniteRing, images: np.ndarray) -> np.ndarray:
    """Vectorized homomorphism check over a batch of image rows."""
    n = source.order
    ok = images[:, source.one] == target.one
    step = max(1, 4_000_000 // max(n * n, 1))
    for lo in range(0, len(images), step):
        hi = min(len(images), lo + step)
        chunk = images[lo:hi]
        for s_tab, t_tab in ((source.add_table, target.add_table), (source.mul_table, target.mul_table)):
            lhs = chunk[:, s_tab]
            rhs = t_tab[chunk[:, :, None], chunk[:, None, :]]
            ok[lo:hi] &= (lhs == rhs).all(axis=(1, 2))
    return ok


# ---------------------------------------------------------------------------
# the backtracking engine


class _Search:
    __slots__ = ("sa", "sm", "ta", "tm", "img", "pre", "det", "ndet", "nodes", "budget")

    def __init__(self, source: FiniteRing, target: FiniteRing, budget: int):
        self.sa = source.add_table
        self.sm = source.mul_table
        self.ta = target.add_table
        self.tm = target.mul_table
        self.img = np.full(source.order, -1, dtype=np.int64)
        self.pre = np.full(target.order, -1, dtype=np.int64)
        self.det = np.zeros(source.order, dtype=np.int64)
        self.ndet = 0
        self.nodes = 0
        self.budget = budget

    def assign(self, pairs) -> bool:
        """Force the given image pairs and everything they imply.

        Returns False on any table conflict or injectivity clash; the
        caller rolls back with undo().  Raises once the node budget is
        spent, so a too-large instance never yields a partial answer.
        """
        img, pre, det = self.img, self.pre, self.det
        queue = deque(pairs)
        while queue:
            x, y = queue.popleft()
            cur = img[x]
            if cur >= 0:
                if cur != y:
                    return False
                continue
            if pre[y] >= 0:
                return False
            self.nodes += 1
            if self.nodes > self.budget:
                raise SearchBudgetExceeded(
                    f"search exceeded {self.budget} nodes; raise the budget to continue"
                )
            img[x] = y
            pre[y] = x
            det[self.ndet] = x
            self.ndet += 1
            d = det[: self.ndet]
            imd = img[d]
            for s_tab, t_tab in ((self.sa, self.ta), (self.sm, self.tm)):
                s = s_tab[x, d]
                t = t_tab[y, imd]
                si = img[s]
                known = si >= 0
                if known.any() and (si[known] != t[known]).any():
                    return False
                unknown = ~known
                if unknown.any():
                    queue.extend(zip(s[unknown].tolist(), t[unknown].tolist()))
        return True

    def mark(self) -> int:
        return self.ndet

    def undo(self, mark: int):
        img, pre, det = self.img, self.pre, self.det
        for i in range(self.ndet - 1, mark - 1, -1):
            x = det[i]
            pre[img[x]] = -1
            img[x] = -1
        self.ndet = mark


def _search_maps(source, target, *, seeds=(), limit=None, budget=None):
    """All (or the first `limit`) isomorphism images extending the seeds.

    The prime subring is forced first; generator images are then tried in
    ascending carrier order within the matching fingerprint class of the
    target.  Every returned image array is a verified bijective
    homomorphism.
    """
    budget = DEFAULT_SEARCH_BUDGET if budget is None else budget
    if source.order != target.order or source.characteristic != target.characteristic:
        return []
    search = _Search(source, target, budget)
    ps = source.prime_subring
    pt = target.prime_subring
    pairs = list(zip(ps, pt)) + [(int(x), int(y)) for x, y in seeds]
    if not search.assign(pairs):
        return []
    gens = generating_set(source)
    fps = source.fingerprints
    classes = target.fingerprint_classes
    out: list[np.ndarray] = []

    def rec(i: int):
        if limit is not None and len(out) >= limit:
            return
        if i == len(gens):
            out.append(search.img.copy())
            return
        g = gens[i]
        if search.img[g] >= 0:
            rec(i + 1)
            return
        for y in classes.get(fps[g], ()):
            if limit is not None and len(out) >= limit:
                return
            m = search.mark()
            if search.assign([(g, int(y))]):
                rec(i + 1)
            search.undo(m)

    rec(0)
    if out:
        stack = np.stack(out)
        ok = _batch_verify(source, target, stack)
        if not ok.all():  # pragma: no cover - propagation guarantees this
            raise RuntimeError("internal error: search produced a non-homomorphism")
    return out


# ---------------------------------------------------------------------------
# groups


class AutGroup:
    """Composition-closed set of automorphisms of one ring.

    Element 0 is the identity; elements are sorted lexicographically by
    image tuple, so group listings are reproducible.
    """

    def __init__(self, ring: FiniteRing, images: np.ndarray, generator_rows=None):
        order = np.lexsort(images.T[::-1])
        images = np.ascontiguousarray(images[order])
        images.setflags(write=False)
        self.ring = ring
        self._images = images
        self.elements = tuple(RingMorphism(ring, ring, images[i]) for i in range(len(images)))
        self._index = {images[i].tobytes(): i for i in range(len(images))}
        self._gen_rows = generator_rows
        assert len(self._index) == len(self.elements), "duplicate group elements"
        assert np.array_equal(images[0], np.arange(ring.order))

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def index_of(self, morphism: RingMorphism) -> int:
        key = np.asarray(morphism.image, dtype=np.int64).tobytes()
        if key not in self._index:
            raise NotAutomorphism("morphism is not an element of this group")
        return self._index[key]

    def compose_indices(self, i: int, j: int) -> int:
        """Index of elements[i] after elements[j] (j applied first)."""
        composed = self._images[i][self._images[j]]
        return self._index[composed.tobytes()]

    def inverse_index(self, i: int) -> int:
        inv = np.empty_like(self._images[i])
        inv[self._images[i]] = np.arange(self.ring.order)
        return self._index[inv.tobytes()]

    def _generator_rows(self):
        if self._gen_rows is not None:
            return self._gen_rows
        return range(len(self.elements))

    def is_abelian(self) -> bool:
        rows = list(self._generator_rows())
        for a in rows:
            for b in rows:
                if self.compose_indices(a, b) != self.compose_indices(b, a):
                    return False
        return True

    def element_order(self, sigma) -> int:
        """Order of one automorphism, as the cycle lcm of its permutation."""
        if isinstance(sigma, RingMorphism):
            img = sigma.image
        else:
            img = self._images[sigma]
        seen = np.zeros(len(img), dtype=bool)
        out = 1
        for start in range(len(img)):
            if seen[start]:
                continue
            length = 0
            x = start
            while not seen[x]:
                seen[x] = True
                x = int(img[x])
                length += 1
            out = math.lcm(out, length)
        return out

    def orbit(self, x: int) -> frozenset[int]:
        x = self.ring._check(x)
        return frozenset(np.unique(self._images[:, x]).tolist())

    def orbits(self) -> tuple[tuple[int, ...], ...]:
        gens = [self._images[i] for i in self._generator_rows()]
        return _orbits_from_images(self.ring.order, gens)


def _orbits_from_images(n: int, images) -> tuple[tuple[int, ...], ...]:
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for img in images:
        for x in range(n):
            ra, rb = find(x), find(int(img[x]))
            if ra != rb:
                if ra < rb:
                    parent[rb] = ra
                else:
                    parent[ra] = rb
    blocks: dict[int, list[int]] = {}
    for x in range(n):
        blocks.setdefault(find(x), []).append(x)
    return tuple(tuple(blocks[r]) for r in sorted(blocks))


def _stabilizer_chain(ring: FiniteRing, budget=None):
    """Coset representatives for the chain of generator stabilizers.

    Level i holds, for each reachable image y of generator g_i, one
    automorphism fixing g_1..g_{i-1} and sending g_i to y.  The level
    sizes multiply to |Aut R| and the representatives generate it.
    """
    cached = ring._aut_cache.get("chain")
    if cached is not None:
        return cached
    gens = generating_set(ring)
    fps = ring.fingerprints
    classes = ring.fingerprint_classes
    chain = []
    seeds: list[tuple[int, int]] = []
    for g in gens:
        level = []
        for y in classes[fps[g]]:
            found = _search_maps(ring, ring, seeds=seeds + [(g, int(y))], limit=1, budget=budget)
            if found:
                level.append((int(y), found[0]))
        assert any(y == g for y, _ in level)
        chain.append(level)
        seeds.append((g, g))
    ring._aut_cache["chain"] = chain
    return chain


def aut_group_order(ring: FiniteRing, budget=None) -> int:
    """|Aut R| from the stabilizer chain, without enumerating the group."""
    order = 1
    for level in _stabilizer_chain(ring, budget):
        order *= len(level)
    return order


def automorphisms(ring: FiniteRing, budget=None) -> AutGroup:
    """The full automorphism group as an explicit, verified element list."""
    cached = ring._aut_cache.get("group")
    if cached is not None:
        return cached
    eff_budget = DEFAULT_SEARCH_BUDGET if budget is None else budget
    chain = _stabilizer_chain(ring, budget)
    total = 1
    for level in chain:
        total *= len(level)
    if total * ring.order > eff_budget:
        raise SearchBudgetExceeded(
            f"|Aut R| = {total} is too large to enumerate within budget {eff_budget}"
        )
    images = [np.arange(ring.order, dtype=np.int64)]
    for level in chain:
        images = [acc[rep] for acc in images for _, rep in level]
    stack = np.stack(images)
    ok = _batch_verify(ring, ring, stack)
    if not ok.all():  # pragma: no cover - closure of verified maps
        raise RuntimeError("internal error: transversal product is not an automorphism")
    group = AutGroup(ring, stack)
    gen_arrays = [rep for level in chain for _, rep in level]
    if gen_arrays:
        group._gen_rows = sorted({group._index[np.ascontiguousarray(g).tobytes()] for g in gen_arrays})
    ring._aut_cache["group"] = group
    return group


def aut_orbits(ring: FiniteRing, budget=None) -> tuple[tuple[int, ...], ...]:
    """Orbit partition of the carrier under the full automorphism group.

    Works from the stabilizer-chain representatives, so it stays cheap
    even when the group itself is too large to enumerate.
    """
    cached = ring._aut_cache.get("orbits")
    if cached is not None:
        return cached
    chain = _stabilizer_chain(ring, budget)
    reps = [rep for level in chain for _, rep in level]
    orbits = _orbits_from_images(ring.order, reps)
    ring._aut_cache["orbits"] = orbits
    return orbits


def isomorphism(source: FiniteRing, target: FiniteRing, budget=None) -> RingMorphism | None:
    """A verified ring isomorphism, or None.

    Cheap rejections first: order, characteristic, then the fingerprint
    multiset; after that the generator-image search runs against the
    target's fingerprint classes.
    """
    if source.order != target.order or source.characteristic != target.characteristic:
        return None
    if sorted(source.fingerprints) != sorted(target.fingerprints):
        return None
    found = _search_maps(source, target, limit=1, budget=budget)
    if not found:
        return None
    return RingMorphism(source, target, found[0])


def compose(f: RingMorphism, g: RingMorphism) -> RingMorphism:
    """The map x -> g(f(x)); f.target must be g.source."""
    if f.target is not g.source:
        raise NotComposable("f.target and g.source differ")
    return RingMorphism(f.source, g.target, g.image[f.image])


def inverse(f: RingMorphism) -> RingMorphism:
    if not f.is_bijective:
        raise NotBijective("cannot invert a non-bijective morphism")
    inv = np.empty(f.source.order, dtype=np.int64)
    inv[f.image] = np.arange(f.source.order)
    return RingMorphism(f.target, f.source, inv)


def subgroup_closure(ring: FiniteRing, gens) -> AutGroup:
    """Smallest automorphism group of `ring` containing the given maps."""
    gen_arrays = []
    for g in gens:
        if not (g.source is ring and g.target is ring and g.is_bijective and g.is_homomorphism):
            raise NotAutomorphism("subgroup_closure generators must be automorphisms of the ring")
        gen_arrays.append(np.asarray(g.image, dtype=np.int64))
    ident = np.arange(ring.order, dtype=np.int64)
    seen = {ident.tobytes(): ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gen_arrays:
                c = a[g]
                key = c.tobytes()
                if key not in seen:
                    seen[key] = c
                    nxt.append(c)
        frontier = nxt
    return AutGroup(ring, np.stack(list(seen.values())))
