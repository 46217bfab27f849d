"""Ring construction expressions.

Every ring in the package is described by a small immutable AST before it
is realized as operation tables: integers mod n, finite fields, univariate
quotients Z_n[x]/(f), square-zero extensions B[x1..xm]/(xi*xj), and direct
products.  The canonical string form of each node round-trips through the
CLI grammar (`cli.parse_ring_expr`).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidModulus

__all__ = [
    "RingExpr",
    "Zn",
    "GF",
    "PolyQuot",
    "SquareZero",
    "Prod",
    "gf",
    "expr_order",
    "format_poly",
    "default_modulus",
    "factorize",
    "is_prime",
    "prime_power",
    "poly_is_irreducible",
]


# ---------------------------------------------------------------------------
# small number-theory helpers

def factorize(n: int) -> dict[int, int]:
    """Prime factorization of n >= 1 as {prime: exponent}."""
    if n < 1:
        raise ValueError(f"cannot factorize {n}")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_prime(n: int) -> bool:
    return n >= 2 and factorize(n) == {n: 1}


def prime_power(n: int):
    """Return (p, e) with n = p**e, or None if n is not a prime power."""
    if n < 2:
        return None
    f = factorize(n)
    if len(f) != 1:
        return None
    [(p, e)] = f.items()
    return p, e


# ---------------------------------------------------------------------------
# polynomials over Z_p, coefficient lists in ascending degree

def _poly_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mul(a, b, p):
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_trim(out)


def _poly_mod(a, f, p):
    # f monic; returns a mod f
    a = list(a)
    d = len(f) - 1
    while len(a) > d:
        lead = a[-1]
        if lead:
            shift = len(a) - 1 - d
            for i in range(d):
                a[shift + i] = (a[shift + i] - lead * f[i]) % p
        a.pop()
    return _poly_trim(a)


def poly_is_irreducible(f, p: int) -> bool:
    """Exhaustive trial division of a monic polynomial over Z_p, p prime."""
    d = len(f) - 1
    if d < 1 or f[-1] != 1:
        return False
    if d == 1:
        return True
    # trial divide by every monic polynomial of degree 1..d//2
    for k in range(1, d // 2 + 1):
        for code in range(p**k):
            g = [(code // p**i) % p for i in range(k)] + [1]
            if not _poly_mod(f, g, p):
                return False
    return True


# bundled default moduli for small field orders; larger orders fall back to
# the deterministic smallest-encoding search below
_BUNDLED_MODULI = {
    4: (1, 1, 1),
    8: (1, 1, 0, 1),
    9: (1, 0, 1),
    16: (1, 1, 0, 0, 1),
    25: (2, 0, 1),
    27: (1, 2, 0, 1),
    32: (1, 0, 1, 0, 0, 1),
    49: (1, 0, 1),
    64: (1, 1, 0, 0, 0, 0, 1),
}


def default_modulus(p: int, e: int) -> tuple[int, ...]:
    """Deterministic monic irreducible of degree e over Z_p.

    Picks the polynomial whose non-leading coefficient vector has the
    smallest base-p encoding; small orders are served from a frozen table.
    """
    if e == 1:
        return (0, 1)
    q = p**e
    if q in _BUNDLED_MODULI:
        return _BUNDLED_MODULI[q]
    for code in range(q):
        f = tuple((code // p**i) % p for i in range(e)) + (1,)
        if poly_is_irreducible(f, p):
            return f
    raise InvalidModulus(f"no irreducible polynomial of degree {e} over Z_{p}")  # pragma: no cover


def format_poly(coeffs, star: bool = True) -> str:
    """Render an ascending coefficient tuple as a polynomial in x.

    With star=True the output matches the CLI grammar ("x^2+2*x+1");
    without it the compact display form used for element names ("2x+1").
    """
    terms = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        if k == 0:
            terms.append(str(c))
        else:
            xpow = "x" if k == 1 else f"x^{k}"
            if c == 1:
                terms.append(xpow)
            else:
                terms.append(f"{c}*{xpow}" if star else f"{c}{xpow}")
    return "+".join(terms) if terms else "0"


# ---------------------------------------------------------------------------
# the AST


class RingExpr:
    """Base class for ring construction expressions."""

    __slots__ = ()


@dataclass(frozen=True)
class Zn(RingExpr):
    """Integers modulo n."""

    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"Zn needs n >= 1, got {self.n}")

    def __str__(self):
        return f"Z{self.n}"


@dataclass(frozen=True)
class GF(RingExpr):
    """Field with p**e elements, as Z_p[x]/(modulus)."""

    p: int
    e: int
    modulus: tuple[int, ...]

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"GF characteristic {self.p} is not prime")
        if self.e < 1:
            raise ValueError(f"GF extension degree must be >= 1, got {self.e}")
        m = tuple(self.modulus)
        object.__setattr__(self, "modulus", m)
        if len(m) != self.e + 1 or m[-1] != 1:
            raise InvalidModulus(f"GF modulus must be monic of degree {self.e}: {list(m)}")
        if any(not 0 <= c < self.p for c in m):
            raise InvalidModulus(f"GF modulus coefficients must lie in 0..{self.p - 1}: {list(m)}")

    def __str__(self):
        q = self.p**self.e
        if self.modulus == default_modulus(self.p, self.e):
            return f"GF({q})"
        return f"GF({q},[{','.join(map(str, self.modulus))}])"


@dataclass(frozen=True)
class PolyQuot(RingExpr):
    """Z_n[x] modulo a monic polynomial (ascending coefficient tuple)."""

    n: int
    modulus: tuple[int, ...]

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"PolyQuot base must have n >= 2, got {self.n}")
        m = tuple(c % self.n for c in self.modulus)
        object.__setattr__(self, "modulus", m)
        if len(m) < 2 or m[-1] != 1:
            raise InvalidModulus(f"quotient modulus must be monic of degree >= 1: {list(m)}")

    @property
    def degree(self) -> int:
        return len(self.modulus) - 1

    def __str__(self):
        return f"Z{self.n}[x]/({format_poly(self.modulus)})"


@dataclass(frozen=True)
class SquareZero(RingExpr):
    """base[x1..xm] with all products xi*xj equal to zero."""

    base: RingExpr
    m: int

    def __post_init__(self):
        if not isinstance(self.base, (Zn, GF)):
            raise ValueError("SquareZero base must be a Zn or GF expression")
        if self.m < 0:
            raise ValueError(f"SquareZero needs m >= 0, got {self.m}")

    def __str__(self):
        return f"SZ({self.base},{self.m})"


@dataclass(frozen=True)
class Prod(RingExpr):
    """Direct product of finitely many rings."""

    factors: tuple[RingExpr, ...]

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        if not self.factors:
            raise ValueError("Prod needs at least one factor")

    def __str__(self):
        parts = []
        for f in self.factors:
            s = str(f)
            parts.append(f"({s})" if isinstance(f, Prod) else s)
        return " x ".join(parts)


def gf(q: int, modulus=None) -> GF:
    """GF expression for a prime-power order, with the default modulus unless given."""
    pp = prime_power(q)
    if pp is None:
        raise ValueError(f"{q} is not a prime power")
    p, e = pp
    if modulus is None:
        modulus = default_modulus(p, e)
    return GF(p, e, tuple(modulus))


def expr_order(expr: RingExpr) -> int:
    """Carrier size of the ring an expression describes."""
    if isinstance(expr, Zn):
        return expr.n
    if isinstance(expr, GF):
        return expr.p**expr.e
    if isinstance(expr, PolyQuot):
        return expr.n**expr.degree
    if isinstance(expr, SquareZero):
        return expr_order(expr.base) ** (expr.m + 1)
    if isinstance(expr, Prod):
        out = 1
        for f in expr.factors:
            out *= expr_order(f)
        return out
    raise TypeError(f"not a RingExpr: {expr!r}")
