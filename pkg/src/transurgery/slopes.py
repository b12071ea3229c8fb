"""Slopes on a torus, Farey adjacency and the SL(2, Z) action.

A slope ``p/q`` names the unoriented curve ``q*lambda + p*mu``; ``inf = 1/0`` is
the meridian.  Matrices act on the homogeneous column ``(p, q)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .exact import INF, IntMatrix, Rational

Slope = Rational
"""Slopes are reduced rationals; the alias keeps call sites readable."""

__all__ = [
    "INF",
    "Slope",
    "SlopeInterval",
    "SlopeMatrix",
    "parse_slope",
    "format_slope",
    "interval_contains",
    "is_farey_neighbor",
    "mediant",
    "apply_matrix",
    "shear",
    "farey_neighbors",
    "cyclic_neighbor_index",
]


def parse_slope(text: str) -> Slope:
    return Rational.parse(text)


def format_slope(x: Slope) -> str:
    return str(x)


def slope(p: int, q: int = 1) -> Slope:
    return Rational(p, q)


# ---------------------------------------------------------------------------
# Intervals on the slope circle
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SlopeInterval:
    """Arc of the slope circle from ``lo`` to ``hi`` going upward.

    If ``lo > hi`` (with ``inf`` counted as the bottom) the arc passes through
    ``inf``.  ``lo == inf`` means the arc starts at -infinity.
    """

    lo: Slope
    hi: Slope
    lo_closed: bool = False
    hi_closed: bool = False

    def __post_init__(self) -> None:
        if self.lo == self.hi:
            raise ValueError("degenerate interval: lo == hi")

    def __contains__(self, x: Slope) -> bool:
        return interval_contains(self, x)

    def __str__(self) -> str:
        return (
            ("[" if self.lo_closed else "(")
            + _end(self.lo, low=True)
            + ", "
            + _end(self.hi, low=False)
            + ("]" if self.hi_closed else ")")
        )


def _end(x: Slope, low: bool) -> str:
    if x.is_inf:
        return "-inf" if low else "inf"
    return str(x)


def interval_contains(I: SlopeInterval, x: Slope) -> bool:
    if x == I.lo:
        return I.lo_closed
    if x == I.hi:
        return I.hi_closed
    lo, hi = I.lo, I.hi
    # inf compares below every finite value, so [inf, hi) is the ray (-inf, hi)
    if lo < hi:
        return lo < x < hi
    # wrapping arc (lo, inf] u [-inf, hi)
    return x.is_inf or x > lo or x < hi


# ---------------------------------------------------------------------------
# Farey structure
# ---------------------------------------------------------------------------


def _det(x: Slope, y: Slope) -> int:
    return x.num * y.den - y.num * x.den


def is_farey_neighbor(x: Slope, y: Slope) -> bool:
    return abs(_det(x, y)) == 1


def mediant(x: Slope, y: Slope) -> Slope:
    """Farey sum of two adjacent slopes, taken on the ``q >= 0`` representatives."""
    if not is_farey_neighbor(x, y):
        raise ValueError(f"{x} and {y} are not Farey neighbors")
    return Rational(x.num + y.num, x.den + y.den)


def farey_neighbors(t: Slope, max_den: int) -> list[Slope]:
    """Farey neighbors of ``t`` with denominator ``<= max_den``.

    Returned in the cyclic order used by the positive twist about ``t``: the
    neighbors are ``u + k*v`` for a fixed ``u`` with ``det(v, u) = 1``, and the
    positive twist sends index ``k`` to ``k + 1``.
    """
    p, q = t.vector()
    u = _complement(p, q)
    out = []
    # u + k v has denominator |u_q + k q|; bound k accordingly
    if q == 0:
        ks = range(-max_den * 4 - 4, max_den * 4 + 5)
    else:
        lo = (-max_den - u[1]) // q - 1
        hi = (max_den - u[1]) // q + 1
        ks = range(lo, hi + 1)
    for k in ks:
        w = (u[0] + k * p, u[1] + k * q)
        r = Rational(*w)
        if r.den <= max_den:
            out.append(r)
    return out


def _complement(p: int, q: int) -> tuple[int, int]:
    """Some ``(a, b)`` with ``p*b - q*a == 1``, i.e. ``det((p,q),(a,b)) = 1``."""
    g, x, y = _egcd(p, q)
    if g != 1:
        raise ValueError("non-primitive vector")
    # p*x + q*y = 1  ->  (a, b) = (-y, x)
    return (-y, x)


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        k, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - k * x1
        y0, y1 = y1, y0 - k * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def cyclic_neighbor_index(t: Slope, x: Slope) -> int:
    """Index ``k`` with ``x`` the slope of ``u + k*v`` (see :func:`farey_neighbors`)."""
    p, q = t.vector()
    u = _complement(p, q)
    d = _det(t, x)
    if abs(d) != 1:
        raise ValueError(f"{x} is not a Farey neighbor of {t}")
    # x = +-(u + k v); det(v, x) = +-det(v, u) = +-1 fixes the sign
    s = d  # det(v, u) == 1
    xp, xq = s * x.num, s * x.den
    if p:
        return (xp - u[0]) // p
    return (xq - u[1]) // q


# ---------------------------------------------------------------------------
# Matrix action
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SlopeMatrix:
    """``[[a, b], [c, d]]`` acting on ``(p, q)``; determinant must be 1."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self) -> None:
        if self.a * self.d - self.b * self.c != 1:
            raise ValueError(f"determinant {self.a * self.d - self.b * self.c} != 1")

    @classmethod
    def identity(cls) -> "SlopeMatrix":
        return cls(1, 0, 0, 1)

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    def __matmul__(self, other: "SlopeMatrix") -> "SlopeMatrix":
        return SlopeMatrix(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def __pow__(self, k: int) -> "SlopeMatrix":
        base = self if k >= 0 else self.inverse()
        out = SlopeMatrix.identity()
        for _ in range(abs(k)):
            out = out @ base
        return out

    def inverse(self) -> "SlopeMatrix":
        return SlopeMatrix(self.d, -self.b, -self.c, self.a)

    def to_int_matrix(self) -> IntMatrix:
        return IntMatrix.from_rows([[self.a, self.b], [self.c, self.d]])

    def rows(self) -> list[list[int]]:
        return [[self.a, self.b], [self.c, self.d]]

    def __call__(self, x: Slope) -> Slope:
        return apply_matrix(self, x)


def apply_matrix(M: SlopeMatrix, x: Slope) -> Slope:
    p, q = x.vector()
    return Rational(M.a * p + M.b * q, M.c * p + M.d * q)


def shear_matrix(t: int) -> SlopeMatrix:
    return SlopeMatrix(1, t, 0, 1)


def shear(x: Slope, t: int) -> Slope:
    """Change of longitude: ``x + t``; the meridian is fixed."""
    return apply_matrix(shear_matrix(t), x)


def iter_reduced(bound: int) -> Iterator[Slope]:
    """All finite reduced ``p/q`` with ``|p| <= bound`` and ``1 <= q <= bound``."""
    seen = set()
    for q in range(1, bound + 1):
        for p in range(-bound, bound + 1):
            r = Rational(p, q)
            if r.den == q and r not in seen:
                seen.add(r)
                yield r
