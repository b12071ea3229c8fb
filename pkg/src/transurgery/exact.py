"""Exact integer kernel: rationals with a point at infinity, integer matrices,
Smith normal form and integer Laurent polynomials.

Nothing here touches floating point.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from math import gcd
from typing import Iterable, Sequence


class InexactDivision(ArithmeticError):
    """Raised when a Laurent division leaves a nonzero remainder."""


# ---------------------------------------------------------------------------
# Rationals on the projective line
# ---------------------------------------------------------------------------


@total_ordering
@dataclass(frozen=True, slots=True, init=False)
class Rational:
    """A reduced fraction ``num/den`` with ``den >= 0``.

    ``Rational(1, 0)`` is the single point at infinity; ``+inf`` and ``-inf``
    are the same value.  Ordering treats infinity as smaller than every finite
    value (it plays the role of ``-inf`` on the slope circle), which is what the
    interval helpers downstream expect.
    """

    num: int
    den: int

    def __init__(self, num: int, den: int = 1) -> None:
        n, d = _normalize(int(num), int(den))
        object.__setattr__(self, "num", n)
        object.__setattr__(self, "den", d)

    @classmethod
    def from_fraction(cls, f: Fraction | int) -> "Rational":
        f = Fraction(f)
        return cls(f.numerator, f.denominator)

    @classmethod
    def parse(cls, text: str) -> "Rational":
        """Parse ``p/q``, ``p`` or ``inf``."""
        s = text.strip().lower()
        if s in ("inf", "+inf", "-inf", "infinity", "1/0"):
            return INF
        try:
            if "/" in s:
                p, q = s.split("/", 1)
                return cls(int(p), int(q))
            return cls(int(s), 1)
        except ValueError as exc:
            raise ValueError(f"malformed rational {text!r}") from exc

    @property
    def is_inf(self) -> bool:
        return self.den == 0

    def to_fraction(self) -> Fraction:
        if self.is_inf:
            raise ValueError("infinity has no Fraction value")
        return Fraction(self.num, self.den)

    def vector(self) -> tuple[int, int]:
        """Primitive homogeneous representative ``(p, q)`` with ``q >= 0``."""
        return (self.num, self.den)

    def __str__(self) -> str:
        return "inf" if self.is_inf else f"{self.num}/{self.den}"

    def __repr__(self) -> str:
        return f"Rational({self.num}, {self.den})"

    def __lt__(self, other: object) -> bool:
        if isinstance(other, int):
            other = Rational(other)
        if not isinstance(other, Rational):
            return NotImplemented
        if self.is_inf:
            return not other.is_inf
        if other.is_inf:
            return False
        return self.num * other.den < other.num * self.den

    # arithmetic is only defined on finite values
    def _finite(self) -> Fraction:
        if self.is_inf:
            raise ArithmeticError("arithmetic on the point at infinity")
        return Fraction(self.num, self.den)

    def __add__(self, other: "Rational | int") -> "Rational":
        o = Rational(other) if isinstance(other, int) else other
        return Rational.from_fraction(self._finite() + o._finite())

    __radd__ = __add__

    def __sub__(self, other: "Rational | int") -> "Rational":
        o = Rational(other) if isinstance(other, int) else other
        return Rational.from_fraction(self._finite() - o._finite())

    def __neg__(self) -> "Rational":
        return self if self.is_inf else Rational(-self.num, self.den)


def _normalize(num: int, den: int) -> tuple[int, int]:
    if num == 0 and den == 0:
        raise ZeroDivisionError("0/0 is indeterminate")
    if den == 0:
        return (1, 0)
    if den < 0:
        num, den = -num, -den
    g = gcd(num, den)
    return (num // g, den // g)


def rational_normalize(num: int, den: int) -> Rational:
    return Rational(num, den)


INF = Rational(1, 0)


# ---------------------------------------------------------------------------
# Integer matrices
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative dimension")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries, "
                f"got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        rows = [list(map(int, r)) for r in rows]
        ncols = len(rows[0]) if rows else (cols or 0)
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), ncols, tuple(x for r in rows for x in r))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int) -> "IntMatrix":
        return cls.from_rows([[c[i] for c in columns] for i in range(rows)], cols=len(columns))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def to_rows(self) -> list[list[int]]:
        return [list(self.entries[i * self.cols:(i + 1) * self.cols]) for i in range(self.rows)]

    def column(self, j: int) -> list[int]:
        return [self[i, j] for i in range(self.rows)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix.from_rows(
            [[self[i, j] for i in range(self.rows)] for j in range(self.cols)], cols=self.rows
        )

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        a, b = self.to_rows(), other.to_rows()
        out = [
            [sum(a[i][k] * b[k][j] for k in range(self.cols)) for j in range(other.cols)]
            for i in range(self.rows)
        ]
        return IntMatrix.from_rows(out, cols=other.cols)

    def apply(self, v: Sequence[int]) -> tuple[int, ...]:
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        return tuple(
            sum(self.entries[i * self.cols + k] * v[k] for k in range(self.cols))
            for i in range(self.rows)
        )

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        self._same_shape(other)
        return IntMatrix(self.rows, self.cols, tuple(x + y for x, y in zip(self.entries, other.entries)))

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        self._same_shape(other)
        return IntMatrix(self.rows, self.cols, tuple(x - y for x, y in zip(self.entries, other.entries)))

    def _same_shape(self, other: "IntMatrix") -> None:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.rows != other.rows:
            raise ValueError("row count mismatch")
        a, b = self.to_rows(), other.to_rows()
        return IntMatrix.from_rows([ra + rb for ra, rb in zip(a, b)], cols=self.cols + other.cols)

    def __pow__(self, k: int) -> "IntMatrix":
        if self.rows != self.cols or k < 0:
            raise ValueError("power needs a square matrix and k >= 0")
        out, base = IntMatrix.identity(self.rows), self
        while k:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out

    def det(self) -> int:
        """Bareiss fraction-free elimination."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        m = self.to_rows()
        sign, prev = 1, 1
        for k in range(n - 1):
            if m[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
                if swap is None:
                    return 0
                m[k], m[swap] = m[swap], m[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            prev = m[k][k]
        return sign * m[n - 1][n - 1]

    def is_diagonal(self) -> bool:
        return all(self[i, j] == 0 for i in range(self.rows) for j in range(self.cols) if i != j)


@dataclass(frozen=True, slots=True)
class SmithDecomposition:
    U: IntMatrix
    D: IntMatrix
    V: IntMatrix

    @property
    def diagonal(self) -> list[int]:
        return [self.D[i, i] for i in range(min(self.D.rows, self.D.cols))]


def smith_normal_form(A: IntMatrix) -> SmithDecomposition:
    """Return ``U, D, V`` with ``U @ A @ V == D`` and ``d_1 | d_2 | ...``.

    Pivots are taken of minimal absolute value among the remaining block.
    Diagonal entries are non-negative.
    """
    m, n = A.rows, A.cols
    a = A.to_rows()
    u = IntMatrix.identity(m).to_rows()
    v = IntMatrix.identity(n).to_rows()

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def add_row(src, dst, c):  # row_dst += c * row_src
        a[dst] = [x + c * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + c * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, c):
        for r in a:
            r[dst] += c * r[src]
        for r in v:
            r[dst] += c * r[src]

    for t in range(min(m, n)):
        while True:
            nonzero = [(abs(a[i][j]), i, j) for i in range(t, m) for j in range(t, n) if a[i][j]]
            if not nonzero:
                break
            _, pi, pj = min(nonzero)
            swap_rows(t, pi)
            swap_cols(t, pj)
            p = a[t][t]
            clean = True
            for i in range(t + 1, m):
                if a[i][t]:
                    add_row(t, i, -(a[i][t] // p))
                    clean &= a[i][t] == 0
            for j in range(t + 1, n):
                if a[t][j]:
                    add_col(t, j, -(a[t][j] // p))
                    clean &= a[t][j] == 0
            if not clean:
                continue
            bad = next(
                ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            # fold the offending row in so the next pass finds a smaller pivot
            add_row(bad[0], t, 1)
        if t < m and t < n and a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]

    return SmithDecomposition(
        IntMatrix.from_rows(u, cols=m),
        IntMatrix.from_rows(a, cols=n),
        IntMatrix.from_rows(v, cols=n),
    )


def invariant_factors(A: IntMatrix) -> list[int]:
    """Cokernel description of ``A`` as a list of ``rows`` cyclic orders.

    Entry 1 means a trivial factor, 0 a free ``Z`` summand.  The list has one
    entry per generator (row).
    """
    diag = smith_normal_form(A).diagonal
    return diag + [0] * (A.rows - len(diag))


def cokernel_order(A: IntMatrix) -> int:
    """Order of ``Z^rows / im A``; 0 when the cokernel is infinite."""
    out = 1
    for d in invariant_factors(A):
        out *= d
    return out


# ---------------------------------------------------------------------------
# Laurent polynomials in one variable t
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True, init=False)
class LaurentPoly:
    """``sum coeffs[i] * t**(low + i)`` with trimmed zero ends."""

    low: int
    coeffs: tuple[int, ...]

    def __init__(self, coeffs: Iterable[int] = (), low: int = 0) -> None:
        c = list(map(int, coeffs))
        while c and c[-1] == 0:
            c.pop()
        start = 0
        while start < len(c) and c[start] == 0:
            start += 1
        c = c[start:]
        object.__setattr__(self, "low", low + start if c else 0)
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def const(cls, c: int) -> "LaurentPoly":
        return cls((c,))

    @classmethod
    def monomial(cls, c: int, e: int) -> "LaurentPoly":
        return cls((c,), e)

    @classmethod
    def from_dict(cls, terms: dict[int, int]) -> "LaurentPoly":
        terms = {e: c for e, c in terms.items() if c}
        if not terms:
            return cls()
        lo, hi = min(terms), max(terms)
        return cls([terms.get(e, 0) for e in range(lo, hi + 1)], lo)

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def high(self) -> int:
        return self.low + len(self.coeffs) - 1

    def terms(self) -> dict[int, int]:
        return {self.low + i: c for i, c in enumerate(self.coeffs) if c}

    def __add__(self, other: "LaurentPoly | int") -> "LaurentPoly":
        other = _lp(other)
        out = self.terms()
        for e, c in other.terms().items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly.from_dict(out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly([-c for c in self.coeffs], self.low)

    def __sub__(self, other: "LaurentPoly | int") -> "LaurentPoly":
        return self + (-_lp(other))

    def __rsub__(self, other: int) -> "LaurentPoly":
        return _lp(other) - self

    def __mul__(self, other: "LaurentPoly | int") -> "LaurentPoly":
        other = _lp(other)
        if self.is_zero() or other.is_zero():
            return LaurentPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    out[i + j] += x * y
        return LaurentPoly(out, self.low + other.low)

    __rmul__ = __mul__

    def __call__(self, x: int | Fraction) -> int | Fraction:
        if self.is_zero():
            return 0
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc * Fraction(x) ** self.low if self.low else acc

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for e in range(self.high, self.low - 1, -1):
            c = self.coeffs[e - self.low]
            if not c:
                continue
            mono = "" if e == 0 else ("t" if e == 1 else f"t^{e}")
            if mono and abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}{'*' + mono if mono else ''}"
            parts.append(("-" if c < 0 else "+") + " " + body)
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]


def _lp(x: "LaurentPoly | int") -> LaurentPoly:
    return x if isinstance(x, LaurentPoly) else LaurentPoly.const(x)


def laurent_div_exact(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    """Exact quotient ``p / q`` in Z[t, 1/t]; raises InexactDivision otherwise."""
    if q.is_zero():
        raise ZeroDivisionError("division by the zero Laurent polynomial")
    if p.is_zero():
        return LaurentPoly()
    rem = list(p.coeffs)
    qc = q.coeffs
    lead = qc[-1]
    nq = len(qc)
    if len(rem) < nq:
        raise InexactDivision(f"{q} does not divide {p}")
    quot = [0] * (len(rem) - nq + 1)
    for k in range(len(quot) - 1, -1, -1):
        c, r = divmod(rem[k + nq - 1], lead)
        if r:
            raise InexactDivision(f"{q} does not divide {p}")
        quot[k] = c
        if c:
            for j, y in enumerate(qc):
                rem[k + j] -= c * y
    if any(rem):
        raise InexactDivision(f"{q} does not divide {p}")
    return LaurentPoly(quot, p.low - q.low)


class LaurentMatrix:
    """Square matrix with LaurentPoly entries (Burau carrier)."""

    __slots__ = ("n", "rows")

    def __init__(self, rows: Sequence[Sequence[LaurentPoly | int]]) -> None:
        self.n = len(rows)
        self.rows = tuple(tuple(_lp(x) for x in r) for r in rows)
        if any(len(r) != self.n for r in self.rows):
            raise ValueError("LaurentMatrix must be square")

    @classmethod
    def identity(cls, n: int) -> "LaurentMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    def __getitem__(self, ij: tuple[int, int]) -> LaurentPoly:
        return self.rows[ij[0]][ij[1]]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, LaurentMatrix) and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __matmul__(self, other: "LaurentMatrix") -> "LaurentMatrix":
        n = self.n
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = LaurentPoly()
                for k in range(n):
                    if not self.rows[i][k].is_zero() and not other.rows[k][j].is_zero():
                        acc = acc + self.rows[i][k] * other.rows[k][j]
                row.append(acc)
            out.append(row)
        return LaurentMatrix(out)

    def __sub__(self, other: "LaurentMatrix") -> "LaurentMatrix":
        return LaurentMatrix(
            [[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)]
        )

    def det(self) -> LaurentPoly:
        """Cofactor expansion along the first row; fine for the <= 4x4 sizes used here."""
        n = self.n
        if n == 0:
            return LaurentPoly.const(1)
        if n == 1:
            return self.rows[0][0]
        total = LaurentPoly()
        for j in range(n):
            if self.rows[0][j].is_zero():
                continue
            minor = LaurentMatrix([r[:j] + r[j + 1:] for r in self.rows[1:]])
            term = self.rows[0][j] * minor.det()
            total = total + term if j % 2 == 0 else total - term
        return total

    def __repr__(self) -> str:
        return "LaurentMatrix([" + ", ".join("[" + ", ".join(map(str, r)) + "]" for r in self.rows) + "])"
