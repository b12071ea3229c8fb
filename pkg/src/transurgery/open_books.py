"""Open books on marked surfaces: homology action of Dehn twist words, first
homology of the closed manifold (with optional binding fillings), and the
FDTC / contact-status rules for the family ``psi_{n,k1,k2}`` on the genus one,
two boundary surface ``T``.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Mapping, Sequence

from .exact import INF, IntMatrix, Rational, invariant_factors
from .twists import (
    HypothesisError,
    TwistProgram,
    realizable_sequence,
    reduce_to_meridian,
    single_step_program,
)

Vector = tuple[int, ...]


# ---------------------------------------------------------------------------
# Surfaces
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Arc:
    start: str
    end: str
    pairs: Mapping[str, int]


@dataclass(frozen=True)
class MarkedSurface:
    """Surface with named curves (homology classes) and arcs between boundaries.

    ``pairing`` is the intersection form ``J`` on ``H_1(S)`` in the curve
    basis: ``x . y = x^T J y``.  ``parallel`` maps each boundary component to
    the name of a boundary-parallel curve.
    """

    name: str
    genus: int
    boundary: tuple[str, ...]
    curves: Mapping[str, Vector]
    arcs: Mapping[str, Arc]
    pairing: IntMatrix
    parallel: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        r = self.h1_rank
        J = self.pairing
        if (J.rows, J.cols) != (r, r):
            raise ValueError(f"pairing must be {r}x{r}")
        if J.transpose() != IntMatrix(r, r, tuple(-x for x in J.entries)):
            raise ValueError("pairing is not skew-symmetric")
        for name, v in self.curves.items():
            if len(v) != r:
                raise ValueError(f"class of {name!r} has length {len(v)}, expected {r}")
        for b, c in self.parallel.items():
            if b not in self.boundary:
                raise ValueError(f"unknown boundary {b!r}")
            if c not in self.curves:
                raise ValueError(f"unknown curve {c!r}")
            if any(J.apply(self.curves[c])):
                raise ValueError(f"boundary-parallel curve {c!r} is not in the radical")
        for name, arc in self.arcs.items():
            if arc.start not in self.boundary or arc.end not in self.boundary:
                raise ValueError(f"arc {name!r} has an unknown endpoint")
            for c in arc.pairs:
                if c not in self.curves:
                    raise ValueError(f"arc {name!r} pairs with unknown curve {c!r}")
            self.arc_functional(name)  # raises if inconsistent

    @property
    def h1_rank(self) -> int:
        return 2 * self.genus + len(self.boundary) - 1

    def dot(self, x: Sequence[int], y: Sequence[int]) -> int:
        return sum(xi * yi for xi, yi in zip(x, self.pairing.apply(y)))

    def curve_class(self, name: str) -> Vector:
        try:
            return self.curves[name]
        except KeyError:
            raise KeyError(f"unknown curve {name!r} on {self.name}") from None

    def boundary_class(self, b: str) -> Vector:
        if b not in self.parallel:
            return (0,) * self.h1_rank
        return self.curves[self.parallel[b]]

    def radical(self) -> list[Vector]:
        """Integer basis of ``ker J`` (via Smith form of ``J``)."""
        from .exact import smith_normal_form

        dec = smith_normal_form(self.pairing)
        rank = sum(1 for d in dec.diagonal if d)
        return [tuple(dec.V.column(j)) for j in range(rank, self.h1_rank)]

    def arc_functional(self, name: str) -> Vector:
        """Pairing of the arc with each basis class, solved from its curve pairings."""
        arc = self.arcs[name]
        rows = [list(self.curves[c]) for c in arc.pairs]
        rhs = [arc.pairs[c] for c in arc.pairs]
        sol = _solve_rational(rows, rhs, self.h1_rank)
        if sol is None or any(x.denominator != 1 for x in sol):
            raise ValueError(f"arc {name!r}: pairings do not determine an integral functional")
        return tuple(int(x) for x in sol)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "genus": self.genus,
            "boundary": list(self.boundary),
            "curves": {k: {"class": list(v)} for k, v in self.curves.items()},
            "arcs": {
                k: {"from": a.start, "to": a.end, "pairs": dict(a.pairs)} for k, a in self.arcs.items()
            },
            "parallel": dict(self.parallel),
            "pairing": self.pairing.to_rows(),
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "MarkedSurface":
        pairing = data["pairing"]
        rank = len(pairing)
        return cls(
            name=data["name"],
            genus=int(data["genus"]),
            boundary=tuple(data["boundary"]),
            curves={k: tuple(int(x) for x in v["class"]) for k, v in data["curves"].items()},
            arcs={
                k: Arc(v["from"], v["to"], {c: int(x) for c, x in v["pairs"].items()})
                for k, v in data.get("arcs", {}).items()
            },
            pairing=IntMatrix.from_rows(pairing, cols=rank),
            parallel=dict(data.get("parallel", {})),
        )

    @classmethod
    def load(cls, path: str | Path) -> "MarkedSurface":
        return cls.from_dict(json.loads(Path(path).read_text()))


def _solve_rational(rows: list[list[int]], rhs: list[int], n: int) -> list[Fraction] | None:
    """Unique solution of ``rows @ x = rhs`` or None if inconsistent/underdetermined."""
    m = [[Fraction(x) for x in r] + [Fraction(b)] for r, b in zip(rows, rhs)]
    piv_cols = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        m[r] = [x / m[r][c] for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        piv_cols.append(c)
        r += 1
    if any(all(x == 0 for x in row[:-1]) and row[-1] != 0 for row in m):
        return None
    if len(piv_cols) < n:
        return None
    sol = [Fraction(0)] * n
    for i, c in enumerate(piv_cols):
        sol[c] = m[i][-1]
    return sol


def _load_builtin(filename: str) -> MarkedSurface:
    text = resources.files("transurgery.data").joinpath(filename).read_text()
    return MarkedSurface.from_dict(json.loads(text))


def builtin_surfaces() -> dict[str, MarkedSurface]:
    return {
        "annulus": _load_builtin("annulus.json"),
        "T": _load_builtin("T.json"),
        "T_capped": _load_builtin("T_capped.json"),
    }


# ---------------------------------------------------------------------------
# Monodromy words
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MonodromyWord:
    """Dehn twist word; the rightmost letter acts first."""

    letters: tuple[tuple[str, int], ...]

    def __post_init__(self) -> None:
        for name, e in self.letters:
            if e == 0:
                raise ValueError(f"zero exponent on {name!r}")

    @classmethod
    def parse(cls, text: str, surface: MarkedSurface | None = None) -> "MonodromyWord":
        letters = []
        for tok in text.split():
            m = re.fullmatch(r"([A-Za-z_][\w]*)(?:\^([+-]?\d+))?", tok)
            if not m:
                raise ValueError(f"bad token {tok!r}")
            name, e = m.group(1), int(m.group(2)) if m.group(2) is not None else 1
            if e == 0:
                raise ValueError(f"zero exponent in {tok!r}")
            if surface is not None and name not in surface.curves:
                raise KeyError(f"unknown curve {name!r} on {surface.name}")
            letters.append((name, e))
        return cls(tuple(letters))

    def __str__(self) -> str:
        return " ".join(n if e == 1 else f"{n}^{e}" for n, e in self.letters)

    def __mul__(self, other: "MonodromyWord") -> "MonodromyWord":
        return MonodromyWord(self.letters + other.letters)

    def __pow__(self, k: int) -> "MonodromyWord":
        if k < 0:
            return self.inverse() ** (-k)
        return MonodromyWord(self.letters * k)

    def inverse(self) -> "MonodromyWord":
        return MonodromyWord(tuple((n, -e) for n, e in reversed(self.letters)))

    def expanded(self) -> list[tuple[str, int]]:
        """Single-twist letters ``(name, +-1)``, same order."""
        out = []
        for n, e in self.letters:
            out.extend([(n, 1 if e > 0 else -1)] * abs(e))
        return out

    def __len__(self) -> int:
        return len(self.letters)


def word(*letters: tuple[str, int]) -> MonodromyWord:
    return MonodromyWord(tuple((n, e) for n, e in letters if e != 0))


def transvection_matrix(S: MarkedSurface, curve: str, exponent: int) -> IntMatrix:
    """Homology action of ``D_curve^exponent``: ``x -> x + exponent (x . c) c``."""
    c = S.curve_class(curve)
    r = S.h1_rank
    cols = []
    for j in range(r):
        e = [int(i == j) for i in range(r)]
        k = exponent * S.dot(e, c)
        cols.append([e[i] + k * c[i] for i in range(r)])
    return IntMatrix.from_columns(cols, r)


def word_action(S: MarkedSurface, w: MonodromyWord) -> IntMatrix:
    out = IntMatrix.identity(S.h1_rank)
    for name, e in w.letters:
        out = out @ transvection_matrix(S, name, e)
    return out


def arc_correction(S: MarkedSurface, arc: str, w: MonodromyWord) -> Vector:
    """``[arc] - [phi(arc)]`` as a class in ``H_1(S)``."""
    if arc not in S.arcs:
        raise KeyError(f"unknown arc {arc!r} on {S.name}")
    r = S.h1_rank
    u = list(S.arc_functional(arc))
    total = [0] * r
    for name, eps in reversed(w.expanded()):
        c = S.curve_class(name)
        uc = sum(ui * ci for ui, ci in zip(u, c))
        if not uc:
            continue
        row = [S.dot(c, [int(i == j) for i in range(r)]) for j in range(r)]
        for i in range(r):
            total[i] -= eps * uc * c[i]
            u[i] += eps * uc * row[i]
    return tuple(total)


# ---------------------------------------------------------------------------
# Homology of the closed manifold
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HomologyReport:
    invariant_factors: tuple[int, ...]
    order: int
    presentation_matrix: IntMatrix

    @property
    def betti(self) -> int:
        return sum(1 for d in self.invariant_factors if d == 0)

    def __str__(self) -> str:
        if not self.invariant_factors:
            return "0"
        return " + ".join("Z" if d == 0 else f"Z/{d}" for d in self.invariant_factors)

    def to_dict(self) -> dict:
        return {
            "invariant_factors": list(self.invariant_factors),
            "order": self.order,
            "group": str(self),
        }


def _arc_paths(S: MarkedSurface, ref: str) -> dict[str, list[tuple[str, int]]]:
    """For each boundary, a chain of (arc, +-1) leading from ``ref`` to it."""
    paths = {ref: []}
    frontier = [ref]
    while frontier:
        b = frontier.pop()
        for name, arc in S.arcs.items():
            for here, there, sign in ((arc.start, arc.end, 1), (arc.end, arc.start, -1)):
                if here == b and there not in paths:
                    paths[there] = paths[b] + [(name, sign)]
                    frontier.append(there)
    return paths


def open_book_homology(
    S: MarkedSurface,
    w: MonodromyWord,
    fillings: Mapping[str, Rational] | None = None,
    reference: str | None = None,
) -> HomologyReport:
    """``H_1`` of the open book ``(S, w)`` with binding components Dehn filled.

    ``fillings`` maps boundary names to page-framed slopes ``p/q``; missing
    entries default to the meridian ``1/0`` (the ordinary open book).  Slope
    ``0`` fills along the page boundary, which is capping off.

    Generators: a basis of ``H_1(S)`` and the circle direction ``t``.
    Relations: ``phi_* - id`` and, per boundary, ``p (t + beta_i) + q [d_i]``.
    """
    fillings = dict(fillings or {})
    for b in fillings:
        if b not in S.boundary:
            raise KeyError(f"unknown boundary {b!r}")
    ref = reference or S.boundary[0]
    paths = _arc_paths(S, ref)
    missing = [b for b in S.boundary if b not in paths]
    if missing:
        raise ValueError(f"no arc chain from {ref} to {missing}")

    r = S.h1_rank
    M = word_action(S, w)
    cols: list[list[int]] = []
    for j in range(r):
        cols.append([M[i, j] - int(i == j) for i in range(r)] + [0])
    for b in S.boundary:
        beta = [0] * r
        for arc, sign in paths[b]:
            corr = arc_correction(S, arc, w)
            beta = [x + sign * y for x, y in zip(beta, corr)]
        slope = fillings.get(b, INF)
        p, q = slope.vector()
        d = S.boundary_class(b)
        cols.append([p * beta[i] + q * d[i] for i in range(r)] + [p])
    A = IntMatrix.from_columns(cols, r + 1)
    factors = tuple(f for f in invariant_factors(A) if f != 1)
    order = 0 if any(f == 0 for f in factors) else _prod(factors)
    return HomologyReport(factors, order, A)


def _prod(xs) -> int:
    out = 1
    for x in xs:
        out *= x
    return out


# ---------------------------------------------------------------------------
# The family psi_{n,k1,k2}
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FamilyParams:
    n: int
    k1: int
    k2: int


PSI = word(("a", 1), ("b", -1), ("c", 1), ("d", -1))

# Capping B1 of T: curves of T -> curves of the capped surface (None = trivial).
CAP_B1_TABLE: dict[str, str | None] = {
    "a": "x",
    "c": "x",
    "b": "y",
    "d": "delta",
    "delta1": None,
    "delta2": "delta",
}


def family_open_book(p: FamilyParams) -> tuple[MarkedSurface, MonodromyWord]:
    if p.n < 1:
        raise HypothesisError("n must be >= 1")
    T = builtin_surfaces()["T"]
    return T, word(("delta1", p.k1), ("delta2", p.k2)) * PSI ** p.n


def cap_off_family(p: FamilyParams, boundary: str = "B1") -> tuple[MarkedSurface, MonodromyWord]:
    """Monodromy after capping ``B1``: ``delta^(k2-n) (x^2 y^-1)^n``."""
    if boundary != "B1":
        raise HypothesisError("capping data is only available for boundary B1 of T")
    if p.n < 1:
        raise HypothesisError("n must be >= 1")
    That = builtin_surfaces()["T_capped"]
    return That, word(("delta", p.k2 - p.n)) * word(("x", 2), ("y", -1)) ** p.n


def substitute_cap(w: MonodromyWord, table: Mapping[str, str | None] = CAP_B1_TABLE) -> MonodromyWord:
    """Apply a curve substitution letter by letter, dropping trivial curves."""
    out = []
    for name, e in w.letters:
        new = table[name]
        if new is None:
            continue
        if out and out[-1][0] == new:
            out[-1] = (new, out[-1][1] + e)
            if out[-1][1] == 0:
                out.pop()
        else:
            out.append((new, e))
    return MonodromyWord(tuple(out))


def family_fdtc(p: FamilyParams, capped: bool = False) -> list[Fraction]:
    if capped:
        return [Fraction(p.k2 - p.n)]
    return [Fraction(p.k1), Fraction(p.k2)]


class Contact(str, Enum):
    UNIVERSALLY_TIGHT = "UniversallyTight"
    OVERTWISTED = "Overtwisted"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class ContactStatus:
    status: Contact
    fdtc_per_boundary: tuple[Fraction, ...]
    citations: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {
            "status": self.status.value,
            "fdtc": [str(x) for x in self.fdtc_per_boundary],
            "citations": list(self.citations),
        }


CITE_UT = "FDTC >= 2/(attracting fixed points) on every boundary: universally tight (Colin-Honda)"
CITE_OT = "some FDTC <= 0: not right-veering, hence overtwisted (Honda-Kazez-Matic)"


def family_status(
    p: FamilyParams,
    capped: bool = False,
    fixed_points_per_boundary: int = 1,
    extended: bool = False,
) -> ContactStatus:
    """Contact status of ``(T, psi_{n,k1,k2})`` or of its B1-capped book.

    By default a verdict is issued only where the construction claims one:
    universal tightness for the uncapped book, overtwistedness for the capped
    book.  ``extended=True`` applies both FDTC rules to both books.
    """
    if fixed_points_per_boundary < 1:
        raise ValueError("need at least one attracting fixed point")
    fdtc = tuple(family_fdtc(p, capped))
    threshold = Fraction(2, fixed_points_per_boundary)
    if (extended or not capped) and all(c >= threshold for c in fdtc):
        return ContactStatus(Contact.UNIVERSALLY_TIGHT, fdtc, (CITE_UT,))
    if (extended or capped) and any(c <= 0 for c in fdtc):
        return ContactStatus(Contact.OVERTWISTED, fdtc, (CITE_OT,))
    return ContactStatus(Contact.UNKNOWN, fdtc)


# ---------------------------------------------------------------------------
# Admissible surgeries on the binding component B1
# ---------------------------------------------------------------------------


class Tightness(str, Enum):
    TIGHT = "Tight"
    OVERTWISTED = "Overtwisted"
    UNKNOWN = "Unknown"
    NOT_ADMISSIBLE = "NotAdmissible"


@dataclass(frozen=True)
class SlopeEntry:
    slope: Rational
    status: Tightness
    reason: str
    witness: TwistProgram | None = None
    witness_local: bool | None = None

    def to_dict(self) -> dict:
        return {
            "slope": str(self.slope),
            "status": self.status.value,
            "reason": self.reason,
            "witness": self.witness.to_dict() if self.witness else None,
            "witness_local": self.witness_local,
        }


@dataclass(frozen=True)
class TightSlopeReport:
    """Tight slope set of the binding component ``C1`` of ``(T, psi_{n,k1,k2})``.

    Slopes are page framed; the binding has a standard neighborhood of
    boundary slope ``a`` in ``(0, 1)``.
    """

    params: FamilyParams
    a: Rational

    # the structure established below: tight on [-inf, 0) and at a sequence
    # accumulating at 0 from above, overtwisted at 0
    contains_nonclosed_set: bool = True
    disconnected: bool = True

    def classify(self, s: Rational) -> SlopeEntry:
        a = self.a
        if s.is_inf:
            return SlopeEntry(s, Tightness.TIGHT, "trivial surgery; ambient structure is universally tight")
        if not s < a:
            return SlopeEntry(s, Tightness.NOT_ADMISSIBLE, f"s >= a = {a}")
        zero = Rational(0)
        if s < zero:
            prog = reduce_to_meridian(s, 0, a)
            return SlopeEntry(s, Tightness.TIGHT, "Legendrian surgery in the neighborhood", prog, prog.verified)
        if s == zero:
            return SlopeEntry(s, Tightness.OVERTWISTED, "0-surgery on the binding is capping off; capped book has FDTC k2 - n <= 0")
        from .twists import _match_realizable

        k = _match_realizable(s, 0)
        if k is not None:
            _, leaf = realizable_sequence(0, k)
            prog = single_step_program(s, leaf, 0, a)
            local = leaf < a
            reason = f"single Legendrian surgery on a leaf of slope {leaf} (k={k})"
            if not local:
                reason += "; leaf lies outside S_a, witness needs the neighborhood thickened past it"
            return SlopeEntry(s, Tightness.TIGHT, reason, prog, local)
        return SlopeEntry(s, Tightness.UNKNOWN, "no applicable result")

    def to_dict(self, samples: Sequence[Rational] = ()) -> dict:
        return {
            "params": {"n": self.params.n, "k1": self.params.k1, "k2": self.params.k2},
            "a": str(self.a),
            "contains_nonclosed_set": self.contains_nonclosed_set,
            "disconnected": self.disconnected,
            "entries": [self.classify(s).to_dict() for s in samples],
        }


def binding_tight_slope_report(p: FamilyParams, a: Rational) -> TightSlopeReport:
    """Requires ``2 <= k1``, ``2 <= k2 <= n`` and ``0 < a < 1``."""
    if p.k1 < 2:
        raise HypothesisError("need k1 >= 2 for universal tightness of the ambient book")
    if p.k2 < 2:
        raise HypothesisError("need k2 >= 2 for universal tightness of the ambient book")
    if p.k2 > p.n:
        raise HypothesisError("need k2 <= n so that capping off B1 is overtwisted")
    if a.is_inf or not Rational(0) < a < Rational(1):
        raise HypothesisError(f"binding neighborhood slope a = {a} must lie in (0, 1)")
    return TightSlopeReport(p, a)
