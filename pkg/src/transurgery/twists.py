"""Contact (+-1)-surgery on leaves of a thickened torus, acting on slopes.

Conventions:

* contact +1 surgery on a leaf of slope ``r/s`` acts on ``(p, q)`` by
  ``[[1 + r*s, -r**2], [s**2, 1 - r*s]]`` (one negative Dehn twist);
* contact -1 surgery (Legendrian surgery) acts by the inverse matrix
  (one positive Dehn twist).

With this choice the twist along ``1/k`` sends ``(k-1)/k**2`` to the meridian.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from math import isqrt
from typing import Iterable

from .exact import INF, Rational
from .slopes import Slope, SlopeInterval, SlopeMatrix, apply_matrix, interval_contains, shear

__all__ = [
    "TwistStep",
    "TwistProgram",
    "Verdict",
    "SlopeVerdict",
    "BergeGabaiWitness",
    "BergeGabaiResult",
    "twist_matrix",
    "twist_once",
    "ding_geiges_cancel",
    "reduce_to_meridian",
    "realizable_sequence",
    "excluded_sequences",
    "berge_gabai_screen",
    "classify_surgery_slope",
    "legendrian_as_transverse_slope",
    "uniform_thick_tight_slopes",
    "HypothesisError",
]


class HypothesisError(ValueError):
    """Input violates the hypothesis of the construction being requested."""


def _check_sign(contact_sign: int) -> None:
    if contact_sign not in (1, -1):
        raise ValueError(f"contact sign must be +1 or -1, got {contact_sign}")


def twist_matrix(along: Slope, contact_sign: int) -> SlopeMatrix:
    _check_sign(contact_sign)
    r, s = along.vector()
    plus = SlopeMatrix(1 + r * s, -r * r, s * s, 1 - r * s)
    return plus if contact_sign == 1 else plus.inverse()


def twist_once(x: Slope, along: Slope, contact_sign: int) -> Slope:
    return apply_matrix(twist_matrix(along, contact_sign), x)


def ding_geiges_cancel(x: Slope, along: Slope) -> Slope:
    """+1 then -1 surgery along the same leaf slope; always returns ``x``."""
    y = twist_once(twist_once(x, along, 1), along, -1)
    if y != x:  # pragma: no cover - would mean the matrices are not inverse
        raise AssertionError(f"+1/-1 pair along {along} moved {x} to {y}")
    return y


# ---------------------------------------------------------------------------
# Twist programs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TwistStep:
    along: Slope
    contact_sign: int
    count: int = 1

    def __post_init__(self) -> None:
        _check_sign(self.contact_sign)
        if self.count < 1:
            raise ValueError("count must be >= 1")


@dataclass(frozen=True)
class TwistProgram:
    """Sequence of surgeries on leaves, with the replayed slope trace.

    ``outer_n`` and ``outer_a`` describe the neighborhood: its boundary slope
    ``a`` lies in ``(n, n + 1)``.
    """

    steps: tuple[TwistStep, ...]
    initial_inner_slope: Slope
    outer_n: int
    outer_a: Slope
    replay_trace: tuple[Slope, ...]
    verified: bool

    @property
    def outer_slope_interval(self) -> SlopeInterval:
        return SlopeInterval(Rational(self.outer_n), Rational(self.outer_n + 1))

    @property
    def total_twists(self) -> int:
        return sum(st.count for st in self.steps)

    def legendrian_view(self) -> tuple[TwistStep, ...]:
        """The same program read backwards with the signs flipped.

        Going from the smaller neighborhood to the original one, this is the
        sequence of Legendrian (-1) surgeries.
        """
        return tuple(TwistStep(st.along, -st.contact_sign, st.count) for st in reversed(self.steps))

    def to_dict(self) -> dict:
        return {
            "initial": str(self.initial_inner_slope),
            "outer": {"n": self.outer_n, "a": str(self.outer_a)},
            "steps": [
                {"along": str(st.along), "contact_sign": st.contact_sign, "count": st.count}
                for st in self.steps
            ],
            "trace": [str(x) for x in self.replay_trace],
            "verified": self.verified,
        }

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_dict(cls, data: dict) -> "TwistProgram":
        steps = tuple(
            TwistStep(Rational.parse(st["along"]), int(st["contact_sign"]), int(st["count"]))
            for st in data["steps"]
        )
        initial = Rational.parse(data["initial"])
        n = int(data["outer"]["n"])
        a = Rational.parse(data["outer"]["a"])
        trace, ok = replay(initial, steps, a)
        claimed = [Rational.parse(s) for s in data.get("trace", [])]
        if claimed and claimed != list(trace):
            ok = False
        return cls(steps, initial, n, a, trace, ok and bool(data.get("verified", True)))


def replay(initial: Slope, steps: Iterable[TwistStep], a: Slope) -> tuple[tuple[Slope, ...], bool]:
    """Replay ``steps`` one twist at a time.

    Returns the trace and whether every leaf slope sat strictly inside the
    arc from the current inner slope up to ``a`` and the trace ended at ``inf``.
    """
    cur = initial
    trace = [cur]
    ok = True
    for st in steps:
        for _ in range(st.count):
            if cur.is_inf or not interval_contains(SlopeInterval(cur, a), st.along):
                ok = False
            cur = twist_once(cur, st.along, st.contact_sign)
            trace.append(cur)
    return tuple(trace), ok and cur.is_inf


def _check_neighborhood(n: int, a: Slope) -> None:
    if a.is_inf or not (Rational(n) < a < Rational(n + 1)):
        raise HypothesisError(f"boundary slope a = {a} is not in ({n}, {n + 1})")


def reduce_to_meridian(s: Slope, n: int, a: Slope) -> TwistProgram:
    """Contact +1 surgeries on leaves taking the inner slope ``s`` to ``inf``.

    Requires ``n < a < n + 1`` and finite ``s < n``.  The work is done after
    shearing so that ``n = -1``; leaf slopes are sheared back at the end.
    """
    _check_neighborhood(n, a)
    if s.is_inf:
        raise HypothesisError("inner slope must be finite")
    if not s < Rational(n):
        raise HypothesisError(f"need s < n, got s = {s}, n = {n}")

    shift = -(n + 1)
    p, q = shear(s, shift).vector()  # now p/q < -1
    raw: list[int] = []  # leaf slopes (integers) in sheared coordinates, one per twist
    while q != 0:
        if p % q == 0:
            # integer slope -m-1: one twist along -m reaches the meridian
            raw.append(p // q + 1)
            break
        m = -(p // q) - 1  # -m-1 < p/q < -m
        # r_k = -m - 1/(k+1) has primitive vector v_k = (-m(k+1) - 1, k+1)
        # p/q in [r_k, r_{k+1}]  <=>  k+1 <= q/(-m q - p) <= k+2
        gap = -m * q - p  # > 0
        k = -(-q // gap) - 2  # smallest k with r_{k+1} >= p/q; ties give x = 0
        vk = (-m * (k + 1) - 1, k + 1)
        vk1 = (-m * (k + 2) - 1, k + 2)
        # (p, q) = x*vk + y*vk1; det(vk, vk1) = -1
        det = vk[0] * vk1[1] - vk1[0] * vk[1]
        x = (p * vk1[1] - vk1[0] * q) // det
        y = (vk[0] * q - p * vk[1]) // det
        assert x >= 0 and y >= 0 and x * vk[0] + y * vk1[0] == p
        raw.extend([-m] * (k + 1))
        # k+1 twists along -m send v_k -> inf and v_{k+1} -> v_0 = (-m-1, 1)
        p, q = y * (-m - 1) - x, y
        if q < 0:
            p, q = -p, -q

    leaves = [Rational(r - shift) for r in raw]
    steps: list[TwistStep] = []
    for leaf in leaves:
        if steps and steps[-1].along == leaf:
            steps[-1] = TwistStep(leaf, 1, steps[-1].count + 1)
        else:
            steps.append(TwistStep(leaf, 1, 1))
    trace, ok = replay(s, steps, a)
    return TwistProgram(tuple(steps), s, n, a, trace, ok)


def single_step_program(s: Slope, leaf: Slope, n: int, a: Slope) -> TwistProgram:
    steps = (TwistStep(leaf, 1, 1),)
    trace, ok = replay(s, steps, a)
    return TwistProgram(steps, s, n, a, trace, ok)


# ---------------------------------------------------------------------------
# Slope sequences
# ---------------------------------------------------------------------------


def realizable_sequence(n: int, k: int) -> tuple[Slope, Slope]:
    """``(n + (k-1)/k**2, n + 1/k)``: slope and the leaf whose +1 surgery kills it."""
    if k < 2:
        raise ValueError("k must be >= 2 (k = 1 gives the integer n itself)")
    return Rational(n * k * k + k - 1, k * k), Rational(n * k + 1, k)


def excluded_sequences(n: int, k: int) -> tuple[Slope, Slope]:
    """``(n + 1 - 1/(k+1), n + 1/(k+1))``; the descending one is excepted at k = 3."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return ascending_excluded(n, k), Rational((k + 1) * n + 1, k + 1)


def ascending_excluded(n: int, k: int) -> Slope:
    """``(k(n+1) + n)/(k+1)``, defined for every ``k >= 0`` (``k = 0`` gives ``n``)."""
    if k < 0:
        raise ValueError("k must be >= 0")
    return Rational(k * (n + 1) + n, k + 1)


DESCENDING_EXCEPTION_K = 3


@dataclass(frozen=True)
class BergeGabaiWitness:
    A: int
    B: int
    b: int
    delta: int


@dataclass(frozen=True)
class BergeGabaiResult:
    k: int
    witnesses: tuple[BergeGabaiWitness, ...]
    unstated_conditions: bool = False

    @property
    def passes(self) -> bool:
        return bool(self.witnesses)

    def __str__(self) -> str:
        if not self.passes:
            return f"FailsScreen(k={self.k})"
        ws = ", ".join(f"(A={w.A}, B={w.B}, b={w.b}, delta={w.delta})" for w in self.witnesses)
        tag = " [unstated-conditions]" if self.unstated_conditions else ""
        return f"PassesScreen(k={self.k}: {ws}){tag}"


def berge_gabai_screen(k: int) -> BergeGabaiResult:
    """Integer solutions of ``k + 1 = B**2``, ``-k = b*B + delta*A``.

    Constraints used: ``0 < 2A <= B``, ``gcd(A, B) = 1``, ``delta = +-1``.
    Berge's classification imposes further conditions that are not encoded,
    so any pass other than ``k = 3`` carries ``unstated_conditions``.
    """
    from math import gcd

    if k < 1:
        raise ValueError("k must be >= 1")
    B = isqrt(k + 1)
    if B * B != k + 1:
        return BergeGabaiResult(k, ())
    found = []
    for A in range(1, B // 2 + 1):
        if gcd(A, B) != 1:
            continue
        for delta in (1, -1):
            num = -k - delta * A
            if num % B == 0:
                found.append(BergeGabaiWitness(A, B, num // B, delta))
    return BergeGabaiResult(k, tuple(found), unstated_conditions=bool(found) and k != 3)


# ---------------------------------------------------------------------------
# Classification of a surgery slope against a standard neighborhood
# ---------------------------------------------------------------------------


class Verdict(str, Enum):
    LEGENDRIAN_REALIZABLE = "LegendrianRealizable"
    NOT_LOCALLY_REALIZABLE = "NotLocallyRealizable"
    OVERTWISTED_RESULT = "OvertwistedResult"
    UNKNOWN = "Unknown"


CITE_SIMPLE = "negative slopes: Legendrian surgery on a link in the neighborhood (reduction program)"
CITE_EXTRA = "slope n + (k-1)/k^2: single contact +1 surgery on a leaf of slope n + 1/k"
CITE_ASCENDING = "ascending a_k: unique Stein filling of S^3"
CITE_DESCENDING = "descending d_k (k != 3): solid-torus surgery classification (Berge-Gabai)"
CITE_D3 = "descending d_3: realizable only semi-locally, after thickening to slope n + 1/2"
CITE_SEMILOCAL = "leaf slope lies outside the neighborhood; witness needs a thickening"


@dataclass(frozen=True)
class SlopeVerdict:
    slope: Slope
    verdict: Verdict
    witness: TwistProgram | None = None
    reason: str | None = None
    citations: tuple[str, ...] = field(default_factory=tuple)
    exception: bool = False

    def to_dict(self) -> dict:
        return {
            "slope": str(self.slope),
            "verdict": self.verdict.value,
            "reason": self.reason,
            "exception": self.exception,
            "witness": self.witness.to_dict() if self.witness else None,
            "citations": list(self.citations),
        }


def _match_realizable(s: Slope, n: int) -> int | None:
    """k >= 2 with ``s == n + (k-1)/k**2``, or None."""
    if s.is_inf:
        return None
    f = s.to_fraction() - n
    if not 0 < f < 1 or f.numerator == 0:
        return None
    # (k-1)/k^2 is reduced, so the denominator is k^2
    k = isqrt(f.denominator)
    if k >= 2 and k * k == f.denominator and f.numerator == k - 1:
        return k
    return None


def _match_descending(s: Slope, n: int) -> int | None:
    if s.is_inf:
        return None
    f = s.to_fraction() - n
    if f.numerator == 1 and f.denominator >= 2:
        return f.denominator - 1
    return None


def _match_ascending(s: Slope, n: int) -> int | None:
    if s.is_inf:
        return None
    f = (n + 1) - s.to_fraction()
    if f.numerator == 1 and f.denominator >= 1:
        return f.denominator - 1
    return None


def classify_surgery_slope(s: Slope, n: int, a: Slope) -> SlopeVerdict:
    """Can admissible transverse ``s``-surgery be done by Legendrian surgery in ``S_a``?

    ``inf`` (the trivial surgery) is realizable by the empty link.  The verdict
    is ``Unknown`` whenever no proved statement applies.
    """
    _check_neighborhood(n, a)
    if s.is_inf:
        prog = TwistProgram((), s, n, a, (s,), True)
        return SlopeVerdict(s, Verdict.LEGENDRIAN_REALIZABLE, prog, "trivial surgery", ())
    if not s < a:
        raise HypothesisError(f"s = {s} is not admissible: need s < a = {a}")

    if s < Rational(n):
        prog = reduce_to_meridian(s, n, a)
        if not prog.verified:  # pragma: no cover
            raise AssertionError("reduction program failed replay")
        return SlopeVerdict(s, Verdict.LEGENDRIAN_REALIZABLE, prog, "s < n", (CITE_SIMPLE,))

    k = _match_realizable(s, n)
    if k is not None:
        _, leaf = realizable_sequence(n, k)
        prog = single_step_program(s, leaf, n, a)
        if prog.verified:
            # k = 2 is also d_3; with n + 1/2 < a the leaf is already inside S_a
            cites = (CITE_EXTRA, CITE_D3) if k == 2 else (CITE_EXTRA,)
            return SlopeVerdict(
                s, Verdict.LEGENDRIAN_REALIZABLE, prog, f"realizable k={k}", cites, exception=k == 2
            )
        if k != 2:
            # leaf n + 1/k is not below a: only a semi-local witness exists
            return SlopeVerdict(
                s, Verdict.UNKNOWN, prog, f"realizable k={k} needs thickening", (CITE_EXTRA, CITE_SEMILOCAL)
            )
        # k = 2 coincides with descending d_3; handled below

    j = _match_ascending(s, n)
    if j is not None:
        return SlopeVerdict(s, Verdict.NOT_LOCALLY_REALIZABLE, None, f"ascending k={j}", (CITE_ASCENDING,))

    j = _match_descending(s, n)
    if j is not None:
        if j == DESCENDING_EXCEPTION_K:
            return SlopeVerdict(
                s, Verdict.UNKNOWN, None, "descending k=3 exception", (CITE_D3,), exception=True
            )
        return SlopeVerdict(s, Verdict.NOT_LOCALLY_REALIZABLE, None, f"descending k={j}", (CITE_DESCENDING,))

    return SlopeVerdict(s, Verdict.UNKNOWN, None, "no applicable result", ())


def legendrian_as_transverse_slope() -> Slope:
    """Legendrian surgery equals admissible transverse -1 surgery on the push-off.

    Slope measured against the dividing-curve (contact framing) longitude.
    """
    return Rational(-1)


def uniform_thick_tight_slopes(tb_max: int) -> SlopeInterval:
    """``[-inf, tb_max)``: tight slopes for a uniformly thick knot type."""
    return SlopeInterval(INF, Rational(tb_max), lo_closed=True, hi_closed=False)
