"""Braid words, closure components, reduced Burau and link determinants.

The determinant is computed two ways: from the reduced Burau matrix (an
Alexander polynomial route) and from a Goeritz matrix of the closed braid
diagram.  They share no code beyond integer determinants.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .exact import IntMatrix, LaurentMatrix, LaurentPoly, laurent_div_exact

Letter = tuple[int, int]


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[Letter, ...]

    def __post_init__(self) -> None:
        if self.strands < 2:
            raise ValueError("need at least 2 strands")
        for i, e in self.letters:
            if not 1 <= i < self.strands:
                raise ValueError(f"generator s{i} out of range for {self.strands} strands")
            if e == 0:
                raise ValueError(f"zero exponent on s{i}")

    @classmethod
    def parse(cls, text: str, strands: int | None = None) -> "BraidWord":
        letters = parse_letters(text)
        if strands is None:
            strands = max((i for i, _ in letters), default=3) + 1
        return cls(strands, tuple(letters))

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        return BraidWord(max(self.strands, other.strands), self.letters + other.letters)

    def __pow__(self, k: int) -> "BraidWord":
        if k < 0:
            return self.inverse() ** (-k)
        return BraidWord(self.strands, self.letters * k)

    def inverse(self) -> "BraidWord":
        return BraidWord(self.strands, tuple((i, -e) for i, e in reversed(self.letters)))

    def expanded(self) -> list[Letter]:
        out = []
        for i, e in self.letters:
            out.extend([(i, 1 if e > 0 else -1)] * abs(e))
        return out

    def __str__(self) -> str:
        return " ".join(f"s{i}" if e == 1 else f"s{i}^{e}" for i, e in self.letters)


_TOKEN = re.compile(r"\s*(?:(\()|(\))(?:\^([+-]?\d+))?|s(\d+)(?:\^([+-]?\d+))?)")


def parse_letters(text: str) -> list[Letter]:
    """Grammar: ``s<i>``, ``s<i>^k`` and groups ``( ... )^k``."""
    stack: list[list[Letter]] = [[]]
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse braid word at {text[pos:]!r}")
        pos = m.end()
        if m.group(1):
            stack.append([])
        elif m.group(2):
            if len(stack) == 1:
                raise ValueError("unbalanced ')'")
            body = stack.pop()
            k = int(m.group(3)) if m.group(3) is not None else 1
            if k < 0:
                body = [(i, -e) for i, e in reversed(body)]
            stack[-1].extend(body * abs(k))
        else:
            i = int(m.group(4))
            e = int(m.group(5)) if m.group(5) is not None else 1
            if i < 1:
                raise ValueError("generator index must be >= 1")
            if e == 0:
                raise ValueError(f"zero exponent on s{i}")
            stack[-1].append((i, e))
    if len(stack) != 1:
        raise ValueError("unbalanced '('")
    return stack[0]


def family_braid(n: int) -> BraidWord:
    """The 4-braid whose double branched cover is the ``psi_{n,0,0}`` open book."""
    return BraidWord.parse(f"( s1 s2^-1 s3 ( s1 s2 )^-6 )^{n}", strands=4)


# ---------------------------------------------------------------------------
# Permutations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Permutation:
    """``image[i]`` is where strand ``i + 1`` ends up (1-based values)."""

    image: tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.image) != list(range(1, len(self.image) + 1)):
            raise ValueError("not a bijection")

    def cycles(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for start in range(1, len(self.image) + 1):
            if start in seen:
                continue
            cyc = []
            x = start
            while x not in seen:
                seen.add(x)
                cyc.append(x)
                x = self.image[x - 1]
            out.append(tuple(cyc))
        return out


def braid_permutation(w: BraidWord) -> Permutation:
    pos = list(range(1, w.strands + 1))  # pos[s] = current position of strand s+1
    for i, e in reversed(w.letters):
        if e % 2:
            for s, p in enumerate(pos):
                if p == i:
                    pos[s] = i + 1
                elif p == i + 1:
                    pos[s] = i
    return Permutation(tuple(pos))


def closure_components(w: BraidWord) -> int:
    return len(braid_permutation(w).cycles())


# ---------------------------------------------------------------------------
# Burau
# ---------------------------------------------------------------------------

_T = LaurentPoly.monomial(1, 1)
_TINV = LaurentPoly.monomial(1, -1)


def _generator(n: int, i: int, sign: int) -> LaurentMatrix:
    m = n - 1
    rows = [[LaurentPoly.const(int(r == c)) for c in range(m)] for r in range(m)]
    r = i - 1
    if sign > 0:
        rows[r][r] = -_T
        if r > 0:
            rows[r][r - 1] = _T
        if r + 1 < m:
            rows[r][r + 1] = LaurentPoly.const(1)
    else:
        rows[r][r] = -_TINV
        if r > 0:
            rows[r][r - 1] = LaurentPoly.const(1)
        if r + 1 < m:
            rows[r][r + 1] = _TINV
    return LaurentMatrix(rows)


def reduced_burau(w: BraidWord) -> LaurentMatrix:
    out = LaurentMatrix.identity(w.strands - 1)
    for i, e in w.expanded():
        out = out @ _generator(w.strands, i, e)
    return out


def alexander_polynomial(w: BraidWord) -> LaurentPoly:
    """``det(B - I) / (1 + t + ... + t^(n-1))``, up to units."""
    n = w.strands
    B = reduced_burau(w)
    num = (B - LaurentMatrix.identity(n - 1)).det()
    return laurent_div_exact(num, LaurentPoly([1] * n))


def link_determinant(w: BraidWord) -> int:
    return abs(int(alexander_polynomial(w)(-1)))


# ---------------------------------------------------------------------------
# Goeritz oracle
# ---------------------------------------------------------------------------


def goeritz_matrix(w: BraidWord) -> IntMatrix:
    """Goeritz matrix of the closed braid diagram, shading the even columns.

    Column ``j`` is the strip between strands ``j`` and ``j + 1`` (column 0
    is the axis side, column ``n`` the outside).  A column is cut into
    cyclically ordered pieces by its own crossings.
    """
    n = w.strands
    letters = w.expanded()
    heights: dict[int, list[int]] = {j: [] for j in range(n + 1)}
    for h, (i, _) in enumerate(letters):
        heights[i].append(h)

    regions: dict[tuple[int, int], int] = {}

    def region(col: int, piece: int) -> int:
        return regions.setdefault((col, piece), len(regions))

    def piece_at(col: int, h: int) -> int:
        hs = heights[col]
        if not hs:
            return 0
        before = sum(1 for x in hs if x < h)
        return (before - 1) % len(hs)

    for j in range(0, n + 1, 2):
        for p in range(max(1, len(heights[j]))):
            region(j, p)

    edges: list[tuple[int, int, int]] = []
    for h, (j, eps) in enumerate(letters):
        if j % 2:
            u = region(j - 1, piece_at(j - 1, h))
            v = region(j + 1, piece_at(j + 1, h))
            edges.append((u, v, eps))
        else:
            m = len(heights[j])
            c = heights[j].index(h)
            u = region(j, (c - 1) % m)
            v = region(j, c % m)
            edges.append((u, v, -eps))

    size = len(regions)
    G = [[0] * size for _ in range(size)]
    for u, v, eta in edges:
        if u == v:
            continue
        G[u][v] -= eta
        G[v][u] -= eta
    for u in range(size):
        G[u][u] = -sum(G[u][v] for v in range(size) if v != u)
    return IntMatrix.from_rows(G, cols=size)


def goeritz_determinant(w: BraidWord) -> int:
    G = goeritz_matrix(w)
    if G.rows <= 1:
        return 1
    minor = IntMatrix.from_rows([row[1:] for row in G.to_rows()[1:]], cols=G.cols - 1)
    return abs(minor.det())
