from hypothesis import given, strategies as st

from transurgery.exact import INF, Rational
from transurgery.slopes import (
    SlopeInterval,
    SlopeMatrix,
    apply_matrix,
    cyclic_neighbor_index,
    farey_neighbors,
    interval_contains,
    is_farey_neighbor,
    iter_reduced,
    mediant,
    shear,
)
from transurgery.twists import twist_once

R = Rational


def test_interval_examples():
    assert interval_contains(SlopeInterval(R(-3), R(-2)), R(-5, 2))
    wrap = SlopeInterval(R(2), R(-1))
    assert interval_contains(wrap, INF)
    assert not interval_contains(wrap, R(0))
    assert interval_contains(wrap, R(7)) and interval_contains(wrap, R(-3))


def test_interval_endpoints():
    I = SlopeInterval(INF, R(0), lo_closed=True)
    assert INF in I and R(-10**6) in I and R(0) not in I
    assert str(I) == "[-inf, 0/1)"


def test_farey_and_mediant_examples():
    assert is_farey_neighbor(R(0), R(1))
    assert is_farey_neighbor(R(1, 2), R(1, 3))
    assert not is_farey_neighbor(R(1, 2), R(1, 4))
    assert mediant(R(1, 2), R(1, 3)) == R(2, 5)
    assert mediant(R(0), R(1)) == R(1, 2)
    assert mediant(R(-3), R(-5, 2)) == R(-8, 3)


def test_matrix_examples():
    assert apply_matrix(SlopeMatrix.identity(), R(5, 7)) == R(5, 7)
    assert apply_matrix(SlopeMatrix(1, 3, 0, 1), R(2, 5)) == R(17, 5)
    assert shear(R(-7, 3), 2) == R(-1, 3)
    assert shear(INF, 9) == INF


@st.composite
def reduced(draw):
    p = draw(st.integers(-60, 60))
    q = draw(st.integers(0, 60))
    if p == 0 and q == 0:
        q = 1
    return Rational(p, q)


@st.composite
def unimodular(draw):
    M = SlopeMatrix.identity()
    for _ in range(draw(st.integers(0, 6))):
        t = draw(st.integers(-4, 4))
        M = M @ (SlopeMatrix(1, t, 0, 1) if draw(st.booleans()) else SlopeMatrix(1, 0, t, 1))
    return M


@given(unimodular(), reduced())
def test_action_is_group_action(M, x):
    assert M(M.inverse()(x)) == x
    assert shear(shear(x, 3), -3) == x


@given(unimodular(), reduced(), reduced())
def test_adjacency_and_mediant_equivariance(M, x, y):
    if x == y or not is_farey_neighbor(x, y):
        return
    assert is_farey_neighbor(M(x), M(y))
    # mediant on primitive vectors: compare as unoriented sums
    m = M(mediant(x, y))
    a, b = M(x).vector(), M(y).vector()
    candidates = {Rational(a[0] + b[0], a[1] + b[1]), Rational(a[0] - b[0], a[1] - b[1])}
    assert m in candidates


@given(reduced(), reduced(), reduced(), st.integers(-5, 5))
def test_interval_shear_invariance(lo, hi, x, t):
    if lo == hi:
        return
    I = SlopeInterval(lo, hi)
    J = SlopeInterval(shear(lo, t), shear(hi, t))
    assert interval_contains(I, x) == interval_contains(J, shear(x, t))


def test_positive_twist_shifts_neighbor_index():
    for t in [R(0), R(1, 2), R(-3, 5), INF, R(7, 4)]:
        for x in farey_neighbors(t, 12):
            y = twist_once(x, t, -1)
            assert is_farey_neighbor(t, y)
            assert cyclic_neighbor_index(t, y) == cyclic_neighbor_index(t, x) + 1


def test_iter_reduced_counts():
    xs = list(iter_reduced(3))
    assert len(xs) == len(set(xs))
    assert R(2, 3) in xs and R(-3) in xs
