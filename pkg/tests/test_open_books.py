import copy
import json
from fractions import Fraction

import pytest

from transurgery.exact import IntMatrix, Rational
from transurgery.open_books import (
    Contact,
    FamilyParams,
    MarkedSurface,
    MonodromyWord,
    Tightness,
    arc_correction,
    binding_tight_slope_report,
    builtin_surfaces,
    cap_off_family,
    family_fdtc,
    family_open_book,
    family_status,
    open_book_homology,
    substitute_cap,
    transvection_matrix,
    word,
    word_action,
)
from transurgery.twists import HypothesisError

SURF = builtin_surfaces()
T, THAT, ANN = SURF["T"], SURF["T_capped"], SURF["annulus"]


def order(S, w, **kw):
    return open_book_homology(S, w, **kw).order


def test_builtin_surfaces():
    assert (ANN.h1_rank, T.h1_rank, THAT.h1_rank) == (1, 3, 2)
    assert ANN.pairing.to_rows() == [[0]]
    assert ANN.arc_functional("tau") == (1,)
    assert T.genus == 1 and len(T.boundary) == 2
    assert THAT.genus == 1 and len(THAT.boundary) == 1
    assert THAT.dot(THAT.curves["x"], THAT.curves["y"]) == 1
    assert THAT.curves["delta"] == (0, 0)


def test_T_radical_and_classes():
    assert T.radical() in ([(1, 0, 1)], [(-1, 0, -1)])
    e1, e2, e3 = (1, 0, 0), (0, 1, 0), (0, 0, 1)
    assert T.dot(e1, e2) == 1 and T.dot(e2, e3) == 1 and T.dot(e1, e3) == 0
    assert T.curves["delta1"] == T.curves["delta2"] == (1, 0, 1)
    assert T.arc_functional("tau") == (0, 0, 1)


def test_transvection_examples():
    assert transvection_matrix(T, "a", 1).to_rows() == [[1, -1, 0], [0, 1, 0], [0, 0, 1]]
    for c in ("delta1", "delta2", "d"):
        assert transvection_matrix(T, c, 5) == IntMatrix.identity(3)
    ab = transvection_matrix(T, "a", 1) @ transvection_matrix(T, "b", 1)
    assert ab**6 == IntMatrix.identity(3)


@pytest.mark.parametrize("surface", [ANN, T, THAT])
def test_transvections_preserve_pairing(surface):
    J = surface.pairing
    for c in surface.curves:
        for e in (1, -1, 3):
            M = transvection_matrix(surface, c, e)
            assert M.transpose() @ J @ M == J


def test_word_action():
    assert word_action(T, MonodromyWord(())) == IntMatrix.identity(3)
    psi = MonodromyWord.parse("a b^-1 c d^-1", T)
    M = word_action(T, psi)
    assert M.det() == 1 and M.transpose() @ T.pairing @ M == T.pairing
    assert word_action(T, psi * psi.inverse()) == IntMatrix.identity(3)


def test_word_parser():
    w = MonodromyWord.parse("delta1^3 a b^-1", T)
    assert w.letters == (("delta1", 3), ("a", 1), ("b", -1))
    assert str(w) == "delta1^3 a b^-1"
    with pytest.raises(KeyError):
        MonodromyWord.parse("zz", T)
    with pytest.raises(ValueError):
        MonodromyWord.parse("a^0", T)
    with pytest.raises(ValueError):
        MonodromyWord.parse("a^", T)


def test_arc_correction_examples():
    for n in range(0, 7):
        assert arc_correction(ANN, "tau", word(("gamma", n))) == (-n,)
    assert arc_correction(T, "tau", word(("a", 4), ("b", -2))) == (0, 0, 0)
    for k1 in range(-3, 4):
        for k2 in range(-3, 4):
            got = arc_correction(T, "tau", word(("delta1", k1), ("delta2", k2)))
            assert got == (-(k1 + k2), 0, -(k1 + k2))


def test_homology_oracles():
    for n in range(1, 21):
        rep = open_book_homology(ANN, word(("gamma", n)))
        assert rep.invariant_factors == ((n,) if n > 1 else ()) and rep.order == n
    rep = open_book_homology(T, MonodromyWord(()))
    assert rep.invariant_factors == (0, 0, 0) and rep.order == 0 and rep.betti == 3
    assert str(rep) == "Z + Z + Z"


def test_homology_report_order_contract():
    for n in range(1, 5):
        for k in range(0, 4):
            S, w = family_open_book(FamilyParams(n, k, 0))
            rep = open_book_homology(S, w)
            nonzero = [d for d in rep.invariant_factors if d]
            if len(nonzero) == len(rep.invariant_factors):
                expected = 1
                for d in nonzero:
                    expected *= d
                assert rep.order == expected
            else:
                assert rep.order == 0


def test_disconnected_arc_system_rejected():
    data = T.to_dict()
    data["arcs"] = {}
    S = MarkedSurface.from_dict(data)
    with pytest.raises(ValueError, match="arc chain"):
        open_book_homology(S, MonodromyWord(()))


def test_surface_validation():
    data = T.to_dict()
    data["pairing"][0][1] = 2
    with pytest.raises(ValueError):
        MarkedSurface.from_dict(data)
    data = T.to_dict()
    data["parallel"]["B1"] = "a"
    with pytest.raises(ValueError, match="radical"):
        MarkedSurface.from_dict(data)
    data = T.to_dict()
    data["curves"]["a"]["class"] = [1, 0]
    with pytest.raises(ValueError):
        MarkedSurface.from_dict(data)


def test_surface_file_roundtrip(tmp_path):
    path = tmp_path / "T.json"
    path.write_text(json.dumps(T.to_dict()))
    assert MarkedSurface.load(path) == T


def _variant(d_class=None, tau_pairs=None):
    data = copy.deepcopy(T.to_dict())
    if d_class is not None:
        data["curves"]["d"]["class"] = d_class
    if tau_pairs is not None:
        data["arcs"]["tau"]["pairs"] = tau_pairs
    return MarkedSurface.from_dict(data)


def test_homology_independent_of_arc_choice():
    S = _variant(tau_pairs={"a": 1, "b": 0, "c": 0})
    for n in range(1, 5):
        for k1, k2 in [(0, 0), (2, 1), (-1, 3)]:
            _, w = family_open_book(FamilyParams(n, k1, k2))
            assert open_book_homology(S, w).invariant_factors == open_book_homology(T, w).invariant_factors


CHAIN_INV = MonodromyWord.parse("b^-1 a^-1 " * 6)  # D_d^-1 = (D_a D_b)^-6


def _chain_relation_holds(S):
    for n in range(1, 4):
        for k1, k2 in [(0, 0), (2, 1), (-1, 3), (3, 3)]:
            head = word(("delta1", k1), ("delta2", k2))
            w1 = head * MonodromyWord.parse("a b^-1 c d^-1") ** n
            w2 = head * (MonodromyWord.parse("a b^-1 c") * CHAIN_INV) ** n
            if arc_correction(S, "tau", w1) != arc_correction(S, "tau", w2):
                return False
            if open_book_homology(S, w1).invariant_factors != open_book_homology(S, w2).invariant_factors:
                return False
    return True


def test_chain_relation_fixes_class_of_d():
    assert _chain_relation_holds(T)
    # d bounds N(a u b), so giving it the boundary class breaks the relation
    assert not _chain_relation_holds(_variant(d_class=[1, 0, 1]))
    assert not _chain_relation_holds(_variant(d_class=[-1, 0, -1]))


def test_d_class_irrelevant_at_zero_twisting():
    S = _variant(d_class=[1, 0, 1])
    for n in range(1, 8):
        _, w = family_open_book(FamilyParams(n, 0, 0))
        assert open_book_homology(S, w).invariant_factors == open_book_homology(T, w).invariant_factors


def test_family_open_book_examples():
    _, w = family_open_book(FamilyParams(1, 0, 0))
    assert str(w) == "a b^-1 c d^-1"
    _, w = family_open_book(FamilyParams(2, 3, 4))
    assert str(w) == "delta1^3 delta2^4 a b^-1 c d^-1 a b^-1 c d^-1"
    assert len(w) == 2 + 4 * 2
    with pytest.raises(HypothesisError):
        family_open_book(FamilyParams(0, 1, 1))


def test_cap_off_examples():
    S, w = cap_off_family(FamilyParams(3, 2, 2))
    assert S is not None and S.name == THAT.name
    assert str(w) == "delta^-1 x^2 y^-1 x^2 y^-1 x^2 y^-1"
    _, w = cap_off_family(FamilyParams(1, 5, 1))
    assert str(w) == "x^2 y^-1"
    with pytest.raises(HypothesisError):
        cap_off_family(FamilyParams(2, 1, 1), boundary="B2")


def test_cap_off_agrees_with_substitution():
    # substitution gives delta^k2 (x y^-1 x delta^-1)^n; delta is boundary parallel
    # so it commutes, and (x y^-1 x)^n is conjugate to (x^2 y^-1)^n by x
    for n in range(1, 4):
        for k1 in range(0, 3):
            for k2 in range(0, 4):
                p = FamilyParams(n, k1, k2)
                _, w = family_open_book(p)
                sub = substitute_cap(w)
                delta_total = sum(e for c, e in sub.letters if c == "delta")
                assert delta_total == k2 - n
                core = MonodromyWord(tuple(l for l in sub.letters if l[0] != "delta"))
                x = word(("x", 1))
                _, capped = cap_off_family(p)
                capped_core = MonodromyWord(tuple(l for l in capped.letters if l[0] != "delta"))
                assert word_action(THAT, core) == word_action(THAT, x.inverse() * capped_core * x)


def test_capping_matches_zero_filling():
    for n in range(1, 4):
        for k1 in range(0, 4):
            for k2 in range(0, 4):
                p = FamilyParams(n, k1, k2)
                capped = open_book_homology(*cap_off_family(p))
                S, w = family_open_book(p)
                filled = open_book_homology(S, w, {"B1": Rational(0)})
                assert capped.invariant_factors == filled.invariant_factors


def test_k_sum_invariance():
    for n in range(1, 5):
        for total in range(0, 9):
            orders = {
                order(*family_open_book(FamilyParams(n, k1, total - k1))) for k1 in range(-2, total + 3)
            }
            assert len(orders) == 1


def test_fdtc():
    assert family_fdtc(FamilyParams(3, 2, 2)) == [2, 2]
    assert family_fdtc(FamilyParams(3, 2, 2), capped=True) == [-1]
    assert family_fdtc(FamilyParams(1, 7, 9), capped=True) == [Fraction(8)]


def test_status_examples():
    assert family_status(FamilyParams(3, 2, 2)).status == Contact.UNIVERSALLY_TIGHT
    assert family_status(FamilyParams(3, 2, 2), capped=True).status == Contact.OVERTWISTED
    assert family_status(FamilyParams(3, 1, 2)).status == Contact.UNKNOWN


def test_status_truth_table():
    for n in range(1, 5):
        for k1 in range(0, 5):
            for k2 in range(0, 5):
                p = FamilyParams(n, k1, k2)
                want = Contact.UNIVERSALLY_TIGHT if k1 >= 2 and k2 >= 2 else Contact.UNKNOWN
                assert family_status(p).status == want
                want = Contact.OVERTWISTED if k2 <= n else Contact.UNKNOWN
                assert family_status(p, capped=True).status == want


def test_status_rules_never_violated():
    for n in range(1, 5):
        for k1 in range(-2, 5):
            for k2 in range(-2, 5):
                for capped in (False, True):
                    for fp in (1, 2, 3):
                        st = family_status(FamilyParams(n, k1, k2), capped, fp, extended=True)
                        if st.status == Contact.UNIVERSALLY_TIGHT:
                            assert all(c >= Fraction(2, fp) for c in st.fdtc_per_boundary)
                        if st.status == Contact.OVERTWISTED:
                            assert any(c <= 0 for c in st.fdtc_per_boundary)
    assert family_status(FamilyParams(3, 1, 1), fixed_points_per_boundary=2).status == Contact.UNIVERSALLY_TIGHT
    assert family_status(FamilyParams(3, 0, 3), extended=True).status == Contact.OVERTWISTED


def test_tight_slope_report():
    rep = binding_tight_slope_report(FamilyParams(3, 2, 2), Rational(1, 3))
    assert rep.contains_nonclosed_set and rep.disconnected
    want = {"-5": Tightness.TIGHT, "0": Tightness.OVERTWISTED, "1/4": Tightness.TIGHT,
            "2/9": Tightness.TIGHT, "1/5": Tightness.UNKNOWN, "1/2": Tightness.NOT_ADMISSIBLE}
    for s, status in want.items():
        assert rep.classify(Rational.parse(s)).status == status
    for s in ("1/4", "2/9"):
        # leaves 1/2 and 1/3 are not below a = 1/3
        e = rep.classify(Rational.parse(s))
        assert e.witness.replay_trace[-1].is_inf and e.witness_local is False
    e = rep.classify(Rational(-5))
    assert e.witness.verified and e.witness_local
    wide = binding_tight_slope_report(FamilyParams(3, 2, 2), Rational(3, 4))
    e = wide.classify(Rational(1, 4))
    assert e.witness.verified and e.witness_local


def test_tight_slope_report_regime():
    with pytest.raises(HypothesisError, match="k2 <= n"):
        binding_tight_slope_report(FamilyParams(1, 2, 2), Rational(1, 3))
    with pytest.raises(HypothesisError):
        binding_tight_slope_report(FamilyParams(3, 1, 2), Rational(1, 3))
    with pytest.raises(HypothesisError):
        binding_tight_slope_report(FamilyParams(3, 2, 2), Rational(4, 3))
