import pytest

from hyperzeta.errors import FunctionalEquationMismatch, NonInvertibleSmallInteger, WeilBoundViolation
from hyperzeta.zeta import LPolyRecord, balanced_lift, charpoly_mod, lift_weil_lpoly, weil_ok


def test_charpoly_examples():
    assert charpoly_mod([[1, 0], [0, 1]], 1, 7, 3) == [2, 1]
    assert charpoly_mod([[0, -7], [1, 3]], 1, 5, 3) == [3, 7]
    assert charpoly_mod([[0, 0], [0, 0]], 1, 5, 3) == [0, 0]


def test_charpoly_genus2_companion():
    # companion of x^4 - e1 x^3 + e2 x^2 - e3 x + e4
    e = [3, -5, 11, 2]
    m = 11**5
    F = [[0, 0, 0, -e[3]], [1, 0, 0, e[2]], [0, 1, 0, -e[1]], [0, 0, 1, e[0]]]
    assert charpoly_mod(F, 2, 11, 5) == [x % m for x in e]


def test_charpoly_small_prime():
    with pytest.raises(NonInvertibleSmallInteger):
        charpoly_mod([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]], 2, 3, 2)


def test_lift_examples():
    m = 37**3
    assert lift_weil_lpoly([11, 37], 37, 1, 3).a == (1, -11, 37)
    assert lift_weil_lpoly([m - 11, 37], 37, 1, 3).a == (1, 11, 37)
    with pytest.raises(WeilBoundViolation):
        lift_weil_lpoly([20, 37], 37, 1, 3)
    with pytest.raises(FunctionalEquationMismatch):
        lift_weil_lpoly([11, 38], 37, 1, 3)


def test_lift_genus2():
    p, mu = 101, 5
    m = p**mu
    a = (1, -3, 20, -303, p * p)
    e = [(-1) ** i * a[i] % m for i in range(1, 5)]
    rec = lift_weil_lpoly(e, p, 2, mu)
    assert rec.a == a and rec.status == "computed"


def test_balanced_lift():
    assert balanced_lift(5, 11) == 5
    assert balanced_lift(6, 11) == -5
    assert balanced_lift(-1, 125) == -1


def test_weil_ok():
    assert weil_ok(12, 1, 1, 37) and not weil_ok(13, 1, 1, 37)
    assert weil_ok(6 * 7, 2, 2, 7) and not weil_ok(43, 2, 2, 7)


def test_record_invariants():
    r = LPolyRecord(7, "fallback", (1, -3, 7))
    r.check()
    assert r.genus == 1 and r.point_count() == 5
    with pytest.raises(ValueError):
        LPolyRecord(7, "bad", (1, 0, 7))
    with pytest.raises(ValueError):
        LPolyRecord(7, "computed")
    with pytest.raises(ValueError):
        LPolyRecord(7, "weird", (1, 0, 7))
    with pytest.raises(FunctionalEquationMismatch):
        LPolyRecord(7, "computed", (1, -3, 8)).check()
    with pytest.raises(WeilBoundViolation):
        LPolyRecord(7, "computed", (1, 6, 7)).check()
    assert LPolyRecord(31, "bad").a is None
