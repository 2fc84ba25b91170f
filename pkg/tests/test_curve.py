import random

import pytest
from jacwalk.curve import (
    INFINITY,
    AffinePoint,
    Curve,
    curve_new,
    enumerate_points,
    hasse_weil_ext2_ok,
    hasse_weil_ok,
    point_counts,
    point_negate,
    same_curve,
)
from jacwalk.errors import (
    CharacteristicError,
    CurveMismatchError,
    ResourceLimitError,
    SingularCurveError,
)
from jacwalk.field import FieldElement

from oracles import SMALL_CURVES


def test_curve_new():
    C = curve_new(7, 0, 0, 0, 0, 1)
    assert C.f == (1, 0, 0, 0, 0, 1)
    with pytest.raises(SingularCurveError):
        curve_new(7, 0, 0, 0, 0, 0)
    curve_new(5, 0, 0, 0, 1, 0)  # X^5 + X, f' = 1 in char 5
    with pytest.raises(CharacteristicError):
        curve_new(2, 0, 0, 0, 0, 1)


def test_json_roundtrip():
    for C in SMALL_CURVES:
        assert Curve.from_json(C.to_json()) == C


def test_negate():
    C = curve_new(7, 0, 0, 0, 0, 1)
    # f(3) = 244 = 6 mod 7, a non-residue, so there is no point with x = 3
    assert C.f_at(3) % 7 == 6
    pts, _ = enumerate_points(C)
    assert not any(P.x == 3 for P in pts)
    for P in pts:
        Q = point_negate(P)
        assert Q.y == -P.y and point_negate(Q) == P
        if P.y == 0:
            assert Q == P
    with pytest.raises(ValueError):
        AffinePoint(C, FieldElement(3, 7), FieldElement(1, 7))
    assert repr(INFINITY) == "INFINITY"


def test_enumerate_x5_plus_1():
    C = curve_new(7, 0, 0, 0, 0, 1)
    expected = 1 + sum(1 for x in range(7) for y in range(7) if (y * y - x**5 - 1) % 7 == 0)
    pts, n1 = enumerate_points(C)
    assert n1 == expected == 8
    assert [(P.x.value, P.y.value) for P in pts] == sorted((P.x.value, P.y.value) for P in pts)


@pytest.mark.parametrize("C", SMALL_CURVES, ids=str)
def test_counts_agree(C):
    _, n1 = enumerate_points(C, 1)
    _, n2 = enumerate_points(C, 2)
    pc = point_counts(C)
    assert (pc.n1, pc.n2) == (n1, n2)
    assert hasse_weil_ok(C.p, n1) and hasse_weil_ext2_ok(C.p, n2)


def test_points_over_ext2_are_on_curve():
    C = SMALL_CURVES[1]
    pts, n2 = enumerate_points(C, 2)
    assert sum(P.degree == 1 for P in pts) + 1 == point_counts(C, with_ext2=False).n1
    for P in pts[:50]:
        assert C.is_on_curve(P.x, P.y)
        assert P.frobenius().frobenius() == P


def test_guards():
    big = Curve(65537, (0, 0, 0, 1, 3))
    with pytest.raises(ResourceLimitError):
        enumerate_points(big, 2)
    with pytest.raises(ResourceLimitError):
        point_counts(big)
    assert hasse_weil_ok(65537, point_counts(big, with_ext2=False).n1)


def test_hasse_weil_random_curves():
    rng = random.Random(3)
    for p in (3, 5, 7, 11, 13, 101, 1009):
        for _ in range(10):
            try:
                C = Curve(p, tuple(rng.randrange(p) for _ in range(5)))
            except SingularCurveError:
                continue
            pc = point_counts(C)
            assert hasse_weil_ok(p, pc.n1) and hasse_weil_ext2_ok(p, pc.n2)


def test_same_curve():
    with pytest.raises(CurveMismatchError):
        same_curve(SMALL_CURVES[0], SMALL_CURVES[1])
    assert same_curve(SMALL_CURVES[0], Curve(7, (0, 0, 0, 0, 1))) == SMALL_CURVES[0]
