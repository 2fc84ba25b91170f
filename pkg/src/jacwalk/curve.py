"""Genus-2 curves Y^2 = f(X) with f monic of degree 5, and their points."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from . import poly
from .errors import CurveMismatchError, ResourceLimitError, SingularCurveError
from .field import Ext2Element, FieldElement, check_prime, ext2_elements, nonresidue, sqrt_mod

MAX_EXT2_ENUM_PRIME = 1 << 13

Scalar = Union[FieldElement, Ext2Element]


@dataclass(frozen=True)
class Curve:
    """C: Y^2 = X^5 + b1 X^4 + b2 X^3 + b3 X^2 + b4 X + b5 over F_p."""

    p: int
    b: tuple[int, int, int, int, int]

    def __post_init__(self):
        check_prime(self.p)
        if len(self.b) != 5:
            raise ValueError("expected five coefficients b1..b5")
        object.__setattr__(self, "b", tuple(int(c) % self.p for c in self.b))
        f = self.f
        if poly.deg(poly.gcd(f, poly.derivative(f, self.p), self.p)) > 0:
            raise SingularCurveError(f"f = {self.describe()} has a repeated root mod {self.p}")

    @property
    def f(self) -> poly.Poly:
        """f as an ascending coefficient tuple."""
        b1, b2, b3, b4, b5 = self.b
        return (b5, b4, b3, b2, b1, 1)

    @property
    def b1(self) -> int:
        return self.b[0]

    @property
    def b2(self) -> int:
        return self.b[1]

    @property
    def b3(self) -> int:
        return self.b[2]

    @property
    def b4(self) -> int:
        return self.b[3]

    @property
    def b5(self) -> int:
        return self.b[4]

    def fe(self, value: int) -> FieldElement:
        return FieldElement(value, self.p)

    def f_at(self, x):
        return poly.evaluate(self.f, x)

    def df_at(self, x):
        return poly.evaluate(poly.derivative(self.f, self.p), x)

    def is_on_curve(self, x, y) -> bool:
        return y * y == self.f_at(x)

    def describe(self) -> str:
        terms = ["X^5"]
        for power, c in zip((4, 3, 2, 1, 0), self.b):
            if c:
                mono = {1: "X", 0: ""}.get(power, f"X^{power}")
                terms.append(f"{c}{mono}" if mono and c != 1 else (mono or str(c)))
        return " + ".join(terms)

    def to_json(self) -> dict:
        return {"p": self.p, "b": list(self.b)}

    @classmethod
    def from_json(cls, obj: dict) -> Curve:
        return cls(int(obj["p"]), tuple(int(c) for c in obj["b"]))


def curve_new(p: int, b1: int, b2: int, b3: int, b4: int, b5: int) -> Curve:
    return Curve(p, (b1, b2, b3, b4, b5))


class _Infinity:
    """The unique point at infinity of the degree-5 model; it has no coordinates."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITY"

    def __reduce__(self):
        return (_Infinity, ())


INFINITY = _Infinity()


@dataclass(frozen=True)
class AffinePoint:
    curve: Curve
    x: Scalar
    y: Scalar

    def __post_init__(self):
        if not self.curve.is_on_curve(self.x, self.y):
            raise ValueError(f"({self.x!r}, {self.y!r}) is not on the curve")

    @property
    def degree(self) -> int:
        """1 for an F_p-point, 2 when a coordinate needs F_{p^2}."""
        for c in (self.x, self.y):
            if isinstance(c, Ext2Element) and not c.in_base_field():
                return 2
        return 1

    def frobenius(self) -> AffinePoint:
        return AffinePoint(self.curve, _frob(self.x), _frob(self.y))

    def __neg__(self) -> AffinePoint:
        return point_negate(self)


def _frob(c):
    return c.frobenius() if isinstance(c, Ext2Element) else c


def point_negate(P: AffinePoint) -> AffinePoint:
    return AffinePoint(P.curve, P.x, -P.y)


@dataclass(frozen=True)
class PointCounts:
    """n1 = |C(F_p)|, n2 = |C(F_{p^2})|, both counting the point at infinity."""

    n1: int
    n2: int | None = None


def hasse_weil_ok(p: int, n1: int) -> bool:
    """|n1 - (p+1)| <= 2g sqrt(p) with g = 2, as an exact integer test."""
    return (n1 - p - 1) ** 2 <= 16 * p


def hasse_weil_ext2_ok(p: int, n2: int) -> bool:
    return abs(n2 - (p * p + 1)) <= 4 * p


def enumerate_points(curve: Curve, degree: int = 1) -> tuple[list[AffinePoint], int]:
    """All affine points over F_p (degree 1) or F_{p^2} (degree 2).

    Ordered by ascending x, then ascending y. The second return value is the
    point count including the point at infinity.
    """
    p = curve.p
    pts: list[AffinePoint] = []
    if degree == 1:
        for x in range(p):
            for y in sqrt_mod(poly.eval_mod(curve.f, x, p), p):
                pts.append(AffinePoint(curve, FieldElement(x, p), FieldElement(y, p)))
    elif degree == 2:
        if p > MAX_EXT2_ENUM_PRIME:
            raise ResourceLimitError(f"F_{{p^2}} enumeration refused for p = {p} > 2^13")
        for x in ext2_elements(p):
            for y in curve.f_at(x).sqrt():
                pts.append(AffinePoint(curve, x, y))
    else:
        raise ValueError("degree must be 1 or 2")
    return pts, len(pts) + 1


def _legendre_table(p: int) -> np.ndarray:
    table = np.full(p, -1, dtype=np.int64)
    sq = (np.arange(1, p, dtype=np.int64) ** 2) % p
    table[sq] = 1
    table[0] = 0
    return table


def point_counts(curve: Curve, with_ext2: bool = True) -> PointCounts:
    """Counts by character sums: n = 1 + sum_x (1 + chi(f(x))).

    Over F_{p^2} the quadratic character is chi(N(a)), N the norm to F_p, so
    the sum runs over a vectorised numpy evaluation of f.
    """
    p = curve.p
    chi = _legendre_table(p)
    xs = np.arange(p, dtype=np.int64)
    fx = np.zeros(p, dtype=np.int64)
    for c in reversed(curve.f):
        fx = (fx * xs + c) % p
    n1 = int(1 + p + chi[fx].sum())
    if not with_ext2:
        return PointCounts(n1)
    if p > MAX_EXT2_ENUM_PRIME:
        raise ResourceLimitError(f"F_{{p^2}} point count refused for p = {p} > 2^13")
    nu = nonresidue(p)
    a0 = np.tile(np.arange(p, dtype=np.int64), p)
    a1 = np.repeat(np.arange(p, dtype=np.int64), p)
    c0 = np.zeros(p * p, dtype=np.int64)
    c1 = np.zeros(p * p, dtype=np.int64)
    for c in reversed(curve.f):
        c0, c1 = (c0 * a0 + nu * (c1 * a1 % p) + c) % p, (c0 * a1 + c1 * a0) % p
    norm = (c0 * c0 - nu * (c1 * c1 % p)) % p
    n2 = int(1 + p * p + chi[norm].sum())
    return PointCounts(n1, n2)


def same_curve(*curves: Curve) -> Curve:
    first = curves[0]
    for c in curves[1:]:
        if c is not first and c != first:
            raise CurveMismatchError(f"{first} vs {c}")
    return first
