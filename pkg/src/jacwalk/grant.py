"""Grant's embedding of the genus-2 Jacobian into P^8 and its addition law.

Coordinates are ordered (z0 : z11 : z12 : z22 : z111 : z112 : z122 : z222 : z).
On the affine chart U (z0 = 1, i.e. deg u = 2) every coordinate is a rational
function of the support points; the complement Theta (deg u <= 1) lives on the
hyperplane z0 = 0.
"""

from __future__ import annotations

from dataclasses import dataclass, fields
from functools import lru_cache

import numpy as np
import sympy as sp

from .curve import Curve
from .errors import ChartError, FormulaDomainError, InvalidDivisorError
from .field import Ext2Element, FieldElement
from .jacobian import (
    MumfordDivisor,
    enumerate_jacobian,
    identity,
    is_in_theta,
    mumford_new,
    negate,
    support,
    theta_points,
)

COORDS = ("z0", "z11", "z12", "z22", "z111", "z112", "z122", "z222", "z")

Z0, Z11, Z12, Z22, Z111, Z112, Z122, Z222, Z = sp.symbols(COORDS)
b1, b2, b3, b4, b5 = sp.symbols("b1:6")

# Affine defining equations f_1..f_14 of J_C in the coordinates above.
# f_1 and f_10 carry corrected terms (see README, "Grant equations").
DEFINING_EQUATIONS = {
    1: Z**2 + Z11**2 * Z12 - b1 * Z11**2 * Z22 + b2 * Z11 * Z12 * Z22 - b3 * Z11 * Z22**2
    + b4 * Z12 * Z22**2 - b5 * Z22**3 + 2 * b1 * Z * Z11 - 2 * b2 * Z * Z12 + 2 * b3 * Z * Z22
    + (b3 - b1 * b2) * Z11 * Z12 + (b2**2 - b1 * b3) * Z11 * Z22
    + (b1 * b4 - b2 * b3 - b5) * Z12 * Z22 - b1 * b5 * Z22**2 + 2 * (b1 * b3 - b2**2) * Z
    + (b1 * b4 - b5) * Z11 + b2 * (b2**2 - b1 * b3) * Z12 + (b3 * b4 - b2 * b5) * Z22
    + b1 * b3 * b4 - b2**2 * b4 - b3 * b5,
    2: 2 * Z - Z11 * Z22 + Z12**2 - b2 * Z12 + b4,
    3: Z112 - Z222 * Z12 + Z122 * Z22,
    4: Z111 + Z222 * Z11 + Z122 * Z12 - 2 * Z112 * Z22 - 2 * b1 * Z112 + b2 * Z122,
    5: Z122**2 - Z11 * Z22**2 + 2 * Z * Z22 + Z11 * Z12 - b1 * Z11 * Z22 - b2 * Z12 * Z22
    + 2 * b1 * Z - b1 * b2 * Z12 + b4 * Z22 + b1 * b4 - b5,
    6: Z222**2 - Z22**3 - Z12 * Z22 - b1 * Z22**2 - Z11 - b2 * Z22 - b3,
    7: Z122 * Z222 - Z12 * Z22**2 + Z - b2 * Z12 - b1 * Z12 * Z22,
    8: Z111**2 - Z11**3 - b3 * Z11**2 - b4 * Z11 * Z12 + 3 * b5 * Z11 * Z22 + 2 * b5 * Z
    + (4 * b1 * b5 - b2 * b4) * Z11 - 3 * b2 * b5 * Z12 + (4 * b3 * b5 - b4**2) * Z22
    + 4 * b1 * b3 * b5 + b4 * b5 - b1 * b4**2 - b2**2 * b5,
    9: -Z111 * Z112 + b1 * Z111 * Z122 - b2 * Z112 * Z122 + b3 * Z112 * Z222
    - b4 * Z122 * Z222 + b5 * Z222**2 - Z**2 - b1 * Z * Z11 + b2 * Z * Z12 - b3 * Z * Z22
    - b3 * Z11 * Z12 + b1 * b3 * Z11 * Z22 - (b5 + b1 * b4) * Z12 * Z22 + 2 * b1 * b5 * Z22**2
    - 2 * (b1 * b3 + b4) * Z + (2 * b2 * b4 + b1 * b2 * b3 + b1 * b5 - b3**2 - b1**2 * b4) * Z12
    - 2 * b5 * Z11 + 2 * b5 * (b1**2 - b2) * Z22 + b1 * b2 * b5 - b1 * b3 * b4 - 2 * b3 * b5,
    10: Z112**2 - Z111 * Z122 + Z11 * Z - b3 * Z11 * Z22 + 2 * b4 * Z12 * Z22 - 3 * b5 * Z22**2
    + 2 * b3 * Z + (b1 * b4 - b2 * b3 - b5) * Z12 - 2 * b1 * b5 * Z22 + b3 * b4 - b2 * b5,
    11: Z111 * Z222 - Z112 * Z122 - 2 * Z * Z12 + Z11**2 - 2 * b1 * Z11 * Z12
    + 3 * b2 * Z11 * Z22 - 2 * b3 * Z12 * Z22 + b4 * Z22**2 - 5 * b2 * Z + b3 * Z11
    + (3 * b2**2 - 2 * b1 * b3) * Z12 + (b1 * b4 - b5) * Z22 - 2 * b2 * b4,
    12: Z122**2 - Z112 * Z222 + Z22 * Z + 2 * Z11 * Z12 - b1 * Z11 * Z22 + 2 * b1 * Z
    + (b3 - b1 * b2) * Z12 + b1 * b4 - b5,
    13: Z111 * Z12 - Z112 * Z11 - b4 * Z122 + 2 * b5 * Z222,
    14: 2 * Z122 * Z11 - Z112 * Z12 - Z111 * Z22 - b2 * Z112 + 2 * b3 * Z122 - b4 * Z222,
}

# Weighted degrees of the coordinates: x has weight 2, y weight 5, b_i weight 2i.
WEIGHTS = {Z11: 6, Z12: 4, Z22: 2, Z111: 9, Z112: 7, Z122: 5, Z222: 3, Z: 8}

# Degree bounds of z(Q+R) as polynomials in the coordinates of Q (fixed R),
# recorded for the bound bookkeeping only; never verified symbolically.
ADD_DEGREE_BOUNDS = {"z_ij": 3, "z_ijk": 4, "z": 6}


@lru_cache(maxsize=None)
def _homogeneous_terms() -> tuple:
    """Homogenised f_i as (degree, terms), each term (b-coefficient terms, exponents).

    Exponents run over all nine projective coordinates; z0 pads each monomial
    up to the total degree of its equation.
    """
    gens = (Z11, Z12, Z22, Z111, Z112, Z122, Z222, Z)
    out = []
    for expr in DEFINING_EQUATIONS.values():
        P = sp.Poly(sp.expand(expr), *gens)
        d = P.total_degree()
        terms = []
        for mono, coeff in P.terms():
            bpoly = sp.Poly(coeff, b1, b2, b3, b4, b5)
            bterms = tuple((int(c), tuple(e)) for e, c in bpoly.terms())
            terms.append((bterms, (d - sum(mono),) + tuple(mono)))
        out.append((d, tuple(terms)))
    return tuple(out)


@lru_cache(maxsize=64)
def _numeric_equations(curve: Curve) -> tuple:
    """The homogenised equations with b_i substituted, coefficients mod p."""
    p, bs = curve.p, curve.b
    out = []
    for _, terms in _homogeneous_terms():
        numeric = []
        for bterms, exps in terms:
            c = 0
            for k, e in bterms:
                t = k
                for bi, ei in zip(bs, e):
                    t *= pow(bi, ei, p)
                c += t
            if c % p:
                numeric.append((c % p, exps))
        out.append(tuple(numeric))
    return tuple(out)


def equation_degrees() -> list[int]:
    return [d for d, _ in _homogeneous_terms()]


@dataclass(frozen=True)
class GrantPoint:
    """Normalised projective point of P^8 over F_p.

    Affine chart: z0 = 1. Theta chart: z0 = 0, scaled so z222 = 1, or z111 = 1
    for the image of the identity.
    """

    coords: tuple[int, ...]
    p: int

    @classmethod
    def from_coords(cls, coords, p: int) -> GrantPoint:
        c = [int(x) % p for x in coords]
        if len(c) != 9:
            raise ValueError("a Grant point has nine coordinates")
        for pivot in (0, 7, 4):
            if c[pivot]:
                break
        else:
            pivot = next((i for i, x in enumerate(c) if x), None)
            if pivot is None:
                raise ValueError("(0:...:0) is not a projective point")
        k = pow(c[pivot], -1, p)
        return cls(tuple(x * k % p for x in c), p)

    @property
    def chart(self) -> str:
        return "affine" if self.coords[0] else "theta"

    def __getitem__(self, name: str) -> int:
        return self.coords[COORDS.index(name)]

    def affine(self) -> AffineCoords:
        if self.chart != "affine":
            raise ChartError("point lies on the theta divisor (z0 = 0)")
        return AffineCoords(*(FieldElement(c, self.p) for c in self.coords[1:]))

    def to_json(self) -> dict:
        return {"coords": list(self.coords), "chart": self.chart}

    @classmethod
    def from_json(cls, obj, p: int) -> GrantPoint:
        coords = obj["coords"] if isinstance(obj, dict) else obj
        return cls.from_coords(coords, p)


@dataclass(frozen=True)
class AffineCoords:
    """(z11, z12, z22, z111, z112, z122, z222, z) on the chart z0 = 1."""

    z11: object
    z12: object
    z22: object
    z111: object
    z112: object
    z122: object
    z222: object
    z: object

    def values(self) -> tuple:
        return tuple(getattr(self, f.name) for f in fields(self))


def _z_from_f2(z11, z12, z22, curve: Curve):
    return (z11 * z22 - z12 * z12 + curve.b2 * z12 - curve.b4) / 2


def affine_from_support(x1, y1, x2, y2, curve: Curve) -> AffineCoords:
    """Rational embedding of (x1, y1) + (x2, y2) - 2O for x1 != x2.

    Works over F_p or F_{p^2}; z is fixed by f_2 = 0.
    """
    B1, B2, B3, B4, B5 = curve.b
    d = x1 - x2
    s, m = x1 + x2, x1 * x2
    z11 = (s * m * m + 2 * B1 * m * m + B2 * s * m + 2 * B3 * m + B4 * s + 2 * B5 - 2 * y1 * y2) / (d * d)
    z12 = -m
    z22 = s

    def psi(a, c):
        return (4 * B5 + B4 * (3 * a + c) + 2 * B3 * a * (a + c) + B2 * a * a * (a + 3 * c)
                + 4 * B1 * a**3 * c + a**3 * c * (3 * a + c))

    z111 = (y2 * psi(x1, x2) - y1 * psi(x2, x1)) / d**3
    z112 = (y1 * x2 * x2 - y2 * x1 * x1) / d
    z122 = -(y1 * x2 - y2 * x1) / d
    z222 = (y1 - y2) / d
    return AffineCoords(z11, z12, z22, z111, z112, z122, z222, _z_from_f2(z11, z12, z22, curve))


def affine_doubled(x, y, curve: Curve) -> AffineCoords:
    """Embedding of 2P - 2O, P = (x, y) with y != 0.

    z111 and z112 are solved from the linear relations f_4 = 0 and f_3 = 0.
    """
    B1, B2, B3 = curve.b1, curve.b2, curve.b3
    slope = curve.df_at(x) / (2 * y)
    z12 = -x * x
    z22 = 2 * x
    z122 = -slope * x + y
    z222 = slope
    z11 = slope * slope - 6 * x**3 - 4 * B1 * x * x - 2 * B2 * x - B3
    z112 = z222 * z12 - z122 * z22
    z111 = -z222 * z11 - z122 * z12 + 2 * z112 * z22 + 2 * B1 * z112 - B2 * z122
    return AffineCoords(z11, z12, z22, z111, z112, z122, z222, _z_from_f2(z11, z12, z22, curve))


def affine_from_mumford(D: MumfordDivisor) -> AffineCoords:
    """Embedding of D in U read off [u, v] directly, no support points needed.

    The dictionary fixes z12, z22, z122, z222; f_6, f_3, f_4 and f_2 then
    determine z11, z112, z111 and z in that order, all inside F_p.
    """
    curve, p = D.curve, D.p
    if is_in_theta(D):
        raise ChartError("divisor lies on the theta divisor")
    B1, B2, B3 = curve.b1, curve.b2, curve.b3
    z12, z22 = FieldElement(-D.u0, p), FieldElement(-D.u1, p)
    z122, z222 = FieldElement(D.v0, p), FieldElement(D.v1, p)
    z11 = z222 * z222 - z22**3 - z12 * z22 - B1 * z22 * z22 - B2 * z22 - B3
    z112 = z222 * z12 - z122 * z22
    z111 = -z222 * z11 - z122 * z12 + 2 * z112 * z22 + 2 * B1 * z112 - B2 * z122
    return AffineCoords(z11, z12, z22, z111, z112, z122, z222, _z_from_f2(z11, z12, z22, curve))


def _as_int(c, p: int) -> int:
    if isinstance(c, Ext2Element):
        if not c.in_base_field():
            raise ArithmeticError(f"coordinate {c!r} escaped F_{p}")
        return c.a0
    return int(c) % p


def grant_embed(D: MumfordDivisor) -> GrantPoint:
    """iota(D) in P^8, case by case on the support of D."""
    p = D.p
    if D.is_identity():
        return GrantPoint((0, 0, 0, 0, 1, 0, 0, 0, 0), p)
    if is_in_theta(D):
        x, y = (-D.u0) % p, D.v0
        return GrantPoint.from_coords((0, 0, 0, 0, -x**3, x * x, -x, 1, -y), p)
    P1, P2 = support(D)
    if P1.x == P2.x:
        aff = affine_doubled(P1.x, P1.y, D.curve)
    else:
        aff = affine_from_support(P1.x, P1.y, P2.x, P2.y, D.curve)
    return GrantPoint((1,) + tuple(_as_int(c, p) for c in aff.values()), p)


def grant_embed_direct(D: MumfordDivisor) -> GrantPoint:
    """Same map as :func:`grant_embed`, computed from [u, v] without the support."""
    if is_in_theta(D):
        return grant_embed(D)
    aff = affine_from_mumford(D)
    return GrantPoint((1,) + tuple(c.value for c in aff.values()), D.p)


def defining_residuals(P: GrantPoint, curve: Curve) -> list[FieldElement]:
    """f_1..f_14 (homogenised in z0) evaluated at P; all zero iff P is on J_C."""
    p = curve.p
    if P.p != p:
        raise ValueError("point and curve over different fields")
    out = []
    for terms in _numeric_equations(curve):
        acc = 0
        for c, exps in terms:
            t = c
            for zi, e in zip(P.coords, exps):
                if e:
                    t = t * pow(zi, e, p) % p
                    if not t:
                        break
            acc += t
        out.append(FieldElement(acc, p))
    return out


def on_jacobian(P: GrantPoint, curve: Curve) -> bool:
    return not any(defining_residuals(P, curve))


def mumford_from_grant(P: GrantPoint, curve: Curve) -> MumfordDivisor:
    """Invert the embedding: u = X^2 - z22 X - z12, v = z222 X + z122 on U.

    On the theta chart the identity tuple maps to [1, 0] and
    (0:0:0:0:-x^3:x^2:-x:1:-y) to [X - x, y].
    """
    p = curve.p
    c = P.coords
    if P.chart == "affine":
        _, z11, z12, z22, z111, z112, z122, z222, z = c
        return mumford_new((-z12, -z22, 1), (z122, z222), curve)
    if c == (0, 0, 0, 0, 1, 0, 0, 0, 0):
        return identity(curve)
    if c[7] != 1 or any(c[1:4]):
        raise ChartError(f"{c} is not a theta-chart image")
    x, y = (-c[6]) % p, (-c[8]) % p
    try:
        return mumford_new(((-x) % p, 1), (y,), curve)
    except InvalidDivisorError as exc:
        raise ChartError(f"{c} does not lie over a curve point") from exc


@dataclass(frozen=True)
class AdditionScratch:
    """Helper values q, q_i, q_ij, q_ijk of the addition law at a pair (Q, R)."""

    q: FieldElement
    q1: FieldElement
    q2: FieldElement
    q11: FieldElement
    q12: FieldElement
    q22: FieldElement
    q111: FieldElement
    q112: FieldElement
    q122: FieldElement
    q222: FieldElement


def q_value(Q: AffineCoords, R: AffineCoords):
    return Q.z11 - R.z11 + Q.z12 * R.z22 - R.z12 * Q.z22


def addition_scratch(Q: GrantPoint, R: GrantPoint, curve: Curve) -> AdditionScratch:
    """Evaluate every helper function of the addition law at (Q, R)."""
    A, C = Q.affine(), R.affine()
    B1, B2, B3, B4, B5 = curve.b

    q = q_value(A, C)
    q1 = (2 * A.z111 - 2 * C.z111 + 2 * A.z112 * C.z22 - 2 * C.z112 * A.z22
          + 2 * C.z122 * A.z12 - 2 * A.z122 * C.z12)
    q2 = (2 * A.z112 - 2 * C.z112 + 2 * A.z122 * C.z22 - 2 * C.z122 * A.z22
          + 2 * C.z222 * A.z12 - 2 * A.z222 * C.z12)
    wA = 2 * A.z - B2 * A.z12 + B4
    wC = 2 * C.z - B2 * C.z12 + B4
    q11 = (4 * B3 * q + 4 * B4 * (A.z12 - C.z12) + 4 * (wA * C.z12) - 4 * (wC * A.z12)
           - 8 * B5 * (A.z22 - C.z22) + 2 * ((2 * A.z112) * (2 * C.z122) - (2 * C.z112) * (2 * A.z122)))
    q12 = (4 * B3 * (A.z12 - C.z12) + 2 * B2 * (A.z12 * C.z22) - 2 * B2 * (C.z12 * A.z22)
           - 4 * (A.z11 * C.z12 - C.z11 * A.z12) + 2 * (wA * C.z22 - wC * A.z22)
           - 2 * B4 * (A.z22 - C.z22) + (2 * C.z222) * (2 * A.z112) - (2 * A.z222) * (2 * C.z112))
    q22 = (8 * B1 * (A.z12 * C.z22 - C.z12 * A.z22) + 4 * B2 * A.z12 - 4 * B2 * C.z12
           - 8 * (A.z11 * C.z22 - C.z11 * A.z22) - 4 * (wA - wC)
           + 2 * ((2 * A.z122) * (2 * C.z222) - (2 * C.z122) * (2 * A.z222)))

    q111 = (
        2 * C.z112 * (-12 * A.z12**2 + A.z12 * (8 * C.z12 - 4 * B2) - 4 * A.z22 * B3 - 4 * B4)
        + 2 * C.z111 * (-4 * A.z12 * C.z22 - 4 * B3)
        + 2 * A.z111 * (4 * C.z12 * A.z22 + 4 * B3)
        + 2 * A.z112 * (-8 * A.z12 * C.z12 + 12 * C.z12**2 + 4 * C.z12 * B2 + 4 * C.z22 * B3 + 4 * B4)
        + 2 * A.z122 * (4 * A.z11 * C.z12 - 12 * C.z11 * C.z12 - 12 * C.z12 * B3 + 4 * C.z22 * B4)
        + 2 * C.z122 * (12 * A.z11 * A.z12 + A.z12 * (-4 * C.z11 + 12 * B3) - 4 * A.z22 * B4)
    )
    q112 = (
        2 * A.z222 * (4 * A.z11 * C.z12 - 4 * C.z12 * B3 - 8 * B5)
        + 2 * A.z112 * (-4 * C.z11 + 4 * C.z12 * A.z22 + C.z12 * (12 * C.z22 + 8 * B1) + 4 * B3)
        + 2 * C.z112 * (4 * A.z11 + A.z12 * (-12 * A.z22 - 4 * C.z22 - 8 * B1) - 4 * B3)
        + 2 * A.z122 * (-8 * C.z11 * C.z22 - 8 * A.z12 * C.z12 - 4 * C.z12**2 - 4 * C.z12 * B2
                        + 4 * C.z22 * B3 + 4 * B4)
        + 2 * C.z122 * (8 * A.z11 * A.z22 + 4 * A.z12**2 + A.z12 * (8 * C.z12 + 4 * B2)
                        - 4 * A.z22 * B3 - 4 * B4)
        + 2 * C.z222 * (A.z12 * (-4 * C.z11 + 4 * B3) + 8 * B5)
    )
    q122 = (
        2 * C.z112 * (-6 * A.z22**2 + A.z22 * (-2 * C.z22 - 4 * B1) - 2 * B2)
        + 2 * C.z122 * (-4 * A.z11 + A.z22 * (4 * C.z12 - 2 * B2) - 4 * B3)
        + 2 * A.z222 * (2 * A.z11 * C.z22 - 4 * C.z11 * C.z22 - 2 * C.z12**2 - 4 * C.z12 * B2 - 2 * B4)
        + 2 * A.z112 * (2 * A.z22 * C.z22 + 6 * C.z22**2 + 4 * C.z22 * B1 + 2 * B2)
        + 2 * C.z222 * (4 * A.z11 * A.z22 - 2 * C.z11 * A.z22 + 2 * A.z12**2 + 4 * A.z12 * B2 + 2 * B4)
        + 2 * A.z122 * (4 * C.z11 - 4 * A.z12 * C.z22 + 2 * C.z22 * B2 + 4 * B3)
    )
    q222 = (
        2 * C.z222 * (-12 * A.z11 + 4 * C.z11 + A.z12 * (12 * A.z22 + 16 * B1))
        + 2 * C.z122 * (-8 * A.z12 - 8 * C.z12 - 12 * A.z22**2 - 16 * A.z22 * B1 - 8 * B2)
        + 2 * A.z112 * (-4 * A.z22 - 8 * C.z22)
        + 2 * A.z222 * (-4 * A.z11 + 12 * C.z11 + C.z12 * (-12 * C.z22 - 16 * B1))
        + 2 * C.z112 * (8 * A.z22 + 4 * C.z22)
        + 2 * A.z122 * (8 * A.z12 + 8 * C.z12 + 12 * C.z22**2 + 16 * C.z22 * B1 + 8 * B2)
    )
    return AdditionScratch(q, q1, q2, q11, q12, q22, q111, q112, q122, q222)


def q111_expanded(Q: GrantPoint, R: GrantPoint, curve: Curve):
    """Alternative closed form of q_111 built on q_1 (listed with q, ..., q_22)."""
    A, C = Q.affine(), R.affine()
    B2, B3, B4 = curve.b2, curve.b3, curve.b4
    q1 = addition_scratch(Q, R, curve).q1
    return (4 * B3 * q1
            + 4 * (2 * A.z111 * A.z22 * C.z12 - 2 * C.z111 * C.z22 * A.z12)
            + 2 * C.z122 * (2 * A.z12 * (6 * A.z11 - 2 * C.z11 + 4 * B3) - 4 * B4 * A.z22)
            - 2 * A.z122 * (2 * C.z12 * (6 * C.z11 - 2 * A.z11 + 4 * B3) - 4 * B4 * C.z22)
            + 2 * A.z112 * (C.z12 * (12 * C.z12 - 8 * A.z12 + 4 * B2) + 4 * B4)
            - 2 * C.z112 * (A.z12 * (12 * A.z12 - 8 * C.z12 + 4 * B2) + 4 * B4))


def grant_add(Q: GrantPoint, R: GrantPoint, curve: Curve) -> GrantPoint:
    """Q + R on U by the explicit addition law.

    The z112 and z122 sums use the corrected trailing terms
    3/4 (z12(Q)+z12(R)) q1/q and 3/8 (z12(Q)+z12(R)) q2/q + 3/8 (z22(Q)+z22(R)) q1/q.

    Raises :class:`FormulaDomainError` when q(Q, R) = 0; the caller is expected
    to fall back to Cantor's algorithm.
    """
    if Q.p != curve.p or R.p != curve.p:
        raise ValueError("points and curve over different fields")
    if Q.chart != "affine" or R.chart != "affine":
        raise FormulaDomainError("both summands must lie in U")
    A, C = Q.affine(), R.affine()
    s = addition_scratch(Q, R, curve)
    if not s.q:
        raise FormulaDomainError("q(Q, R) = 0")
    r1, r2 = s.q1 / s.q, s.q2 / s.q
    inv_q = s.q.inverse()
    quarter = FieldElement(4, curve.p).inverse()
    half = FieldElement(2, curve.p).inverse()
    sixteenth = quarter * quarter

    z11 = -A.z11 - C.z11 + quarter * r1 * r1 - quarter * s.q11 * inv_q
    z12 = -A.z12 - C.z12 + quarter * r1 * r2 - quarter * s.q12 * inv_q
    z22 = -A.z22 - C.z22 + quarter * r2 * r2 - quarter * s.q22 * inv_q
    z111 = (-half * A.z111 - half * C.z111 + 3 * sixteenth * r1 * s.q11 * inv_q
            - sixteenth * s.q111 * inv_q - half * quarter * r1**3
            + 3 * quarter * (A.z11 + C.z11) * r1)
    z112 = (-half * A.z112 - half * C.z112 + sixteenth * r2 * s.q11 * inv_q
            + half * quarter * r1 * s.q12 * inv_q - sixteenth * s.q112 * inv_q
            - half * quarter * r2 * r1 * r1 + 3 * quarter * (A.z12 + C.z12) * r1)
    z122 = (-half * A.z122 - half * C.z122 + sixteenth * r1 * s.q22 * inv_q
            + half * quarter * r2 * s.q12 * inv_q - sixteenth * s.q122 * inv_q
            - half * quarter * r1 * r2 * r2
            + 3 * half * quarter * (A.z12 + C.z12) * r2 + 3 * half * quarter * (A.z22 + C.z22) * r1)
    z222 = (-half * C.z222 - half * A.z222 + 3 * sixteenth * r2 * s.q22 * inv_q
            - sixteenth * s.q222 * inv_q - half * quarter * r2**3
            + 3 * quarter * (A.z22 + C.z22) * r2)
    z = _z_from_f2(z11, z12, z22, curve)
    return GrantPoint((1,) + tuple(c.value for c in (z11, z12, z22, z111, z112, z122, z222, z)), curve.p)


LEMMA_COMMON_ZERO_BOUND = 20


@dataclass(frozen=True)
class UTable:
    """U(F_p) enumerated, with embeddings and the zero pattern of q."""

    divisors: tuple[MumfordDivisor, ...]
    points: tuple[GrantPoint, ...]
    zeros: np.ndarray  # zeros[i, j] is q(U_i, U_j) == 0

    def index(self, D: MumfordDivisor) -> int:
        return self.divisors.index(D)


@lru_cache(maxsize=16)
def u_table(curve: Curve) -> UTable:
    """Exhaustive over J_C(F_p), so only for p <= 13."""
    p = curve.p
    divs = tuple(D for D in enumerate_jacobian(curve) if not is_in_theta(D))
    pts = tuple(grant_embed(D) for D in divs)
    z = np.array([[G["z11"], G["z12"], G["z22"]] for G in pts], dtype=np.int64).reshape(-1, 3)
    a11, a12, a22 = z[:, 0:1], z[:, 1:2], z[:, 2:3]
    q = (a11 - a11.T + a12 * a22.T - a12.T * a22) % p
    return UTable(divs, pts, q == 0)


@dataclass
class ZeroLocusReport:
    """Exhaustive look at {Q in U(F_p) : q(Q, R) = 0} for one R."""

    R: GrantPoint
    zero_count: int
    translate_count: int
    translates_contained: bool
    pairs_checked: int
    max_common_zeros: int
    worst_partner: GrantPoint | None

    def to_json(self) -> dict:
        return {
            "R": self.R.to_json(),
            "zero_count": self.zero_count,
            "translate_count": self.translate_count,
            "translates_contained": self.translates_contained,
            "pairs_checked": self.pairs_checked,
            "max_common_zeros": self.max_common_zeros,
            "worst_partner": None if self.worst_partner is None else self.worst_partner.to_json(),
        }


def q_r_zero_locus_check(R: GrantPoint, curve: Curve, partners=None) -> ZeroLocusReport:
    """Zero set of q_R on U(F_p), the (Theta +- R) containment, and common zeros.

    ``partners`` are the R' to intersect with (default: all of U(F_p)); pairs
    with R' = +-R are skipped since the bound does not apply to them.
    """
    if R.chart != "affine":
        raise ChartError("R must lie in U")
    table = u_table(curve)
    DR = mumford_from_grant(R, curve)
    r = table.index(DR)
    col = table.zeros[:, r]
    zero_set = {table.divisors[i] for i in np.flatnonzero(col)}

    translates = set()
    for T in theta_points(curve):
        for Q in (T + DR, T - DR):
            if not is_in_theta(Q):
                translates.add(Q)

    if partners is None:
        idx = range(len(table.divisors))
    else:
        idx = [table.index(mumford_from_grant(G, curve)) for G in partners]
    excluded = {r, table.index(negate(DR))}
    best, worst, checked = 0, None, 0
    for j in idx:
        if j in excluded:
            continue
        checked += 1
        common = int(np.count_nonzero(col & table.zeros[:, j]))
        if common > best:
            best, worst = common, table.points[j]
    return ZeroLocusReport(R, len(zero_set), len(translates), translates <= zero_set, checked, best, worst)
