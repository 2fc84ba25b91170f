"""The Jacobian J_C(F_p) of a genus-2 curve in Mumford representation.

Elements are reduced divisors encoded as [u, v] with u monic, deg v < deg u <= 2
and u | f - v^2. The group law is Cantor's composition + reduction.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from . import poly
from .curve import AffinePoint, Curve, enumerate_points, point_counts, same_curve
from .errors import InvalidDivisorError, NotReducedError, ResourceLimitError
from .field import Ext2Element, FieldElement, sqrt_mod

MAX_JACOBIAN_ENUM_PRIME = 13


@dataclass(frozen=True)
class MumfordDivisor:
    """Reduced divisor [u, v]; polynomials are ascending residue tuples.

    Construct through :func:`mumford_new` to get validation; the raw
    constructor is reserved for results of the group law.
    """

    curve: Curve
    u: poly.Poly
    v: poly.Poly

    @property
    def p(self) -> int:
        return self.curve.p

    def is_identity(self) -> bool:
        return self.u == poly.ONE

    def coeff_u(self, i: int) -> int:
        return self.u[i] if i < len(self.u) else 0

    def coeff_v(self, i: int) -> int:
        return self.v[i] if i < len(self.v) else 0

    @property
    def u0(self) -> int:
        return self.coeff_u(0)

    @property
    def u1(self) -> int:
        return self.coeff_u(1)

    @property
    def u2(self) -> int:
        return self.coeff_u(2)

    @property
    def v0(self) -> int:
        return self.coeff_v(0)

    @property
    def v1(self) -> int:
        return self.coeff_v(1)

    def __add__(self, other: MumfordDivisor) -> MumfordDivisor:
        return cantor_add(self, other)

    def __neg__(self) -> MumfordDivisor:
        return negate(self)

    def __sub__(self, other: MumfordDivisor) -> MumfordDivisor:
        return cantor_add(self, negate(other))

    def __rmul__(self, n: int) -> MumfordDivisor:
        return scalar_mul(n, self)

    def __repr__(self):
        return f"[u={list(self.u)}, v={list(self.v)}] mod {self.p}"

    def to_json(self) -> dict:
        return {"u": list(self.u), "v": list(self.v)}


def identity(curve: Curve) -> MumfordDivisor:
    return MumfordDivisor(curve, poly.ONE, poly.ZERO)


def mumford_new(u, v, curve: Curve) -> MumfordDivisor:
    """Validate a Mumford pair; raises :class:`InvalidDivisorError`."""
    p = curve.p
    u = poly.trim(u, p)
    v = poly.trim(v, p)
    if not u or u[-1] != 1:
        raise InvalidDivisorError(f"u = {list(u)} is not monic")
    if not poly.deg(v) < poly.deg(u) <= 2:
        raise InvalidDivisorError(f"degrees violate deg v < deg u <= 2: u={list(u)} v={list(v)}")
    if poly.mod(poly.sub(curve.f, poly.mul(v, v, p), p), u, p):
        raise InvalidDivisorError(f"u = {list(u)} does not divide f - v^2 for v = {list(v)}")
    return MumfordDivisor(curve, u, v)


def divisor_from_json(obj: dict, curve: Curve) -> MumfordDivisor:
    return mumford_new(obj["u"], obj["v"], curve)


def _to_base(c) -> int:
    if isinstance(c, Ext2Element):
        return c.to_base().value
    if isinstance(c, FieldElement):
        return c.value
    return int(c)


def divisor_from_points(P1: AffinePoint, P2: AffinePoint | None = None) -> MumfordDivisor:
    """[u, v] of P1 - O or P1 + P2 - 2O.

    u = prod (X - x_i); v interpolates y_i, with the tangent line for a
    doubled point. For a point over F_{p^2}, P2 must be its Frobenius image.
    """
    curve = P1.curve
    p = curve.p
    if P2 is None:
        if P1.degree != 1:
            raise InvalidDivisorError("a single point must be F_p-rational")
        x, y = _to_base(P1.x), _to_base(P1.y)
        return MumfordDivisor(curve, ((-x) % p, 1), poly.trim((y,), p))
    same_curve(curve, P2.curve)
    x1, y1, x2, y2 = P1.x, P1.y, P2.x, P2.y
    if P1.degree == 2 or P2.degree == 2:
        if P2 != P1.frobenius():
            raise InvalidDivisorError("points over F_{p^2} must form a conjugate pair")
    if x1 == x2:
        if y1 != y2 or y1 == 0:
            raise NotReducedError("support contains P and -P")
        slope = curve.df_at(x1) / (2 * y1)
        v1c, v0c = slope, y1 - slope * x1
        u1c, u0c = -2 * x1, x1 * x1
    else:
        v1c = (y1 - y2) / (x1 - x2)
        v0c = (x1 * y2 - x2 * y1) / (x1 - x2)
        u1c, u0c = -(x1 + x2), x1 * x2
    u = (_to_base(u0c) % p, _to_base(u1c) % p, 1)
    v = poly.trim((_to_base(v0c), _to_base(v1c)), p)
    return MumfordDivisor(curve, u, v)


def quadratic_roots(u0: int, u1: int, p: int) -> list:
    """Both roots of X^2 + u1 X + u0, repeated if double, in F_p or F_{p^2}."""
    disc = (u1 * u1 - 4 * u0) % p
    half = pow(2, -1, p)
    roots = sqrt_mod(disc, p)
    if roots:
        xs = [FieldElement((-u1 + r) * half, p) for r in roots]
        return xs * 2 if len(xs) == 1 else xs
    x = (Ext2Element(disc, 0, p).sqrt()[0] - u1) * half
    return [x, x.frobenius()]


def support(D: MumfordDivisor) -> list[AffinePoint]:
    """The points P_i of the reduced divisor, with multiplicity, over F_p or F_{p^2}."""
    curve, p = D.curve, D.p
    if D.is_identity():
        return []
    if len(D.u) == 2:
        x = (-D.u0) % p
        return [AffinePoint(curve, FieldElement(x, p), FieldElement(D.v0, p))]
    xs = quadratic_roots(D.u0, D.u1, p)
    return [AffinePoint(curve, x, poly.evaluate(D.v, x) if D.v else 0 * x) for x in xs]


def cantor_add(D1: MumfordDivisor, D2: MumfordDivisor) -> MumfordDivisor:
    """D1 + D2 by Cantor composition followed by reduction."""
    curve = same_curve(D1.curve, D2.curve)
    if D1.u == poly.ONE:
        return D2
    if D2.u == poly.ONE:
        return D1
    p, f = curve.p, curve.f
    u1, v1, u2, v2 = D1.u, D1.v, D2.u, D2.v

    d1, e1, e2 = poly.xgcd(u1, u2, p)
    if d1 == poly.ONE:
        d = poly.ONE
        s1, s2, s3 = e1, e2, poly.ZERO
    else:
        d, c1, c2 = poly.xgcd(d1, poly.add(v1, v2, p), p)
        s1, s2, s3 = poly.mul(c1, e1, p), poly.mul(c1, e2, p), c2
    u = poly.mul(u1, u2, p)
    num = poly.add(poly.mul(poly.mul(s1, u1, p), v2, p), poly.mul(poly.mul(s2, u2, p), v1, p), p)
    if s3:
        num = poly.add(num, poly.mul(s3, poly.add(poly.mul(v1, v2, p), f, p), p), p)
    if d != poly.ONE:
        u = poly.div_exact(u, poly.mul(d, d, p), p)
        num = poly.div_exact(num, d, p)
    v = poly.mod(num, u, p)

    while poly.deg(u) > 2:
        u = poly.monic(poly.div_exact(poly.sub(f, poly.mul(v, v, p), p), u, p), p)
        v = poly.mod(poly.neg(v, p), u, p)
    return MumfordDivisor(curve, u, v)


def negate(D: MumfordDivisor) -> MumfordDivisor:
    return MumfordDivisor(D.curve, D.u, poly.neg(D.v, D.p))


def scalar_mul(n: int, D: MumfordDivisor) -> MumfordDivisor:
    """nD by left-to-right double-and-add; negative n multiplies -D."""
    if n < 0:
        return scalar_mul(-n, negate(D))
    result = identity(D.curve)
    for bit in bin(n)[2:]:
        result = cantor_add(result, result)
        if bit == "1":
            result = cantor_add(result, D)
    return result


def is_in_theta(D: MumfordDivisor) -> bool:
    """True on the theta locus, taken here to include the identity (deg u <= 1)."""
    return len(D.u) <= 2


def factorize(n: int) -> list[tuple[int, int]]:
    """Trial division; group orders stay below ~2^42 under the prime cap."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out


@dataclass(frozen=True)
class GroupInfo:
    order: int
    factorization: tuple[tuple[int, int], ...]
    n1: int
    n2: int


def zeta_order(p: int, n1: int, n2: int) -> int:
    """|J(F_p)| = L(1) from the first two point counts of the curve."""
    a1 = n1 - p - 1
    a2, rem = divmod((p + 1 - n1) ** 2 - (p * p + 1 - n2), 2)
    if rem:
        raise ArithmeticError("inconsistent point counts")
    return 1 + a1 * (1 + p) + a2 + p * p


def jacobian_bounds_ok(p: int, order: int) -> bool:
    """(sqrt p - 1)^4 <= order <= (sqrt p + 1)^4 without floating point.

    (sqrt p -/+ 1)^4 = p^2 + 6p + 1 -/+ 4(p+1) sqrt p, so both bounds together
    read |order - (p^2 + 6p + 1)| <= 4(p+1) sqrt p.
    """
    gap = order - (p * p + 6 * p + 1)
    return gap * gap <= 16 * (p + 1) ** 2 * p


def group_order(curve: Curve) -> GroupInfo:
    counts = point_counts(curve)
    order = zeta_order(curve.p, counts.n1, counts.n2)
    return GroupInfo(order, tuple(factorize(order)), counts.n1, counts.n2)


def element_order(D: MumfordDivisor, info: GroupInfo) -> int:
    """Least t >= 1 with tD = 0, by stripping prime factors from |J|."""
    t = info.order
    for q, e in info.factorization:
        for _ in range(e):
            if scalar_mul(t // q, D).is_identity():
                t //= q
            else:
                break
    return t


def naive_order(D: MumfordDivisor, limit: int | None = None) -> int:
    """Order by repeated addition; oracle for small groups."""
    acc, t = D, 1
    while not acc.is_identity():
        acc = cantor_add(acc, D)
        t += 1
        if limit is not None and t > limit:
            raise ResourceLimitError(f"order exceeds {limit}")
    return t


def _quadratic_v_choices(curve: Curve, u0: int, u1: int) -> list[poly.Poly]:
    """Every v with [X^2 + u1 X + u0, v] a valid reduced divisor, ascending."""
    p = curve.p
    xs = quadratic_roots(u0, u1, p)
    out = []
    if xs[0] == xs[1]:
        y2 = curve.f_at(xs[0])
        for y in y2.sqrt():
            if y:
                out.append(divisor_from_points(AffinePoint(curve, xs[0], y), AffinePoint(curve, xs[0], y)).v)
    elif isinstance(xs[0], Ext2Element):
        for y in curve.f_at(xs[0]).sqrt():
            P = AffinePoint(curve, xs[0], y)
            out.append(divisor_from_points(P, P.frobenius()).v)
    else:
        for y1 in curve.f_at(xs[0]).sqrt():
            for y2 in curve.f_at(xs[1]).sqrt():
                out.append(divisor_from_points(AffinePoint(curve, xs[0], y1), AffinePoint(curve, xs[1], y2)).v)
    return sorted(set(out))


def random_element(curve: Curve, rng: random.Random) -> MumfordDivisor:
    """Uniform element of J_C(F_p) by rejection over (u, v-slot) pairs.

    Every u of degree d <= 2 owns 2^d slots, at least as many as its valid v's,
    so accepting a uniform slot that maps to a valid v is uniform on the group.
    """
    p = curve.p
    n_slots = 4 * p * p + 2 * p + 1
    while True:
        k = rng.randrange(n_slots)
        if k == 0:
            return identity(curve)
        k -= 1
        if k < 2 * p:
            x, slot = divmod(k, 2)
            roots = sqrt_mod(poly.eval_mod(curve.f, x, p), p)
            if slot < len(roots):
                return MumfordDivisor(curve, ((-x) % p, 1), poly.trim((roots[slot],), p))
            continue
        k -= 2 * p
        code, slot = divmod(k, 4)
        u0, u1 = divmod(code, p)
        choices = _quadratic_v_choices(curve, u0, u1)
        if slot < len(choices):
            return MumfordDivisor(curve, (u0, u1, 1), choices[slot])


def enumerate_jacobian(curve: Curve) -> list[MumfordDivisor]:
    """Every valid Mumford pair, by brute force over all (u, v); p <= 13 only."""
    p = curve.p
    if p > MAX_JACOBIAN_ENUM_PRIME:
        raise ResourceLimitError(f"exhaustive Jacobian enumeration refused for p = {p} > 13")
    f = curve.f
    out = [identity(curve)]
    for x in range(p):
        u = ((-x) % p, 1)
        for v0 in range(p):
            v = poly.trim((v0,), p)
            if not poly.mod(poly.sub(f, poly.mul(v, v, p), p), u, p):
                out.append(MumfordDivisor(curve, u, v))
    for u0 in range(p):
        for u1 in range(p):
            u = (u0, u1, 1)
            for v0 in range(p):
                for v1 in range(p):
                    v = poly.trim((v0, v1), p)
                    if not poly.mod(poly.sub(f, poly.mul(v, v, p), p), u, p):
                        out.append(MumfordDivisor(curve, u, v))
    return out


def theta_points(curve: Curve) -> list[MumfordDivisor]:
    """Theta(F_p) including the identity: one element per point of C(F_p)."""
    pts, _ = enumerate_points(curve, 1)
    return [identity(curve)] + [divisor_from_points(P) for P in pts]
