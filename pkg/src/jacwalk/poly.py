"""Dense univariate polynomials over F_p on plain integer tuples.

A polynomial is a tuple of canonical residues in ascending degree order with no
trailing zeros; the zero polynomial is ``()``. Every function takes the modulus
explicitly so there is no per-coefficient object overhead.
"""

from __future__ import annotations

Poly = tuple[int, ...]

ZERO: Poly = ()
ONE: Poly = (1,)


def trim(a, p: int) -> Poly:
    coeffs = [c % p for c in a]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def deg(a: Poly) -> int:
    """Degree, with deg(0) = -1."""
    return len(a) - 1


def add(a: Poly, b: Poly, p: int) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % p
    return trim(out, p)


def sub(a: Poly, b: Poly, p: int) -> Poly:
    return add(a, neg(b, p), p)


def neg(a: Poly, p: int) -> Poly:
    return tuple((-c) % p for c in a)


def scale(a: Poly, k: int, p: int) -> Poly:
    return trim((c * k for c in a), p)


def mul(a: Poly, b: Poly, p: int) -> Poly:
    if not a or not b:
        return ZERO
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return trim(out, p)


def divmod_poly(a: Poly, b: Poly, p: int) -> tuple[Poly, Poly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    db = len(b) - 1
    if len(r) <= db:
        return ZERO, a
    inv_lead = pow(b[-1], -1, p)
    q = [0] * (len(r) - db)
    for k in range(len(r) - 1, db - 1, -1):
        c = r[k] * inv_lead % p
        if c:
            q[k - db] = c
            for j in range(db + 1):
                r[k - db + j] = (r[k - db + j] - c * b[j]) % p
    return trim(q, p), trim(r[:db], p)


def div_exact(a: Poly, b: Poly, p: int) -> Poly:
    q, r = divmod_poly(a, b, p)
    if r:
        raise ArithmeticError("non-exact polynomial division")
    return q


def mod(a: Poly, b: Poly, p: int) -> Poly:
    return divmod_poly(a, b, p)[1]


def monic(a: Poly, p: int) -> Poly:
    if not a or a[-1] == 1:
        return a
    return scale(a, pow(a[-1], -1, p), p)


def xgcd(a: Poly, b: Poly, p: int) -> tuple[Poly, Poly, Poly]:
    """Return (d, s, t) with d = s*a + t*b monic (or zero when a = b = 0)."""
    r0, r1 = a, b
    s0, s1 = ONE, ZERO
    t0, t1 = ZERO, ONE
    while r1:
        q, r = divmod_poly(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1, p), p)
        t0, t1 = t1, sub(t0, mul(q, t1, p), p)
    if not r0:
        return ZERO, ZERO, ZERO
    k = pow(r0[-1], -1, p)
    return scale(r0, k, p), scale(s0, k, p), scale(t0, k, p)


def gcd(a: Poly, b: Poly, p: int) -> Poly:
    return xgcd(a, b, p)[0]


def derivative(a: Poly, p: int) -> Poly:
    return trim((i * c for i, c in enumerate(a) if i), p)


def evaluate(a, x):
    """Horner evaluation; ``x`` may be an int, FieldElement or Ext2Element."""
    acc = 0 * x
    for c in reversed(a):
        acc = acc * x + c
    return acc


def eval_mod(a: Poly, x: int, p: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % p
    return acc
