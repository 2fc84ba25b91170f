"""Prime fields F_p and their quadratic extension F_{p^2}.

Elements are small immutable value objects with operator overloading, so the
curve and Grant formulas can be written once and evaluated over either field.
Hot loops (Cantor's algorithm, Berlekamp-Massey) bypass these classes and work
on plain ``int`` residues; see :mod:`jacwalk.poly`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import CharacteristicError, FieldMismatchError

MAX_PRIME = 1 << 20


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin; the witness set is exact for n < 3.3e24."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def check_prime(p: int) -> int:
    """Validate ``p`` as a supported odd prime and return it."""
    if not isinstance(p, int) or isinstance(p, bool):
        raise CharacteristicError(f"modulus must be an int, got {p!r}")
    if p == 2:
        raise CharacteristicError("characteristic 2 is not supported")
    if not 3 <= p < MAX_PRIME or not is_prime(p):
        raise CharacteristicError(f"{p} is not an odd prime below 2^20")
    return p


def legendre(a: int, p: int) -> int:
    """Quadratic character of ``a`` mod ``p`` with the convention chi(0) = 0."""
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


@lru_cache(maxsize=None)
def nonresidue(p: int) -> int:
    """Smallest quadratic non-residue >= 2 modulo ``p``."""
    for a in range(2, p):
        if legendre(a, p) == -1:
            return a
    raise CharacteristicError(f"no quadratic non-residue mod {p}")


def sqrt_mod(a: int, p: int) -> tuple[int, ...]:
    """All square roots of ``a`` mod ``p`` via Tonelli-Shanks, ascending.

    Returns ``()`` for a non-residue and ``(0,)`` for zero.
    """
    a %= p
    if a == 0:
        return (0,)
    if legendre(a, p) != 1:
        return ()
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = nonresidue(p)
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return tuple(sorted((r, p - r)))


@dataclass(frozen=True, slots=True)
class FieldElement:
    """Canonical residue ``value`` in F_p."""

    value: int
    p: int

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % self.p)

    def _coerce(self, other) -> int | None:
        if isinstance(other, FieldElement):
            if other.p != self.p:
                raise FieldMismatchError(f"F_{self.p} vs F_{other.p}")
            return other.value
        if isinstance(other, int):
            return other
        return None

    def __add__(self, other):
        if isinstance(other, Ext2Element):
            return other + self
        o = self._coerce(other)
        return NotImplemented if o is None else FieldElement(self.value + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Ext2Element):
            return -other + self
        o = self._coerce(other)
        return NotImplemented if o is None else FieldElement(self.value - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else FieldElement(o - self.value, self.p)

    def __mul__(self, other):
        if isinstance(other, Ext2Element):
            return other * self
        o = self._coerce(other)
        return NotImplemented if o is None else FieldElement(self.value * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(-self.value, self.p)

    def inverse(self) -> FieldElement:
        if self.value == 0:
            raise ZeroDivisionError(f"0 has no inverse in F_{self.p}")
        return FieldElement(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        if isinstance(other, Ext2Element):
            return other.inverse() * self
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * FieldElement(o, self.p).inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else self.inverse() * o

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** -n
        return FieldElement(pow(self.value, n, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        if isinstance(other, Ext2Element):
            return other == self
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __int__(self):
        return self.value

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"{self.value} (mod {self.p})"

    def sqrt(self) -> tuple[FieldElement, ...]:
        return field_sqrt(self)

    def is_square(self) -> bool:
        return legendre(self.value, self.p) >= 0


def field_sqrt(x: FieldElement) -> tuple[FieldElement, ...]:
    """Square roots of ``x``: two for a non-zero residue, ``(0,)`` for 0, else none."""
    return tuple(FieldElement(r, x.p) for r in sqrt_mod(x.value, x.p))


@dataclass(frozen=True, slots=True)
class Ext2Element:
    """``a0 + a1*tau`` in F_{p^2} = F_p[tau]/(tau^2 - nu), nu = ``nonresidue(p)``."""

    a0: int
    a1: int
    p: int

    def __post_init__(self):
        object.__setattr__(self, "a0", self.a0 % self.p)
        object.__setattr__(self, "a1", self.a1 % self.p)

    @property
    def nu(self) -> int:
        return nonresidue(self.p)

    @classmethod
    def tau(cls, p: int) -> Ext2Element:
        return cls(0, 1, p)

    def _coerce(self, other) -> tuple[int, int] | None:
        if isinstance(other, Ext2Element):
            if other.p != self.p:
                raise FieldMismatchError(f"F_{self.p}^2 vs F_{other.p}^2")
            return other.a0, other.a1
        if isinstance(other, FieldElement):
            if other.p != self.p:
                raise FieldMismatchError(f"F_{self.p}^2 vs F_{other.p}")
            return other.value, 0
        if isinstance(other, int):
            return other, 0
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Ext2Element(self.a0 + o[0], self.a1 + o[1], self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Ext2Element(self.a0 - o[0], self.a1 - o[1], self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Ext2Element(o[0] - self.a0, o[1] - self.a1, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        b0, b1 = o
        return Ext2Element(
            self.a0 * b0 + self.nu * self.a1 * b1, self.a0 * b1 + self.a1 * b0, self.p
        )

    __rmul__ = __mul__

    def __neg__(self):
        return Ext2Element(-self.a0, -self.a1, self.p)

    def norm(self) -> int:
        """N(x) = x * frobenius(x), an element of F_p."""
        return (self.a0 * self.a0 - self.nu * self.a1 * self.a1) % self.p

    def frobenius(self) -> Ext2Element:
        # tau^p = nu^((p-1)/2) tau = -tau
        return Ext2Element(self.a0, -self.a1, self.p)

    def inverse(self) -> Ext2Element:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError(f"0 has no inverse in F_{self.p}^2")
        ni = pow(n, -1, self.p)
        return Ext2Element(self.a0 * ni, -self.a1 * ni, self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * Ext2Element(o[0], o[1], self.p).inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Ext2Element(o[0], o[1], self.p) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** -n
        result, base = Ext2Element(1, 0, self.p), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        try:
            o = self._coerce(other)
        except FieldMismatchError:
            return False
        if o is None:
            return NotImplemented
        return self.a0 == o[0] % self.p and self.a1 == o[1] % self.p

    def __hash__(self):
        if self.a1 == 0:
            return hash((self.a0, self.p))
        return hash((self.a0, self.a1, self.p))

    def __bool__(self):
        return self.a0 != 0 or self.a1 != 0

    def __repr__(self):
        return f"{self.a0}+{self.a1}t (mod {self.p}, t^2={self.nu})"

    def in_base_field(self) -> bool:
        return self.a1 == 0

    def to_base(self) -> FieldElement:
        if self.a1:
            raise ValueError(f"{self!r} is not in F_{self.p}")
        return FieldElement(self.a0, self.p)

    def is_square(self) -> bool:
        return legendre(self.norm(), self.p) >= 0

    def sqrt(self) -> tuple[Ext2Element, ...]:
        return ext2_sqrt(self)


def ext2_sqrt(x: Ext2Element) -> tuple[Ext2Element, ...]:
    """Square roots in F_{p^2} through the norm map (no generic exponentiation)."""
    p, nu = x.p, x.nu
    if not x:
        return (x,)
    if x.a1 == 0:
        roots = sqrt_mod(x.a0, p)
        if roots:
            return tuple(Ext2Element(r, 0, p) for r in roots)
        # a0 non-residue in F_p, so a0/nu is a residue and (s tau)^2 = a0
        s = sqrt_mod(x.a0 * pow(nu, -1, p), p)
        return tuple(sorted((Ext2Element(0, s[0], p), Ext2Element(0, s[1], p)), key=_ext2_key))
    n = sqrt_mod(x.norm(), p)
    if not n:
        return ()
    half = pow(2, -1, p)
    for r in n:
        c0 = sqrt_mod((x.a0 + r) * half, p)
        if c0 and c0[0] != 0:
            c = c0[0]
            c1 = x.a1 * pow(2 * c, -1, p)
            y = Ext2Element(c, c1, p)
            return tuple(sorted((y, -y), key=_ext2_key))
    raise ArithmeticError(f"square root of {x!r} not found")  # unreachable


def _ext2_key(e: Ext2Element) -> tuple[int, int]:
    return (e.a1, e.a0)


def ext2_elements(p: int):
    """Iterate all of F_{p^2}, F_p first, then by (a1, a0)."""
    for a1 in range(p):
        for a0 in range(p):
            yield Ext2Element(a0, a1, p)
