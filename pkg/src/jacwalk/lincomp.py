"""Linear complexity over F_p: Berlekamp-Massey, profiles and a brute-force oracle."""

from __future__ import annotations

import csv
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import ResourceLimitError
from .field import FieldElement, check_prime

DEFAULT_C = Fraction(1, 1296)
BRUTE_MAX_LEN = 8
BRUTE_MAX_PRIME = 7


def _residues(s, p: int | None) -> tuple[np.ndarray, int]:
    seq = list(s)
    if p is None:
        for x in seq:
            if isinstance(x, FieldElement):
                p = x.p
                break
        else:
            raise ValueError("modulus required for an integer sequence")
    check_prime(p)
    vals = [x.value if isinstance(x, FieldElement) else int(x) % p for x in seq]
    return np.asarray(vals, dtype=np.int64), p


@dataclass(frozen=True)
class ConnectionPoly:
    """Recursion s_{n+L} = c_0 s_n + ... + c_{L-1} s_{n+L-1} over F_p."""

    coeffs: tuple[int, ...]
    L: int
    p: int

    def field_coeffs(self) -> list[FieldElement]:
        return [FieldElement(c, self.p) for c in self.coeffs]

    def generate(self, seed, n: int) -> list[int]:
        """Extend the first L terms of ``seed`` to length ``n``."""
        out = [int(x) % self.p for x in list(seed)[: self.L]]
        if self.L == 0:
            return [0] * n
        while len(out) < n:
            window = out[len(out) - self.L:]
            out.append(sum(c * w for c, w in zip(self.coeffs, window)) % self.p)
        return out[:n]

    def reproduces(self, s) -> bool:
        seq = [x.value if isinstance(x, FieldElement) else int(x) % self.p for x in s]
        return self.generate(seq, len(seq)) == seq


def _bm(s: np.ndarray, p: int, want_profile: bool):
    """Massey's LFSR synthesis.

    C is the usual connection polynomial 1 + C_1 x + ... with
    s_n + sum C_i s_{n-i} = 0. Returns (C, L, profile).
    """
    n = len(s)
    C = np.zeros(n + 1, dtype=np.int64)
    B = np.zeros(n + 1, dtype=np.int64)
    C[0] = B[0] = 1
    L, m, b = 0, 1, 1
    prof = [] if want_profile else None
    for k in range(n):
        # discrepancy d = s_k + sum_{i=1}^{L} C_i s_{k-i}
        if L:
            d = int((s[k] + (C[1:L + 1] * s[k - L:k][::-1] % p).sum()) % p)
        else:
            d = int(s[k])
        if d == 0:
            m += 1
        else:
            coef = d * pow(b, -1, p) % p
            span = n + 1 - m
            if 2 * L <= k:
                T = C.copy()
                C[m:] = (C[m:] - coef * B[:span]) % p
                L, B, b, m = k + 1 - L, T, d, 1
            else:
                C[m:] = (C[m:] - coef * B[:span]) % p
                m += 1
        if prof is not None:
            prof.append(L)
    return C, L, prof


def berlekamp_massey(s, p: int | None = None) -> ConnectionPoly:
    """Minimal recursion of the whole sequence; L = 0 iff it is all zeros."""
    arr, p = _residues(s, p)
    if len(arr) == 0:
        raise ValueError("sequence must be nonempty")
    C, L, _ = _bm(arr, p, False)
    # returned orientation: c_j multiplies s_{n+j}, so c_j = -C_{L-j}
    coeffs = tuple(int(-C[L - j]) % p for j in range(L))
    return ConnectionPoly(coeffs, L, p)


@dataclass(frozen=True)
class ComplexityProfile:
    """L(s, N) for N = 1..len; ``L_of_N[N - 1]`` is the N-th value."""

    L_of_N: tuple[int, ...]

    def __len__(self):
        return len(self.L_of_N)

    def at(self, N: int) -> int:
        if not 1 <= N <= len(self.L_of_N):
            raise IndexError(N)
        return self.L_of_N[N - 1]

    def is_monotone(self) -> bool:
        return all(a <= b for a, b in zip(self.L_of_N, self.L_of_N[1:]))

    def jumps_ok(self) -> bool:
        """Every increase at step N lands on N - L_old."""
        prev = 0
        for N, cur in enumerate(self.L_of_N, start=1):
            if cur != prev and cur + prev != N:
                return False
            prev = cur
        return True

    def write_csv(self, fh) -> None:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["N", "L"])
        for N, L in enumerate(self.L_of_N, start=1):
            w.writerow([N, L])


def profile(s, p: int | None = None) -> ComplexityProfile:
    arr, p = _residues(s, p)
    if len(arr) == 0:
        raise ValueError("sequence must be nonempty")
    return ComplexityProfile(tuple(_bm(arr, p, True)[2]))


def linear_complexity(s, p: int | None = None) -> int:
    return berlekamp_massey(s, p).L


def brute_force_lincomp(s, p: int) -> int:
    """Smallest L admitting coefficients c_0..c_{L-1} that regenerate s; exhaustive."""
    seq = [x.value if isinstance(x, FieldElement) else int(x) % p for x in s]
    n = len(seq)
    if n > BRUTE_MAX_LEN or p > BRUTE_MAX_PRIME:
        raise ResourceLimitError(f"brute force limited to len <= {BRUTE_MAX_LEN}, p <= {BRUTE_MAX_PRIME}")
    if n == 0:
        raise ValueError("sequence must be nonempty")
    for L in range(n):
        if L == 0:
            if not any(seq):
                return 0
            continue
        for c in itertools.product(range(p), repeat=L):
            if all(sum(ci * seq[k + i] for i, ci in enumerate(c)) % p == seq[k + L] for k in range(n - L)):
                return L
    return n


def theorem_lower_bound(q: int, t: int, N: int, deg_h: int, c=DEFAULT_C) -> int:
    """floor(c * min(t, N) / (q * deg h)), computed exactly."""
    if min(q, t, N, deg_h) <= 0:
        raise ValueError("all arguments must be positive")
    c = Fraction(c)
    if c <= 0:
        raise ValueError("c must be positive")
    return math.floor(c * min(t, N) / (q * deg_h))


def empirical_ratio(L: int, q: int, t: int, N: int, deg_h: int) -> float:
    """The constant the data actually supports: L q deg h / min(t, N)."""
    return L * q * deg_h / min(t, N)
