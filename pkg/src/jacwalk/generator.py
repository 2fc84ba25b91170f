"""The walk W_n = nD + W_0 on J_C(F_p) and its coordinate output streams."""

from __future__ import annotations

import csv
from dataclasses import dataclass

from .curve import Curve, point_counts, same_curve
from .errors import InvariantViolation, ResourceLimitError
from .field import FieldElement
from .grant import COORDS, grant_embed
from .jacobian import MumfordDivisor, cantor_add, is_in_theta, scalar_mul

MAX_CENSUS_PERIOD = 1 << 24

MUMFORD_TAGS = ("u0", "u1", "v0", "v1")
GRANT_TAGS = tuple(c for c in COORDS if c != "z0")
TAGS = MUMFORD_TAGS + GRANT_TAGS

# u0 = -z12, u1 = -z22, v0 = z122, v1 = z222 on U
MUMFORD_TO_GRANT = {"u0": ("z12", -1), "u1": ("z22", -1), "v0": ("z122", 1), "v1": ("z222", 1)}


@dataclass(frozen=True)
class WalkConfig:
    curve: Curve
    D: MumfordDivisor
    W0: MumfordDivisor
    t: int

    def __post_init__(self):
        same_curve(self.curve, self.D.curve, self.W0.curve)
        if self.t < 1:
            raise ValueError("order t must be >= 1")


@dataclass(frozen=True)
class CoordinateFunction:
    """Output map h: U -> F_p named by a coordinate tag.

    Every tag is a single affine coordinate of U, so deg h = 1 throughout.
    """

    tag: str
    degree: int = 1

    def __post_init__(self):
        if self.tag == "u2":
            raise ValueError("u2 is constant on U and not a usable output")
        if self.tag not in TAGS:
            raise ValueError(f"unknown coordinate tag {self.tag!r}")

    def __call__(self, W: MumfordDivisor) -> int | None:
        """Value at W, or None when W is in Theta (a pole)."""
        if is_in_theta(W):
            return None
        if self.tag in MUMFORD_TAGS:
            return getattr(W, self.tag)
        return grant_embed(W)[self.tag]


def coordinate(tag: str) -> CoordinateFunction:
    return CoordinateFunction(tag)


@dataclass(frozen=True)
class OutputStream:
    values: tuple[int, ...]
    pole_positions: frozenset[int]
    p: int

    def __len__(self):
        return len(self.values)

    def field_values(self) -> list[FieldElement]:
        return [FieldElement(v, self.p) for v in self.values]

    def write_csv(self, fh) -> None:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["n", "w_n", "is_pole"])
        for n, v in enumerate(self.values):
            w.writerow([n, v, int(n in self.pole_positions)])


def walk_nth(cfg: WalkConfig, n: int) -> MumfordDivisor:
    if n < 0:
        raise ValueError("n must be >= 0")
    return scalar_mul(n % cfg.t, cfg.D) + cfg.W0


def walk(cfg: WalkConfig, N: int):
    """Yield W_0, ..., W_{N-1} by repeated addition of D."""
    W = cfg.W0
    for _ in range(N):
        yield W
        W = cantor_add(W, cfg.D)


def emit_stream(cfg: WalkConfig, h: CoordinateFunction | str, N: int) -> OutputStream:
    if N < 1:
        raise ValueError("N must be >= 1")
    if isinstance(h, str):
        h = CoordinateFunction(h)
    values, poles = [], set()
    for n, W in enumerate(walk(cfg, N)):
        v = h(W)
        if v is None:
            poles.add(n)
            v = 0
        values.append(v)
    return OutputStream(tuple(values), frozenset(poles), cfg.curve.p)


@dataclass(frozen=True)
class ThetaCensus:
    t: int
    hits: int
    theta_size: int

    def to_json(self) -> dict:
        return {"t": self.t, "hits": self.hits, "theta_size": self.theta_size}


def theta_hit_census(cfg: WalkConfig) -> ThetaCensus:
    """Count n in [0, t) with W_n in Theta; never more than |Theta(F_p)| = #C(F_p)."""
    if cfg.t > MAX_CENSUS_PERIOD:
        raise ResourceLimitError(f"t = {cfg.t} exceeds the census cap 2^24")
    hits = sum(1 for W in walk(cfg, cfg.t) if is_in_theta(W))
    size = point_counts(cfg.curve, with_ext2=False).n1
    if hits > size:
        raise InvariantViolation(f"{hits} Theta hits exceed |Theta| = {size}", cfg)
    return ThetaCensus(cfg.t, hits, size)
