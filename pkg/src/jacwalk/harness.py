"""Experiment orchestration: curve search, linear-complexity runs, lemma sweeps, export."""

from __future__ import annotations

import csv
import dataclasses
import io
import json
import math
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from .curve import Curve, hasse_weil_ok
from .errors import JacwalkError, InvariantViolation, ResourceLimitError, SearchExhaustedError, SingularCurveError
from .field import check_prime
from .generator import MUMFORD_TAGS, CoordinateFunction, WalkConfig, walk
from .grant import LEMMA_COMMON_ZERO_BOUND, u_table
from .jacobian import (
    MAX_JACOBIAN_ENUM_PRIME,
    GroupInfo,
    MumfordDivisor,
    element_order,
    factorize,
    group_order,
    is_in_theta,
    jacobian_bounds_ok,
    random_element,
    scalar_mul,
    support,
    theta_points,
)
from .lincomp import DEFAULT_C, berlekamp_massey, empirical_ratio, theorem_lower_bound

SEARCH_PRIME_LIMIT = 1 << 13  # group_order needs #C(F_{p^2})
LEMMA_THETA_BOUND = 2
ORDER_ATTEMPTS = 24


def _rng(seed: int, *parts) -> random.Random:
    # str seeds go through sha512, so this is stable across runs and platforms
    return random.Random(":".join(str(x) for x in (seed, *parts)))


@dataclass(frozen=True)
class ExperimentConfig:
    primes: tuple[int, ...]
    curves_per_prime: int = 4
    tags: tuple[str, ...] = MUMFORD_TAGS
    n_max: int = 2000
    c: Fraction = DEFAULT_C
    seed: int = 0
    out: str | None = None
    workers: int = 1

    def __post_init__(self):
        for p in self.primes:
            check_prime(p)
            if p > SEARCH_PRIME_LIMIT:
                raise ResourceLimitError(f"p = {p} above the search cap 2^13")
        for tag in self.tags:
            CoordinateFunction(tag)
        if self.curves_per_prime < 1 or self.n_max < 1:
            raise ValueError("curves_per_prime and n_max must be positive")
        if not 0 <= self.seed < 1 << 64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        object.__setattr__(self, "c", Fraction(self.c))

    @classmethod
    def from_json(cls, obj: dict, **overrides) -> ExperimentConfig:
        kw = {
            "primes": tuple(int(p) for p in obj["primes"]),
            "curves_per_prime": int(obj.get("curves_per_prime", 4)),
            "tags": tuple(obj.get("tags", MUMFORD_TAGS)),
            "n_max": int(obj.get("n_max", 2000)),
            "c": Fraction(int(obj.get("c_num", 1)), int(obj.get("c_den", 1296))),
            "seed": int(obj.get("seed", 0)),
        }
        kw.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**kw)


@dataclass(frozen=True)
class CurveChoice:
    curve: Curve
    D: MumfordDivisor
    t: int
    info: GroupInfo

    def to_json(self) -> dict:
        return {
            "curve": self.curve.to_json(),
            "group_order": self.info.order,
            "n1": self.info.n1,
            "n2": self.info.n2,
            "D": self.D.to_json(),
            "t": self.t,
        }


def _combine(D1: MumfordDivisor, t1: int, D2: MumfordDivisor, t2: int) -> tuple[MumfordDivisor, int]:
    """An element of order lcm(t1, t2), prime by prime from whichever has more."""
    out, t = None, 1
    for q, _ in factorize(math.lcm(t1, t2)):
        e1 = e2 = 1
        while t1 % (e1 * q) == 0:
            e1 *= q
        while t2 % (e2 * q) == 0:
            e2 *= q
        part = scalar_mul(t1 // e1, D1) if e1 >= e2 else scalar_mul(t2 // e2, D2)
        out = part if out is None else out + part
        t *= max(e1, e2)
    return (out if out is not None else D1), t


def max_order_element(curve: Curve, info: GroupInfo, rng: random.Random, attempts: int = ORDER_ATTEMPTS):
    D = random_element(curve, rng)
    t = element_order(D, info)
    for _ in range(attempts):
        if t == info.order:
            break
        E = random_element(curve, rng)
        s = element_order(E, info)
        if math.lcm(t, s) > t:
            D, t = _combine(D, t, E, s)
    return D, t


def find_curves(p: int, count: int, seed: int) -> list[CurveChoice]:
    """Sample 2*count distinct nonsingular curves, keep the count with largest t."""
    check_prime(p)
    if p > SEARCH_PRIME_LIMIT:
        raise ResourceLimitError(f"p = {p} above the search cap 2^13")
    rng = _rng(seed, "curves", p)
    pool: list[CurveChoice] = []
    seen = set()
    budget = 200 * count + 1000
    while len(pool) < 2 * count:
        budget -= 1
        if budget < 0:
            if len(pool) >= count:
                break
            raise SearchExhaustedError(f"found only {len(pool)} curves over F_{p}")
        b = tuple(rng.randrange(p) for _ in range(5))
        if b in seen:
            continue
        seen.add(b)
        try:
            curve = Curve(p, b)
        except SingularCurveError:
            continue
        info = group_order(curve)
        if not (hasse_weil_ok(p, info.n1) and jacobian_bounds_ok(p, info.order)):
            raise InvariantViolation(f"{curve} fails the Hasse-Weil bounds", curve.to_json())
        D, t = max_order_element(curve, info, rng)
        pool.append(CurveChoice(curve, D, t, info))
    ranked = sorted(range(len(pool)), key=lambda i: (-pool[i].t, i))[:count]
    return [pool[i] for i in sorted(ranked)]


RECORD_FIELDS = (
    "p", "b1", "b2", "b3", "b4", "b5", "group_order", "t", "tag", "deg_h", "N", "L",
    "bound", "conjecture_target", "conjecture_met", "poles", "ratio", "error", "wall_time",
)


@dataclass
class ExperimentRecord:
    p: int
    b1: int
    b2: int
    b3: int
    b4: int
    b5: int
    group_order: int
    t: int
    tag: str
    deg_h: int
    N: int
    L: int | None
    bound: int | None
    conjecture_target: int
    conjecture_met: bool | None  # None: N < t, so L(w, t) was not computed
    poles: int | None
    ratio: float | None
    error: str | None = None
    wall_time: float = field(default=0.0, compare=False)

    @property
    def bound_ok(self) -> bool | None:
        return None if self.L is None else self.L >= self.bound

    def to_json(self, timing: bool = False) -> dict:
        d = dataclasses.asdict(self)
        if not timing:
            del d["wall_time"]
        return d

    @classmethod
    def from_json(cls, obj: dict) -> ExperimentRecord:
        return cls(**obj)


def _run_curve(choice: CurveChoice, tags, n_max: int, c: Fraction, seed: int, index: int) -> list[ExperimentRecord]:
    curve, p, t = choice.curve, choice.curve.p, choice.t
    W0 = random_element(curve, _rng(seed, "w0", p, index))
    cfg = WalkConfig(curve, choice.D, W0, t)
    N = min(t, n_max)
    walk_points = list(walk(cfg, N))
    records = []
    for tag in tags:
        h = CoordinateFunction(tag)
        start = time.perf_counter()
        rec = ExperimentRecord(
            p, *curve.b, choice.info.order, t, tag, h.degree, N, None, None, -(-t // 2), None, None, None
        )
        try:
            values = [h(W) for W in walk_points]
            rec.poles = sum(v is None for v in values)
            rec.L = berlekamp_massey([0 if v is None else v for v in values], p).L
            rec.bound = theorem_lower_bound(p, t, N, h.degree, c)
            rec.ratio = empirical_ratio(rec.L, p, t, N, h.degree)
            rec.conjecture_met = rec.L == rec.conjecture_target if N == t else None
        except JacwalkError as exc:
            rec.error = f"{type(exc).__name__}: {exc}"
        rec.wall_time = time.perf_counter() - start
        records.append(rec)
    return records


def run_experiment(cfg: ExperimentConfig) -> list[ExperimentRecord]:
    """Records ordered by (p, curve index, tag position in the config)."""
    jobs = []
    for p in cfg.primes:
        for i, choice in enumerate(find_curves(p, cfg.curves_per_prime, cfg.seed)):
            jobs.append((choice, cfg.tags, cfg.n_max, cfg.c, cfg.seed, i))
    if cfg.workers > 1:
        with ProcessPoolExecutor(cfg.workers) as pool:
            chunks = list(pool.map(_run_curve, *zip(*jobs)))
    else:
        chunks = [_run_curve(*job) for job in jobs]
    return [r for chunk in chunks for r in chunk]


@dataclass(frozen=True)
class ExperimentSummary:
    records: int
    errors: int
    bound_violations: int
    nontrivial_bounds: int
    conjecture_evaluable: int
    conjecture_met: int
    min_ratio: float | None
    max_ratio: float | None

    @property
    def conjecture_fraction(self) -> float | None:
        if not self.conjecture_evaluable:
            return None
        return self.conjecture_met / self.conjecture_evaluable

    def to_json(self) -> dict:
        d = dataclasses.asdict(self)
        d["conjecture_fraction"] = self.conjecture_fraction
        return d


def summarize(records: list[ExperimentRecord]) -> ExperimentSummary:
    done = [r for r in records if r.error is None]
    ratios = [r.ratio for r in done if r.ratio is not None and r.t > 1]
    evaluable = [r for r in done if r.conjecture_met is not None]
    return ExperimentSummary(
        records=len(records),
        errors=len(records) - len(done),
        bound_violations=sum(not r.bound_ok for r in done),
        nontrivial_bounds=sum(r.bound > 0 for r in done),
        conjecture_evaluable=len(evaluable),
        conjecture_met=sum(r.conjecture_met for r in evaluable),
        min_ratio=min(ratios, default=None),
        max_ratio=max(ratios, default=None),
    )


def export(records, fmt: str = "csv", path=None, timing: bool = False) -> str:
    """Serialise records; identical records give identical bytes.

    wall_time is left out unless ``timing`` is set, since it is the only
    field that differs between otherwise identical runs.
    """
    records = list(records)
    if not records:
        raise ValueError("nothing to export")
    cols = RECORD_FIELDS if timing else RECORD_FIELDS[:-1]
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(cols)
        for r in records:
            row = r.to_json(timing)
            w.writerow(["" if row[k] is None else row[k] for k in cols])
        text = buf.getvalue()
    elif fmt == "json":
        text = json.dumps([r.to_json(timing) for r in records], indent=1) + "\n"
    else:
        raise ValueError(f"unknown format {fmt!r}")
    if path is not None:
        try:
            Path(path).write_text(text, encoding="utf-8", newline="")
        except OSError as exc:
            raise OSError(f"cannot write {path}: {exc}") from exc
    return text


def load_records(text: str) -> list[ExperimentRecord]:
    return [ExperimentRecord.from_json(o) for o in json.loads(text)]


def theta_translate_intersection(D: MumfordDivisor, theta=None) -> int:
    """|(Theta(F_p) + D) cap Theta(F_p)|."""
    theta = theta_points(D.curve) if theta is None else theta
    return sum(1 for T in theta if is_in_theta(T + D))


@dataclass
class LemmaReport:
    p: int
    curve: Curve
    u_size: int
    theta_size: int
    max_theta_intersection: int
    theta_histogram: dict[int, int]
    pairs_checked: int
    max_common_zeros: int
    translates_contained: bool

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "curve": self.curve.to_json(),
            "u_size": self.u_size,
            "theta_size": self.theta_size,
            "max_theta_intersection": self.max_theta_intersection,
            "theta_histogram": {str(k): v for k, v in sorted(self.theta_histogram.items())},
            "pairs_checked": self.pairs_checked,
            "max_common_zeros": self.max_common_zeros,
            "translates_contained": self.translates_contained,
        }


def verify_lemmas(p: int, curve: Curve) -> LemmaReport:
    """Exhaustive sweeps of the <= 2 Theta-translate and <= 20 common-zero bounds.

    Every D in U(F_p) and every pair (R, R') with R' != +-R is checked, which
    at p <= 13 is cheaper than sampling. Raises InvariantViolation on failure.
    """
    if curve.p != p:
        raise ValueError("curve is over a different field")
    if p > MAX_JACOBIAN_ENUM_PRIME:
        raise ResourceLimitError(f"lemma sweeps need p <= {MAX_JACOBIAN_ENUM_PRIME}")
    theta = theta_points(curve)
    table = u_table(curve)
    hist: dict[int, int] = {}
    for D in table.divisors:
        k = theta_translate_intersection(D, theta)
        hist[k] = hist.get(k, 0) + 1
        if k > LEMMA_THETA_BOUND:
            raise InvariantViolation(f"Theta + D meets Theta in {k} points", {"curve": curve.to_json(), "D": D.to_json()})

    Z = table.zeros.astype(np.int64)
    common = Z.T @ Z
    n = len(table.divisors)
    neg = [table.index(-D) for D in table.divisors]
    mask = np.ones((n, n), dtype=bool)
    mask[np.arange(n), np.arange(n)] = False
    mask[np.arange(n), neg] = False
    checked = int(mask.sum())
    worst = int(common[mask].max()) if checked else 0
    if worst > LEMMA_COMMON_ZERO_BOUND:
        i, j = np.argwhere(mask & (common == worst))[0]
        raise InvariantViolation(
            f"q_R and q_R' share {worst} zeros on U",
            {"curve": curve.to_json(), "R": table.points[i].to_json(), "R'": table.points[j].to_json()},
        )

    contained = True
    for T in theta:
        for r, D in enumerate(table.divisors):
            for Q in (T + D, T - D):
                if not is_in_theta(Q) and not table.zeros[table.index(Q), r]:
                    contained = False
    return LemmaReport(p, curve, n, len(theta), max(hist, default=0), hist, checked, worst, contained)


def split_support_expectation(D: MumfordDivisor) -> int | None:
    """Theta-translate count predicted for D = P + Q: 2 for F_p-split, 0 for conjugate."""
    P1, P2 = support(D)
    if P1.degree == 2:
        return 0
    if P1.x != P2.x:
        return 2
    return None
