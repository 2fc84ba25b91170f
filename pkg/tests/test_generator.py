import io
import random

import pytest
from jacwalk.curve import point_counts
from jacwalk.generator import (
    TAGS,
    CoordinateFunction,
    WalkConfig,
    emit_stream,
    theta_hit_census,
    walk_nth,
)
from jacwalk.jacobian import (
    element_order,
    group_order,
    identity,
    is_in_theta,
    random_element,
    scalar_mul,
)

from oracles import SMALL_CURVES

C7 = SMALL_CURVES[0]


def make_cfg(curve, seed=0, W0=None):
    rng = random.Random(seed)
    info = group_order(curve)
    D = random_element(curve, rng)
    while element_order(D, info) < 5:
        D = random_element(curve, rng)
    W0 = random_element(curve, rng) if W0 is None else W0
    return WalkConfig(curve, D, W0, element_order(D, info))


def test_walk_nth():
    cfg = make_cfg(C7)
    assert walk_nth(cfg, 0) == cfg.W0
    assert walk_nth(cfg, cfg.t) == cfg.W0
    W = cfg.W0
    for _ in range(5):
        W = W + cfg.D
    assert walk_nth(cfg, 5) == W
    with pytest.raises(ValueError):
        walk_nth(cfg, -1)


def test_step_direct_agreement():
    cfg = make_cfg(SMALL_CURVES[6], seed=3)
    rng = random.Random(0)
    for _ in range(1000):
        n = rng.randrange(10**6)
        assert walk_nth(cfg, n + 1) == walk_nth(cfg, n) + cfg.D


def test_u2_rejected():
    with pytest.raises(ValueError):
        CoordinateFunction("u2")
    with pytest.raises(ValueError):
        CoordinateFunction("x")
    assert all(CoordinateFunction(t).degree == 1 for t in TAGS)


def test_identity_pole():
    cfg = make_cfg(C7, W0=identity(C7))
    s = emit_stream(cfg, "u0", 1)
    assert s.values == (0,) and s.pole_positions == {0}


@pytest.mark.parametrize("C", SMALL_CURVES[::3], ids=str)
def test_dictionary_streams(C):
    cfg = make_cfg(C, seed=C.p)
    N = cfg.t
    for m, g, sign in (("u0", "z12", -1), ("u1", "z22", -1), ("v0", "z122", 1), ("v1", "z222", 1)):
        a, b = emit_stream(cfg, m, N), emit_stream(cfg, g, N)
        assert a.pole_positions == b.pole_positions
        assert all(x == (sign * y) % C.p for x, y in zip(a.values, b.values))


def test_poles_and_periodicity():
    cfg = make_cfg(C7, seed=4)
    t = cfg.t
    for tag in ("u0", "v1", "z", "z111"):
        s = emit_stream(cfg, tag, 2 * t)
        assert s.values[:t] == s.values[t:]
        assert all(s.values[n] == 0 for n in s.pole_positions)
        direct = {n for n in range(2 * t) if is_in_theta(scalar_mul(n, cfg.D) + cfg.W0)}
        assert s.pole_positions == direct


def test_shift_covariance():
    cfg = make_cfg(SMALL_CURVES[4], seed=2)
    shifted = WalkConfig(cfg.curve, cfg.D, cfg.W0 + cfg.D, cfg.t)
    a = emit_stream(cfg, "v0", cfg.t).values
    b = emit_stream(shifted, "v0", cfg.t).values
    assert b == a[1:] + a[:1]


def test_census():
    for C in SMALL_CURVES:
        cfg = make_cfg(C, seed=1)
        rep = theta_hit_census(cfg)
        assert rep.hits <= rep.theta_size == point_counts(C, with_ext2=False).n1
    O = identity(C7)
    rep = theta_hit_census(WalkConfig(C7, O, O, 1))
    assert rep.hits == 1


def test_census_cyclic_full_orbit():
    # a generator of a cyclic group visits every element, so every Theta point
    for C in SMALL_CURVES:
        info = group_order(C)
        rng = random.Random(0)
        for _ in range(50):
            D = random_element(C, rng)
            if element_order(D, info) == info.order:
                rep = theta_hit_census(WalkConfig(C, D, identity(C), info.order))
                assert rep.hits == rep.theta_size
                break


def test_stream_csv():
    cfg = make_cfg(C7, W0=identity(C7))
    buf = io.StringIO()
    emit_stream(cfg, "u1", 3).write_csv(buf)
    lines = buf.getvalue().splitlines()
    assert lines[0] == "n,w_n,is_pole"
    assert lines[1] == "0,0,1"
    assert len(lines) == 4
