import random

import pytest
from hypothesis import given
from hypothesis import strategies as st
from jacwalk.errors import CharacteristicError, FieldMismatchError
from jacwalk.field import (
    Ext2Element,
    FieldElement,
    check_prime,
    ext2_elements,
    field_sqrt,
    is_prime,
    legendre,
    nonresidue,
    sqrt_mod,
)

PRIMES = [3, 5, 7, 11, 13, 101, 1009, 65537, 1000003]


def F(v, p=7):
    return FieldElement(v, p)


def test_basic_arith():
    assert F(3) + F(5) == F(1)
    assert F(4) * F(0) == 0
    assert F(6) * F(6) == 1
    assert -F(3) == F(4)
    assert F(2) - F(5) == F(4)
    assert 3 - F(5) == F(5)


def test_inverse():
    assert F(3).inverse() == F(5)
    for p in PRIMES:
        assert FieldElement(1, p).inverse() == 1
        assert FieldElement(p - 1, p).inverse() == p - 1
    with pytest.raises(ZeroDivisionError):
        F(0).inverse()
    with pytest.raises(ZeroDivisionError):
        F(1) / F(0)


def test_mismatch():
    with pytest.raises(FieldMismatchError):
        FieldElement(1, 7) + FieldElement(1, 11)


def test_sqrt_examples():
    assert set(field_sqrt(F(2))) == {F(3), F(4)}
    assert field_sqrt(F(0)) == (F(0),)
    assert field_sqrt(F(3)) == ()


@pytest.mark.parametrize("p", PRIMES)
def test_sqrt_mod_random(p):
    rng = random.Random(p)
    for _ in range(200):
        a = rng.randrange(p)
        roots = sqrt_mod(a, p)
        assert all(r * r % p == a for r in roots)
        assert len(roots) == 1 + legendre(a, p)


def test_check_prime():
    for bad in (2, 1, 9, 1 << 20 | 1, -7, True):
        with pytest.raises(CharacteristicError):
            check_prime(bad)
    assert check_prime(1009) == 1009
    assert [n for n in range(60) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]


@pytest.mark.parametrize("p", PRIMES)
def test_nonresidue(p):
    nu = nonresidue(p)
    assert legendre(nu, p) == -1
    assert all(legendre(k, p) == 1 for k in range(2, nu))


def test_ext2_tau_inverse():
    tau = Ext2Element.tau(7)
    assert tau.nu == 3
    assert tau.inverse() == Ext2Element(0, 5, 7)
    assert tau * tau == 3
    with pytest.raises(ZeroDivisionError):
        Ext2Element(0, 0, 7).inverse()


def test_ext2_frobenius():
    for x in ext2_elements(7):
        assert x.frobenius().frobenius() == x
        assert x**7 == x.frobenius()
    assert Ext2Element(4, 0, 7).frobenius() == Ext2Element(4, 0, 7)
    assert Ext2Element(4, 0, 7) == FieldElement(4, 7)


def test_ext2_exhaustive_small():
    p = 5
    elems = list(ext2_elements(p))
    assert len(elems) == 25
    nonzero = [e for e in elems if e]
    for a in nonzero:
        assert a * a.inverse() == 1
        assert a ** (p * p - 1) == 1
    squares = {a * a for a in elems}
    for a in elems:
        roots = a.sqrt()
        assert (a in squares) == bool(roots)
        assert all(r * r == a for r in roots)
    # every element of F_p is a square in F_{p^2}
    assert all(FieldElement(k, p) in squares for k in range(p))


@given(st.sampled_from([7, 11, 13, 1009]), st.integers(), st.integers(), st.integers(), st.integers())
def test_ext2_field_axioms(p, a, b, c, d):
    x, y = Ext2Element(a, b, p), Ext2Element(c, d, p)
    assert x * y == y * x
    assert (x + y) * x == x * x + y * x
    assert (x * y).norm() == x.norm() * y.norm() % p
    if y:
        assert x / y * y == x
