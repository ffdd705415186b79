import random

import pytest
import sympy
from hypothesis import given, strategies as st

from jacsearch.errors import (CompositeCharacteristic, DivisionByZero, FieldMismatch,
                              ReduciblePolynomial, UnsupportedDegree, ZeroInput,
                              ZeroPolynomial)
from jacsearch.ff import (batch_inv, field_new, find_non_residue, inv, is_qr,
                          poly_factor_degrees, poly_irreducible, random_element, sqrt)

from .conftest import MERSENNE61

F7 = field_new(7)
FM = field_new(MERSENNE61)
FIELDS = [F7, field_new(1009), FM, field_new((1 << 89) - 1), field_new(1009, 2),
          field_new(10007, 3), field_new(MERSENNE61, 2)]


def test_field_new_errors():
    with pytest.raises(CompositeCharacteristic):
        field_new(15)
    with pytest.raises(UnsupportedDegree):
        field_new(7, 4)
    with pytest.raises(ReduciblePolynomial):
        field_new(7, 2, poly=[-1, 0, 1])  # x^2 - 1


def test_quadratic_extension_from_nonresidue():
    # smallest n with n^((p-1)/2) = -1 by Euler's criterion, checked by brute force
    p = 1009
    n = next(a for a in range(2, p) if pow(a, (p - 1) // 2, p) == p - 1)
    assert all(pow(x, 2, p) != n for x in range(p))
    F = field_new(p, 2, poly=[-n % p, 0, 1])
    assert F.q == 1018081


def test_small_values():
    assert F7(3) * F7(5) == 1
    assert inv(F7(3)) == 5
    assert inv(F7(1)) == 1
    assert sqrt(F7(4)) == 2
    assert sqrt(F7(0)) == 0
    assert not is_qr(F7(3))
    assert is_qr(F7(1))


def test_errors():
    with pytest.raises(DivisionByZero):
        inv(F7(0))
    with pytest.raises(ZeroInput):
        is_qr(F7(0))
    with pytest.raises(FieldMismatch):
        F7(1) + field_new(11)(1)
    with pytest.raises(DivisionByZero) as exc:
        batch_inv([F7(1), F7(2), F7(0), F7(3)])
    assert exc.value.index == 2


def test_non_residue_mersenne():
    n = find_non_residue(FM)
    assert n ** ((MERSENNE61 - 1) // 2) == -1


@pytest.mark.parametrize("F", FIELDS, ids=repr)
def test_field_axioms(F):
    rng = random.Random(F.q % 1000)
    for _ in range(300):
        a, b, c = (random_element(F, rng) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + b == b + a and a * b == b * a
        assert a - a == 0 and a + 0 == a
        if b:
            assert (a * b) * inv(b) == a
            assert inv(inv(b)) == b


@pytest.mark.parametrize("F", FIELDS, ids=repr)
def test_batch_inv_matches_scalar(F):
    rng = random.Random(7)
    for n in (1, 2, 100, 256):
        v = [random_element(F, rng) for _ in range(n)]
        v = [x if x else F(1) for x in v]
        assert batch_inv(v) == [inv(x) for x in v]


@pytest.mark.parametrize("F", FIELDS, ids=repr)
def test_sqrt_and_qr(F):
    rng = random.Random(11)
    n = find_non_residue(F)
    for _ in range(100):
        c = random_element(F, rng)
        if not c:
            continue
        b = c * c
        r = sqrt(b)
        assert r * r == b
        assert is_qr(c) != is_qr(n * c)
        if not is_qr(c):
            assert sqrt(c) is None


def test_encoding_injective():
    rng = random.Random(3)
    for F in (F7, field_new(1009, 2), FM):
        seen = {}
        for _ in range(2000):
            a = random_element(F, rng)
            enc = a.to_bytes()
            assert seen.setdefault(enc, a) == a
            assert F.decode(enc) == a.raw


@given(st.integers(0, MERSENNE61 - 1), st.integers(1, MERSENNE61 - 1))
def test_mersenne_roundtrip(a, b):
    x, y = FM(a), FM(b)
    assert int(x * y) == a * b % MERSENNE61
    assert (x * y) / y == x


def test_poly_examples():
    F3 = field_new(3)
    assert poly_irreducible([1, 0, 1], F3)
    assert sorted(poly_factor_degrees([-1, 0, 1], F7)) == [1, 1]
    with pytest.raises(ZeroPolynomial):
        poly_irreducible([0], F7)


def _sympy_degrees(f, p):
    x = sympy.symbols("x")
    poly = sympy.Poly(list(reversed(f)), x, modulus=p)
    out = []
    for fac, e in poly.factor_list()[1]:
        out += [fac.degree()] * e
    return sorted(out)


def test_factor_degrees_against_sympy():
    rng = random.Random(5)
    F = field_new(1009)
    for _ in range(40):
        f = [rng.randrange(1009) for _ in range(7)] + [1]
        assert sorted(poly_factor_degrees(f, F)) == _sympy_degrees(f, 1009)
        assert poly_irreducible(f, F) == (_sympy_degrees(f, 1009) == [7])
