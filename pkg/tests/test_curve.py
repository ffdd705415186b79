import random

import pytest
from hypothesis import given, settings, strategies as st

from jacsearch.curve import (IDENTITY_HASH, curve_new, divisor, identity, jac_add, jac_batch,
                             jac_double, jac_exp, jac_hash, jac_neg, jac_random,
                             jacobian_group, twist)
from jacsearch.errors import BadDegree, CurveMismatch, NotMonic, SingularCurve
from jacsearch.ff import field_new
from jacsearch.oracle import naive_jacobian_order, naive_lpoly
from jacsearch.zeta import twist_lpoly

from .conftest import MERSENNE61, P50

F1009 = field_new(1009)


def _curve(g, F, rng):
    while True:
        f = [rng.randrange(F.p) for _ in range(2 * g + 1)] + [1]
        try:
            return curve_new(g, F, f)
        except SingularCurve:
            continue


CURVES = [
    curve_new(2, F1009, [3, 1, 0, 0, 0, 1]),
    curve_new(3, F1009, [5, 2, 0, 1, 0, 0, 0, 1]),
    curve_new(2, field_new(MERSENNE61), [456579, 1, 0, 0, 0, 1]),
    curve_new(3, field_new(P50), [648, 5, 1, 4, 1, 3, 0, 1]),
    curve_new(2, field_new(101, 2), [7, 1, 0, 0, 0, 1]),
]


def test_construction():
    C = curve_new(3, field_new(P50), [648, 5, 1, 4, 1, 3, 0, 1])
    assert C.g == 3
    with pytest.raises(SingularCurve):
        curve_new(2, field_new(7), [0, 0, 0, 0, 0, 1])
    with pytest.raises(BadDegree):
        curve_new(2, field_new(7), [1, 0, 0, 0, 0, 0, 1])
    with pytest.raises(NotMonic):
        curve_new(2, field_new(7), [1, 0, 0, 0, 0, 2])


def test_x5_plus_1_over_f7_nonsingular():
    # disc(x^5 + 1) = 5^5 up to sign, nonzero mod 7
    import sympy
    x = sympy.symbols("x")
    assert sympy.discriminant(x**5 + 1, x) % 7 != 0
    curve_new(2, field_new(7), [1, 0, 0, 0, 0, 1])


def test_twist_coefficients():
    F = field_new(7)
    C = curve_new(2, F, [1, 0, 0, 0, 0, 1])
    T = twist(C, alpha=3)
    assert list(T.f) == [3 ** 5 % 7, 0, 0, 0, 0, 1]
    C2 = curve_new(2, F1009, [9, 8, 7, 6, 5, 1])
    a = 11
    T2 = twist(C2, alpha=a)
    assert list(T2.f) == [a ** (5 - i) * c % 1009 for i, c in enumerate(C2.f)]


def test_twist_lpoly_is_p_of_minus_z(rng):
    for _ in range(5):
        C = _curve(2, field_new(211), rng)
        P = naive_lpoly(C, rng)
        assert naive_lpoly(twist(C), rng) == twist_lpoly(P)
        assert naive_lpoly(twist(twist(C)), rng) == P


@pytest.mark.parametrize("C", CURVES, ids=lambda C: f"g{C.g}q{C.field.q}")
def test_group_axioms(C):
    rng = random.Random(1)
    O = identity(C)
    for _ in range(60):
        a, b, c = (jac_random(C, rng) for _ in range(3))
        assert a + O == a
        assert (a + jac_neg(a)).is_identity()
        assert (a + b) + c == a + (b + c)
        assert a + b == b + a
        assert jac_double(a) == a + a
        assert C.jacobian.is_valid((a + b).raw)


@pytest.mark.parametrize("C", CURVES[:2], ids=lambda C: f"g{C.g}")
def test_fast_path_matches_cantor(C):
    rng = random.Random(2)
    J = C.jacobian
    for _ in range(2000):
        a, b = jac_random(C, rng), jac_random(C, rng)
        if rng.random() < 0.2:
            b = a
        assert J.add(a.raw, b.raw) == J.cantor(a.raw, b.raw)


def test_degenerate_additions():
    C = CURVES[0]
    J = C.jacobian
    rng = random.Random(3)
    F = C.field
    # divisors sharing a point, or built from a single point
    for _ in range(200):
        x, y = J.random_point(rng)
        P1 = divisor(C, [F.neg(x), 1], [y])
        x2, y2 = J.random_point(rng)
        D = P1 + divisor(C, [F.neg(x2), 1], [y2])
        for a, b in ((P1, D), (D, P1), (P1, P1), (P1, -P1), (D, -P1)):
            assert (a + b).raw == J.cantor(a.raw, b.raw)


@pytest.mark.parametrize("C", CURVES, ids=lambda C: f"g{C.g}q{C.field.q}")
def test_batch_matches_scalar(C):
    rng = random.Random(4)
    pairs = [(jac_random(C, rng), jac_random(C, rng)) for _ in range(100)]
    a = pairs[7][0]
    pairs[7] = (a, -a)
    pairs[8] = (a, a)
    assert jac_batch(pairs[:1]) == [pairs[0][0] + pairs[0][1]]
    out = jac_batch(pairs)
    assert out == [x + y for x, y in pairs]
    assert out[7].is_identity()


def test_mismatch():
    rng = random.Random(5)
    with pytest.raises(CurveMismatch):
        jac_random(CURVES[0], rng) + jac_random(curve_new(2, F1009, [4, 1, 0, 0, 0, 1]), rng)


@given(st.integers(0, 1 << 70), st.integers(0, 1 << 70), st.integers(0, 1000))
@settings(max_examples=30)
def test_exp_laws(a, b, seed):
    C = CURVES[2]
    D = jac_random(C, random.Random(seed))
    assert jac_exp(D, 0).is_identity()
    assert jac_exp(D, 2) == jac_double(D)
    assert jac_exp(D, a * b) == jac_exp(jac_exp(D, a), b)
    assert jac_exp(D, a + b) == jac_exp(D, a) + jac_exp(D, b)


def test_random_is_deterministic():
    C = CURVES[3]
    assert jac_random(C, random.Random(9)) == jac_random(C, random.Random(9))


def test_order_annihilates_and_exponent_from_samples():
    rng = random.Random(6)
    for C in (CURVES[0], curve_new(3, field_new(101), [5, 2, 0, 1, 0, 0, 0, 1])):
        N = naive_jacobian_order(C, rng)
        for _ in range(20):
            assert jac_exp(jac_random(C, rng), N).is_identity()


def test_hash_properties():
    rng = random.Random(7)
    C = CURVES[2]
    assert jac_hash(identity(C)) == IDENTITY_HASH
    for _ in range(200):
        D = jac_random(C, rng)
        assert jac_hash(D) == jac_hash(-D)
        assert jac_hash(D, 20) == jac_hash(D) >> 44


def test_hash_collision_rate():
    C = CURVES[2]
    G = jacobian_group(C)
    rng = random.Random(8)
    n, bits = 10_000, 18
    hashes = [G.hash64(G.random(rng)) >> (64 - bits) for _ in range(n)]
    counts = {}
    for h in hashes:
        counts[h] = counts.get(h, 0) + 1
    pairs = sum(c * (c - 1) // 2 for c in counts.values())
    expected = n * (n - 1) / 2 / 2 ** bits
    assert pairs <= 2 * expected


@pytest.mark.parametrize("C", [CURVES[0], CURVES[1], CURVES[2], CURVES[3]],
                         ids=lambda C: f"g{C.g}q{C.field.q}")
def test_compiled_group_matches_python(C):
    G = jacobian_group(C)
    rng = random.Random(10)
    for _ in range(200):
        a, b = jac_random(C, rng), jac_random(C, rng)
        x, y = G.from_divisor(a), G.from_divisor(b)
        assert G.to_divisor(G.op(x, y)) == a + b
        assert G.to_divisor(G.op(x, x)) == a + a
        assert G.to_divisor(G.inv(x)) == -a
        assert G.hash64(x) == jac_hash(a)
        e = rng.getrandbits(100)
        assert G.to_divisor(G.exp(x, e)) == jac_exp(a, e)
    xs = [G.from_divisor(jac_random(C, rng)) for _ in range(50)]
    ys = [G.from_divisor(jac_random(C, rng)) for _ in range(50)]
    ys[3] = G.inv(xs[3])
    assert G.batch_op(xs, ys) == [G.op(x, y) for x, y in zip(xs, ys)]
