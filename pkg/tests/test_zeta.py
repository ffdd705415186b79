import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from jacsearch.curve import curve_new, jacobian_group, twist
from jacsearch.errors import FieldTooSmall, Inconclusive, InvalidCounts, NoCandidate, UnknownContext
from jacsearch.ff import field_new
from jacsearch.oracle import naive_count_list, naive_jacobian_order, naive_lpoly
from jacsearch.oracle.order import _counts_and_window
from jacsearch.zeta import (LPolynomial, counts_from_lpoly, derived_orders, extension_order,
                            lpoly_from_counts, near_prime, quotient_order, recover_lpoly,
                            security_equivalent_bits, smith_filter, trace_zero_order,
                            twist_lpoly, validate_lpoly, weil_bounds)

from .vectors import GENUS2, GENUS3, P3E16, T648, T816


def _P(v, g):
    return LPolynomial.from_half(v["p"], g, v["a"])


def _random_curve(g, F, rng):
    while True:
        try:
            return curve_new(g, F, [rng.randrange(F.p) for _ in range(2 * g + 1)] + [1])
        except Exception:
            continue


def test_twist_lpoly():
    P = _P(GENUS2[0], 2)
    T = twist_lpoly(P)
    assert T.coeffs[1] == -P.coeffs[1] and T.coeffs[2] == P.coeffs[2]
    assert twist_lpoly(T) == P


def test_extension_order_small_k():
    for v in GENUS2:
        P = _P(v, 2)
        assert extension_order(P, 1) == P(1)
        assert extension_order(P, 2) == P(1) * P(-1)
        assert quotient_order(P, 2, 1) == P(-1)
        assert quotient_order(P, 3, 3) == 1


def test_extension_order_against_counts(rng):
    # #J over F_{q^k} from the base-changed zeta function, versus brute force over F_{q^k}
    F = field_new(7)
    for _ in range(4):
        C = _random_curve(2, F, rng)
        P = lpoly_from_counts(7, 2, naive_count_list(C, 2))
        for k in (2, 3):
            Pk = lpoly_from_counts(7 ** k, 2, [n for n in naive_count_list(C, 2 * k)[k - 1::k]])
            assert extension_order(P, k) == Pk(1)


def test_trace_zero_flag():
    P = _P(GENUS2[2], 2)
    N, exact = trace_zero_order(P, 3)
    assert N == quotient_order(P, 3, 1)
    assert exact == (P(1) % 3 != 0)
    assert trace_zero_order(P, 2)[0] == P(-1)


@pytest.mark.parametrize("v", GENUS2, ids=lambda v: v["name"])
def test_table_genus2_validates(v):
    P = _P(v, 2)
    assert validate_lpoly(P) == (True, [])
    if "order" in v:
        assert P(1) == v["order"]
    if "j2_div3" in v:
        assert (extension_order(P, 2) % 3 == 0) == v["j2_div3"]


@pytest.mark.parametrize("v", GENUS3, ids=lambda v: v["name"])
def test_table_genus3_validates(v):
    P = _P(v, 3)
    assert validate_lpoly(P) == (True, [])
    assert P(1) == v["order"]


def _annihilates(C, P, rng, samples=3):
    G = jacobian_group(C)
    return all(G.is_identity(G.exp(G.random(rng), P(1))) for _ in range(samples))


@pytest.mark.parametrize("v", [GENUS2[0], GENUS2[2], GENUS3[0]], ids=lambda v: v["name"])
def test_perturbations_rejected(v):
    # a perturbed a_i can remain a Weil polynomial, so the exact checks are
    # backed by the group itself: P(1) must annihilate J(C)
    g = len(v["a"])
    q = v["p"]
    C = curve_new(g, field_new(q), v["f"])
    rng = random.Random(4)
    assert _annihilates(C, _P(v, g), rng)
    for i in range(g):
        for s in (q + 1, -(q + 1)):
            half = list(v["a"])
            half[i] += s
            Q = LPolynomial.from_half(q, g, half)
            if i == 0:
                assert not validate_lpoly(Q)[0]
            assert not validate_lpoly(Q)[0] or not _annihilates(C, Q, rng)
    bad = list(_P(v, g).coeffs)
    bad[-1] = -bad[-1]
    assert not validate_lpoly(LPolynomial(q, g, bad))[0]


def test_validate_flags_coefficient_bound():
    q = 1009
    ok, why = validate_lpoly(LPolynomial.from_half(q, 2, [5 * 32, 0]))
    assert not ok and any("exceeds" in w for w in why)


def test_derived_claims_for_table_curves():
    for v in GENUS2:
        P = _P(v, 2)
        for label, cof, bits in v["claims"]:
            (d,) = derived_orders(P, (label,))
            assert d.largest_prime.bit_length() == bits
            assert d.order // d.largest_prime == cof
            assert d.near_prime


def test_near_prime_examples():
    assert near_prime(1000003) == (True, 1000003, 1)
    assert not near_prime(1 << 100)[0]
    assert near_prime(1 << 100)[2] == 1 << 99
    with pytest.raises(ValueError):
        near_prime(1)


def test_near_prime_inconclusive():
    # two 131-bit primes: rho with a tiny budget cannot split them, and either
    # could be 95% of the product as far as the search can tell
    import sympy
    a, b = sympy.nextprime(1 << 130), sympy.nextprime(1 << 131)
    with pytest.raises(Inconclusive):
        near_prime(a * b, effort=1 << 10, rho_blocks=1)


def test_security_bits():
    assert security_equivalent_bits(244, 2, 3, trace_zero=True) == pytest.approx(244 / 1.2)
    assert security_equivalent_bits(183, 3) == pytest.approx(162.67, abs=0.01)
    assert security_equivalent_bits(160, 2) == 160
    assert security_equivalent_bits(340, 2, 2) == pytest.approx(340 * 9 / 14)
    with pytest.raises(UnknownContext):
        security_equivalent_bits(100, 3, 2)


def test_smith_filter_examples():
    F = field_new(1009)
    import sympy
    x = sympy.symbols("x")

    def coeffs(expr):
        return [int(c) % 1009 for c in reversed(sympy.Poly(sympy.expand(expr), x).all_coeffs())]

    # irreducible cubic and quartic over F_1009, found by search
    def irreducible(deg, start):
        for c in range(start, start + 5000):
            f = sympy.Poly(x ** deg + x + c, x, modulus=1009)
            if f.is_irreducible:
                return x ** deg + x + c
    c3, c3b, c4 = irreducible(3, 1), irreducible(3, 700), irreducible(4, 1)
    assert smith_filter(coeffs(c3 * c4), F)
    assert not smith_filter(coeffs(c3 * c3b * (x + 1)), F)
    for c in range(1, 3000):
        f = sympy.Poly(x ** 7 + x + c, x, modulus=1009)
        if f.is_irreducible:
            assert smith_filter(coeffs(x ** 7 + x + c), F)
            break


def test_lpoly_from_counts():
    # genus 1 written as a single count: a_1 = q + 1 - N_1
    P = lpoly_from_counts(101, 1, [102])
    assert list(P.coeffs) == [1, 0, 101]
    C = curve_new(2, field_new(7), [1, 0, 0, 0, 0, 1])
    counts = naive_count_list(C, 2)
    P = lpoly_from_counts(7, 2, counts)
    assert validate_lpoly(P)[0]
    assert counts_from_lpoly(P, 4) == naive_count_list(C, 4)
    with pytest.raises(InvalidCounts):
        lpoly_from_counts(7, 2, [counts[0], counts[1] + 1])


@given(st.integers(0, 10**6))
@settings(max_examples=40)
def test_tower_divisibility(seed):
    rng = random.Random(seed)
    F = field_new(rng.choice([101, 211, 503, 1009]))
    C = _random_curve(2, F, rng)
    P = naive_lpoly(C, rng)
    assert validate_lpoly(P)[0]
    for k in (2, 3, 4, 6):
        for d in range(1, k + 1):
            if k % d == 0:
                assert extension_order(P, k) % extension_order(P, d) == 0
    assert extension_order(P, 2) == P(1) * twist_lpoly(P)(1)


def test_recover_t816():
    C = curve_new(2, field_new(T816["p"]), T816["f"])
    P = LPolynomial.from_half(T816["p"], 2, T816["a"])
    stats = {}
    R = recover_lpoly(P(1), jacobian_group(twist(C)), T816["p"], 2, random.Random(1), stats)
    assert R == P
    assert stats["recovery"] < 10_000


def test_recover_wrong_order_raises():
    C = curve_new(2, field_new(T816["p"]), T816["f"])
    P = LPolynomial.from_half(T816["p"], 2, T816["a"])
    with pytest.raises(NoCandidate):
        recover_lpoly(P(1) + 1, jacobian_group(twist(C)), T816["p"], 2, random.Random(1))


def test_recover_genus3_tiny_field_guard():
    C = curve_new(3, field_new(1601), [1, 1, 0, 0, 0, 0, 0, 1])
    with pytest.raises(FieldTooSmall):
        recover_lpoly(10**9, jacobian_group(twist(C)), 1601, 3, random.Random(0))


def test_recover_genus2_tiny_fields(rng):
    for p in (1009, 1013, 2003):
        F = field_new(p)
        for _ in range(5):
            C = _random_curve(2, F, rng)
            P = naive_lpoly(C, rng)
            R = recover_lpoly(P(1), jacobian_group(twist(C)), p, 2, rng)
            assert R == P


def test_recover_genus2_zero_trace(rng):
    F = field_new(1009)
    found = 0
    for _ in range(4000):
        C = _random_curve(2, F, rng)
        if naive_count_list(C, 1)[0] != 1010:
            continue
        P = naive_lpoly(C, rng)
        assert P.coeffs[1] == 0
        assert recover_lpoly(P(1), jacobian_group(twist(C)), 1009, 2, rng) == P
        found += 1
        if found == 2:
            break
    assert found


def test_recover_genus3_q2003(rng):
    F = field_new(2003)
    for _ in range(3):
        C = _random_curve(3, F, rng)
        N = naive_jacobian_order(C, rng)
        _, known = _counts_and_window(C, 1 << 40)
        R = recover_lpoly(N, jacobian_group(twist(C)), 2003, 3, rng)
        assert R(1) == N
        assert R.half[:2] == known


def test_recover_table6_middle():
    v = GENUS3[1]
    C = curve_new(3, field_new(P3E16), v["f"])
    P = _P(v, 3)
    R = recover_lpoly(P(1), jacobian_group(twist(C)), P3E16, 3, random.Random(2))
    assert R == P


def test_weil_bounds_exact():
    for q in (7, 1009, 2**61 - 1):
        for g in (2, 3):
            lo, hi = weil_bounds(q, g)
            r = math.isqrt(q)
            assert (r - 1) ** (2 * g) <= lo and hi <= (r + 2) ** (2 * g)
            assert hi - lo >= 4 * g * q ** (g - 0.5) * 0.99
