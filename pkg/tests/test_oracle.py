import random

import pytest
from hypothesis import given, settings, strategies as st

from jacsearch.curve import curve_new, jac_exp, jac_random, jacobian_group
from jacsearch.errors import FieldTooLarge
from jacsearch.ff import field_new
from jacsearch.genalg import group_exponent, group_order
from jacsearch.oracle import naive_count_list, naive_counts, naive_jacobian_order, opaque_group
from jacsearch.oracle.counts import _VecField, _affine_character, _affine_sweep
from jacsearch.zeta import lpoly_from_counts, validate_lpoly


def _random_curve(g, F, rng):
    while True:
        try:
            return curve_new(g, F, [rng.randrange(F.p) for _ in range(2 * g + 1)] + [1])
        except Exception:
            continue


def _pairs_count(f, p):
    """Projective count by enumerating every (x, y) pair."""
    n = 1
    for x in range(p):
        fx = sum(c * pow(x, i, p) for i, c in enumerate(f)) % p
        n += sum(1 for y in range(p) if y * y % p == fx)
    return n


def test_x5_plus_1_over_f7():
    C = curve_new(2, field_new(7), [1, 0, 0, 0, 0, 1])
    assert naive_counts(C, 1) == _pairs_count([1, 0, 0, 0, 0, 1], 7)


@given(st.integers(0, 10**6), st.sampled_from([3, 5, 7, 11, 13, 101, 211]))
@settings(max_examples=40)
def test_counts_match_pair_enumeration(seed, p):
    rng = random.Random(seed)
    g = rng.choice([2, 3])
    C = _random_curve(g, field_new(p), rng)
    n = naive_counts(C, 1)
    assert n == _pairs_count(list(C.f), p)
    # parity: the number of affine points with y != 0 is even
    roots = sum(1 for x in range(p) if sum(c * pow(x, i, p) for i, c in enumerate(C.f)) % p == 0)
    assert (n - 1 - roots) % 2 == 0


@pytest.mark.parametrize("p,k", [(3, 2), (7, 2), (61, 2), (13, 3), (5, 3), (3, 5)])
def test_sweep_and_character_sum_agree(p, k):
    rng = random.Random(p * k)
    C = _random_curve(2, field_new(p), rng)
    V = _VecField(p, k)
    f = [int(c) for c in C.f]
    assert _affine_sweep(V, f) == _affine_character(V, f)
    assert naive_counts(C, k) == _affine_sweep(V, f) + 1


def test_counts_predict_next_count():
    rng = random.Random(2)
    for g, p in ((2, 7), (2, 31), (3, 5), (3, 11)):
        C = _random_curve(g, field_new(p), rng)
        counts = naive_count_list(C, g + 1)
        P = lpoly_from_counts(p, g, counts[:g])
        assert validate_lpoly(P)[0]
        s = P.power_sums(g + 1)
        assert counts[g] == p ** (g + 1) + 1 - s[g]


def test_field_too_large():
    C = curve_new(2, field_new(65537), [1, 1, 0, 0, 0, 1])
    with pytest.raises(FieldTooLarge):
        naive_counts(C, 2)
    C = curve_new(3, field_new(65537), [1, 1, 0, 0, 0, 0, 0, 1])
    with pytest.raises(FieldTooLarge):
        naive_jacobian_order(C)


def test_order_paths_agree(rng):
    # full counts versus the window search, on fields where both are affordable
    for p in (101, 1009, 4093):
        C = _random_curve(2, field_new(p), rng)
        full = lpoly_from_counts(p, 2, naive_count_list(C, 2))(1)
        assert naive_jacobian_order(C, rng, max_field=1 << 40) == full
        from jacsearch.oracle.order import _order_in_window, order_window
        lo, hi = order_window(p, 2, [naive_counts(C, 1) - p - 1])
        assert _order_in_window(C, lo, hi, rng, 64, None) == full


def test_order_annihilates(rng):
    C = _random_curve(2, field_new(1009), rng)
    N = naive_jacobian_order(C, rng)
    for _ in range(50):
        assert jac_exp(jac_random(C, rng), N).is_identity()


def test_order_at_20_bits_is_cheap(rng):
    p = 1048573
    C = _random_curve(2, field_new(p), rng)
    G = jacobian_group(C)
    G.ops = 0
    N = naive_jacobian_order(C, rng, group=G)
    assert G.ops <= 10**5
    x = G.random(rng)
    assert G.is_identity(G.exp(x, N))


def test_opaque_examples(rng):
    G = opaque_group([840])
    assert G.debug_order() == 840
    K = opaque_group([2, 2])
    assert group_order(K, 10, rng) == (4, [2, 2])
    H = opaque_group([4, 6])
    assert group_exponent(H, 10, rng, c=20) == 12
    assert group_order(H, 10, rng)[0] == 24
    assert H.debug_structure() == [2, 12]


def test_opaque_encoding_hides_structure():
    G = opaque_group([840], seed=3)
    assert G.identity != 0 or G.element([1]) != 1
    assert len({G.element([i]) for i in range(840)}) == 840
