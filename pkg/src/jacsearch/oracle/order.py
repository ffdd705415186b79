"""#J(C) by brute force for desk-sized fields.

With every count N_1..N_g affordable, P(z) and hence #J = P(1) follow
directly.  Otherwise the counts that are affordable fix a_1, ..., a_j and
leave a window for #J; a plain baby-step giant-step search in that window
finds a multiple of one element's order, and further random elements shrink
the set of window multiples of the lcm until one remains.
"""

import math
import random

import numpy as np

from ..curve import jacobian_group
from ..errors import Ambiguous, FieldTooLarge
from ..ntheory import factorint
from ..zeta.lpoly import LPolynomial, lpoly_from_counts, validate_lpoly, weil_bounds
from .counts import MAX_SIZE, naive_counts

MAX_ORDER_FIELD = 1 << 40


def _partial_coeffs(q, counts):
    """a_1..a_j from N_1..N_j by Newton's identities."""
    s = [q ** k + 1 - n for k, n in enumerate(counts, start=1)]
    a = [1]
    for k in range(1, len(s) + 1):
        acc = s[k - 1] + sum(a[i] * s[k - i - 1] for i in range(1, k))
        a.append(-acc // k)
    return a[1:]


def order_window(q, g, known):
    """(lo, hi) containing P(1) given the leading coefficients a_1..a_j."""
    lo, hi = weil_bounds(q, g)
    j = len(known)
    if j >= g:
        P = LPolynomial.from_half(q, g, known[:g])
        return P(1), P(1)
    # P(1) = (1 + q^g) + sum_{i<g} a_i (q^(g-i) + 1) + a_g, a_0 = 1
    a = [1] + list(known)
    base = 1 + q ** g
    for i in range(1, j + 1):
        base += a[i] * (q ** (g - i) + 1)
    spread = 0
    for i in range(j + 1, g + 1):
        bound = math.isqrt(math.comb(2 * g, i) ** 2 * q ** i)
        spread += bound * (q ** (g - i) + 1 if i < g else 1)
    if g == 2 and j == 1:
        # h(T) = T^2 + a_1 T + a_2 - 2q has both roots in [-2 sqrt q, 2 sqrt q]
        a1 = a[1]
        a2_hi = a1 * a1 // 4 + 2 * q
        a2_lo = math.isqrt(4 * q * a1 * a1) - 2 * q
        return max(lo, base + a2_lo), min(hi, base + a2_hi)
    return max(lo, base - spread), min(hi, base + spread)


def _strand_hashes(G, x, start, count, m):
    """hash64 of start * x^i for i < count, laid out as m parallel strands."""
    m = max(1, min(m, count))
    starts = [start]
    for _ in range(m - 1):
        starts.append(G.op(starts[-1], x))
    jump = G.exp(x, m)
    steps = -(-count // m)
    h, _ = G.walk_hashes(starts, [jump], np.zeros(steps - 1, dtype=np.int64))
    # index t*m + j holds exponent j + m t, so the layout is already sequential
    return h[:count]


def _bsgs_window(G, x, lo, hi, strands=256):
    """Some N in [lo, hi] with x^N = 1, by baby steps x^i and giant steps of 2s+1."""
    width = hi - lo + 1
    s = max(1, math.isqrt(width // 2) + 1)
    baby = _strand_hashes(G, x, G.identity, s + 1, strands)
    table = {}
    for i, h in enumerate(baby.tolist()):
        table.setdefault(h, []).append(i)
    stride = 2 * s + 1
    count = -(-(width + s) // stride)
    giant = _strand_hashes(G, G.exp(x, stride), G.exp(x, lo + s), count, strands)
    hits = np.flatnonzero(np.isin(giant, baby))
    for k in hits.tolist():
        c = lo + s + k * stride
        for i in table[int(giant[k])]:
            for N in (c - i, c + i):
                if lo <= N <= hi and N > 0 and G.is_identity(G.exp(x, N)):
                    return N
    return None


def _element_order(G, x, N):
    fac = factorint(N)
    for p, e in fac.items():
        for _ in range(e):
            if G.is_identity(G.exp(x, N // p)):
                N //= p
            else:
                break
    return N


def _counts_and_window(C, max_field):
    q, g = C.field.q, C.g
    if C.field.k != 1:
        raise ValueError("the order oracle needs a curve over a prime field")
    if q ** g > max_field:
        raise FieldTooLarge(f"q^g exceeds 2^{max_field.bit_length() - 1}")
    j = 0
    while j < g and q ** (j + 1) <= MAX_SIZE:
        j += 1
    counts = [naive_counts(C, k) for k in range(1, j + 1)]
    return counts, _partial_coeffs(q, counts)


def _order_in_window(C, lo, hi, rng, rounds, group):
    G = group or jacobian_group(C)
    L = 1
    stall = 0
    while hi // L - (lo - 1) // L > 1:
        if stall >= rounds:
            raise Ambiguous(f"{hi // L - (lo - 1) // L} multiples of the exponent remain in the window")
        x = G.random(rng)
        k = _bsgs_window(G, G.exp(x, L), -(-lo // L), hi // L)
        if k is None:
            raise Ambiguous("no multiple of the element order in the window")
        new = math.lcm(L, _element_order(G, x, L * k))
        stall = stall + 1 if new == L else 0
        L = new
    if hi // L * L < lo:
        raise Ambiguous("no multiple of the exponent lies in the window")
    return hi // L * L


def naive_jacobian_order(C, rng=None, rounds=64, group=None, max_field=MAX_ORDER_FIELD):
    """Exact #J(C) for q^g <= max_field (2^40 by default) over a prime field."""
    q, g = C.field.q, C.g
    counts, known = _counts_and_window(C, max_field)
    if len(counts) == g:
        return lpoly_from_counts(q, g, counts)(1)
    lo, hi = order_window(q, g, known)
    return _order_in_window(C, lo, hi, rng or random.Random(0), rounds, group)


def naive_lpoly(C, rng=None, rounds=64, group=None, max_field=MAX_ORDER_FIELD):
    """P(z) of a genus-2 curve (or any curve whose counts N_1..N_g are affordable).

    In genus 2, N_1 gives a_1 and #J = P(1) then gives a_2."""
    q, g = C.field.q, C.g
    counts, known = _counts_and_window(C, max_field)
    if len(counts) == g:
        return lpoly_from_counts(q, g, counts)
    if g != 2:
        raise FieldTooLarge("the L-polynomial needs N_1..N_g unless g = 2")
    lo, hi = order_window(q, g, known)
    N = _order_in_window(C, lo, hi, rng or random.Random(0), rounds, group)
    a1 = known[0]
    P = LPolynomial.from_half(q, 2, [a1, N - 1 - q * q - a1 * (q + 1)])
    ok, violations = validate_lpoly(P)
    if not ok:
        raise Ambiguous("; ".join(violations))
    return P
