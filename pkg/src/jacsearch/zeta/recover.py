"""Recover P(z) from P(1) = #J(C) with the help of the twist Jacobian J(C~).

P(-1) = #J(C~) is pinned down to a short list of candidates lying in one
arithmetic progression with difference 2(q+1); random elements of the twist
then single out the exponent.  Genus 2 has at most 11 candidates and simply
steps through them; genus 3 has up to 31 runs of about 40 sqrt(q) candidates
each and uses one baby-step giant-step search over all of them.
"""

import math

import numpy as np

from ..errors import Ambiguous, FieldTooSmall, NoCandidate
from ..genalg.order import fac_value, order_from_exponent_factored
from ..genalg.primorial import match_tables
from ..genalg.structure import sylow_structure
from ..ntheory import factorint
from .lpoly import LPolynomial, in_weil_interval, validate_lpoly

GENUS3_MIN_Q = 1640


def genus2_candidates(P1, q):
    """Every valid P with P(1) = P1 (at most 11)."""
    c = P1 - (q * q + 1)
    # |c - (q+1) a_1| = |a_2| < 6(q+1)
    lo = -((6 * (q + 1) - c) // (q + 1))
    hi = (c + 6 * (q + 1)) // (q + 1)
    out = []
    for a1 in range(lo - 1, hi + 2):
        a2 = c - (q + 1) * a1
        P = LPolynomial.from_half(q, 2, [a1, a2])
        if validate_lpoly(P)[0]:
            out.append(P)
    return out


def genus3_ranges(P1, q):
    """(a_1, a2_lo, a2_hi) for every a_1 with a nonempty a_2 range."""
    T = math.isqrt(400 * q ** 3)  # |a_3| <= 20 q^(3/2)
    c = P1 - 1 - q ** 3
    A1 = c / (q * q + 1)
    out = []
    bound_a1 = math.isqrt(36 * q)
    bound_a2 = 15 * q
    for a1 in range(math.floor(A1) - 17, math.ceil(A1) + 18):
        if abs(a1) > bound_a1:
            continue
        R = c - a1 * (q * q + 1)
        lo = -((T - R) // (q + 1))  # ceil((R - T) / (q + 1))
        hi = (R + T) // (q + 1)
        lo = max(lo, -bound_a2)
        hi = min(hi, bound_a2)
        if lo <= hi:
            out.append((a1, lo, hi))
    return out


def _genus3_from_a2(P1, q, a2):
    R = P1 - 1 - q ** 3 - a2 * (q + 1)
    d = q * q + 1
    a1 = (2 * R + d) // (2 * d)  # round(R / d)
    a3 = R - a1 * d
    return LPolynomial.from_half(q, 3, [a1, a2, a3])


def _annihilates(box, x, N):
    return box.is_identity(box.exp(x, N))


def _progression_survivors(box, x, values, diff):
    """Members of an ascending progression (common difference diff) that kill x."""
    if not values:
        return []
    y = box.exp(x, values[0])
    step = box.exp(x, diff)
    out = []
    for i, N in enumerate(values):
        if i:
            y = box.op(y, step)
        if box.is_identity(y):
            out.append(N)
    return out


def disambiguate(box, survivors, rng, rounds=24):
    """Reduce exponent candidates of box to the true group order.

    Random elements filter the list first; if several candidates keep
    surviving, the group exponent estimate L (lcm of element orders) and
    then the Sylow subgroups for primes dividing some N / L settle it.
    """
    survivors = sorted(set(survivors))
    if not survivors:
        raise NoCandidate("no candidate annihilates the twist")
    stall = 0
    while len(survivors) > 1 and stall < rounds:
        x = box.random(rng)
        nxt = [N for N in survivors if _annihilates(box, x, N)]
        if not nxt:
            raise NoCandidate("no candidate annihilates the twist")
        stall = stall + 1 if len(nxt) == len(survivors) else 0
        survivors = nxt
    if len(survivors) == 1:
        return survivors[0]
    g = 0
    for N in survivors:
        g = math.gcd(g, N)
    try:
        gfac = factorint(g)
    except ValueError as exc:
        raise Ambiguous(f"{len(survivors)} candidates and the common gcd resists factoring") from exc
    lam = {}
    for _ in range(rounds):
        f = order_from_exponent_factored(box, box.random(rng), gfac)
        for p, e in f.items():
            lam[p] = max(lam.get(p, 0), e)
    L = fac_value(lam)
    primes = set()
    for N in survivors:
        for p in lam:
            if (N // L) % p == 0:
                primes.add(p)
    for p in sorted(primes):
        basis = sylow_structure(box, p, lam[p], L, rng)
        size = 1
        for _, o in basis:
            size *= o
        survivors = [N for N in survivors if _valuation(N, p) == _valuation(size, p)]
        if len(survivors) <= 1:
            break
    if len(survivors) == 1:
        return survivors[0]
    if not survivors:
        raise NoCandidate("Sylow orders rule out every candidate")
    raise Ambiguous(f"{len(survivors)} candidates remain after Sylow refinement")


def _valuation(n, p):
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def recover_genus2(P1, twist_box, q, rng, stats=None):
    """P(z) of a genus-2 curve C from P(1) = #J(C), using J(C~)."""
    P1, q = int(P1), int(q)
    ops0 = twist_box.ops
    cands = genus2_candidates(P1, q)
    if not cands:
        raise NoCandidate("no L-polynomial has this P(1)")
    by_twist = {P(-1): P for P in cands}
    values = sorted(by_twist)
    if len(values) == 1:
        x = twist_box.random(rng)
        if not _annihilates(twist_box, x, values[0]):
            raise NoCandidate("the only candidate does not annihilate the twist")
        N = values[0]
    else:
        x = twist_box.random(rng)
        step = 2 * (q + 1)
        surv = []
        # the candidates lie on one progression; walk it where it is contiguous
        run = [values[0]]
        for v in values[1:]:
            if v - run[-1] == step:
                run.append(v)
            else:
                surv.extend(_progression_survivors(twist_box, x, run, step))
                run = [v]
        surv.extend(_progression_survivors(twist_box, x, run, step))
        N = disambiguate(twist_box, surv, rng)
    if stats is not None:
        stats["recovery"] = stats.get("recovery", 0) + twist_box.ops - ops0
    return by_twist[N]


def _bsgs_progression(box, x, C, diff, ranges):
    """All t in the union of ranges with x^(C + diff t) = 1, by one BSGS pass.

    Baby steps beta^i (0 <= i <= s) for beta = x^diff; giant steps start at
    x^(C + diff (lo + s)) and advance by beta^(2s+1), so each giant value
    covers t within s of its position (an element and its inverse share a
    hash).  Every hash match is confirmed by direct exponentiation.
    """
    total = sum(hi - lo + 1 for lo, hi in ranges)
    s = max(1, math.isqrt(max(total // 2, 1)))
    beta = box.exp(x, diff)
    # baby steps in parallel strands: strand j covers i = j, j + m, j + 2m, ...
    m = min(s + 1, 256)
    starts = [box.identity]
    for _ in range(m - 1):
        starts.append(box.op(starts[-1], beta))
    jump = box.op(starts[-1], beta)
    steps = -(-(s + 1) // m)
    baby, _ = box.walk_hashes(starts, [jump], np.zeros(max(steps - 1, 0), dtype=np.int64))
    if len(np.unique(baby)) < len(baby):
        # beta has small order; the caller retries with another element
        return None
    width = 2 * s + 1
    gstarts = []
    glen = []
    for lo, hi in ranges:
        gstarts.append(box.exp(x, C + diff * (lo + s)))
        glen.append(-(-(hi - lo + 1) // width))
    nmax = max(glen)
    gjump = box.exp(beta, width)
    giant, _ = box.walk_hashes(gstarts, [gjump], np.zeros(nmax - 1, dtype=np.int64))
    nb = len(baby)
    ng = len(giant)
    index_bits = max((max(nb, ng) - 1).bit_length(), 1)
    ib, ig = match_tables(baby, giant, index_bits)
    found = set()
    r = len(ranges)
    for bi, gi in zip(ib.tolist(), ig.tolist()):
        t_step, strand = divmod(bi, m)
        i = strand + m * t_step
        k, seg = divmod(gi, r)
        lo, hi = ranges[seg]
        centre = lo + s + k * width
        for t in (centre - i, centre + i):
            if lo <= t <= hi and t not in found and _annihilates(box, x, C + diff * t):
                found.add(t)
    return sorted(found)


def recover_genus3(P1, twist_box, q, rng, stats=None, max_tries=8):
    """P(z) of a genus-3 curve C from P(1) = #J(C), using J(C~); needs q > 1640."""
    P1, q = int(P1), int(q)
    if q <= GENUS3_MIN_Q:
        raise FieldTooSmall("genus-3 recovery needs q > 1640")
    ops0 = twist_box.ops
    ranges = genus3_ranges(P1, q)
    if not ranges:
        raise NoCandidate("no L-polynomial has this P(1)")
    # P(-1) = C + 2(q+1) a_2 for every candidate
    C = 2 * (q ** 3 + 1) - P1
    diff = 2 * (q + 1)
    segs = _merge([(lo, hi) for _, lo, hi in ranges])
    for _ in range(max_tries):
        x = twist_box.random(rng)
        ts = _bsgs_progression(twist_box, x, C, diff, segs)
        if ts is not None:
            break
    else:
        raise Ambiguous("no twist element of large enough order was found")
    cands = {}
    for t in ts:
        P = _genus3_from_a2(P1, q, t)
        if P(1) == P1 and validate_lpoly(P)[0] and in_weil_interval(P(-1), q, 3):
            cands[P(-1)] = P
    if not cands:
        raise NoCandidate("no candidate annihilates the twist")
    N = disambiguate(twist_box, list(cands), rng)
    if stats is not None:
        stats["recovery"] = stats.get("recovery", 0) + twist_box.ops - ops0
    return cands[N]


def _merge(segs):
    segs = sorted(segs)
    out = [list(segs[0])]
    for lo, hi in segs[1:]:
        if lo <= out[-1][1] + 1:
            out[-1][1] = max(out[-1][1], hi)
        else:
            out.append([lo, hi])
    return [tuple(s) for s in out]


def recover_lpoly(P1, twist_box, q, g, rng, stats=None):
    if g == 2:
        return recover_genus2(P1, twist_box, q, rng, stats)
    if g == 3:
        return recover_genus3(P1, twist_box, q, rng, stats)
    raise ValueError("recovery is implemented for genus 2 and 3")
