"""Bounded order search with primorial steps (parallel baby and giant walks).

beta_0 = alpha^E_wheel has order prime to P = P_w when |alpha| <= B^2.  Baby
steps beta_0^b run over b in [1, mP] prime to P as m parallel walks across the
wheel; giant steps beta_0^a run over odd multiples a of mP as m parallel walks
with spacing 2mP.  Both tables hold packed 64-bit words (hash high bits, table
index low bits) and are matched after a partial radix sort.  Since an element
and its inverse share a hash, one match covers both N = a - b and N = a + b.
"""

import math

import numba as nb
import numpy as np

from ..errors import Reject
from ..ntheory import euler_phi_of_primorial, factorint, nth_prime, primorial
from .exponent import build_exponent, wheel
from .order import check_order, fac_mul, fac_value, order_from_exponent_factored

RADIX_BITS = 10


def m_for(B, w):
    """Least m with 2 m^2 P phi(P) >= B^2."""
    P = primorial(w)
    phi = euler_phi_of_primorial(w)
    B2 = B * B
    m = max(1, math.isqrt(B2 // (2 * P * phi)))
    while 2 * m * m * P * phi < B2:
        m += 1
    while m > 1 and 2 * (m - 1) ** 2 * P * phi >= B2:
        m -= 1
    return m


def choose_w(B, min_m=200, w_max=10):
    """Largest w with m >= min_m (so each walk is long enough to batch well)."""
    best = 2
    for w in range(2, w_max + 1):
        if m_for(B, w) >= min_m:
            best = w
    return best


class PrimorialPlan:
    def __init__(self, B, w=None):
        self.B = int(B)
        if self.B < 2:
            raise ValueError("B must be at least 2")
        self.w = choose_w(self.B) if w is None else int(w)
        self.P = primorial(self.w)
        self.phi = euler_phi_of_primorial(self.w)
        self.m = m_for(self.B, self.w)
        self.r, self.r_max = wheel(self.P)
        self.prime_limit = nth_prime(self.w)
        self.E = build_exponent(self.B, self.prime_limit)
        # baby offsets k_0 = 1, k_t = 1 + r(1) + ... + r(t)
        self.k = np.concatenate(([1], 1 + np.cumsum(self.r[:-1]))).astype(np.int64)
        n = self.m * self.phi
        self.index_bits = max(1, (n - 1).bit_length())

    def __repr__(self):
        return f"PrimorialPlan(B={self.B}, w={self.w}, P={self.P}, m={self.m})"

    def to_config(self):
        return {"B": self.B, "w": self.w, "m": self.m, "prime_limit": self.prime_limit}

    def baby_exponent(self, idx):
        t, i = divmod(int(idx), self.m)
        return self.P * i + int(self.k[t])

    def giant_exponent(self, idx):
        t, i = divmod(int(idx), self.m)
        return self.m * self.P * (2 * (self.phi * i + t) + 1)

    def expected_ops(self):
        """Compositions for one complete run: exponentiation plus both walks."""
        return self.E.bit_length + 2 * self.m * self.phi


@nb.njit(cache=True)
def pack(hashes, index_bits):
    n = hashes.shape[0]
    out = np.empty(n, dtype=np.uint64)
    mask = np.uint64((1 << index_bits) - 1)
    for i in range(n):
        out[i] = (hashes[i] & ~mask) | np.uint64(i)
    return out


@nb.njit(cache=True)
def radix_sort(keys, radix_bits):
    """Bucket by the top radix_bits, then sort each bucket."""
    n = keys.shape[0]
    nbuck = 1 << radix_bits
    shift = np.uint64(64 - radix_bits)
    counts = np.zeros(nbuck + 1, dtype=np.int64)
    for i in range(n):
        counts[int(keys[i] >> shift) + 1] += 1
    for b in range(nbuck):
        counts[b + 1] += counts[b]
    pos = counts[:nbuck].copy()
    out = np.empty_like(keys)
    for i in range(n):
        b = int(keys[i] >> shift)
        out[pos[b]] = keys[i]
        pos[b] += 1
    for b in range(nbuck):
        lo = counts[b]
        hi = counts[b + 1]
        if hi - lo > 1:
            out[lo:hi] = np.sort(out[lo:hi])
    return out


@nb.njit(cache=True)
def merge_matches(A, B, index_bits):
    """All (index_a, index_b) pairs whose hash bits agree; A and B sorted."""
    shift = np.uint64(index_bits)
    mask = np.uint64((1 << index_bits) - 1)
    cap = 16
    ra = np.empty(cap, dtype=np.int64)
    rb = np.empty(cap, dtype=np.int64)
    cnt = 0
    i = 0
    j = 0
    na = A.shape[0]
    nb_ = B.shape[0]
    while i < na and j < nb_:
        ha = A[i] >> shift
        hb = B[j] >> shift
        if ha < hb:
            i += 1
        elif hb < ha:
            j += 1
        else:
            i2 = i
            while i2 < na and (A[i2] >> shift) == ha:
                i2 += 1
            j2 = j
            while j2 < nb_ and (B[j2] >> shift) == ha:
                j2 += 1
            for x in range(i, i2):
                for y in range(j, j2):
                    if cnt == cap:
                        cap *= 2
                        ra2 = np.empty(cap, dtype=np.int64)
                        rb2 = np.empty(cap, dtype=np.int64)
                        ra2[:cnt] = ra[:cnt]
                        rb2[:cnt] = rb[:cnt]
                        ra = ra2
                        rb = rb2
                    ra[cnt] = np.int64(A[x] & mask)
                    rb[cnt] = np.int64(B[y] & mask)
                    cnt += 1
            i = i2
            j = j2
    return ra[:cnt], rb[:cnt]


def match_tables(baby, giant, index_bits):
    """Index pairs (baby, giant) with equal (64 - index_bits)-bit hashes."""
    A = radix_sort(pack(baby, index_bits), RADIX_BITS)
    Bk = radix_sort(pack(giant, index_bits), RADIX_BITS)
    return merge_matches(A, Bk, index_bits)


def _first_annihilating(G, x, candidates):
    for N in sorted(set(candidates)):
        if G.is_identity(G.exp(x, N)):
            return N
    return None


def primorial_search(G, b0, plan, stats=None):
    """|b0| for b0 != 1 with |b0| <= B^2 and prime to P; Reject if no match."""
    P, phi, m = plan.P, plan.phi, plan.m
    ops0 = G.ops
    # step 1: baby starts beta_i = b0^(P i + 1) and deltas b0^2, b0^4, ..., b0^r_max
    b0P = G.exp(b0, P)
    starts = [b0]
    for _ in range(m - 1):
        starts.append(G.op(starts[-1], b0P))
    d2 = G.sqr(b0)
    deltas = [d2]
    for _ in range(plan.r_max // 2 - 1):
        deltas.append(G.op(deltas[-1], d2))
    schedule = (plan.r[:phi - 1] // 2 - 1).astype(np.int64)
    baby, _ = G.walk_hashes(starts, deltas, schedule)
    # step 4: the identity among the baby steps
    hid = np.uint64(G.hash64(G.identity))
    hits = np.nonzero(baby == hid)[0]
    if len(hits):
        N = _first_annihilating(G, b0, [plan.baby_exponent(i) for i in hits])
        if N is not None:
            if stats is not None:
                stats["search"] = stats.get("search", 0) + G.ops - ops0
            return N
    # step 2 and 5: giant starts gamma_i = b0^(mP(2 phi i + 1)), spacing 2mP
    g0 = G.exp(b0P, m)
    d0 = G.sqr(g0)
    stride = G.exp(g0, 2 * phi)
    gstarts = [g0]
    for _ in range(m - 1):
        gstarts.append(G.op(gstarts[-1], stride))
    giant, _ = G.walk_hashes(gstarts, [d0], np.zeros(phi - 1, dtype=np.int64))
    # step 6: match, then verify every candidate by recomputing the element
    ia, ig = match_tables(baby, giant, plan.index_bits)
    cands = []
    for a_idx, g_idx in zip(ia.tolist(), ig.tolist()):
        a = plan.giant_exponent(g_idx)
        b = plan.baby_exponent(a_idx)
        cands.extend((a - b, a + b))
    N = _first_annihilating(G, b0, cands)
    if stats is not None:
        stats["search"] = stats.get("search", 0) + G.ops - ops0
        stats["matches"] = stats.get("matches", 0) + len(ia)
    if N is None:
        raise Reject("no match: order exceeds B^2")
    return N


def order_bounded_factored(G, a, plan, stats=None, check=True):
    """Factored |a| on the condition |a| <= B^2 (Reject when no match)."""
    if G.is_identity(a):
        return {}
    ops0 = G.ops
    b0 = G.exp(a, plan.E)
    if stats is not None:
        stats["exp"] = stats.get("exp", 0) + G.ops - ops0
    fac = {}
    N = 1
    if not G.is_identity(b0):
        N = primorial_search(G, b0, plan, stats)
        fac = factorint(N)
    # step 7, always run
    rest = order_from_exponent_factored(G, G.exp(a, N), plan.E, check=False)
    fac = dict(sorted(fac_mul(fac, rest).items()))
    if check:
        check_order(G, a, fac)
    return fac


def order_bounded(G, a, plan, stats=None):
    """|a| on the condition |a| <= B^2."""
    return fac_value(order_bounded_factored(G, a, plan, stats))
