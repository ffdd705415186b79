"""Element orders from a known factored exponent (the linear-order method).

Given E = q_1 ... q_w with alpha^E = 1, walk alpha_i = alpha_{i-1}^{q_i} until
the identity appears, then peel off prime powers with binary searches.  The
walk is done in blocks: one exponentiation by a block product, and only the
block that reaches the identity is expanded element by element.  Only block
boundaries are stored, which caps memory at about lg^2|G| elements.
"""

import math

from ..errors import Reject
from ..ntheory import factorint, product
from .exponent import FactoredExponent


def as_factored(E):
    if isinstance(E, FactoredExponent):
        return E
    if isinstance(E, dict):
        return FactoredExponent.from_dict(E)
    E = int(E)
    if E < 1:
        raise ValueError("exponent must be positive")
    return FactoredExponent.from_dict(factorint(E))


def fac_value(fac):
    return int(product(p ** e for p, e in fac.items())) if fac else 1


def fac_mul(a, b):
    out = dict(a)
    for p, e in b.items():
        out[p] = out.get(p, 0) + e
    return {p: e for p, e in out.items() if e}


def check_order(G, a, fac):
    """Raise AssertionError unless prod(fac) is exactly the order of a."""
    N = fac_value(fac)
    if not G.is_identity(G.exp(a, N)):
        raise AssertionError(f"claimed order {N} does not annihilate the element")
    for p in fac:
        if G.is_identity(G.exp(a, N // p)):
            raise AssertionError(f"claimed order {N} is not minimal at {p}")


def prime_power_order(G, x, p, limit=None):
    """k with |x| = p^k, assuming |x| is a power of p; None past limit."""
    k = 0
    while not G.is_identity(x):
        if limit is not None and k >= limit:
            return None
        x = G.exp(x, p)
        k += 1
    return k


def _block_size(E, G, max_stored, block_bits):
    w = len(E)
    if max_stored is None:
        L = getattr(G, "size_bits", None) or 64
        max_stored = 2 * L * L
    interval = 1 if w <= max_stored else math.ceil(w / (max_stored / 2))
    avg = max(E.bit_length / max(w, 1), 1.0)
    return max(1, min(w, max(interval, math.ceil(block_bits / avg))))


class _Walk:
    """alpha_t = alpha^(q_1...q_t), reconstructed from block checkpoints."""

    def __init__(self, G, a, E, bs):
        self.G = G
        self.qs = E.prime_powers()
        self.w = len(self.qs)
        self.bs = bs
        self.cps = [a]
        self._cache = (None, None)

    def block(self, b):
        if self._cache[0] == b:
            return self._cache[1]
        lo = b * self.bs
        hi = min(lo + self.bs, self.w)
        seq = [self.cps[b]]
        for t in range(lo, hi):
            seq.append(self.G.exp(seq[-1], self.qs[t]))
        self._cache = (b, seq)
        return seq

    def get(self, t):
        b, r = divmod(t, self.bs)
        if r == 0 and b < len(self.cps):
            return self.cps[b]
        return self.block(b)[r]

    def first_identity(self):
        """Least t with alpha_t = 1, or None."""
        G = self.G
        nb = -(-self.w // self.bs)
        x = self.cps[0]
        for b in range(nb):
            lo = b * self.bs
            hi = min(lo + self.bs, self.w)
            y = G.exp(x, product(self.qs[lo:hi]))
            if G.is_identity(y):
                seq = self.block(b)
                for r in range(1, len(seq)):
                    if G.is_identity(seq[r]):
                        return lo + r
                raise AssertionError("block product and block walk disagree")
            self.cps.append(y)
            x = y
        return None


def _least(lo, hi, pred):
    """Least j in [lo, hi] with pred(j), assuming monotone; hi + 1 if none."""
    while lo <= hi:
        mid = (lo + hi) // 2
        if pred(mid):
            hi = mid - 1
        else:
            lo = mid + 1
    return lo


def order_from_exponent_factored(G, a, E, max_stored=None, block_bits=32768, check=True):
    """Factored |a| given an exponent E of a; raises Reject if a^E != 1."""
    if G.is_identity(a):
        return {}
    E = as_factored(E)
    if len(E) == 0:
        raise Reject("empty exponent cannot annihilate a non-identity element")
    walk = _Walk(G, a, E, _block_size(E, G, max_stored, block_bits))
    t = walk.first_identity()
    if t is None:
        raise Reject("E is not an exponent of the element")
    primes = E.primes.tolist()
    exps = E.exps.tolist()
    i = t - 1
    p = primes[t - 1]
    k = prime_power_order(G, walk.get(i), p, exps[t - 1])
    fac = {p: k}
    N = p ** k
    bs = walk.bs
    while True:
        # least j in [0, i] with alpha_j^N = 1: first over checkpoints, then inside a block
        def killed(x):
            return G.is_identity(G.exp(x, N))

        top = i // bs
        b = _least(0, top, lambda c: killed(walk.cps[c]))
        if b == 0:
            j = 0
        else:
            start = (b - 1) * bs
            end = min(b * bs, i)
            j = _least(start + 1, end, lambda s: killed(walk.get(s)))
        if j == 0:
            break
        i = j - 1
        p = primes[j - 1]
        k = prime_power_order(G, G.exp(walk.get(i), N), p, exps[j - 1])
        fac[p] = k
        N *= p ** k
    fac = dict(sorted(fac.items()))
    if check:
        check_order(G, a, fac)
    return fac


def order_from_exponent(G, a, E, max_stored=None, block_bits=32768):
    """|a| given that a^E = 1 (Reject otherwise)."""
    return fac_value(order_from_exponent_factored(G, a, E, max_stored, block_bits))
