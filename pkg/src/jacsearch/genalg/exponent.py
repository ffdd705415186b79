"""Factored exponents, the B-easy test and primorial wheels."""

import math
from functools import cached_property

import gmpy2
import numpy as np

from ..errors import NotPrimorial
from ..expo import recode
from ..ntheory import primes_up_to, product


def _max_powers(primes, bound):
    """Largest h with p^h <= bound, for each p (vectorised, exact)."""
    primes = np.asarray(primes, dtype=np.int64)
    h = np.ones(len(primes), dtype=np.int64)
    if len(primes) == 0:
        return h
    # only primes <= sqrt(bound) can have h > 1
    small = int(np.searchsorted(primes, math.isqrt(bound), side="right"))
    for i in range(small):
        p = int(primes[i])
        q, e = p, 1
        while q * p <= bound:
            q *= p
            e += 1
        h[i] = e
    return h


class FactoredExponent:
    """E = q_1 q_2 ... q_w with q_i = p_i^h_i and p_1 < p_2 < ... < p_w."""

    def __init__(self, primes, exps):
        self.primes = np.asarray(primes, dtype=np.int64)
        self.exps = np.asarray(exps, dtype=np.int64)
        if len(self.primes) != len(self.exps):
            raise ValueError("primes and exponents differ in length")
        if len(self.primes) > 1 and not np.all(np.diff(self.primes) > 0):
            raise ValueError("primes must be strictly increasing")

    @classmethod
    def from_dict(cls, fac):
        items = sorted((int(p), int(e)) for p, e in fac.items() if e > 0)
        return cls([p for p, _ in items], [e for _, e in items])

    def __len__(self):
        return len(self.primes)

    def __repr__(self):
        if len(self) <= 8:
            return f"FactoredExponent({self.as_string()})"
        return f"FactoredExponent(w={len(self)}, bits={self.bit_length})"

    def __eq__(self, other):
        return (isinstance(other, FactoredExponent)
                and np.array_equal(self.primes, other.primes)
                and np.array_equal(self.exps, other.exps))

    def prime_power(self, i):
        return int(self.primes[i]) ** int(self.exps[i])

    def prime_powers(self):
        return [int(p) ** int(e) for p, e in zip(self.primes.tolist(), self.exps.tolist())]

    @cached_property
    def value(self):
        return int(product(self.prime_powers()))

    @cached_property
    def mpz(self):
        return gmpy2.mpz(self.value)

    @cached_property
    def recoding(self):
        return recode(self.value)

    def __int__(self):
        return self.value

    @property
    def bit_length(self):
        return self.value.bit_length()

    def as_dict(self):
        return {int(p): int(e) for p, e in zip(self.primes, self.exps)}

    def as_string(self):
        parts = []
        for p, e in zip(self.primes.tolist(), self.exps.tolist()):
            parts.append(f"{p}^{e}" if e > 1 else str(p))
        return "*".join(parts) if parts else "1"

    def partial(self, lo, hi):
        """Product of q_lo .. q_{hi-1} as an int."""
        return int(product(self.prime_powers()[lo:hi])) if hi > lo else 1


def build_exponent(B, prime_limit=None):
    """E_full (primes <= B, maximal powers <= B) or, given prime_limit, the
    wheel exponent (primes <= prime_limit, maximal powers <= B^2)."""
    B = int(B)
    if B < 2:
        raise ValueError("B must be at least 2")
    if prime_limit is None:
        primes = primes_up_to(B)
        bound = B
    else:
        primes = primes_up_to(int(prime_limit))
        bound = B * B
    return FactoredExponent(primes, _max_powers(primes, bound))


class EasyBound:
    """B together with E_full; decides B-easiness exactly."""

    def __init__(self, B):
        self.B = int(B)
        self.E = build_exponent(self.B)

    def to_config(self):
        return {"B": self.B}

    def is_easy(self, N):
        N = gmpy2.mpz(N)
        if N < 1:
            raise ValueError("N must be positive")
        g = gmpy2.gcd(N, self.E.mpz)
        return N // g <= self.B * self.B


def is_b_easy(N, bound):
    """True iff N / gcd(N, E_full) <= B^2."""
    if not isinstance(bound, EasyBound):
        bound = EasyBound(bound)
    return bound.is_easy(N)


def _primorial_index(P):
    acc, w = 1, 0
    for p in primes_up_to(200).tolist():
        if acc == P:
            return w
        if acc > P:
            break
        acc *= p
        w += 1
    return w if acc == P else None


def wheel(P):
    """Gaps between consecutive integers coprime to the primorial P.

    Starting from 1, the partial sums 1 + r(1) + ... + r(n) run through the
    integers coprime to P; the phi(P) gaps sum to P.  Returns (r, r_max).
    """
    P = int(P)
    w = _primorial_index(P)
    if w is None or w < 2:
        raise NotPrimorial(f"{P} is not a primorial P_w with w >= 2")
    n = np.arange(1, P + 2, dtype=np.int64)
    mask = np.ones(len(n), dtype=bool)
    for p in primes_up_to(200)[:w].tolist():
        mask &= (n % p) != 0
    coprime = n[mask]
    r = np.diff(coprime)
    return r, int(r.max())
