"""Abelian groups Z/n_1 x ... x Z/n_r hidden behind a randomized encoding.

Elements are integers: a vector x is flattened in mixed radix to X and shown
as (a*X + b) mod M with a secret unit a.  The identity is therefore some
arbitrary integer b, and nothing about the n_i leaks except through the group
law.  The `debug_*` methods expose the truth for test assertions only.
"""

import math
import random

from ..curve.jacobian import splitmix64
from ..expo import Recoding
from ..genalg.blackbox import BlackBoxGroup
from ..ntheory import factorint


class OpaqueGroup(BlackBoxGroup):
    def __init__(self, ns, seed=0):
        super().__init__()
        self.ns = [int(n) for n in ns]
        if any(n < 1 for n in self.ns):
            raise ValueError("cyclic factors must be positive")
        M = 1
        for n in self.ns:
            M *= n
        if M > 1 << 60:
            raise ValueError("opaque groups are limited to order 2^60")
        self.M = M
        rng = random.Random(seed)
        a = rng.randrange(1, M) if M > 1 else 0
        while M > 1 and math.gcd(a, M) != 1:
            a = rng.randrange(1, M)
        self._a = a
        self._ainv = pow(a, -1, M) if M > 1 else 0
        self._b = rng.randrange(M) if M > 1 else 0
        self.identity = self._enc([0] * len(self.ns))
        self.size_bits = max(M.bit_length(), 1)

    # hidden coordinates ---------------------------------------------------
    def _enc(self, vec):
        X = 0
        for x, n in zip(vec, self.ns):
            X = X * n + (x % n)
        return (self._a * X + self._b) % self.M if self.M > 1 else 0

    def _dec(self, e):
        if self.M == 1:
            return [0] * len(self.ns)
        X = (e - self._b) * self._ainv % self.M
        out = []
        for n in reversed(self.ns):
            X, r = divmod(X, n)
            out.append(r)
        return out[::-1]

    # contract -------------------------------------------------------------
    def op(self, x, y):
        self.ops += 1
        return self._enc([a + b for a, b in zip(self._dec(x), self._dec(y))])

    def inv(self, x):
        return self._enc([-a for a in self._dec(x)])

    def random(self, rng):
        return self._enc([rng.randrange(n) for n in self.ns])

    def hash64(self, x):
        # x and its inverse share a hash
        return splitmix64(min(x, self.inv(x)) ^ 0x5DEECE66D)

    def encode(self, x):
        return int(x).to_bytes(8, "little")

    def exp(self, x, e):
        if isinstance(e, Recoding):
            return super().exp(x, e)
        e = int(getattr(e, "value", e))
        self.ops += max(e.bit_length() - 1, 0)
        return self._enc([a * e for a in self._dec(x)])

    def element(self, vec):
        return self._enc(vec)

    # test-only truth ------------------------------------------------------
    def debug_order(self, x=None):
        if x is None:
            return self.M
        out = 1
        for a, n in zip(self._dec(x), self.ns):
            o = n // math.gcd(a, n)
            out = out * o // math.gcd(out, o)
        return out

    def debug_exponent(self):
        out = 1
        for n in self.ns:
            out = out * n // math.gcd(out, n)
        return out

    def debug_structure(self):
        """Invariant factors d_1 | d_2 | ... with d_1 > 1."""
        by_p = {}
        for n in self.ns:
            for p, e in factorint(n).items() if n > 1 else []:
                by_p.setdefault(p, []).append(p ** e)
        k = max((len(v) for v in by_p.values()), default=0)
        out = [1] * k
        for v in by_p.values():
            for i, q in enumerate(sorted(v, reverse=True)):
                out[k - 1 - i] *= q
        return out


def opaque_group(ns, seed=0):
    return OpaqueGroup(ns, seed)
