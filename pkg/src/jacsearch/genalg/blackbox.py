"""The black-box group contract used by every generic algorithm.

A group supplies identity, op, inv, random, hash64 and encode; elements are
any hashable values with canonical equality.  The remaining methods have
generic defaults that concrete groups may override with faster bulk versions
(the compiled Jacobian group does so for exponentiation and hash walks).
"""

import numpy as np

from ..expo import Recoding, exp_generic, recode


class BlackBoxGroup:
    identity = None
    # inverses cost nothing, so an element and its inverse may share a hash
    fast_inverse = True

    def __init__(self):
        self.ops = 0

    # required -----------------------------------------------------------
    def op(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def random(self, rng):
        raise NotImplementedError

    def hash64(self, a):
        raise NotImplementedError

    def encode(self, a):
        raise NotImplementedError

    # defaults -----------------------------------------------------------
    def eq(self, a, b):
        return a == b

    def is_identity(self, a):
        return a == self.identity

    def sqr(self, a):
        return self.op(a, a)

    def hash(self, a, bits=64):
        return self.hash64(a) >> (64 - bits)

    def exp(self, a, e):
        """a^e for an int (any sign), a Recoding or a FactoredExponent."""
        if isinstance(e, Recoding):
            return exp_generic(self.op, self.sqr, self.inv, self.identity, a, e)
        e = int(getattr(e, "value", e))
        if e < 0:
            a, e = self.inv(a), -e
        if e == 0:
            return self.identity
        if e == 1:
            return a
        return exp_generic(self.op, self.sqr, self.inv, self.identity, a, recode(e))

    def batch_op(self, xs, ys):
        return [self.op(x, y) for x, y in zip(xs, ys)]

    def walk_hashes(self, starts, deltas, schedule):
        """Advance each start by deltas[schedule[t]] for t = 0..n-1.

        Returns (hashes, finals): hashes[t*m + i] is hash64 of sequence i after t
        steps (t = 0 is the start itself); finals are the last states.
        """
        m = len(starts)
        n = len(schedule)
        out = np.empty((n + 1) * m, dtype=np.uint64)
        cur = list(starts)
        for i, x in enumerate(cur):
            out[i] = self.hash64(x)
        for t in range(n):
            d = deltas[schedule[t]]
            cur = self.batch_op(cur, [d] * m)
            base = (t + 1) * m
            for i, x in enumerate(cur):
                out[base + i] = self.hash64(x)
        return out, cur

    def power_table(self, a, n):
        """[a^0, a^1, ..., a^n]."""
        out = [self.identity, a]
        for _ in range(n - 1):
            out.append(self.op(out[-1], a))
        return out[:n + 1]
