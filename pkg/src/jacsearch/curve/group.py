"""Jacobians wrapped as black-box groups.

JacobianGroup works over any supported field in pure Python.  FastJacobianGroup
uses the compiled kernel and requires a prime field with p < 2^63; its
elements are tuples of kernel words, convertible to and from Divisors.
"""

from collections import OrderedDict

import numpy as np

from ..expo import Recoding, recode
from ..genalg.blackbox import BlackBoxGroup
from . import kernel as K
from .jacobian import Divisor


class JacobianGroup(BlackBoxGroup):
    def __init__(self, curve):
        super().__init__()
        self.curve = curve
        self.jac = curve.jacobian
        self.identity = self.jac.identity
        self.g = curve.g
        self.size_bits = curve.g * curve.field.q.bit_length() + 2

    def op(self, a, b):
        self.ops += 1
        return self.jac.add(a, b)

    def inv(self, a):
        return self.jac.neg(a)

    def random(self, rng):
        return self.jac.random(rng)

    def hash64(self, a):
        return self.jac.hash64(a)

    def encode(self, a):
        return self.jac.encode(a)

    def batch_op(self, xs, ys):
        self.ops += len(xs)
        return self.jac.batch_add(list(zip(xs, ys)))

    def to_divisor(self, a):
        return Divisor(self.curve, a)

    def from_divisor(self, D):
        return D.raw


class _RecodingCache:
    def __init__(self, size=8):
        self.size = size
        self.items = OrderedDict()

    def get(self, e):
        key = (e.bit_length(), e & ((1 << 128) - 1), hash(e))
        rec = self.items.get(key)
        if rec is None:
            rec = recode(e)
            self.items[key] = rec
            if len(self.items) > self.size:
                self.items.popitem(last=False)
        else:
            self.items.move_to_end(key)
        return rec


class FastJacobianGroup(BlackBoxGroup):
    def __init__(self, curve, mode=None):
        super().__init__()
        F = curve.field
        if F.k != 1 or F.p >= 1 << 63:
            raise ValueError("compiled Jacobians need a prime field with p < 2^63")
        self.curve = curve
        self.jac = curve.jacobian
        self.g = g = curve.g
        self.L = 2 * g + 1
        self.size_bits = g * F.p.bit_length() + 2
        self.ctx = K.make_context(F.p, mode)
        self.f = np.array([K.to_word(c, self.ctx) for c in curve.f], dtype=np.uint64)
        self.identity = (0,) * self.L
        self._recodings = _RecodingCache()
        self._out = np.zeros(self.L, dtype=np.uint64)

    # conversions ----------------------------------------------------------
    def from_raw(self, raw):
        u, v = raw
        d = len(u) - 1
        g = self.g
        out = [0] * self.L
        out[0] = d
        for i in range(d):
            out[1 + i] = K.to_word(u[i], self.ctx)
            out[1 + g + i] = K.to_word(v[i], self.ctx)
        return tuple(out)

    def to_raw(self, a):
        d = a[0]
        g = self.g
        u = tuple(K.from_word(a[1 + i], self.ctx) for i in range(d)) + (1,)
        v = tuple(K.from_word(a[1 + g + i], self.ctx) for i in range(d))
        return (u, v)

    def from_divisor(self, D):
        return self.from_raw(D.raw)

    def to_divisor(self, a):
        return Divisor(self.curve, self.to_raw(a))

    def _arr(self, a):
        return np.array(a, dtype=np.uint64)

    def _arrs(self, xs):
        return np.array(xs, dtype=np.uint64).reshape(len(xs), self.L)

    # contract ---------------------------------------------------------------
    def op(self, a, b):
        self.ops += 1
        out = self._out
        K.jadd_one(self._arr(a), self._arr(b), out, self.f, self.g, self.ctx)
        return tuple(out.tolist())

    def inv(self, a):
        g = self.g
        p = int(self.ctx[K.P_])
        return a[:g + 1] + tuple((p - x) if x else 0 for x in a[g + 1:])

    def random(self, rng):
        acc = self.identity
        for _ in range(self.g):
            x, y = self.jac.random_point(rng)
            acc = self.op(acc, self.from_raw(self.jac.point(x, y)))
        self.ops -= self.g
        return acc

    def hash64(self, a):
        return int(K.jhash(self._arr(a), self.g, self.ctx))

    def encode(self, a):
        return self.jac.encode(self.to_raw(a))

    def exp(self, a, e):
        if isinstance(e, Recoding):
            rec = e
        else:
            e = int(getattr(e, "value", e))
            if e < 0:
                a, e = self.inv(a), -e
            if e == 0:
                return self.identity
            if e == 1:
                return a
            rec = self._recodings.get(e) if e.bit_length() > 4096 else recode(e)
        if len(rec.digits) == 0:
            return self.identity
        out = self._out
        self.ops += int(K.jexp(self._arr(a), rec.gaps, rec.digits, rec.tail, out,
                               self.f, self.g, self.ctx))
        return tuple(out.tolist())

    def batch_op(self, xs, ys):
        if not xs:
            return []
        A = self._arrs(xs)
        B = self._arrs(ys)
        out = np.empty_like(A)
        K.jadd_many(A, B, out, self.f, self.g, self.ctx)
        self.ops += len(xs)
        return [tuple(r) for r in out.tolist()]

    def walk_hashes(self, starts, deltas, schedule):
        m = len(starts)
        S = self._arrs(starts)
        D = self._arrs(deltas)
        sched = np.asarray(schedule, dtype=np.int64)
        out = np.empty((len(sched) + 1) * m, dtype=np.uint64)
        final = np.empty_like(S)
        self.ops += int(K.jwalk(S, D, sched, self.f, self.g, self.ctx, out, final))
        return out, [tuple(r) for r in final.tolist()]


def jacobian_group(curve, fast=None):
    """The compiled group when the field allows it, else the Python one."""
    F = curve.field
    can = F.k == 1 and F.p < 1 << 63 and curve.g >= 2
    if fast is None:
        fast = can
    if fast and can:
        return FastJacobianGroup(curve)
    return JacobianGroup(curve)
