"""Jacobian arithmetic on reduced Mumford pairs, in pure Python.

A raw element is a pair (u, v) of tuples of raw field values: u is monic and
stored with its leading 1 (length deg u + 1), v has exactly deg u
coefficients.  The identity is ((1,), ()).

Addition first tries an explicit formula for the frequent case (both u of
degree g, coprime, leading coefficient of the slope nonzero) which needs a
single field inversion; the inversion is exposed as a separate step so that
many additions can share one batched inversion.  Everything else goes through
Cantor's composition and reduction.
"""

import struct

from ..errors import CurveMismatch
from ..expo import exp_generic
from ..ff import poly as fp

MASK64 = (1 << 64) - 1
HASH_SEED = 0x9E3779B97F4A7C15


def splitmix64(z):
    z = (z + 0x9E3779B97F4A7C15) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def hash_words(words):
    h = HASH_SEED
    for w in words:
        h = splitmix64(h ^ w)
    return h


# hash of the identity: the word sequence [0]
IDENTITY_HASH = hash_words([0])


class Jacobian:
    def __init__(self, curve):
        self.curve = curve
        self.F = curve.field
        self.g = curve.g
        F = self.F
        self.f = list(curve.f)
        self.identity = ((F.one,), ())
        self.limbs = (F.p.bit_length() + 63) // 64
        self.fast_count = 0
        self.slow_count = 0

    # basic structure -------------------------------------------------

    def is_identity(self, a):
        return len(a[0]) == 1

    def neg(self, a):
        F = self.F
        return (a[0], tuple(F.neg(c) for c in a[1]))

    def is_valid(self, a):
        """u monic, deg v < deg u <= g and u | v^2 - f."""
        F = self.F
        u, v = list(a[0]), list(a[1])
        if u[-1] != F.one or len(v) != len(u) - 1 or len(u) - 1 > self.g:
            return False
        rem = fp.pmod(F, fp.psub(F, fp.pmul(F, fp.trim(F, v), fp.trim(F, v)), self.f), u)
        return not rem

    def normalize(self, u, v):
        """Make raw polynomials into a canonical pair (u monic, v padded)."""
        F = self.F
        u = fp.pmonic(F, fp.trim(F, u))
        v = fp.pmod(F, fp.trim(F, v), u) if len(u) > 1 else []
        d = len(u) - 1
        v = list(v) + [F.zero] * (d - len(v))
        return (tuple(u), tuple(v))

    # Cantor ------------------------------------------------------------

    def cantor(self, a, b):
        F = self.F
        self.slow_count += 1
        u1, v1 = list(a[0]), fp.trim(F, a[1])
        u2, v2 = list(b[0]), fp.trim(F, b[1])
        d1, e1, e2 = fp.pxgcd(F, u1, u2)
        if len(d1) == 1:
            # coprime: d = 1
            s1, s2, s3 = e1, e2, []
            d = d1
        else:
            d, c1, c2 = fp.pxgcd(F, d1, fp.padd(F, v1, v2))
            if not d:
                d, c1, c2 = d1, [F.one], []
            s1 = fp.pmul(F, c1, e1)
            s2 = fp.pmul(F, c1, e2)
            s3 = c2
        dd = fp.pmul(F, d, d)
        u = fp.pdivmod(F, fp.pmul(F, u1, u2), dd)[0]
        t = fp.padd(F, fp.pmul(F, fp.pmul(F, s1, u1), v2), fp.pmul(F, fp.pmul(F, s2, u2), v1))
        if s3:
            t = fp.padd(F, t, fp.pmul(F, s3, fp.padd(F, fp.pmul(F, v1, v2), self.f)))
        v = fp.pmod(F, fp.pdivmod(F, t, d)[0], u)
        return self._reduce(u, v)

    def _reduce(self, u, v):
        F = self.F
        g = self.g
        while len(u) - 1 > g:
            u = fp.pdivmod(F, fp.psub(F, self.f, fp.pmul(F, v, v)), u)[0]
            u = fp.pmonic(F, u)
            v = fp.pmod(F, fp.pneg(F, v), u)
        return self.normalize(u, v)

    # frequent-case explicit formula -----------------------------------

    def _almost_inverse(self, r0, r1):
        """Fraction-free Euclid: returns (t, c) with r1 * t = c mod r0, c a nonzero constant."""
        F = self.F
        r0 = fp.trim(F, r0)
        r1 = fp.trim(F, r1)
        t0, t1 = [], [F.one]
        while len(r1) > 1:
            while len(r0) >= len(r1):
                shift = len(r0) - len(r1)
                a, b = r1[-1], r0[-1]
                r0 = fp.psub(F, fp.pscale(F, r0, a), [F.zero] * shift + fp.pscale(F, r1, b))
                t0 = fp.psub(F, fp.pscale(F, t0, a), [F.zero] * shift + fp.pscale(F, t1, b))
            r0, r1, t0, t1 = r1, r0, t1, t0
        if not r1:
            return None
        return t1, r1[0]

    def _prepare(self, a, b):
        """First half of a frequent-case addition, or None if it does not apply."""
        F = self.F
        g = self.g
        u1, v1 = a
        u2, v2 = b
        if len(u1) != g + 1 or len(u2) != g + 1:
            return None
        u1 = list(u1)
        v1l = list(v1)
        if a == b:
            u2 = u1
            r = self._almost_inverse(u1, [F.add(c, c) for c in v1l])
            if r is None:
                return None
            t, c = r
            k = fp.pdivmod(F, fp.psub(F, self.f, fp.pmul(F, fp.trim(F, v1l), fp.trim(F, v1l))), u1)[0]
            target = fp.pmod(F, k, u1)
        else:
            u2 = list(u2)
            r = self._almost_inverse(u2, fp.psub(F, u1, u2))
            if r is None:
                return None
            t, c = r
            target = fp.psub(F, list(v2), v1l)
        sp = fp.pmod(F, fp.pmul(F, t, target), u2)
        if len(sp) < g:
            return None
        return (u1, v1l, u2, c, sp), F.mul(c, sp[-1])

    def _finish(self, state, w):
        F = self.F
        g = self.g
        u1, v1, u2, c, sp = state
        cinv = F.mul(w, sp[-1])
        s = [F.mul(x, cinv) for x in sp]
        stinv = F.mul(F.mul(c, c), w)
        v = fp.padd(F, fp.pmul(F, s, u1), fp.trim(F, v1))
        U = fp.pmul(F, u1, u2)
        num = fp.psub(F, self.f, fp.pmul(F, v, v))
        k = fp.pdivmod(F, num, U)[0]
        m = F.neg(F.mul(stinv, stinv))
        u = [F.mul(x, m) for x in k]
        v = fp.pmod(F, fp.pneg(F, v), u)
        while len(u) - 1 > g:
            u = fp.pdivmod(F, fp.psub(F, self.f, fp.pmul(F, v, v)), u)[0]
            u = fp.pmonic(F, u)
            v = fp.pmod(F, fp.pneg(F, v), u)
        d = len(u) - 1
        v = list(v) + [F.zero] * (d - len(v))
        self.fast_count += 1
        return (tuple(u), tuple(v))

    # group law ---------------------------------------------------------

    def add(self, a, b):
        if len(a[0]) == 1:
            return b
        if len(b[0]) == 1:
            return a
        prep = self._prepare(a, b)
        if prep is None:
            return self.cantor(a, b)
        state, x = prep
        if self.F.is_zero(x):
            return self.cantor(a, b)
        return self._finish(state, self.F.inv(x))

    def dbl(self, a):
        return self.add(a, a)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def batch_add(self, pairs):
        """Elementwise sums sharing one field inversion among the frequent cases."""
        out = [None] * len(pairs)
        pending = []
        for i, (a, b) in enumerate(pairs):
            if len(a[0]) == 1:
                out[i] = b
                continue
            if len(b[0]) == 1:
                out[i] = a
                continue
            prep = self._prepare(a, b)
            if prep is None or self.F.is_zero(prep[1]):
                out[i] = self.cantor(a, b)
            else:
                pending.append((i, prep[0], prep[1]))
        if pending:
            invs = self.F.batch_inv([x for _, _, x in pending])
            for (i, state, _), w in zip(pending, invs):
                out[i] = self._finish(state, w)
        return out

    def exp(self, a, e):
        if e < 0:
            return self.exp(self.neg(a), -e)
        return exp_generic(self.add, self.dbl, self.neg, self.identity, a, e)

    # points and random elements ----------------------------------------

    def point(self, x, y):
        """Divisor of the affine point (x, y) minus infinity."""
        F = self.F
        return ((F.neg(x), F.one), (y,))

    def random_point(self, rng):
        F = self.F
        while True:
            x = F.random(rng)
            y2 = self.curve.eval(x)
            y = F.sqrt(y2)
            if y is None:
                continue
            if rng.getrandbits(1):
                y = F.neg(y)
            return x, y

    def random(self, rng):
        acc = self.identity
        for _ in range(self.g):
            x, y = self.random_point(rng)
            acc = self.add(acc, self.point(x, y))
        return acc

    # hashing and serialization ----------------------------------------

    def _limbs(self, a_raw):
        out = []
        for c in self.F.coords(a_raw):
            for _ in range(self.limbs):
                out.append(c & MASK64)
                c >>= 64
        return out

    def canonical_v(self, v):
        """v or -v, whichever has the smaller coefficient keys (first difference wins)."""
        F = self.F
        for c in v:
            if not F.is_zero(c):
                nc = F.neg(c)
                if F.key(c) <= F.key(nc):
                    return v
                return tuple(F.neg(x) for x in v)
        return v

    def hash64(self, a):
        u, v = a
        d = len(u) - 1
        words = [d]
        for c in u[:d]:
            words.extend(self._limbs(c))
        for c in self.canonical_v(v):
            words.extend(self._limbs(c))
        return hash_words(words)

    def hash(self, a, bits=64):
        return self.hash64(a) >> (64 - bits)

    def encode(self, a):
        u, v = a
        d = len(u) - 1
        F = self.F
        return struct.pack("B", d) + b"".join(F.encode(c) for c in u[:d]) + b"".join(F.encode(c) for c in v)

    def decode(self, data):
        F = self.F
        d = data[0]
        w = F.width * F.k
        cs = [F.decode(data[1 + i * w:1 + (i + 1) * w]) for i in range(2 * d)]
        return (tuple(cs[:d]) + (F.one,), tuple(cs[d:]))


class Divisor:
    """A reduced divisor class on a fixed curve, with operator syntax."""

    __slots__ = ("curve", "raw")

    def __init__(self, curve, raw):
        self.curve = curve
        self.raw = raw

    @property
    def jac(self):
        return self.curve.jacobian

    @property
    def u(self):
        return self.raw[0]

    @property
    def v(self):
        return self.raw[1]

    @property
    def degree(self):
        return len(self.raw[0]) - 1

    def is_identity(self):
        return len(self.raw[0]) == 1

    def _check(self, other):
        if not isinstance(other, Divisor):
            raise TypeError("expected a Divisor")
        if other.curve is not self.curve and other.curve != self.curve:
            raise CurveMismatch("divisors on different curves")

    def __add__(self, other):
        self._check(other)
        return Divisor(self.curve, self.jac.add(self.raw, other.raw))

    def __sub__(self, other):
        self._check(other)
        return Divisor(self.curve, self.jac.sub(self.raw, other.raw))

    def __neg__(self):
        return Divisor(self.curve, self.jac.neg(self.raw))

    def __mul__(self, e):
        return Divisor(self.curve, self.jac.exp(self.raw, int(e)))

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, Divisor) and self.curve == other.curve and self.raw == other.raw

    def __hash__(self):
        return hash(self.raw)

    def __repr__(self):
        F = self.curve.field
        u = [F.coords(c) if F.k > 1 else c for c in self.raw[0]]
        v = [F.coords(c) if F.k > 1 else c for c in self.raw[1]]
        return f"Divisor(u={u}, v={v})"

    def to_bytes(self):
        return self.jac.encode(self.raw)


def identity(C):
    return Divisor(C, C.jacobian.identity)


def divisor(C, u, v):
    """Build a divisor from coefficient lists, checking that it lies on C."""
    F = C.field
    raw = C.jacobian.normalize([F.convert(c) for c in u], [F.convert(c) for c in v])
    if len(raw[0]) - 1 > C.g or not C.jacobian.is_valid(raw):
        raise ValueError("(u, v) is not a reduced divisor on this curve")
    return Divisor(C, raw)


def jac_add(D1, D2):
    return D1 + D2


def jac_double(D):
    return Divisor(D.curve, D.jac.dbl(D.raw))


def jac_neg(D):
    return -D


def jac_batch(pairs):
    """Elementwise D1 + D2 for a list of pairs on one curve, one batched inversion."""
    if not pairs:
        return []
    C = pairs[0][0].curve
    for a, b in pairs:
        a._check(b)
        if a.curve is not C and a.curve != C:
            raise CurveMismatch("jac_batch over several curves")
    raws = C.jacobian.batch_add([(a.raw, b.raw) for a, b in pairs])
    return [Divisor(C, r) for r in raws]


def jac_exp(D, e):
    """e-fold sum of D, e >= 0 an int or a FactoredExponent."""
    e = int(getattr(e, "value", e))
    if e < 0:
        raise ValueError("negative exponent")
    return Divisor(D.curve, D.jac.exp(D.raw, e))


def jac_random(C, rng):
    return Divisor(C, C.jacobian.random(rng))


def jac_hash(D, bits=64):
    return D.jac.hash(D.raw, bits)
