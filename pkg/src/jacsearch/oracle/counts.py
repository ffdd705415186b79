"""Brute-force point counts N_k of y^2 = f(x) over F_{q^k}, q = p prime.

Elements of F_{p^k} are coordinate arrays over a basis 1, x, ..., x^(k-1)
modulo a monic irreducible found here by Rabin's test; any irreducible gives
the same counts, so nothing is shared with the field module.  Two strategies
count affine points: Euler's criterion summed over x, and a table of squares
swept against f(x) (compiled over a prime field, where f is walked by finite
differences).  Both run and must agree when p^k <= 2^12.
"""

import numba as nb
import numpy as np

from ..errors import FieldTooLarge

MAX_SIZE = 1 << 26
CROSS_CHECK = 1 << 12
CHUNK = 1 << 18


# small polynomial helpers over F_p (lists, low degree first) ---------------

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _polymod(a, m, p):
    a = [c % p for c in a]
    k = len(m) - 1
    for i in range(len(a) - 1, k - 1, -1):
        c = a[i]
        if c:
            for j in range(k + 1):
                a[i - k + j] = (a[i - k + j] - c * m[j]) % p
    return _trim(a[:k])


def _mulmod(a, b, m, p):
    out = [0] * max(len(a) + len(b) - 1, 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _polymod(out, m, p)


def _powmod(a, e, m, p):
    r = [1]
    while e:
        if e & 1:
            r = _mulmod(r, a, m, p)
        a = _mulmod(a, a, m, p)
        e >>= 1
    return r


def _gcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        inv = pow(b[-1], -1, p)
        b = [c * inv % p for c in b]
        a, b = b, _polymod(a, b, p)
    return a


def _prime_divisors(k):
    return [r for r in range(2, k + 1) if k % r == 0 and all(r % s for s in range(2, r))]


def rabin_irreducible(m, p):
    """Rabin's test for a monic m of degree k over F_p."""
    k = len(m) - 1
    x = [0, 1]
    if _powmod(x, p ** k, m, p) != _polymod(x, m, p):
        return False
    for r in _prime_divisors(k):
        h = _powmod(x, p ** (k // r), m, p)
        h = h + [0] * (2 - len(h))
        h[1] = (h[1] - 1) % p
        if len(_gcd(m, h, p)) > 1:
            return False
    return True


def irreducible_modulus(p, k):
    """First monic irreducible x^k + c_{k-1} x^(k-1) + ... + c_0 in counting order."""
    if k == 1:
        return [0, 1]
    n = 0
    while True:
        c = []
        t = n
        for _ in range(k):
            c.append(t % p)
            t //= p
        m = c + [1]
        if m[0] and rabin_irreducible(m, p):
            return m
        n += 1


# vectorised F_{p^k} arithmetic; an element batch has shape (k, n) -------------

class _VecField:
    def __init__(self, p, k):
        self.p = p
        self.k = k
        self.mod = irreducible_modulus(p, k)
        self.size = p ** k

    def elements(self, lo, hi):
        idx = np.arange(lo, hi, dtype=np.int64)
        out = np.empty((self.k, hi - lo), dtype=np.int64)
        for i in range(self.k):
            out[i] = idx % self.p
            idx //= self.p
        return out

    def index(self, a):
        out = np.zeros(a.shape[1], dtype=np.int64)
        for i in range(self.k - 1, -1, -1):
            out = out * self.p + a[i]
        return out

    def const(self, c, n):
        out = np.zeros((self.k, n), dtype=np.int64)
        out[0] = c % self.p
        return out

    def mul(self, a, b):
        p, k = self.p, self.k
        if k == 1:
            return a * b % p
        prod = np.zeros((2 * k - 1, a.shape[1]), dtype=np.int64)
        for i in range(k):
            for j in range(k):
                prod[i + j] = (prod[i + j] + a[i] * b[j]) % p
        for d in range(2 * k - 2, k - 1, -1):
            c = prod[d]
            for j in range(k):
                prod[d - k + j] = (prod[d - k + j] - c * self.mod[j]) % p
        return prod[:k].copy()

    def add_const(self, a, c):
        out = a.copy()
        out[0] = (out[0] + c) % self.p
        return out

    def pow(self, a, e):
        r = self.const(1, a.shape[1])
        while e:
            if e & 1:
                r = self.mul(r, a)
            e >>= 1
            if e:
                a = self.mul(a, a)
        return r

    def is_zero(self, a):
        return ~np.any(a, axis=0)


def _f_values(V, f, x):
    # Horner with the prime-field coefficients of f
    acc = V.const(f[-1], x.shape[1])
    for c in reversed(f[:-1]):
        acc = V.add_const(V.mul(acc, x), c)
    return acc


def _affine_character(V, f):
    """sum over x of 1 + chi(f(x)), chi by Euler's criterion."""
    e = (V.size - 1) // 2
    total = 0
    for lo in range(0, V.size, CHUNK):
        x = V.elements(lo, min(lo + CHUNK, V.size))
        y = V.pow(_f_values(V, f, x), e)
        zero = V.is_zero(y)
        one = (y[0] == 1) & ~np.any(y[1:], axis=0) if V.k > 1 else y[0] == 1
        total += int(zero.sum()) + 2 * int(one.sum())
    return total


def _affine_sweep(V, f):
    """Mark every square y^2, then count y for each value f(x)."""
    square = np.zeros(V.size, dtype=bool)
    for lo in range(0, V.size, CHUNK):
        y = V.elements(lo, min(lo + CHUNK, V.size))
        square[V.index(V.mul(y, y))] = True
    total = 0
    for lo in range(0, V.size, CHUNK):
        x = V.elements(lo, min(lo + CHUNK, V.size))
        v = V.index(_f_values(V, f, x))
        zero = v == 0
        total += int(zero.sum()) + 2 * int((square[v] & ~zero).sum())
    return total


@nb.njit(cache=True)
def _half_squares(p):
    # bit v set iff v is a nonzero square, for v <= (p - 1) / 2; the upper half
    # follows from chi(p - v) = chi(-1) chi(v) and the table stays in cache
    h = (p - 1) // 2
    square = np.zeros((h >> 6) + 1, dtype=np.uint64)
    s = 0
    for y in range(1, h + 1):
        s += 2 * y - 1
        if s >= p:
            s -= p
        if s <= h:
            square[s >> 6] |= np.uint64(1) << np.uint64(s & 63)
    return square


@nb.njit(cache=True)
def _difference_table(f, p, d):
    # diff[j] = j-th forward difference of f at x = 0, for x -> x + 1 stepping
    diff = np.zeros(d + 1, dtype=np.int64)
    n = len(f) - 1
    for x in range(n + 1):
        acc = 0
        for i in range(n, -1, -1):
            acc = (acc * x + f[i]) % p
        diff[x] = acc
    for j in range(1, n + 1):
        for x in range(n, j - 1, -1):
            diff[x] = (diff[x] - diff[x - 1]) % p
    return diff


@nb.njit(cache=True)
def _sweep_prime(f, p, square):
    # f(x) walked by finite differences held in registers (degree <= 8),
    # counted without branches
    h = (p - 1) // 2
    flip = np.uint64(p & 3 == 3)
    t = _difference_table(f, p, 8)
    d0, d1, d2, d3, d4, d5, d6, d7, d8 = t[0], t[1], t[2], t[3], t[4], t[5], t[6], t[7], t[8]
    zeros = 0
    squares = np.uint64(0)
    for _ in range(p):
        zeros += d0 == 0
        hi = d0 > h
        w = d0 + hi * (p - 2 * d0)
        squares += ((square[w >> 6] >> np.uint64(w & 63)) & np.uint64(1)) ^ (flip & np.uint64(hi))
        d0 += d1
        d0 -= p * (d0 >= p)
        d1 += d2
        d1 -= p * (d1 >= p)
        d2 += d3
        d2 -= p * (d2 >= p)
        d3 += d4
        d3 -= p * (d3 >= p)
        d4 += d5
        d4 -= p * (d4 >= p)
        d5 += d6
        d5 -= p * (d5 >= p)
        d6 += d7
        d6 -= p * (d6 >= p)
        d7 += d8
        d7 -= p * (d7 >= p)
    return zeros + 2 * np.int64(squares)


@nb.njit(cache=True)
def _sweep_prime5(f, p, square):
    # the same walk for degree <= 5 (genus 2), with fewer registers
    h = (p - 1) // 2
    flip = np.uint64(p & 3 == 3)
    t = _difference_table(f, p, 5)
    d0, d1, d2, d3, d4, d5 = t[0], t[1], t[2], t[3], t[4], t[5]
    zeros = 0
    squares = np.uint64(0)
    for _ in range(p):
        zeros += d0 == 0
        hi = d0 > h
        w = d0 + hi * (p - 2 * d0)
        squares += ((square[w >> 6] >> np.uint64(w & 63)) & np.uint64(1)) ^ (flip & np.uint64(hi))
        d0 += d1
        d0 -= p * (d0 >= p)
        d1 += d2
        d1 -= p * (d1 >= p)
        d2 += d3
        d2 -= p * (d2 >= p)
        d3 += d4
        d3 -= p * (d3 >= p)
        d4 += d5
        d4 -= p * (d4 >= p)
    return zeros + 2 * np.int64(squares)


_SQUARES = {}


def _squares_for(p):
    if p not in _SQUARES:
        if len(_SQUARES) >= 4:
            _SQUARES.clear()
        _SQUARES[p] = _half_squares(p)
    return _SQUARES[p]


@nb.njit(cache=True)
def _sweep_quadratic(f, p, m0, m1):
    """Affine count over F_p[s]/(s^2 + m1 s + m0): chi(a) is the Legendre
    symbol of the norm a0^2 - m1 a0 a1 + m0 a1^2."""
    square = np.zeros(p, dtype=np.bool_)
    for y in range(1, p):
        square[y * y % p] = True
    d = len(f) - 1
    total = 0
    for x1 in range(p):
        for x0 in range(p):
            a0 = f[d]
            a1 = 0
            for i in range(d - 1, -1, -1):
                t = a1 * x1 % p
                b0 = (a0 * x0 - m0 * t) % p
                b1 = (a0 * x1 + a1 * x0 - m1 * t) % p
                a0 = (b0 + f[i]) % p
                a1 = b1
            nrm = (a0 * a0 - m1 * a0 % p * a1 + m0 * a1 % p * a1) % p
            if nrm == 0:
                total += 1
            elif square[nrm]:
                total += 2
    return total


def _prime_field_coeffs(C):
    F = C.field
    if F.k != 1:
        raise ValueError("the point-count oracle needs a curve over a prime field")
    return [int(c) for c in C.f], F.p


def naive_counts(C, k, cross_check=None):
    """N_k: points of C over F_{q^k}, including the one point at infinity."""
    f, p = _prime_field_coeffs(C)
    if k < 1:
        raise ValueError("k must be positive")
    if p ** k > MAX_SIZE:
        raise FieldTooLarge(f"q^k = {p}^{k} exceeds 2^26")
    V = _VecField(p, k)
    if cross_check is None:
        cross_check = V.size <= CROSS_CHECK
    if k == 1 and len(f) <= 9:
        sweep = _sweep_prime5 if len(f) <= 6 else _sweep_prime
        n = int(sweep(np.array(f, dtype=np.int64), p, _squares_for(p)))
    elif k == 2:
        m0, m1 = (int(c) for c in V.mod[:2])
        n = int(_sweep_quadratic(np.array([c % p for c in f], dtype=np.int64), p, m0, m1))
    else:
        n = _affine_sweep(V, f)
    if cross_check:
        m = _affine_character(V, f)
        if m != n:
            raise AssertionError(f"point counts disagree: sweep {n}, character sum {m}")
    return n + 1


def naive_count_list(C, n):
    return [naive_counts(C, k) for k in range(1, n + 1)]
