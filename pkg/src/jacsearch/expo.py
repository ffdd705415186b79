"""Signed sliding-window recoding of large exponents.

An exponent e is rewritten as a sequence of odd signed digits d_i separated by
runs of doublings, so that x^e costs about lg(e) squarings plus
lg(e)/(w+1) multiplications with a table of 2^(w-2) odd powers.  Inverses are
free in the groups we care about, which is why signed digits pay off.
"""

import numba as nb
import numpy as np


def choose_window(bits):
    """Window width minimizing table size plus expected additions."""
    best, best_w = None, 2
    for w in range(2, 24):
        cost = (1 << (w - 2)) + bits / (w + 1)
        if best is None or cost < best:
            best, best_w = cost, w
    return best_w


@nb.njit(cache=True)
def _wnaf(bits, w):
    n = bits.shape[0]
    pos = np.empty(n // w + 2, dtype=np.int64)
    val = np.empty(n // w + 2, dtype=np.int64)
    cnt = 0
    i = 0
    half = 1 << (w - 1)
    full = 1 << w
    while i < n:
        if bits[i] == 0:
            i += 1
            continue
        d = 0
        for j in range(w):
            if i + j < n and bits[i + j]:
                d |= 1 << j
        if d >= half:
            d -= full
            # propagate the carry into bit i + w
            j = i + w
            while j < n and bits[j] == 1:
                bits[j] = 0
                j += 1
            bits[j] = 1
        pos[cnt] = i
        val[cnt] = d
        cnt += 1
        i += w
    return pos[:cnt], val[:cnt]


class Recoding:
    """Digits from most to least significant.

    gaps[0] is unused; gaps[i] doublings precede digit i; `tail` doublings
    follow the last digit.
    """

    __slots__ = ("gaps", "digits", "tail", "window", "bits")

    def __init__(self, gaps, digits, tail, window, bits):
        self.gaps = gaps
        self.digits = digits
        self.tail = tail
        self.window = window
        self.bits = bits

    @property
    def table_size(self):
        return 1 << (self.window - 2) if self.window >= 2 else 1

    def op_count(self):
        """Group operations needed (including building the odd-power table)."""
        if len(self.digits) == 0:
            return 0
        table = max(int(np.max(np.abs(self.digits))) // 2, 0)
        return int(self.gaps.sum()) + self.tail + len(self.digits) - 1 + table + (1 if table else 0)


def recode(e, window=None):
    e = int(e)
    if e < 0:
        raise ValueError("negative exponent")
    nbits = e.bit_length()
    if window is None:
        window = choose_window(nbits)
    if e == 0:
        z = np.zeros(0, dtype=np.int64)
        return Recoding(z, z, 0, window, 0)
    nbytes = (nbits + 7) // 8 + 1 + (window + 7) // 8
    raw = np.frombuffer(e.to_bytes(nbytes, "little"), dtype=np.uint8)
    bits = np.unpackbits(raw, bitorder="little").astype(np.uint8)
    pos, val = _wnaf(bits, window)
    pos = pos[::-1].copy()
    val = val[::-1].copy()
    gaps = np.zeros(len(pos), dtype=np.int64)
    gaps[1:] = pos[:-1] - pos[1:]
    tail = int(pos[-1])
    return Recoding(gaps, val, tail, window, nbits)


def exp_generic(op, sqr, inv, identity, x, e, window=None):
    """x^e for any group given as callables; e may be a Recoding."""
    rec = e if isinstance(e, Recoding) else recode(e, window)
    if len(rec.digits) == 0:
        return identity
    top = int(np.max(np.abs(rec.digits)))
    table = [x]
    if top > 1:
        x2 = sqr(x)
        for _ in range(top // 2):
            table.append(op(table[-1], x2))
    d = int(rec.digits[0])
    acc = table[abs(d) // 2]
    if d < 0:
        acc = inv(acc)
    for i in range(1, len(rec.digits)):
        for _ in range(int(rec.gaps[i])):
            acc = sqr(acc)
        d = int(rec.digits[i])
        t = table[abs(d) // 2]
        acc = op(acc, t if d > 0 else inv(t))
    for _ in range(rec.tail):
        acc = sqr(acc)
    return acc
