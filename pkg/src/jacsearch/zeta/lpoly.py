"""L-polynomials P(z) = 1 + a_1 z + ... + q^g z^2g and the group orders they fix.

All arithmetic is exact.  Orders over extensions come from power sums of the
Frobenius eigenvalues via Newton's identities: if P(z) = prod (1 - a_i z) then
P_k(z) = prod (1 - a_i^k z) is the L-polynomial over F_{q^k} and #J_k = P_k(1),
which equals the product of P over the k-th roots of unity.
"""

import math
from fractions import Fraction

import numpy as np

from ..errors import InvalidCounts, NonDivisibleOrders


class LPolynomial:
    __slots__ = ("q", "g", "coeffs")

    def __init__(self, q, g, coeffs):
        self.q = int(q)
        self.g = int(g)
        self.coeffs = tuple(int(c) for c in coeffs)
        if len(self.coeffs) != 2 * self.g + 1:
            raise ValueError(f"expected {2 * self.g + 1} coefficients")

    @classmethod
    def from_half(cls, q, g, half):
        """Build P from a_1..a_g using a_{2g-i} = q^(g-i) a_i."""
        a = [1] + [int(x) for x in half]
        if len(a) != g + 1:
            raise ValueError(f"expected {g} coefficients")
        full = a + [q ** (g - i) * a[i] for i in range(g - 1, -1, -1)]
        return cls(q, g, full)

    def __eq__(self, other):
        return (isinstance(other, LPolynomial) and self.q == other.q
                and self.g == other.g and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.q, self.g, self.coeffs))

    def __repr__(self):
        return f"LPolynomial(q={self.q}, g={self.g}, a={list(self.coeffs[1:self.g + 1])})"

    def __call__(self, z):
        out = 0
        for c in reversed(self.coeffs):
            out = out * z + c
        return out

    @property
    def half(self):
        return list(self.coeffs[1:self.g + 1])

    def to_json(self):
        return {"q": str(self.q), "g": self.g, "a": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj):
        return cls(int(obj["q"]), int(obj["g"]), [int(c) for c in obj["a"]])

    def power_sums(self, n):
        """s_1..s_n with s_k the sum of the k-th powers of the 2g eigenvalues."""
        a = list(self.coeffs) + [0] * max(0, n + 1 - len(self.coeffs))
        s = [0] * (n + 1)
        for k in range(1, n + 1):
            acc = k * a[k]
            for i in range(1, k):
                acc += a[i] * s[k - i]
            s[k] = -acc
        return s[1:]


def twist_lpoly(P):
    """L-polynomial of the quadratic twist: a_i -> (-1)^i a_i."""
    return LPolynomial(P.q, P.g, [c if i % 2 == 0 else -c for i, c in enumerate(P.coeffs)])


def from_power_sums(q, g, sums):
    """Coefficients a_0..a_2g from s_1..s_2g (exact Newton inversion)."""
    n = 2 * g
    a = [1] + [0] * n
    for k in range(1, n + 1):
        acc = sums[k - 1]
        for i in range(1, k):
            acc += a[i] * sums[k - i - 1]
        if acc % k:
            raise ValueError("power sums are not those of an integer polynomial")
        a[k] = -acc // k
    return LPolynomial(q, g, a)


def base_change(P, k):
    """L-polynomial of the same curve over F_{q^k}."""
    if k == 1:
        return P
    s = P.power_sums(2 * P.g * k)
    return from_power_sums(P.q ** k, P.g, [s[k * j - 1] for j in range(1, 2 * P.g + 1)])


def extension_order(P, k):
    """#J over F_{q^k}, the product of P over all k-th roots of unity."""
    if k < 1:
        raise ValueError("k must be positive")
    return base_change(P, k)(1)


def quotient_order(P, a, b):
    """#J_a / #J_b for b | a."""
    if a % b:
        raise ValueError("b must divide a")
    na = extension_order(P, a)
    nb = extension_order(P, b)
    if nb == 0 or na % nb:
        raise NonDivisibleOrders(f"#J_{b} does not divide #J_{a}")
    return na // nb


def trace_zero_order(P, k):
    """(#J_{k/1}, exact) where exact says the trace zero variety T_k has this order.

    J_{k/1} sits inside T_k with equality when J(C) has no k-torsion, which is
    certified when k does not divide #J(C)."""
    if k not in (2, 3):
        raise ValueError("trace zero orders are provided for k = 2, 3")
    return quotient_order(P, k, 1), P(1) % k != 0


def weil_bounds(q, g):
    """(lo, hi) integers bracketing [(sqrt q - 1)^2g, (sqrt q + 1)^2g] exactly."""
    A, Bc = _weil_parts(q, g)
    # hi = floor(A + Bc sqrt q), lo = ceil(A - Bc sqrt q)
    r = math.isqrt(Bc * Bc * q)
    return A - r, A + r


def _weil_parts(q, g):
    # (sqrt q + 1)^2g = A + Bc sqrt q
    A = 0
    Bc = 0
    for j in range(2 * g + 1):
        c = math.comb(2 * g, j)
        if j % 2 == 0:
            A += c * q ** (j // 2)
        else:
            Bc += c * q ** (j // 2)
    return A, Bc


def in_weil_interval(N, q, g):
    A, Bc = _weil_parts(q, g)
    d = N - A
    return d * d <= Bc * Bc * q


def validate_lpoly(P, numeric=False, max_k=4):
    """(ok, violations).  Exact checks decide `ok`; numeric root checks, when
    requested, only add entries prefixed with 'advisory'."""
    v = []
    q, g, a = P.q, P.g, P.coeffs
    if q < 2:
        v.append("q must be at least 2")
        return False, v
    if a[0] != 1:
        v.append("a_0 != 1")
    for i in range(g):
        if a[2 * g - i] != q ** (g - i) * a[i]:
            v.append(f"functional equation fails at a_{2 * g - i}")
    for i in range(1, 2 * g + 1):
        if a[i] * a[i] > math.comb(2 * g, i) ** 2 * q ** i:
            v.append(f"|a_{i}| exceeds binom(2g,i) q^(i/2)")
    if not in_weil_interval(P(1), q, g):
        v.append("P(1) outside the Weil interval")
    if not in_weil_interval(P(-1), q, g):
        v.append("P(-1) outside the Weil interval")
    if not v and not eigenvalues_on_circle(P):
        v.append("some eigenvalue has |alpha| != sqrt(q)")
    if not v:
        for k in range(2, max_k + 1):
            if not in_weil_interval(extension_order(P, k), q ** k, g):
                v.append(f"#J_{k} outside the Weil interval over F_q^{k}")
    ok = not v
    if numeric:
        v.extend(_numeric_check(P))
    return ok, v


def real_weil_polynomial(P):
    """h with z^-g P(z) = h(1/z + q z); its roots are alpha + q/alpha (low first)."""
    q, g, a = P.q, P.g, P.coeffs
    # D_k(T) = z^-k + q^k z^k as a polynomial in T = 1/z + q z
    D = [[2], [0, 1]]
    for k in range(2, g + 1):
        nxt = [0] + D[k - 1]
        for i, c in enumerate(D[k - 2]):
            nxt[i] -= q * c
        D.append(nxt)
    h = [0] * (g + 1)
    h[0] = a[g]
    for i in range(g):
        for j, c in enumerate(D[g - i]):
            h[j] += a[i] * c
    return h


def _trim(f):
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return f


def _rem(f, d):
    f = [Fraction(c) for c in f]
    while len(f) >= len(d) and f:
        k = f[-1] / d[-1]
        s = len(f) - len(d)
        for i, c in enumerate(d):
            f[s + i] -= k * c
        f = _trim(f)
    return f


def _deriv(f):
    return [i * f[i] for i in range(1, len(f))]


def _gcd(f, g):
    f, g = _trim(f), _trim(g)
    while g:
        f, g = g, _rem(f, g)
    return f


def _quo(f, d):
    f = [Fraction(c) for c in f]
    out = [Fraction(0)] * max(len(f) - len(d) + 1, 1)
    while len(f) >= len(d) and f:
        k = f[-1] / d[-1]
        s = len(f) - len(d)
        out[s] = k
        for i, c in enumerate(d):
            f[s + i] -= k * c
        f = _trim(f)
    return _trim(out)


def _sign_at(f, s, q):
    # sign of f(2 s sqrt q) = U + V sqrt q, exactly
    U = Fraction(0)
    V = Fraction(0)
    for k, c in enumerate(f):
        t = c * (2 * s) ** k * Fraction(q) ** (k // 2)
        if k % 2:
            V += t
        else:
            U += t
    if V == 0 or U == 0 or (U > 0) == (V > 0):
        x = U if U != 0 else V
        return (x > 0) - (x < 0)
    if U * U > V * V * q:
        return 1 if U > 0 else -1
    if U * U < V * V * q:
        return 1 if V > 0 else -1
    return 0


def eigenvalues_on_circle(P):
    """True iff every root of h is real and lies in [-2 sqrt q, 2 sqrt q]."""
    h = _trim(real_weil_polynomial(P))
    if len(h) <= 1:
        return True
    sqf = _quo(h, _gcd(h, _deriv(h))) if len(h) > 2 else [Fraction(c) for c in h]
    chain = [sqf, _trim(_deriv(sqf))]
    while len(chain[-1]) > 1:
        r = _rem(chain[-2], chain[-1])
        if not r:
            break
        chain.append([-c for c in r])

    def changes(s):
        signs = [x for x in (_sign_at(f, s, P.q) for f in chain) if x]
        return sum(1 for u, w in zip(signs, signs[1:]) if u != w)

    count = changes(-1) - changes(1)
    if _sign_at(sqf, -1, P.q) == 0:
        count += 1
    return count == len(sqf) - 1


def _numeric_check(P, tol=1e-6):
    # substitute z = w / sqrt q so the roots should lie on |w| = 1
    q, g = P.q, P.g
    c = [float(P.coeffs[i]) / float(q) ** (i / 2) for i in range(2 * g + 1)]
    roots = np.roots(c[::-1])
    bad = np.abs(np.abs(roots) - 1.0) > tol
    if bad.any():
        return [f"advisory: {int(bad.sum())} roots off |z| = q^(-1/2) beyond {tol}"]
    return []


def lpoly_from_counts(q, g, counts):
    """P from point counts N_1..N_g over F_q, ..., F_{q^g}."""
    counts = list(counts)
    if len(counts) < g:
        raise InvalidCounts(f"need {g} counts")
    s = [q ** k + 1 - counts[k - 1] for k in range(1, g + 1)]
    a = [1] + [0] * g
    for k in range(1, g + 1):
        acc = s[k - 1]
        for i in range(1, k):
            acc += a[i] * s[k - i - 1]
        if acc % k:
            raise InvalidCounts("counts are inconsistent (non-integral coefficient)")
        a[k] = -acc // k
    P = LPolynomial.from_half(q, g, a[1:])
    ok, violations = validate_lpoly(P)
    if not ok:
        raise InvalidCounts("; ".join(violations))
    return P


def counts_from_lpoly(P, n):
    """N_1..N_n predicted by P."""
    s = P.power_sums(n)
    return [P.q ** k + 1 - s[k - 1] for k in range(1, n + 1)]
