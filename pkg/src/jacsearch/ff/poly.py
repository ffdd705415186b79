"""Univariate polynomials over a Field, as lists of raw coefficients (low to high).

The zero polynomial is the empty list; all results are normalized (no
trailing zeros).
"""

from ..errors import DivisionByZero, ZeroPolynomial


def trim(F, a):
    a = list(a)
    while a and F.is_zero(a[-1]):
        a.pop()
    return a


def deg(a):
    return len(a) - 1


def padd(F, a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = F.add(out[i], c)
    return trim(F, out)


def psub(F, a, b):
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else F.zero
        y = b[i] if i < len(b) else F.zero
        out.append(F.sub(x, y))
    return trim(F, out)


def pneg(F, a):
    return [F.neg(c) for c in a]


def pscale(F, a, s):
    if F.is_zero(s):
        return []
    return [F.mul(c, s) for c in a]


def pmul(F, a, b):
    if not a or not b:
        return []
    out = [F.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if F.is_zero(x):
            continue
        for j, y in enumerate(b):
            out[i + j] = F.add(out[i + j], F.mul(x, y))
    return trim(F, out)


def pdivmod(F, a, b):
    if not b:
        raise DivisionByZero("polynomial division by zero")
    a = list(a)
    db = len(b) - 1
    if len(a) - 1 < db:
        return [], trim(F, a)
    lead = b[-1]
    inv_lead = F.one if lead == F.one else F.inv(lead)
    quo = [F.zero] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if F.is_zero(c):
            continue
        c = F.mul(c, inv_lead)
        quo[i - db] = c
        for j in range(db + 1):
            a[i - db + j] = F.sub(a[i - db + j], F.mul(c, b[j]))
    return trim(F, quo), trim(F, a[:db])


def pmod(F, a, b):
    return pdivmod(F, a, b)[1]


def pmonic(F, a):
    if not a:
        return a
    if a[-1] == F.one:
        return list(a)
    return pscale(F, a, F.inv(a[-1]))


def pgcd(F, a, b):
    a, b = trim(F, a), trim(F, b)
    while b:
        a, b = b, pmod(F, a, b)
    return pmonic(F, a)


def pxgcd(F, a, b):
    """Monic d = gcd(a, b) with s*a + t*b = d."""
    r0, r1 = trim(F, a), trim(F, b)
    s0, s1 = [F.one], []
    t0, t1 = [], [F.one]
    while r1:
        q, r = pdivmod(F, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, psub(F, s0, pmul(F, q, s1))
        t0, t1 = t1, psub(F, t0, pmul(F, q, t1))
    if not r0:
        return [], [], []
    c = F.inv(r0[-1])
    return pscale(F, r0, c), pscale(F, s0, c), pscale(F, t0, c)


def pderiv(F, a):
    return trim(F, [F.mul_int(c, i) for i, c in enumerate(a)][1:])


def ppowmod(F, base, e, m):
    result = [F.one]
    base = pmod(F, base, m)
    while e:
        if e & 1:
            result = pmod(F, pmul(F, result, base), m)
        e >>= 1
        if e:
            base = pmod(F, pmul(F, base, base), m)
    return result


def peval(F, a, x):
    acc = F.zero
    for c in reversed(a):
        acc = F.add(F.mul(acc, x), c)
    return acc


def _pth_root(F, a):
    """Inverse of the p-th power map on a polynomial whose exponents are multiples of p."""
    p = F.p
    out = []
    for i in range(0, len(a), p):
        c = a[i]
        # a -> a^(p^(k-1)) inverts Frobenius on F_{p^k}
        out.append(F.pow(c, p ** (F.k - 1)) if F.k > 1 else c)
    return trim(F, out)


def squarefree_factorization(F, f):
    """List of (squarefree factor, multiplicity) for monic f."""
    f = pmonic(F, trim(F, f))
    out = []
    if len(f) <= 1:
        return out
    d = pderiv(F, f)
    c = pgcd(F, f, d) if d else f
    w = pdivmod(F, f, c)[0]
    i = 1
    while len(w) > 1:
        y = pgcd(F, w, c)
        fac = pdivmod(F, w, y)[0]
        if len(fac) > 1:
            out.append((fac, i))
        w = y
        c = pdivmod(F, c, y)[0]
        i += 1
    if len(c) > 1:
        root = _pth_root(F, c)
        for g, m in squarefree_factorization(F, root):
            out.append((g, m * F.p))
    return out


def distinct_degree(F, f):
    """For squarefree monic f: list of (degree, number of irreducible factors)."""
    out = []
    q = F.q
    x = [F.zero, F.one]
    h = x
    d = 0
    g = list(f)
    while len(g) - 1 >= 2 * (d + 1):
        d += 1
        h = ppowmod(F, h, q, g)
        fac = pgcd(F, g, psub(F, h, x))
        if len(fac) > 1:
            out.append((d, (len(fac) - 1) // d))
            g = pdivmod(F, g, fac)[0]
            h = pmod(F, h, g)
    if len(g) > 1:
        out.append((len(g) - 1, 1))
    return out


def _to_raw(F, f):
    from .field import FieldElement
    out = []
    for c in f:
        if isinstance(c, FieldElement):
            out.append(F.convert(c))
        else:
            out.append(F.convert(c))
    return trim(F, out)


def poly_factor_degrees(f, F):
    """Sorted list of the degrees of the irreducible factors of f (with multiplicity)."""
    f = _to_raw(F, f)
    if not f:
        raise ZeroPolynomial("factor pattern of the zero polynomial")
    degs = []
    for g, m in squarefree_factorization(F, f):
        for d, n in distinct_degree(F, g):
            degs.extend([d] * (n * m))
    return sorted(degs)


def poly_irreducible(f, F):
    f = _to_raw(F, f)
    if not f:
        raise ZeroPolynomial("irreducibility of the zero polynomial")
    return poly_factor_degrees(f, F) == [len(f) - 1]


# helpers on plain int coefficient lists mod a prime, used to build extensions

def _trim_int(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _mod_int(a, m, p):
    a = [c % p for c in a]
    dm = len(m) - 1
    inv = pow(m[-1], -1, p)
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] * inv % p
        if c:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * m[j]) % p
    return _trim_int(a[:dm])


def _mul_int(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _trim_int([c % p for c in out])


def poly_has_root(m, p):
    """True if the int polynomial m has a root mod p (via gcd with x^p - x)."""
    m = _trim_int([c % p for c in m])
    if len(m) <= 1:
        return False
    # x^p mod m
    result = [1]
    base = [0, 1]
    e = p
    while e:
        if e & 1:
            result = _mod_int(_mul_int(result, base, p), m, p)
        e >>= 1
        if e:
            base = _mod_int(_mul_int(base, base, p), m, p)
    h = list(result) + [0] * max(0, 2 - len(result))
    h[1] = (h[1] - 1) % p
    h = _trim_int(h)
    a, b = m, h
    while b:
        a, b = b, _mod_int(a, b, p)
    return len(a) > 1


def poly_inverse_mod(a, m, p):
    """Inverse of a modulo m over F_p as a coefficient list of length deg m."""
    r0, r1 = _trim_int([c % p for c in m]), _trim_int([c % p for c in a])
    t0, t1 = [], [1]
    while len(r1) > 1:
        # one division step
        q = []
        r = list(r0)
        dr = len(r1) - 1
        inv = pow(r1[-1], -1, p)
        q = [0] * (len(r) - dr)
        for i in range(len(r) - 1, dr - 1, -1):
            c = r[i] * inv % p
            q[i - dr] = c
            if c:
                for j in range(dr + 1):
                    r[i - dr + j] = (r[i - dr + j] - c * r1[j]) % p
        r = _trim_int(r[:dr])
        qt = _mul_int(q, t1, p)
        n = max(len(t0), len(qt))
        t2 = _trim_int([((t0[i] if i < len(t0) else 0) - (qt[i] if i < len(qt) else 0)) % p
                        for i in range(n)])
        r0, r1, t0, t1 = r1, r, t1, t2
    if not r1:
        raise DivisionByZero("not invertible modulo the defining polynomial")
    c = pow(r1[0], -1, p)
    out = [x * c % p for x in t1]
    return out + [0] * (len(m) - 1 - len(out))
