"""Prime fields and their extensions of degree 2 and 3.

Elements are handled in two layers.  Internally every field works on "raw"
values (a Python int for F_p, a tuple of k ints for F_{p^k}) through methods
such as ``F.mul(a, b)``; the curve arithmetic uses these directly.  The
``FieldElement`` wrapper gives the usual operator syntax for everything else.
"""

import itertools
import random

import gmpy2

from ..errors import (CompositeCharacteristic, DivisionByZero, FieldMismatch,
                      ReduciblePolynomial, UnsupportedDegree, ZeroInput)
from ..ntheory import is_probable_prime


class Field:
    """Common interface; see PrimeField and ExtensionField."""

    p = None
    k = 1
    modulus = None

    def __call__(self, value):
        return FieldElement(self, self.convert(value))

    def __eq__(self, other):
        return (isinstance(other, Field) and self.p == other.p and self.k == other.k
                and self.modulus == other.modulus)

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    @property
    def q(self):
        return self.p ** self.k

    @property
    def width(self):
        """Bytes per coordinate in the canonical serialization."""
        return (self.p.bit_length() + 7) // 8

    def element(self, raw):
        return FieldElement(self, raw)

    def pow(self, a, e):
        if e < 0:
            a = self.inv(a)
            e = -e
        result = self.one
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            e >>= 1
            if e:
                base = self.sqr(base)
        return result

    def sqr(self, a):
        return self.mul(a, a)

    def batch_inv(self, values):
        """Montgomery's trick: one inversion and 3(n-1) multiplications."""
        n = len(values)
        if n == 0:
            return []
        prefix = [None] * n
        acc = self.one
        for i, v in enumerate(values):
            if self.is_zero(v):
                raise DivisionByZero("batch_inv of zero", index=i)
            acc = self.mul(acc, v) if i else v
            prefix[i] = acc
        inv = self.inv(acc)
        out = [None] * n
        for i in range(n - 1, 0, -1):
            out[i] = self.mul(inv, prefix[i - 1])
            inv = self.mul(inv, values[i])
        out[0] = inv
        return out

    def is_qr(self, a):
        if self.is_zero(a):
            raise ZeroInput("is_qr(0)")
        return self.pow(a, (self.q - 1) // 2) == self.one

    def key(self, a):
        """Integer used for the canonical ordering of elements."""
        c = self.coords(a)
        out = 0
        for x in reversed(c):
            out = out * self.p + x
        return out

    def canonical_root(self, r):
        s = self.neg(r)
        return r if self.key(r) <= self.key(s) else s

    def sqrt(self, a):
        """Square root of a, or None. The root with the smaller key is returned."""
        if self.is_zero(a):
            return self.zero
        q = self.q
        if not self.is_qr(a):
            return None
        if q % 4 == 3:
            return self.canonical_root(self.pow(a, (q + 1) // 4))
        # Tonelli-Shanks
        s, t = 0, q - 1
        while t % 2 == 0:
            s += 1
            t //= 2
        z = self.pow(self.non_residue, t)
        x = self.pow(a, (t + 1) // 2)
        b = self.pow(a, t)
        m = s
        while b != self.one:
            i, bb = 0, b
            while bb != self.one:
                bb = self.sqr(bb)
                i += 1
            zz = z
            for _ in range(m - i - 1):
                zz = self.sqr(zz)
            x = self.mul(x, zz)
            z = self.sqr(zz)
            b = self.mul(b, z)
            m = i
        return self.canonical_root(x)

    @property
    def non_residue(self):
        nr = getattr(self, "_non_residue", None)
        if nr is None:
            nr = self._find_non_residue()
            self._non_residue = nr
        return nr

    def encode(self, a):
        w = self.width
        return b"".join(c.to_bytes(w, "little") for c in self.coords(a))

    def decode(self, data):
        w = self.width
        cs = [int.from_bytes(data[i * w:(i + 1) * w], "little") for i in range(self.k)]
        return self.from_coords(cs)


class PrimeField(Field):
    def __init__(self, p, check=True):
        p = int(p)
        if check and (p < 3 or not is_probable_prime(p)):
            raise CompositeCharacteristic(f"{p} is not an odd prime")
        self.p = p
        self.k = 1
        self.modulus = None
        self.zero = 0
        self.one = 1

    def __repr__(self):
        return f"GF({self.p})"

    def convert(self, value):
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldMismatch("element from another field")
            return value.raw
        if isinstance(value, (list, tuple)):
            if len(value) != 1:
                raise FieldMismatch("coordinate vector of wrong length")
            value = value[0]
        return int(value) % self.p

    def from_int(self, n):
        return n % self.p

    def from_coords(self, cs):
        return cs[0] % self.p

    def coords(self, a):
        return (a,)

    def key(self, a):
        return a

    def add(self, a, b):
        s = a + b
        return s - self.p if s >= self.p else s

    def sub(self, a, b):
        s = a - b
        return s + self.p if s < 0 else s

    def neg(self, a):
        return self.p - a if a else 0

    def mul(self, a, b):
        return a * b % self.p

    def sqr(self, a):
        return a * a % self.p

    def mul_int(self, a, n):
        return a * n % self.p

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("inverse of zero")
        return pow(a, -1, self.p)

    def pow(self, a, e):
        return pow(a, e, self.p)

    def is_zero(self, a):
        return a == 0

    def is_qr(self, a):
        if a == 0:
            raise ZeroInput("is_qr(0)")
        return gmpy2.legendre(a, self.p) == 1

    def canonical_root(self, r):
        return min(r, self.p - r) if r else 0

    def sqrt(self, a):
        if a == 0:
            return 0
        p = self.p
        if gmpy2.legendre(a, p) != 1:
            return None
        if p % 4 == 3:
            return self.canonical_root(pow(a, (p + 1) // 4, p))
        return Field.sqrt(self, a)

    def _find_non_residue(self):
        n = 2
        while gmpy2.legendre(n, self.p) != -1:
            n += 1
        return n

    def random(self, rng):
        return rng.randrange(self.p)

    def frobenius(self, a):
        return a


class ExtensionField(Field):
    """F_p[x]/(m(x)) with m monic irreducible of degree 2 or 3."""

    def __init__(self, p, k, modulus=None, check=True):
        if k not in (2, 3):
            raise UnsupportedDegree(f"extension degree {k} not supported")
        base = PrimeField(p, check=check)
        self.base = base
        self.p = base.p
        self.k = k
        if modulus is None:
            modulus = _smallest_irreducible(base, k)
        else:
            modulus = tuple(int(c) % self.p for c in modulus)
            if len(modulus) != k + 1 or modulus[-1] != 1:
                raise ReduciblePolynomial("defining polynomial must be monic of degree k")
            if not _irreducible_small(base, modulus):
                raise ReduciblePolynomial(f"{modulus} is reducible over F_{p}")
        self.modulus = modulus
        self.zero = (0,) * k
        self.one = (1,) + (0,) * (k - 1)

    def __repr__(self):
        return f"GF({self.p}^{self.k})"

    def convert(self, value):
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldMismatch("element from another field")
            return value.raw
        if isinstance(value, (list, tuple)):
            if len(value) != self.k:
                raise FieldMismatch("coordinate vector of wrong length")
            return tuple(int(c) % self.p for c in value)
        return (int(value) % self.p,) + (0,) * (self.k - 1)

    def from_int(self, n):
        return (n % self.p,) + (0,) * (self.k - 1)

    def from_coords(self, cs):
        return tuple(int(c) % self.p for c in cs)

    def coords(self, a):
        return a

    def add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a):
        p = self.p
        return tuple(-x % p for x in a)

    def mul_int(self, a, n):
        p = self.p
        return tuple(x * n % p for x in a)

    def mul(self, a, b):
        p = self.p
        m = self.modulus
        if self.k == 2:
            a0, a1 = a
            b0, b1 = b
            hi = a1 * b1
            return ((a0 * b0 - m[0] * hi) % p, (a0 * b1 + a1 * b0 - m[1] * hi) % p)
        a0, a1, a2 = a
        b0, b1, b2 = b
        c0 = a0 * b0
        c1 = a0 * b1 + a1 * b0
        c2 = a0 * b2 + a1 * b1 + a2 * b0
        c3 = a1 * b2 + a2 * b1
        c4 = a2 * b2
        # x^3 = -(m2 x^2 + m1 x + m0)
        c3 -= m[2] * c4
        c2 -= m[1] * c4
        c1 -= m[0] * c4
        c2 -= m[2] * c3
        c1 -= m[1] * c3
        c0 -= m[0] * c3
        return (c0 % p, c1 % p, c2 % p)

    def is_zero(self, a):
        return not any(a)

    def norm(self, a):
        """N(a) in F_p, the determinant of multiplication by a."""
        p = self.p
        if self.k == 2:
            a0, a1 = a
            m0, m1 = self.modulus[0], self.modulus[1]
            return (a0 * a0 - m1 * a0 * a1 + m0 * a1 * a1) % p
        cols = [a, self.mul(a, (0, 1, 0)), self.mul(a, (0, 0, 1))]
        (a, d, g), (b, e, h), (c, f, i) = cols
        return (a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)) % p

    def is_qr(self, a):
        if self.is_zero(a):
            raise ZeroInput("is_qr(0)")
        return gmpy2.legendre(self.norm(a), self.p) == 1

    def inv(self, a):
        if self.is_zero(a):
            raise DivisionByZero("inverse of zero")
        p = self.p
        if self.k == 2:
            a0, a1 = a
            m1 = self.modulus[1]
            n_inv = pow(self.norm(a), -1, p)
            # conjugate of a0 + a1 x is (a0 - m1 a1) - a1 x
            return ((a0 - m1 * a1) * n_inv % p, -a1 * n_inv % p)
        from .poly import poly_inverse_mod
        return tuple(poly_inverse_mod(list(a), list(self.modulus), p))

    def frobenius(self, a):
        return self.pow(a, self.p)

    def _find_non_residue(self):
        # The prime subfield is inside the squares when k is even.
        start = self.p if self.k % 2 == 0 else 2
        n = start
        while True:
            cs = []
            x = n
            for _ in range(self.k):
                cs.append(x % self.p)
                x //= self.p
            a = tuple(cs)
            if not self.is_zero(a) and not self.is_qr(a):
                return a
            n += 1

    def random(self, rng):
        return tuple(rng.randrange(self.p) for _ in range(self.k))


def _sym_order(h):
    out = [0]
    for i in range(1, h + 1):
        out += [i, -i]
    return out


def _irreducible_small(base, modulus):
    """Degree <= 3: irreducible iff no root in F_p."""
    from .poly import poly_has_root
    return not poly_has_root(list(modulus), base.p)


def _smallest_irreducible(base, k):
    p = base.p
    h = 1
    while True:
        vals = _sym_order(min(h, (p - 1) // 2))
        for tail in itertools.product(vals, repeat=k):
            # tail is (c_{k-1}, ..., c_0): vary the constant term fastest
            m = tuple(c % p for c in reversed(tail)) + (1,)
            if m[0] == 0:
                continue
            if _irreducible_small(base, m):
                return m
        h *= 2


class FieldElement:
    """An element of a Field with operator syntax."""

    __slots__ = ("field", "raw")

    def __init__(self, field, raw):
        self.field = field
        self.raw = raw

    def _other(self, other):
        if isinstance(other, FieldElement):
            if other.field is not self.field and other.field != self.field:
                raise FieldMismatch("operands from different fields")
            return other.raw
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.add(self.raw, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.sub(self.raw, b))

    def __rsub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.sub(b, self.raw))

    def __mul__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.mul(self.raw, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.mul(self.raw, self.field.inv(b)))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.raw))

    def __pow__(self, e):
        return FieldElement(self.field, self.field.pow(self.raw, e))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.raw == other.raw
        if isinstance(other, int):
            return self.raw == self.field.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.raw)

    def __bool__(self):
        return not self.field.is_zero(self.raw)

    def __int__(self):
        if self.field.k != 1:
            raise TypeError("only prime-field elements convert to int")
        return self.raw

    def __repr__(self):
        if self.field.k == 1:
            return f"{self.raw}"
        return f"{self.raw}"

    def inverse(self):
        return FieldElement(self.field, self.field.inv(self.raw))

    def coords(self):
        return self.field.coords(self.raw)

    def to_bytes(self):
        return self.field.encode(self.raw)


def field_new(p, k=1, poly=None, check=True):
    """Build F_p (k=1) or F_{p^k} for k in {2, 3}."""
    if k not in (1, 2, 3):
        raise UnsupportedDegree(f"extension degree {k} not supported")
    if k == 1:
        if poly is not None and len(poly) not in (0, 2):
            raise UnsupportedDegree("k=1 takes no defining polynomial")
        return PrimeField(p, check=check)
    return ExtensionField(p, k, modulus=poly, check=check)


def inv(a):
    return a.inverse()


def batch_inv(values):
    """Elementwise inverses of FieldElements using a single inversion."""
    if not values:
        return []
    F = values[0].field
    for v in values:
        if v.field is not F and v.field != F:
            raise FieldMismatch("batch_inv over mixed fields")
    raws = F.batch_inv([v.raw for v in values])
    return [FieldElement(F, r) for r in raws]


def sqrt(a):
    r = a.field.sqrt(a.raw)
    return None if r is None else FieldElement(a.field, r)


def is_qr(a):
    return a.field.is_qr(a.raw)


def find_non_residue(F):
    return FieldElement(F, F.non_residue)


def random_element(F, rng=None):
    rng = rng or random.Random()
    return FieldElement(F, F.random(rng))
