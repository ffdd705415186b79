"""Curves y^2 = f(x) with f monic of degree 2g+1, and their quadratic twists."""

from ..errors import BadDegree, NotMonic, SingularCurve
from ..ff import poly as fp
from ..ff.field import FieldElement


class CurveParams:
    """Genus g, base field and the raw coefficients of f (low to high)."""

    def __init__(self, g, field, f):
        self.g = g
        self.field = field
        self.f = tuple(f)

    def __eq__(self, other):
        return (isinstance(other, CurveParams) and self.g == other.g
                and self.field == other.field and self.f == other.f)

    def __hash__(self):
        return hash((self.g, self.field, self.f))

    def __repr__(self):
        return f"CurveParams(g={self.g}, {self.field}, f={self.poly_str()})"

    @property
    def q(self):
        return self.field.q

    def coeffs(self):
        """Coefficients of f as FieldElements."""
        return [FieldElement(self.field, c) for c in self.f]

    def int_coeffs(self):
        if self.field.k != 1:
            raise TypeError("integer coefficients only exist over a prime field")
        return list(self.f)

    def poly_str(self):
        F = self.field
        terms = []
        for i in range(len(self.f) - 1, -1, -1):
            c = self.f[i]
            if F.is_zero(c):
                continue
            cs = str(c) if F.k == 1 else "(" + ",".join(map(str, F.coords(c))) + ")"
            if i == 0:
                terms.append(cs)
            else:
                mon = "x" if i == 1 else f"x^{i}"
                terms.append(mon if c == F.one else f"{cs}*{mon}")
        return "+".join(terms) if terms else "0"

    def eval(self, x):
        return fp.peval(self.field, list(self.f), x)

    @property
    def jacobian(self):
        from .jacobian import Jacobian
        jac = getattr(self, "_jac", None)
        if jac is None:
            jac = Jacobian(self)
            self._jac = jac
        return jac


def curve_new(g, field, f, check=True):
    """Validate and build a curve; f is a coefficient list, low degree first."""
    if g not in (1, 2, 3):
        raise BadDegree(f"genus {g} not supported")
    raw = fp.trim(field, [field.convert(c) for c in f])
    if len(raw) - 1 != 2 * g + 1:
        raise BadDegree(f"f has degree {len(raw) - 1}, expected {2 * g + 1}")
    if raw[-1] != field.one:
        raise NotMonic("f must be monic")
    if check:
        d = fp.pderiv(field, raw)
        if not d or len(fp.pgcd(field, raw, d)) > 1:
            raise SingularCurve("f has a repeated factor (zero discriminant)")
    return CurveParams(g, field, raw)


def twist(C, alpha=None):
    """Quadratic twist y^2 = a^d f(x/a) by the canonical non-residue a."""
    F = C.field
    a = F.non_residue if alpha is None else F.convert(alpha)
    d = len(C.f) - 1
    out = [None] * (d + 1)
    power = F.one
    for i in range(d, -1, -1):
        out[i] = F.mul(power, C.f[i])
        power = F.mul(power, a)
    return CurveParams(C.g, F, out)
