"""Curve families y^2 = f_t(x): integer polynomials in x where the parameter t
(optionally times an integer k) sits in exactly one coefficient.

Grammar (whitespace ignored, optional leading "y^2 ="):
    poly  := term (("+" | "-") term)*      first term may carry a sign
    term  := coeff ["*"] [xpow] | xpow
    coeff := int ["*"] ["t"] | "t"
    xpow  := "x" ["^" int]
"""

import re
from dataclasses import dataclass

from ..errors import FamilyParseError


@dataclass(frozen=True)
class Family:
    coeffs: tuple  # fixed integer coefficients, low degree first
    t_index: int  # coefficient that carries k t
    t_mult: int = 1

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def genus(self):
        if self.degree % 2 == 0:
            raise ValueError("f must have odd degree")
        return (self.degree - 1) // 2

    def at(self, t):
        """Integer coefficients of f_t, low degree first."""
        c = list(self.coeffs)
        c[self.t_index] += self.t_mult * int(t)
        return c

    def __str__(self):
        return format_family(self)


_TOKEN = re.compile(r"\s*(?:(\d+)|(\*\*|[-+*^=()])|([a-zA-Z]))")


def _tokens(text):
    pos = 0
    out = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise FamilyParseError(f"unexpected character {text[pos]!r}", pos)
        start = m.start(m.lastindex)
        if m.group(1):
            out.append(("int", int(m.group(1)), start))
        elif m.group(2):
            op = "^" if m.group(2) == "**" else m.group(2)
            out.append((op, op, start))
        else:
            name = m.group(3)
            if name not in ("x", "t", "y"):
                raise FamilyParseError(f"unknown symbol {name!r}", start)
            out.append((name, name, start))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


class _Parser:
    def __init__(self, text):
        self.text = text
        self.toks = _tokens(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None):
        tok = self.toks[self.i]
        if kind is not None and tok[0] != kind:
            want = "end of input" if kind == "end" else repr(kind)
            got = "end of input" if tok[0] == "end" else repr(tok[1])
            raise FamilyParseError(f"expected {want}, found {got}", tok[2])
        self.i += 1
        return tok

    def skip_lhs(self):
        # optional "y^2 ="
        if self.peek()[0] == "y":
            self.take("y")
            self.take("^")
            tok = self.take("int")
            if tok[1] != 2:
                raise FamilyParseError("left-hand side must be y^2", tok[2])
            self.take("=")

    def term(self, sign):
        start = self.peek()[2]
        coef = None
        has_t = False
        exp = 0
        if self.peek()[0] == "int":
            coef = self.take()[1]
            if self.peek()[0] == "*":
                self.take()
                if self.peek()[0] not in ("t", "x"):
                    raise FamilyParseError("expected 't' or 'x' after '*'", self.peek()[2])
        if self.peek()[0] == "t":
            self.take()
            has_t = True
            if self.peek()[0] == "*":
                self.take()
                if self.peek()[0] != "x":
                    raise FamilyParseError("expected 'x' after '*'", self.peek()[2])
        if self.peek()[0] == "x":
            self.take()
            exp = 1
            if self.peek()[0] == "^":
                self.take()
                exp = self.take("int")[1]
        elif coef is None and not has_t:
            tok = self.peek()
            got = "end of input" if tok[0] == "end" else repr(tok[1])
            raise FamilyParseError(f"expected a term, found {got}", tok[2])
        value = sign * (1 if coef is None else coef)
        return start, exp, value, has_t

    def parse(self):
        self.skip_lhs()
        fixed = {}
        t_term = None
        sign = 1
        if self.peek()[0] in "+-":
            sign = -1 if self.take()[0] == "-" else 1
        while True:
            start, exp, value, has_t = self.term(sign)
            if has_t:
                if t_term is not None:
                    raise FamilyParseError("t may appear in only one coefficient", start)
                t_term = (exp, value)
            else:
                fixed[exp] = fixed.get(exp, 0) + value
            tok = self.peek()
            if tok[0] == "end":
                break
            if tok[0] not in "+-":
                raise FamilyParseError(f"expected '+' or '-', found {tok[1]!r}", tok[2])
            sign = -1 if self.take()[0] == "-" else 1
        if t_term is None:
            raise FamilyParseError("the family has no parameter t", len(self.text))
        if t_term[1] == 0:
            raise FamilyParseError("the multiple of t must be nonzero", len(self.text))
        degree = max(list(fixed) + [t_term[0]])
        coeffs = [fixed.get(i, 0) for i in range(degree + 1)]
        if t_term[0] == degree and coeffs[degree] == 0:
            raise FamilyParseError("t may not be the leading coefficient", len(self.text))
        if coeffs[degree] != 1:
            raise FamilyParseError("f must be monic", len(self.text))
        if degree not in (5, 7):
            raise FamilyParseError(f"degree {degree} gives no genus 2 or 3 curve", len(self.text))
        return Family(tuple(coeffs), t_term[0], t_term[1])


def parse_family(text):
    """Family from a string such as "x^5 + 2x^3 + 7x^2 + x + t"."""
    return _Parser(text).parse()


def _monomial(exp):
    return "" if exp == 0 else "x" if exp == 1 else f"x^{exp}"


def format_family(fam):
    """Canonical form, highest degree first: parse(format(F)) == F."""
    parts = []
    for exp in range(fam.degree, -1, -1):
        c = fam.coeffs[exp]
        mono = _monomial(exp)
        if c:
            mag = "" if abs(c) == 1 and mono else str(abs(c))
            parts.append(("-" if c < 0 else "+", mag + mono))
        if exp == fam.t_index:
            k = fam.t_mult
            mag = "" if abs(k) == 1 else str(abs(k))
            parts.append(("-" if k < 0 else "+", mag + "t" + ("*" + mono if mono else "")))
    out = ""
    for i, (sign, body) in enumerate(parts):
        out += ("-" if sign == "-" else "") + body if i == 0 else sign + body
    return out
