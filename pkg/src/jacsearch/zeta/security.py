"""Near-prime classification, security-equivalent bit lengths and the
curve filters that go with them."""

import random
from dataclasses import dataclass, field

from ..errors import Inconclusive, UnknownContext
from ..ff.poly import poly_factor_degrees
from ..ntheory import is_probable_prime, pollard_brent, trial_divide
from .lpoly import quotient_order, twist_lpoly

DEFAULT_EFFORT = 1 << 24
# rho budget in blocks of 1024 steps per start
DEFAULT_RHO = 40


def near_prime(N, threshold=0.95, effort=DEFAULT_EFFORT, rho_blocks=DEFAULT_RHO,
               decide_only=False):
    """(is_near_prime, largest_prime, cofactor) with cofactor = N / largest_prime.

    Factors up to `effort` are stripped by trial division and a short rho run
    splits what it can.  If an unfactored composite remains, each of its
    prime factors exceeds `effort`, so none can exceed cofactor / effort; when
    that bound already falls below the threshold the answer is a certain
    "no", otherwise Inconclusive is raised.  With decide_only, rho is not
    spent on composites too small to hold a large enough prime, so the largest
    prime reported may then be smaller than the true one.
    """
    N = int(N)
    if N < 2:
        raise ValueError("N must be at least 2")
    nbits = N.bit_length()
    found, rest = trial_divide(N, effort)
    primes = set(found)
    composite = []
    stack = [rest] if rest > 1 else []
    rng = random.Random(N)
    need = threshold * nbits
    while stack:
        x = stack.pop()
        if decide_only and x.bit_length() < need:
            continue
        if is_probable_prime(x):
            primes.add(x)
            continue
        if decide_only and (x // (effort + 1)).bit_length() < need:
            continue
        d = pollard_brent(x, rng, max_iters=1024 * rho_blocks)
        if d is None:
            composite.append(x)
        else:
            stack.extend((d, x // d))
    largest = max(primes) if primes else None
    if composite:
        cap = max(c // (effort + 1) for c in composite)
        if largest is not None and largest > cap:
            pass
        elif cap.bit_length() >= threshold * nbits:
            raise Inconclusive(f"unfactored {max(composite).bit_length()}-bit composite cofactor")
    if largest is None:
        return False, None, N
    return largest.bit_length() >= threshold * nbits, largest, N // largest


RATIOS = {
    "g2": 1.0,
    "g3": 9 / 8,
    "g2_fp2": 14 / 9,
    "t3_3div": 5 / 4,
    "t3": 6 / 5,
}


def security_ratio(g, ext_degree=1, trace_zero=False, three_divides_j2=False):
    if trace_zero:
        if g == 2 and ext_degree == 3:
            return RATIOS["t3_3div"] if three_divides_j2 else RATIOS["t3"]
        raise UnknownContext("trace zero ratios are known for genus 2 over F_p^3")
    if ext_degree == 1 and g == 2:
        return RATIOS["g2"]
    if ext_degree == 1 and g == 3:
        return RATIOS["g3"]
    if ext_degree == 2 and g == 2:
        return RATIOS["g2_fp2"]
    raise UnknownContext(f"no security ratio for genus {g}, degree {ext_degree}")


def security_equivalent_bits(bits, g, ext_degree=1, trace_zero=False, three_divides_j2=False):
    """Bit length of a genus-2 prime-field Jacobian with comparable security."""
    return bits / security_ratio(g, ext_degree, trace_zero, three_divides_j2)


def smith_filter(f, F):
    """True iff f has exactly one irreducible factor of degree 3, 5 or 7."""
    degs = poly_factor_degrees(f, F)
    return sum(1 for d in degs if d in (3, 5, 7)) == 1


@dataclass
class DerivedGroupOrder:
    label: str
    order: int
    factors: dict = field(default_factory=dict)
    cofactor: int = 1
    cofactor_prime: bool = True
    near_prime: bool = False
    largest_prime: int = None
    exact: bool = True
    security_bits: float = None
    note: str = ""

    @property
    def bits(self):
        return self.order.bit_length()

    def to_json(self):
        return {
            "label": self.label,
            "order": str(self.order),
            "bits": self.bits,
            "factors": {str(p): e for p, e in sorted(self.factors.items())},
            "cofactor": str(self.cofactor),
            "cofactor_prime": self.cofactor_prime,
            "near_prime": self.near_prime,
            "largest_prime_bits": self.largest_prime.bit_length() if self.largest_prime else None,
            "exact": self.exact,
            "security_bits": self.security_bits,
            "note": self.note,
        }


def factor_attempt(N, effort=DEFAULT_EFFORT, rho_blocks=DEFAULT_RHO):
    """(found prime factors {p: e}, cofactor, cofactor is 1 or prime)."""
    found, rest = trial_divide(N, effort)
    rng = random.Random(N)
    stack = [rest] if rest > 1 else []
    left = 1
    while stack:
        x = stack.pop()
        if is_probable_prime(x):
            found[x] = found.get(x, 0) + 1
            continue
        d = pollard_brent(x, rng, max_iters=1024 * rho_blocks)
        if d is None:
            left *= x
        else:
            stack.extend((d, x // d))
    return dict(sorted(found.items())), left, left == 1


LABELS = ("J", "J_twist", "J_3/1", "J_3/1_twist", "J_4/2", "T_3")


def derived_orders(P, labels=LABELS, threshold=0.95, effort=DEFAULT_EFFORT):
    """Orders of the groups fixed by P, each with a factorization attempt,
    near-prime flag and security-equivalent bit length."""
    g = P.g
    Pt = twist_lpoly(P)
    out = []
    j2_div3 = None
    for label in labels:
        exact = True
        ext, tz = 1, False
        if label == "J":
            N = P(1)
        elif label == "J_twist":
            N = P(-1)
        elif label == "J_3/1":
            N = quotient_order(P, 3, 1)
            ext = 3
        elif label == "J_3/1_twist":
            N = quotient_order(Pt, 3, 1)
            ext = 3
        elif label == "J_4/2":
            N = quotient_order(P, 4, 2)
            ext = 2
        elif label == "T_3":
            N = quotient_order(P, 3, 1)
            exact = P(1) % 3 != 0
            ext, tz = 3, True
        else:
            raise UnknownContext(f"unknown group label {label}")
        fac, cof, cof_prime = factor_attempt(N, effort)
        rec = DerivedGroupOrder(label, N, fac, cof, cof_prime, exact=exact)
        try:
            rec.near_prime, rec.largest_prime, _ = near_prime(N, threshold, effort)
        except Inconclusive as exc:
            rec.note = str(exc)
        if rec.largest_prime:
            bits = rec.largest_prime.bit_length()
            try:
                if tz or label in ("J_3/1", "J_3/1_twist"):
                    if j2_div3 is None:
                        j2_div3 = (P(1) * P(-1)) % 3 == 0
                    if g == 2:
                        rec.security_bits = security_equivalent_bits(
                            bits, 2, 3, trace_zero=True, three_divides_j2=j2_div3)
                elif label == "J_4/2":
                    if g == 2:
                        rec.security_bits = security_equivalent_bits(bits, 2, 2)
                else:
                    rec.security_bits = security_equivalent_bits(bits, g, 1)
            except UnknownContext:
                rec.security_bits = None
        out.append(rec)
    return out
