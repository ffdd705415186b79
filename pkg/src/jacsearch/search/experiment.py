"""How often is #J(C) easy, and how often are the derived groups near prime?

Random monic genus-2 curves over one random prime p near 2^(n/2) get their
exact L-polynomial from the oracle (N_1 by a full count, then #J by a
baby-step giant-step search in the window N_1 leaves).  For each u, event A
is "#J is #J^(1/u)-easy", decided exactly from the factorization of #J; the
near-prime events B are then tallied over the curves where A holds.
"""

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from ..curve import curve_new
from ..errors import Inconclusive, SingularCurve
from ..ff import field_new, poly_irreducible
from ..ntheory import factorint, is_prime
from ..oracle.order import naive_lpoly
from ..zeta.lpoly import quotient_order, twist_lpoly
from ..zeta.security import near_prime
from .records import wilson_interval

# Event columns: J_{2/1}(C) = J(C~), J_{4/2}(C), J_{3/1}(C), J_{3/1}(C~)
EVENTS = ("2/1", "4/2", "3/1", "3/1~")
RANDOM_INTEGER_RATE = math.log(20 / 19)
EXPERIMENT_FIELD = 1 << 50
EXPERIMENT_EFFORT = 1 << 20


def event_orders(P):
    Pt = twist_lpoly(P)
    return {
        "2/1": P(-1),
        "4/2": quotient_order(P, 4, 2),
        "3/1": quotient_order(P, 3, 1),
        "3/1~": quotient_order(Pt, 3, 1),
    }


def _as_fraction(u):
    return Fraction(str(u)).limit_denominator(1000)


def is_root_easy(N, u, fac=None):
    """True iff N is B-easy for B = N^(1/u), decided without rounding.

    With u = a/b, a prime power r is <= B exactly when r^a <= N^b; the part of
    N not covered by maximal prime powers <= B must be at most B^2."""
    u = _as_fraction(u)
    a, b = u.numerator, u.denominator
    fac = fac or factorint(N)
    Nb = N ** b
    rest = 1
    for p, e in fac.items():
        if p ** a > Nb:
            rest *= p ** e
            continue
        k = 1
        while (p ** (k + 1)) ** a <= Nb:
            k += 1
        if e > k:
            rest *= p ** (e - k)
    return rest ** a <= N ** (2 * b)


def random_prime(lo, hi, rng):
    while True:
        x = rng.randrange(lo, hi + 1)
        if is_prime(x):
            return x


def field_window(n):
    """Primes for n-bit Jacobians: 2^(n/2) +- 2^(n/3)."""
    centre = 1 << (n // 2)
    half = 1 << (n // 3)
    return centre - half, centre + half


def random_curve(F, rng, odd_only=False):
    p = F.p
    while True:
        f = [rng.randrange(p) for _ in range(5)] + [1]
        try:
            C = curve_new(2, F, f)
        except SingularCurve:
            continue
        if odd_only and not poly_irreducible(list(C.f), F):
            continue
        return C


@dataclass
class CurveSample:
    f: list
    order: int
    easy: dict
    near: dict
    inconclusive: int = 0


@dataclass
class Row:
    u: float
    n: float
    count: int
    easy: int
    near: dict = field(default_factory=dict)

    @property
    def pr_a(self):
        return self.easy / self.count if self.count else 0.0

    def pr_b(self, label):
        return self.near[label] / self.easy if self.easy else 0.0

    def to_json(self):
        lo, hi = wilson_interval(self.easy, self.count)
        out = {"u": self.u, "n": round(self.n, 2), "curves": self.count, "easy": self.easy,
               "pr_A": self.pr_a, "pr_A_ci": [lo, hi], "pr_B_given_A": {}}
        for label in EVENTS:
            lo, hi = wilson_interval(self.near[label], self.easy)
            out["pr_B_given_A"][label] = {"count": self.near[label], "pr": self.pr_b(label),
                                          "ci": [lo, hi]}
        return out


@dataclass
class ExperimentResult:
    p: int
    n: int
    odd_only: bool
    rows: list
    inconclusive: int
    samples: list = field(default_factory=list, repr=False)

    def to_json(self):
        return {"p": str(self.p), "n": self.n, "odd_only": self.odd_only,
                "random_integer_rate": RANDOM_INTEGER_RATE,
                "inconclusive_near_prime": self.inconclusive,
                "rows": [r.to_json() for r in self.rows]}

    def table(self):
        head = f"{'n':>6} {'u':>4} {'Pr[A]':>7} " + " ".join(f"{'B_' + e:>7}" for e in EVENTS)
        lines = [head]
        for r in self.rows:
            cells = " ".join(f"{100 * r.pr_b(e):7.2f}" for e in EVENTS)
            lines.append(f"{r.n:6.1f} {r.u:4.1f} {100 * r.pr_a:7.2f} {cells}")
        lines.append(f"random integer rate log(20/19) = {100 * RANDOM_INTEGER_RATE:.2f}%")
        return "\n".join(lines)


def sample_curve(C, us, rng, threshold=0.95, effort=EXPERIMENT_EFFORT):
    P = naive_lpoly(C, rng, max_field=EXPERIMENT_FIELD)
    N = P(1)
    fac = factorint(N)
    easy = {u: is_root_easy(N, u, fac) for u in us}
    near = {}
    bad = 0
    for label, M in event_orders(P).items():
        try:
            near[label] = near_prime(M, threshold, effort, decide_only=True)[0]
        except Inconclusive:
            near[label] = False
            bad += 1
    return CurveSample(list(C.f), N, easy, near, bad)


def distribution_experiment(sample_size=10_000, us=(2.0, 3.0, 4.0), n=48, p=None, seed=0,
                            odd_only=False, threshold=0.95, effort=EXPERIMENT_EFFORT,
                            progress=None):
    """Estimates of Pr[A] and Pr[B | A] for each u over one sample."""
    rng = random.Random(seed)
    if p is None:
        p = random_prime(*field_window(n), rng)
    F = field_new(p)
    samples = []
    for i in range(sample_size):
        C = random_curve(F, rng, odd_only)
        samples.append(sample_curve(C, us, rng, threshold, effort))
        if progress is not None:
            progress(i + 1, sample_size)
    return summarise(p, n, odd_only, us, samples)


def summarise(p, n, odd_only, us, samples):
    rows = []
    mean_n = sum(math.log2(s.order) for s in samples) / len(samples) if samples else float(n)
    for u in us:
        easy = [s for s in samples if s.easy[u]]
        near = {e: sum(1 for s in easy if s.near[e]) for e in EVENTS}
        rows.append(Row(u=float(u), n=mean_n, count=len(samples), easy=len(easy), near=near))
    bad = sum(s.inconclusive for s in samples)
    return ExperimentResult(p, n, odd_only, rows, bad, samples)
