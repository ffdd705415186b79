"""Choosing u and B = 2^(n/u) for a search over Jacobians of about 2^n elements.

Estimates per attempt (group operations):
  E = B / ln 2                      exponentiation by the product of prime powers <= B
  S = sqrt(2 phi(P_w) / P_w) * B    primorial-steps search, m phi(P_w) baby steps
                                    plus B^2 / (2 m P_w) giant steps at the balanced m
and the expected cost per success is (E + S) / sigma(u).  Memory is 16 S bytes
(two tables of 64-bit words).  The inverted ratio sqrt(2 P_w / phi(P_w)) B is
kept as `s_inverted` for comparison.
"""

import math
from dataclasses import asdict, dataclass

from ..expo import choose_window
from ..genalg.primorial import choose_w, m_for
from ..ntheory import euler_phi_of_primorial, primorial
from .semismooth import U_MAX, sigma

N_MIN = 48
N_MAX = 256
U_MIN = 2.0
U_STEP = 0.01
SPACE_TOLERANCE = 0.05


@dataclass(frozen=True)
class TuningRow:
    n: int
    w: int
    u: float
    inv_sigma: float
    B: int
    E: float
    S: float
    memory: float
    m: int
    e_windowed: float
    s_inverted: float

    @property
    def work(self):
        return self.E + self.S

    @property
    def cost(self):
        return self.work * self.inv_sigma

    def to_json(self):
        out = asdict(self)
        out["work"] = self.work
        out["cost"] = self.cost
        return out


@dataclass(frozen=True)
class TuningChoice:
    row: TuningRow
    space_saver: TuningRow
    space_cost_ratio: float

    @property
    def space_saver_ok(self):
        return self.space_cost_ratio <= 1 + SPACE_TOLERANCE

    @property
    def u(self):
        return self.row.u

    @property
    def B(self):
        return self.row.B

    @property
    def w(self):
        return self.row.w

    @property
    def m(self):
        return self.row.m

    @property
    def cost(self):
        return self.row.cost


def weil_bits(q, g):
    """n = lg #J(C), estimated from the centre q^g of the Weil interval."""
    return round(g * math.log2(q))


def windowed_exp_ops(bits):
    # lg E squarings, one addition per window and the odd-power table
    k = choose_window(int(bits))
    return bits + bits / (k + 1) + (1 << (k - 2))


def tuning_row(n, u, w=None):
    u = round(float(u), 2)
    B = round(2 ** (n / u))
    if B < 2:
        raise ValueError("B = 2^(n/u) is below 2")
    w = choose_w(B) if w is None else int(w)
    P = primorial(w)
    phi = euler_phi_of_primorial(w)
    E = B / math.log(2)
    S = math.sqrt(2 * phi / P) * B
    return TuningRow(
        n=int(n), w=w, u=u, inv_sigma=1.0 / sigma(u), B=B, E=E, S=S, memory=16 * S,
        m=m_for(B, w), e_windowed=windowed_exp_ops(E),
        s_inverted=math.sqrt(2 * P / phi) * B)


def _grid(lo, hi):
    k = round(lo / U_STEP)
    while k * U_STEP <= hi + 1e-9:
        yield round(k * U_STEP, 2)
        k += 1


def _best_w(B, w_candidates):
    if not w_candidates:
        return choose_w(B)
    w = choose_w(B)
    allowed = sorted(int(x) for x in w_candidates)
    below = [x for x in allowed if x <= w]
    return below[-1] if below else allowed[0]


def choose_params(n, w_candidates=None):
    """Minimise (E + S) / sigma(u) over u on a 0.01 grid; also find the first
    larger u whose memory is at most half, and its cost relative to the optimum."""
    n = int(n)
    if not N_MIN <= n <= N_MAX:
        raise ValueError(f"n must lie in [{N_MIN}, {N_MAX}]")
    best = None
    for u in _grid(U_MIN + U_STEP, U_MAX):
        B = round(2 ** (n / u))
        if B < 2:
            break
        row = tuning_row(n, u, _best_w(B, w_candidates))
        if best is None or row.cost < best.cost:
            best = row
    saver = best
    for u in _grid(best.u + U_STEP, U_MAX):
        B = round(2 ** (n / u))
        if B < 2:
            break
        # a smaller B may prefer a smaller primorial; keeping the optimum's w is allowed too
        rows = [tuning_row(n, u, w) for w in {_best_w(B, w_candidates), best.w}]
        rows = [r for r in rows if r.memory <= best.memory / 2]
        if rows:
            saver = min(rows, key=lambda r: r.cost)
            break
    return TuningChoice(best, saver, saver.cost / best.cost)


def tuning_table(ns=(100, 110, 120, 130, 140, 150, 160, 170, 180, 190, 200)):
    return [choose_params(n) for n in ns]
