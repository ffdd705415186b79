"""Dickman's rho and the semismooth probability sigma(u) = G(1/u, 2/u).

rho solves u rho'(u) = -rho(u - 1) with rho = 1 on [0, 1].  It is tabulated
once on a uniform grid by integrating the equivalent integral equation
rho(u) = rho(k) - int_k^u rho(t - 1) / t dt, one unit interval at a time with
cumulative Simpson sums (the lagged values sit on the grid already).  G(a, b), the density of
integers whose largest prime factor is below N^b and second largest below
N^a, is then one integral over rho done by adaptive quadrature.
"""

import math
from functools import lru_cache

import numpy as np
from scipy import integrate

from ..errors import OutOfCalibratedRange

U_MAX = 12.0
_STEPS = 1 << 14  # grid points per unit interval


@lru_cache(maxsize=1)
def _rho_table():
    # on [k, k+1] the integrand rho(t - 1) / t is known from the previous unit,
    # so each unit is one cumulative integral
    units = int(U_MAX) + 1
    t = np.linspace(0.0, 1.0, _STEPS + 1)
    xs = [t]
    rs = [np.ones_like(t)]
    for k in range(1, units + 1):
        x = k + t
        r = rs[-1][-1] - integrate.cumulative_simpson(rs[-1] / x, x=x, initial=0.0)
        xs.append(x[1:])
        rs.append(r)
    r = np.concatenate([rs[0]] + [r[1:] for r in rs[1:]])
    # rho is log-concave and smooth; interpolate its logarithm
    return np.concatenate(xs), r, np.log(r)


def rho(u):
    """Dickman's rho for 0 <= u <= 13."""
    u = float(u)
    if u < 0:
        raise ValueError("u must be non-negative")
    if u <= 1:
        return 1.0
    x, _, logr = _rho_table()
    pos = u * _STEPS
    i = int(pos)
    if i + 1 >= len(x):
        raise OutOfCalibratedRange(f"rho is tabulated up to u = {x[-1]:g}")
    frac = pos - i
    return math.exp(logr[i] + frac * (logr[i + 1] - logr[i]))


def semismooth(a, b):
    """G(a, b) for 0 < a <= b: largest prime factor <= N^b, second <= N^a."""
    if not 0 < a <= b:
        raise ValueError("need 0 < a <= b")
    top = min(b, 1.0)
    base = rho(1.0 / a)
    if top <= a:
        return base
    val, _ = integrate.quad(lambda t: rho((1.0 - t) / a) / t, a, top,
                            epsabs=0.0, epsrel=1e-10, limit=200)
    return base + val


@lru_cache(maxsize=4096)
def sigma(u, v=None):
    """Probability that a random integer N is N^(1/u)-easy, G(1/u, v) with v = 2/u."""
    u = float(u)
    if u <= 1:
        raise ValueError("u must exceed 1")
    if u > U_MAX:
        raise OutOfCalibratedRange(f"sigma is calibrated for u <= {U_MAX:g}")
    v = 2.0 / u if v is None else float(v)
    return min(1.0, semismooth(1.0 / u, v))


def inverse_sigma(u):
    return 1.0 / sigma(u)


def log_rho_asymptotic(u):
    """-u (log u + log log u - 1) to leading order, for sanity checks only."""
    return -u * (math.log(u) + math.log(math.log(u)) - 1)
