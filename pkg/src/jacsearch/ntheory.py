"""Integer utilities: sieving, probable primes, factoring small pieces.

Primality is delegated to gmpy2 (strong Lucas / BPSW plus Miller-Rabin
rounds); everything else here is plain integer code.
"""

import math
import random
from functools import lru_cache

import gmpy2
import numpy as np


def primes_up_to(n):
    """All primes <= n as an int64 numpy array."""
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    sieve = np.ones(n // 2 + 1, dtype=bool)
    sieve[0] = False
    r = math.isqrt(n)
    for i in range(1, r // 2 + 1):
        if sieve[i]:
            p = 2 * i + 1
            sieve[p * p // 2::p] = False
    odd = 2 * np.nonzero(sieve)[0] + 1
    odd = odd[odd <= n]
    return np.concatenate(([2], odd)).astype(np.int64)


@lru_cache(maxsize=8)
def _small_primes(n):
    return tuple(int(p) for p in primes_up_to(n))


def is_probable_prime(n, rounds=64, rng=None):
    """Strong Lucas (BPSW) test followed by `rounds` random-base Miller-Rabin tests."""
    n = int(n)
    if n < 2:
        return False
    for p in _small_primes(1000):
        if n == p:
            return True
        if n % p == 0:
            return False
    if not gmpy2.is_strong_bpsw_prp(n):
        return False
    if rounds <= 0:
        return True
    rng = rng or random.Random(n)
    for _ in range(rounds):
        a = rng.randrange(2, n - 1)
        if not gmpy2.is_strong_prp(n, a):
            return False
    return True


def is_prime(n):
    """Fast probable-prime check used on internal (not user supplied) values."""
    return is_probable_prime(n, rounds=2)


def next_prime(n):
    return int(gmpy2.next_prime(n))


def primorial(w):
    """Product of the first w primes."""
    out = 1
    for p in _small_primes(1000)[:w]:
        out *= p
    return out


def product(values):
    """Balanced product tree; much faster than a running product for long lists."""
    vals = [gmpy2.mpz(v) for v in values]
    if not vals:
        return gmpy2.mpz(1)
    while len(vals) > 1:
        nxt = [vals[i] * vals[i + 1] for i in range(0, len(vals) - 1, 2)]
        if len(vals) % 2:
            nxt.append(vals[-1])
        vals = nxt
    return vals[0]


def pollard_brent(n, rng, max_iters=1 << 20, block=1024, attempts=4):
    """One nontrivial factor of composite n, or None once each of `attempts`
    random starts has spent max_iters steps."""
    n = gmpy2.mpz(n)
    if n % 2 == 0:
        return 2
    for _ in range(attempts):
        y = gmpy2.mpz(rng.randrange(1, n))
        c = gmpy2.mpz(rng.randrange(1, n))
        g = gmpy2.mpz(1)
        r = 1
        spent = 0
        while g == 1 and spent < max_iters:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            spent += r
            k = 0
            while k < r and g == 1:
                ys = y
                q = gmpy2.mpz(1)
                for _ in range(min(block, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gmpy2.gcd(q, n)
                k += block
            spent += r
            r *= 2
        if g == n:
            g = gmpy2.mpz(1)
            while g == 1:
                ys = (ys * ys + c) % n
                g = gmpy2.gcd(abs(x - ys), n)
        if 1 < g < n:
            return int(g)
    return None


def trial_divide(n, bound):
    """Strip prime factors <= bound. Returns (dict of found factors, cofactor)."""
    n = int(n)
    found = {}
    for p in _small_primes(min(bound, 1 << 16)):
        if p > bound:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            found[p] = e
    if bound > (1 << 16) and n > 1:
        # gcd against the product of the remaining primes, then split the gcd
        g = gmpy2.gcd(n, _prime_block_product(bound))
        if g > 1:
            for p in _primes_dividing(int(g), bound):
                e = 0
                while n % p == 0:
                    n //= p
                    e += 1
                found[p] = e
    return found, n


@lru_cache(maxsize=4)
def _prime_block_product(bound):
    ps = primes_up_to(bound)
    ps = ps[ps > (1 << 16)]
    return product(int(p) for p in ps)


def _primes_dividing(g, bound):
    # g is a squarefree product of primes in (2^16, bound]; split by rho / trial
    out = []
    stack = [g]
    rng = random.Random(g)
    while stack:
        x = stack.pop()
        if x == 1:
            continue
        if is_prime(x):
            out.append(x)
            continue
        d = pollard_brent(x, rng)
        if d is None:
            ps = primes_up_to(bound)
            out.extend(int(p) for p in ps if x % int(p) == 0)
            continue
        stack.extend((d, x // d))
    return out


def factorint(n, rng=None, rho_iters=1 << 22):
    """Full factorization {p: e}. Raises ValueError if a cofactor resists rho."""
    n = int(n)
    if n < 1:
        raise ValueError("factorint needs n >= 1")
    rng = rng or random.Random(n)
    found, n = trial_divide(n, 1 << 12)
    stack = [n]
    while stack:
        x = stack.pop()
        if x == 1:
            continue
        if is_prime(x):
            found[x] = found.get(x, 0) + 1
            continue
        r = gmpy2.iroot(x, 2)
        if r[1]:
            stack.extend((int(r[0]), int(r[0])))
            continue
        d = pollard_brent(x, rng, max_iters=rho_iters)
        if d is None:
            raise ValueError(f"could not split {x}")
        stack.extend((d, x // d))
    return dict(sorted(found.items()))


def format_factorization(fac):
    parts = []
    for p, e in sorted(fac.items()):
        parts.append(f"{p}^{e}" if e > 1 else str(p))
    return "*".join(parts) if parts else "1"


def euler_phi_of_primorial(w):
    out = 1
    for p in _small_primes(1000)[:w]:
        out *= p - 1
    return out


def nth_prime(i):
    """1-based: nth_prime(1) == 2."""
    return _small_primes(1000)[i - 1]
