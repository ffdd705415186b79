"""Group exponent, group order and Sylow structure of black-box groups."""

import math
from functools import lru_cache

from ..errors import AmbiguousOrder, Reject
from ..ntheory import factorint
from .exponent import build_exponent
from .order import check_order, fac_mul, fac_value, order_from_exponent_factored
from .primorial import PrimorialPlan, order_bounded_factored


@lru_cache(maxsize=4)
def full_exponent(B):
    return build_exponent(B)


@lru_cache(maxsize=4)
def plan_for(B, w=None):
    return PrimorialPlan(B, w)


def group_exponent_factored(G, B, rng, c=6, plan=None, E=None, stats=None, max_restarts=64):
    """lambda(G) factored, on the condition that it is B-easy.

    N is the lcm of the orders of c random elements (Steps 1-5 of the group
    exponent method); a Reject in Step 4 goes back to Step 1 keeping N.
    """
    if c < 2:
        raise ValueError("c must be at least 2")
    E = E or full_exponent(int(B))
    plan = plan or plan_for(int(B))
    rec = getattr(E, "recoding", None)
    fac = {}
    for _ in range(max_restarts):
        N = fac_value(fac)
        # step 1
        a = G.exp(G.random(rng), N)
        ops0 = G.ops
        beta = G.exp(a, rec if rec is not None else E)
        if stats is not None:
            stats["exp"] = stats.get("exp", 0) + G.ops - ops0
        # step 2 (Reject propagates: lambda is B-hard)
        f1 = order_bounded_factored(G, beta, plan, stats)
        # step 3
        f2 = order_from_exponent_factored(G, G.exp(a, fac_value(f1)), E)
        fac = fac_mul(fac, fac_mul(f1, f2))
        t = 1
        restart = False
        while t < c:
            # step 4
            a = G.random(rng)
            try:
                f3 = order_from_exponent_factored(G, G.exp(a, fac_value(fac)), E)
            except Reject:
                restart = True
                break
            # step 5
            fac = fac_mul(fac, f3)
            t += 1
        if not restart:
            return dict(sorted(fac.items()))
    raise Reject("group exponent did not stabilise")


def group_exponent(G, B, rng, c=6, plan=None, E=None, stats=None):
    return fac_value(group_exponent_factored(G, B, rng, c, plan, E, stats))


# ---------------------------------------------------------------------------
# Smith normal form over the integers (small matrices only)

def smith_normal_form(A):
    """Return (D, U, V) with U A V = D diagonal, U and V unimodular.

    A is a list of rows of ints; D's diagonal entries are non-negative and
    each divides the next.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    D = [list(map(int, row)) for row in A]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(M, i, j):
        M[i], M[j] = M[j], M[i]

    def swap_cols(M, i, j):
        for row in M:
            row[i], row[j] = row[j], row[i]

    def add_row(M, src, dst, k):
        # row dst += k * row src
        M[dst] = [a + k * b for a, b in zip(M[dst], M[src])]

    def add_col(M, src, dst, k):
        for row in M:
            row[dst] += k * row[src]

    t = 0
    while t < min(m, n):
        # pivot: smallest nonzero magnitude in the remaining block
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if D[i][j] and (best is None or abs(D[i][j]) < abs(D[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        swap_rows(D, t, i)
        swap_rows(U, t, i)
        swap_cols(D, t, j)
        swap_cols(V, t, j)
        done = False
        while not done:
            done = True
            for i in range(t + 1, m):
                if D[i][t]:
                    k = D[i][t] // D[t][t]
                    add_row(D, t, i, -k)
                    add_row(U, t, i, -k)
                    if D[i][t]:
                        swap_rows(D, t, i)
                        swap_rows(U, t, i)
                        done = False
            for j in range(t + 1, n):
                if D[t][j]:
                    k = D[t][j] // D[t][t]
                    add_col(D, t, j, -k)
                    add_col(V, t, j, -k)
                    if D[t][j]:
                        swap_cols(D, t, j)
                        swap_cols(V, t, j)
                        done = False
            if done:
                # the pivot must divide the rest of the block
                bad = None
                for i in range(t + 1, m):
                    for j in range(t + 1, n):
                        if D[i][j] % D[t][t]:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is not None:
                    add_row(D, bad, t, 1)
                    add_row(U, bad, t, 1)
                    done = False
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return D, U, V


def _inverse_unimodular(V):
    """Exact integer inverse of a unimodular matrix by Gauss-Jordan."""
    n = len(V)
    A = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(V)]
    for c in range(n):
        # Euclid down the column to get a unit pivot
        while True:
            rows = [r for r in range(c, n) if A[r][c]]
            r0 = min(rows, key=lambda r: abs(A[r][c]))
            A[c], A[r0] = A[r0], A[c]
            others = [r for r in range(c + 1, n) if A[r][c]]
            if not others:
                break
            for r in others:
                k = A[r][c] // A[c][c]
                A[r] = [a - k * b for a, b in zip(A[r], A[c])]
        if A[c][c] == -1:
            A[c] = [-a for a in A[c]]
        if A[c][c] != 1:
            raise ValueError("matrix is not unimodular")
        for r in range(n):
            if r != c and A[r][c]:
                k = A[r][c]
                A[r] = [a - k * b for a, b in zip(A[r], A[c])]
    return [row[n:] for row in A]


def _valuation(n, p):
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


# ---------------------------------------------------------------------------
# discrete logarithms in a p-group given by a basis

class _SubgroupIndex:
    """Baby-step table for H = <g_1> x ... x <g_r> (orders p^e_i)."""

    def __init__(self, G, basis, p):
        self.G = G
        self.basis = basis
        self.p = p
        self.split = []
        for _, order in basis:
            e = _valuation(order, p)
            self.split.append(p ** ((e + 1) // 2))
        # baby table: all prod g_i^a_i with 0 <= a_i < split_i
        table = {G.identity: (0,) * len(basis)}
        for idx, ((g, _), s) in enumerate(zip(basis, self.split)):
            new = {}
            for x, vec in table.items():
                y = x
                for a in range(1, s):
                    y = G.op(y, g)
                    v = list(vec)
                    v[idx] = a
                    new[y] = tuple(v)
            table.update(new)
        self.table = table
        # giant generators g_i^split_i with ranges order_i / split_i
        self.giants = [(G.exp(g, s), order // s if order >= s else 1)
                       for (g, order), s in zip(basis, self.split)]

    @property
    def order(self):
        out = 1
        for _, o in self.basis:
            out *= o
        return out

    def log(self, x):
        """Exponent vector c with x = prod g_i^c_i, or None if x is not in H."""
        G = self.G
        hit = self.table.get(x)
        if hit is not None:
            return list(hit)
        r = len(self.basis)
        inv_giants = [G.inv(h) for h, _ in self.giants]
        ranges = [n for _, n in self.giants]
        # odometer over giant vectors b; acc[i] = x * prod_{j >= i} h_j^-b_j
        b = [0] * r
        acc = [x] * (r + 1)
        while True:
            i = 0
            while i < r and b[i] + 1 >= ranges[i]:
                b[i] = 0
                i += 1
            if i == r:
                return None
            b[i] += 1
            acc[i] = G.op(acc[i], inv_giants[i])
            for j in range(i):
                acc[j] = acc[i]
            hit = self.table.get(acc[0])
            if hit is not None:
                return [hit[k] + b[k] * self.split[k] for k in range(r)]


def sylow_structure(G, p, h, lam, rng, bound=None, confidence_bits=20):
    """Basis [(generator, order), ...] of the p-Sylow subgroup H_p.

    Random elements of H_p come from exponentiating by lam / p^h.  The basis
    grows whenever a new element falls outside the current subgroup; the
    search stops once enough consecutive elements land inside that a proper
    subgroup would have been caught with probability 1 - 2^-confidence_bits.
    """
    p = int(p)
    cof = int(lam) // p ** int(h)
    basis = []
    index = _SubgroupIndex(G, basis, p)
    need = max(1, math.ceil(confidence_bits / math.log2(p)))
    hits = 0
    while hits < need:
        x = G.exp(G.random(rng), cof)
        y, j = x, 0
        c = index.log(y)
        while c is None:
            y = G.exp(y, p)
            j += 1
            if j > h:
                raise AssertionError("element of H_p has order above p^h")
            c = index.log(y)
        if j == 0:
            hits += 1
            continue
        hits = 0
        r = len(basis)
        gens = [g for g, _ in basis] + [x]
        rows = [[o if k == i else 0 for k in range(r + 1)] for i, (_, o) in enumerate(basis)]
        rows.append([-ci for ci in c] + [p ** j])
        D, _, V = smith_normal_form(rows)
        Vinv = _inverse_unimodular(V)
        new = []
        for i in range(r + 1):
            d = D[i][i]
            if d == 1:
                continue
            g = G.identity
            for k, gk in enumerate(gens):
                if Vinv[i][k]:
                    g = G.op(g, G.exp(gk, Vinv[i][k]))
            new.append((g, d))
        basis = sorted(new, key=lambda t: t[1])
        size = 1
        for _, o in basis:
            size *= o
        if bound is not None and size > bound:
            raise Reject(f"{p}-Sylow subgroup exceeds the bound")
        index = _SubgroupIndex(G, basis, p)
    for g, o in basis:
        check_order(G, g, {p: _valuation(o, p)})
    return basis


def invariant_factors(orders):
    """Invariant factors d_1 | d_2 | ... from prime-power cyclic orders."""
    by_p = {}
    for o in orders:
        if o == 1:
            continue
        p = next(iter(factorint(o)))
        by_p.setdefault(p, []).append(o)
    n = max((len(v) for v in by_p.values()), default=0)
    out = [1] * n
    for v in by_p.values():
        v = sorted(v, reverse=True)
        for i, o in enumerate(v):
            out[n - 1 - i] *= o
    return out


def group_order(G, B, rng, interval=None, c=6, plan=None, E=None, stats=None,
                with_basis=False):
    """(|G|, invariant factors or None), on the condition that G is B-easy.

    With an interval (lo, hi) known to contain |G|, a unique multiple of
    lambda(G) inside it is returned directly and no structure is computed.
    """
    lam_fac = group_exponent_factored(G, B, rng, c, plan, E, stats)
    lam = fac_value(lam_fac)
    if stats is not None:
        stats["lambda"] = lam
    need = set(lam_fac)
    cands = None
    if interval is not None:
        lo, hi = int(interval[0]), int(interval[1])
        cands = list(range(-(-lo // lam), hi // lam + 1))
        if len(cands) == 1:
            return (cands[0] * lam, None, None) if with_basis else (cands[0] * lam, None)
        if not cands:
            raise AmbiguousOrder("no multiple of the group exponent lies in the interval")
        # only primes dividing some cofactor can enlarge a Sylow subgroup
        need = set()
        keep = []
        for k in cands:
            kk = k
            for p in lam_fac:
                while kk % p == 0:
                    kk //= p
                    need.add(p)
            if kk == 1:
                keep.append(k)
        cands = keep
    B2 = int(B) ** 2
    order = lam
    basis = []
    for p, h in sorted(lam_fac.items()):
        if p in need:
            sub = sylow_structure(G, p, h, lam, rng, bound=B2)
            size = 1
            for _, o in sub:
                size *= o
            order = order // p ** h * size
            basis.extend(sub)
        else:
            basis = None if interval is not None else basis
    if cands is not None:
        if order // lam not in cands:
            raise AmbiguousOrder("Sylow refinement contradicts the interval")
        return (order, None, None) if with_basis else (order, None)
    structure = invariant_factors([o for _, o in basis])
    if with_basis:
        return order, structure, basis
    return order, structure
