"""Compiled Jacobian arithmetic for prime fields with p < 2^63.

Field elements are uint64 words, either in Montgomery form or, for primes
p = 2^e - c with small c, as plain residues with folding reduction.  A
divisor is a uint64 array [deg, u_0..u_{g-1}, v_0..v_{g-1}]; the leading 1 of
u is implicit and unused slots are zero.

The algorithms mirror jacobian.py exactly (same frequent-case formula, same
Cantor fallback, same hash), which is what the tests compare against.
"""

import numba as nb
import numpy as np
from llvmlite import ir
from numba import types
from numba.extending import intrinsic

U0 = np.uint64(0)
U1 = np.uint64(1)
U64MAX = np.uint64(0xFFFFFFFFFFFFFFFF)

# context slots
P_, PINV_, R2_, R3_, ONE_, MODE_, E_, MASK_, C_ = range(9)
CTX_LEN = 9

MONT = 0
PMERS = 1

SEED = np.uint64(0x9E3779B97F4A7C15)
SM1 = np.uint64(0xBF58476D1CE4E5B9)
SM2 = np.uint64(0x94D049BB133111EB)
S30 = np.uint64(30)
S27 = np.uint64(27)
S31 = np.uint64(31)


def make_context(p, mode=None):
    """Context array for the prime p. mode: None (auto), 'mont' or 'pmers'."""
    p = int(p)
    if p % 2 == 0 or p >= 1 << 63:
        raise ValueError("kernel needs an odd prime below 2^63")
    e = p.bit_length()
    c = (1 << e) - p
    fold_ok = (c + 1) * (1 << e) < (1 << 64) and c * c + 3 * c < (1 << e)
    if mode is None:
        mode = "pmers" if fold_ok else "mont"
    ctx = np.zeros(CTX_LEN, dtype=np.uint64)
    ctx[P_] = p
    if mode == "pmers":
        if not fold_ok:
            raise ValueError("p is not of the form 2^e - c with small c")
        ctx[MODE_] = PMERS
        ctx[E_] = e
        ctx[MASK_] = (1 << e) - 1
        ctx[C_] = c
        ctx[ONE_] = 1
        ctx[R2_] = 1
        ctx[R3_] = 1
    else:
        R = 1 << 64
        ctx[MODE_] = MONT
        ctx[PINV_] = (-pow(p, -1, R)) % R
        ctx[R2_] = R * R % p
        ctx[R3_] = R * R * R % p
        ctx[ONE_] = R % p
    # a tuple travels by value into compiled code, so its entries stay in registers
    return tuple(np.uint64(x) for x in ctx)


def to_word(x, ctx):
    """Python int -> kernel representation."""
    x = int(x) % int(ctx[P_])
    if ctx[MODE_] == PMERS:
        return x
    return (x << 64) % int(ctx[P_])


def from_word(w, ctx):
    p = int(ctx[P_])
    if ctx[MODE_] == PMERS:
        return int(w) % p
    return int(w) * pow(1 << 64, -1, p) % p


@intrinsic
def mul128(typingctx, a, b):
    """Full 64x64 -> 128 bit product as (hi, lo), emitted as one LLVM i128 multiply."""
    sig = types.UniTuple(types.uint64, 2)(types.uint64, types.uint64)

    def codegen(context, builder, signature, args):
        x, y = args
        i128 = ir.IntType(128)
        prod = builder.mul(builder.zext(x, i128), builder.zext(y, i128))
        lo = builder.trunc(prod, ir.IntType(64))
        hi = builder.trunc(builder.lshr(prod, ir.Constant(i128, 64)), ir.IntType(64))
        return context.make_tuple(builder, signature.return_type, [hi, lo])

    return sig, codegen


@nb.njit(inline="always")
def fmul(a, b, C):
    hi, lo = mul128(a, b)
    p = C[P_]
    if C[MODE_] == PMERS:
        e = C[E_]
        mask = C[MASK_]
        c = C[C_]
        H = (hi << (np.uint64(64) - e)) | (lo >> e)
        s = (lo & mask) + c * H
        s = (s & mask) + c * (s >> e)
        if s >= p:
            s -= p
        return s
    m = lo * C[PINV_]
    mh, ml = mul128(m, p)
    t = lo + ml
    carry = U1 if t < lo else U0
    r = hi + mh + carry
    if r >= p:
        r -= p
    return r


@nb.njit(inline="always")
def fadd(a, b, C):
    s = a + b
    p = C[P_]
    if s >= p:
        s -= p
    return s


@nb.njit(inline="always")
def fsub(a, b, C):
    if a >= b:
        return a - b
    return a + (C[P_] - b)


@nb.njit(inline="always")
def fneg(a, C):
    if a == U0:
        return U0
    return C[P_] - a


@nb.njit(cache=True)
def finv(a, C):
    # extended Euclid on the stored word, then fix the representation
    p = np.int64(C[P_])
    t = np.int64(0)
    nt = np.int64(1)
    r = p
    nr = np.int64(a)
    while nr != 0:
        qq = r // nr
        t, nt = nt, t - qq * nt
        r, nr = nr, r - qq * nr
    if t < 0:
        t += p
    return fmul(np.uint64(t), C[R3_], C)


@nb.njit(inline="always")
def redc(a, C):
    """Kernel word -> plain residue."""
    if C[MODE_] == PMERS:
        return a
    return fmul(a, U1, C)


# ---------------------------------------------------------------------------
# allocation-based polynomial helpers (Cantor fallback)

@nb.njit(cache=True)
def _trim(a):
    n = a.shape[0]
    while n > 0 and a[n - 1] == U0:
        n -= 1
    return a[:n].copy()


@nb.njit(cache=True)
def p_add(a, b, C):
    n = max(a.shape[0], b.shape[0])
    out = np.zeros(n, dtype=np.uint64)
    for i in range(a.shape[0]):
        out[i] = a[i]
    for i in range(b.shape[0]):
        out[i] = fadd(out[i], b[i], C)
    return _trim(out)


@nb.njit(cache=True)
def p_sub(a, b, C):
    n = max(a.shape[0], b.shape[0])
    out = np.zeros(n, dtype=np.uint64)
    for i in range(a.shape[0]):
        out[i] = a[i]
    for i in range(b.shape[0]):
        out[i] = fsub(out[i], b[i], C)
    return _trim(out)


@nb.njit(cache=True)
def p_neg(a, C):
    out = np.empty(a.shape[0], dtype=np.uint64)
    for i in range(a.shape[0]):
        out[i] = fneg(a[i], C)
    return out


@nb.njit(cache=True)
def p_scale(a, s, C):
    out = np.empty(a.shape[0], dtype=np.uint64)
    for i in range(a.shape[0]):
        out[i] = fmul(a[i], s, C)
    return _trim(out)


@nb.njit(cache=True)
def p_mul(a, b, C):
    if a.shape[0] == 0 or b.shape[0] == 0:
        return np.zeros(0, dtype=np.uint64)
    out = np.zeros(a.shape[0] + b.shape[0] - 1, dtype=np.uint64)
    for i in range(a.shape[0]):
        for j in range(b.shape[0]):
            out[i + j] = fadd(out[i + j], fmul(a[i], b[j], C), C)
    return _trim(out)


@nb.njit(cache=True)
def p_divmod(a, b, C):
    db = b.shape[0] - 1
    r = a.copy()
    if a.shape[0] - 1 < db:
        return np.zeros(0, dtype=np.uint64), _trim(r)
    lead = b[db]
    il = finv(lead, C) if lead != C[ONE_] else C[ONE_]
    q = np.zeros(a.shape[0] - db, dtype=np.uint64)
    for i in range(a.shape[0] - 1, db - 1, -1):
        c = r[i]
        if c == U0:
            continue
        c = fmul(c, il, C)
        q[i - db] = c
        for j in range(db + 1):
            r[i - db + j] = fsub(r[i - db + j], fmul(c, b[j], C), C)
    return _trim(q), _trim(r[:db])


@nb.njit(cache=True)
def p_monic(a, C):
    if a.shape[0] == 0 or a[a.shape[0] - 1] == C[ONE_]:
        return a.copy()
    return p_scale(a, finv(a[a.shape[0] - 1], C), C)


@nb.njit(cache=True)
def p_xgcd(a, b, C):
    r0 = _trim(a)
    r1 = _trim(b)
    s0 = np.zeros(1, dtype=np.uint64)
    s0[0] = C[ONE_]
    s1 = np.zeros(0, dtype=np.uint64)
    t0 = np.zeros(0, dtype=np.uint64)
    t1 = np.zeros(1, dtype=np.uint64)
    t1[0] = C[ONE_]
    while r1.shape[0] > 0:
        q, r = p_divmod(r0, r1, C)
        r0, r1 = r1, r
        s0, s1 = s1, p_sub(s0, p_mul(q, s1, C), C)
        t0, t1 = t1, p_sub(t0, p_mul(q, t1, C), C)
    c = finv(r0[r0.shape[0] - 1], C)
    return p_scale(r0, c, C), p_scale(s0, c, C), p_scale(t0, c, C)


@nb.njit(cache=True)
def unpack(D, g, C):
    d = np.int64(D[0])
    u = np.zeros(d + 1, dtype=np.uint64)
    for i in range(d):
        u[i] = D[1 + i]
    u[d] = C[ONE_]
    v = np.zeros(d, dtype=np.uint64)
    for i in range(d):
        v[i] = D[1 + g + i]
    return u, _trim(v)


@nb.njit(cache=True)
def pack(out, u, v, g):
    for i in range(2 * g + 1):
        out[i] = U0
    d = u.shape[0] - 1
    out[0] = np.uint64(d)
    for i in range(d):
        out[1 + i] = u[i]
    for i in range(v.shape[0]):
        out[1 + g + i] = v[i]


@nb.njit(cache=True)
def cantor(D1, D2, out, f, g, C):
    u1, v1 = unpack(D1, g, C)
    u2, v2 = unpack(D2, g, C)
    d1, e1, e2 = p_xgcd(u1, u2, C)
    if d1.shape[0] == 1:
        d = d1
        s1 = e1
        s2 = e2
        s3 = np.zeros(0, dtype=np.uint64)
    else:
        vs = p_add(v1, v2, C)
        d, c1, c2 = p_xgcd(d1, vs, C)
        s1 = p_mul(c1, e1, C)
        s2 = p_mul(c1, e2, C)
        s3 = c2
    dd = p_mul(d, d, C)
    u = p_divmod(p_mul(u1, u2, C), dd, C)[0]
    t = p_add(p_mul(p_mul(s1, u1, C), v2, C), p_mul(p_mul(s2, u2, C), v1, C), C)
    if s3.shape[0] > 0:
        t = p_add(t, p_mul(s3, p_add(p_mul(v1, v2, C), f, C), C), C)
    v = p_divmod(t, d, C)[0]
    v = p_divmod(v, u, C)[1]
    while u.shape[0] - 1 > g:
        u = p_divmod(p_sub(f, p_mul(v, v, C), C), u, C)[0]
        u = p_monic(u, C)
        v = p_divmod(p_neg(v, C), u, C)[1]
    pack(out, u, v, g)


# ---------------------------------------------------------------------------
# frequent case, allocation free: works on rows of a workspace W (16 x 16)

@nb.njit(inline="always")
def _tr(a, n):
    while n > 0 and a[n - 1] == U0:
        n -= 1
    return n


@nb.njit(cache=True)
def fast_compose(D1, D2, out, f, g, C, W):
    """Frequent-case addition/doubling; returns False if the case does not apply."""
    if g < 2 or np.int64(D1[0]) != g or np.int64(D2[0]) != g:
        return False
    one = C[ONE_]
    dbl = True
    for i in range(1, 2 * g + 1):
        if D1[i] != D2[i]:
            dbl = False
            break
    u1 = W[0]
    u2 = W[1]
    v1 = W[2]
    tg = W[3]
    for i in range(g):
        u1[i] = D1[1 + i]
        u2[i] = D2[1 + i]
        v1[i] = D1[1 + g + i]
    u1[g] = one
    u2[g] = one
    # almost inverse: rows 4,5 (r), 6,7 (t); indices swap instead of data
    ra = W[4]
    rb = W[5]
    ta = W[6]
    tb = W[7]
    for i in range(16):
        ta[i] = U0
        tb[i] = U0
    for i in range(g + 1):
        ra[i] = u2[i]
    la = g + 1
    if dbl:
        for i in range(g):
            rb[i] = fadd(v1[i], v1[i], C)
        lb = _tr(rb, g)
        # target k = ((f - v^2)/u) mod u
        num = W[8]
        for i in range(2 * g + 2):
            num[i] = f[i]
        for i in range(g):
            for j in range(g):
                num[i + j] = fsub(num[i + j], fmul(v1[i], v1[j], C), C)
        # exact division by monic u (deg g), quotient deg g+1
        kq = W[9]
        for i in range(2 * g + 1, g - 1, -1):
            c = num[i]
            kq[i - g] = c
            if c != U0:
                for j in range(g + 1):
                    num[i - g + j] = fsub(num[i - g + j], fmul(c, u1[j], C), C)
        # k mod u: k has length g+2
        for i in range(g + 1, g - 1, -1):
            c = kq[i]
            if c != U0:
                for j in range(g + 1):
                    kq[i - g + j] = fsub(kq[i - g + j], fmul(c, u1[j], C), C)
        for i in range(g):
            tg[i] = kq[i]
    else:
        for i in range(g):
            rb[i] = fsub(u1[i], u2[i], C)
            tg[i] = fsub(D2[1 + g + i], v1[i], C)
        lb = _tr(rb, g)
    lta = 0
    tb[0] = one
    ltb = 1
    while lb > 1:
        while la >= lb:
            shift = la - lb
            a = rb[lb - 1]
            b = ra[la - 1]
            for i in range(la):
                ra[i] = fmul(a, ra[i], C)
            for i in range(lb):
                ra[i + shift] = fsub(ra[i + shift], fmul(b, rb[i], C), C)
            la = _tr(ra, la - 1)
            for i in range(lta):
                ta[i] = fmul(a, ta[i], C)
            nl = max(lta, ltb + shift)
            for i in range(ltb):
                ta[i + shift] = fsub(ta[i + shift], fmul(b, tb[i], C), C)
            lta = _tr(ta, nl)
        ra, rb = rb, ra
        la, lb = lb, la
        ta, tb = tb, ta
        lta, ltb = ltb, lta
    if lb == 0:
        return False
    c = rb[0]
    # s' = t * target mod u2
    sp = W[10]
    n = ltb + g - 1
    for i in range(n + 1):
        sp[i] = U0
    for i in range(ltb):
        for j in range(g):
            sp[i + j] = fadd(sp[i + j], fmul(tb[i], tg[j], C), C)
    for i in range(n - 1, g - 1, -1):
        cc = sp[i]
        if cc != U0:
            for j in range(g + 1):
                sp[i - g + j] = fsub(sp[i - g + j], fmul(cc, u2[j], C), C)
    top = sp[g - 1]
    if top == U0:
        return False
    w = finv(fmul(c, top, C), C)
    cinv = fmul(w, top, C)
    s = W[11]
    for i in range(g):
        s[i] = fmul(sp[i], cinv, C)
    stinv = fmul(fmul(c, c, C), w, C)
    # v = v1 + s*u1  (length 2g)
    v = W[12]
    for i in range(2 * g):
        v[i] = U0
    for i in range(g):
        for j in range(g + 1):
            v[i + j] = fadd(v[i + j], fmul(s[i], u1[j], C), C)
    for i in range(g):
        v[i] = fadd(v[i], v1[i], C)
    # U = u1*u2 (length 2g+1)
    Up = W[13]
    for i in range(2 * g + 1):
        Up[i] = U0
    for i in range(g + 1):
        for j in range(g + 1):
            Up[i + j] = fadd(Up[i + j], fmul(u1[i], u2[j], C), C)
    # top coefficients (degrees 2g..4g-2) of f - v^2
    num = W[14]
    for j in range(2 * g, 4 * g - 1):
        acc = U0
        lo = j - (2 * g - 1)
        if lo < 0:
            lo = 0
        for a in range(lo, 2 * g):
            b = j - a
            if b < 0 or b > 2 * g - 1:
                continue
            acc = fadd(acc, fmul(v[a], v[b], C), C)
        fj = f[j] if j <= 2 * g + 1 else U0
        num[j] = fsub(fj, acc, C)
    # quotient by monic U, degrees 2g-2..0
    kq = W[15]
    for j in range(4 * g - 2, 2 * g - 1, -1):
        cc = num[j]
        kq[j - 2 * g] = cc
        if cc != U0:
            for i in range(2 * g + 1):
                idx = j - 2 * g + i
                if idx >= 2 * g:
                    num[idx] = fsub(num[idx], fmul(cc, Up[i], C), C)
    m = fneg(fmul(stinv, stinv, C), C)
    du = 2 * g - 2
    un = W[0]          # u1 no longer needed
    for i in range(du):
        un[i] = fmul(kq[i], m, C)
    un[du] = one
    # v' = -v mod un
    for i in range(2 * g - 1, du - 1, -1):
        cc = v[i]
        if cc != U0:
            for j in range(du + 1):
                v[i - du + j] = fsub(v[i - du + j], fmul(cc, un[j], C), C)
    vn = W[1]
    for i in range(du):
        vn[i] = fneg(v[i], C)
    if g == 3:
        # one more reduction step: u3 = (f - vn^2)/un, monic of degree 3
        t = W[2]
        for j in range(4, 8):
            acc = U0
            for a in range(0, 4):
                b = j - a
                if b < 0 or b > 3:
                    continue
                acc = fadd(acc, fmul(vn[a], vn[b], C), C)
            t[j] = fsub(f[j], acc, C)
        u3 = W[3]
        for j in range(7, 3, -1):
            cc = t[j]
            u3[j - 4] = cc
            if cc != U0:
                for i in range(5):
                    idx = j - 4 + i
                    if idx >= 4:
                        t[idx] = fsub(t[idx], fmul(cc, un[i], C), C)
        # v3 = -vn mod u3 (vn has degree <= 3)
        cc = vn[3]
        for i in range(3):
            vn[i] = fsub(vn[i], fmul(cc, u3[i], C), C)
        out[0] = np.uint64(3)
        for i in range(3):
            out[1 + i] = u3[i]
            out[4 + i] = fneg(vn[i], C)
        return True
    out[0] = np.uint64(du)
    for i in range(du):
        out[1 + i] = un[i]
        out[1 + g + i] = vn[i]
    for i in range(du, g):
        out[1 + i] = U0
        out[1 + g + i] = U0
    return True


@nb.njit(cache=True)
def jadd(D1, D2, out, f, g, C, W):
    """out = D1 + D2 (out may alias either input)."""
    if D1[0] == U0:
        for i in range(2 * g + 1):
            out[i] = D2[i]
        return
    if D2[0] == U0:
        for i in range(2 * g + 1):
            out[i] = D1[i]
        return
    if not fast_compose(D1, D2, out, f, g, C, W):
        cantor(D1, D2, out, f, g, C)


@nb.njit(cache=True)
def jneg(D, out, g, C):
    for i in range(g + 1):
        out[i] = D[i]
    for i in range(g):
        out[1 + g + i] = fneg(D[1 + g + i], C)


@nb.njit(cache=True)
def splitmix(z):
    z = z + SEED
    z = (z ^ (z >> S30)) * SM1
    z = (z ^ (z >> S27)) * SM2
    return z ^ (z >> S31)


@nb.njit(cache=True)
def jhash(D, g, C):
    d = np.int64(D[0])
    h = SEED
    h = splitmix(h ^ np.uint64(d))
    for i in range(d):
        h = splitmix(h ^ redc(D[1 + i], C))
    p = C[P_]
    flip = False
    for i in range(d):
        x = redc(D[1 + g + i], C)
        if x != U0:
            flip = x > p - x
            break
    for i in range(d):
        x = redc(D[1 + g + i], C)
        if flip and x != U0:
            x = p - x
        h = splitmix(h ^ x)
    return h


@nb.njit(cache=True)
def jexp(D, gaps, digits, tail, out, f, g, C):
    """out = D^e for the signed-window recoding (gaps, digits, tail); returns op count."""
    L = 2 * g + 1
    W = np.zeros((16, 16), dtype=np.uint64)
    nd = digits.shape[0]
    if nd == 0:
        for i in range(L):
            out[i] = U0
        return 0
    top = 1
    for i in range(nd):
        a = abs(digits[i])
        if a > top:
            top = a
    ntab = top // 2 + 1
    table = np.zeros((ntab, L), dtype=np.uint64)
    for i in range(L):
        table[0, i] = D[i]
    ops = 0
    if ntab > 1:
        d2 = np.zeros(L, dtype=np.uint64)
        jadd(D, D, d2, f, g, C, W)
        ops += 1
        for j in range(1, ntab):
            jadd(table[j - 1], d2, table[j], f, g, C, W)
            ops += 1
    acc = np.zeros(L, dtype=np.uint64)
    tmp = np.zeros(L, dtype=np.uint64)
    d = digits[0]
    if d > 0:
        for i in range(L):
            acc[i] = table[d // 2, i]
    else:
        jneg(table[(-d) // 2], acc, g, C)
    for k in range(1, nd):
        for _ in range(gaps[k]):
            jadd(acc, acc, acc, f, g, C, W)
            ops += 1
        d = digits[k]
        if d > 0:
            jadd(acc, table[d // 2], acc, f, g, C, W)
        else:
            jneg(table[(-d) // 2], tmp, g, C)
            jadd(acc, tmp, acc, f, g, C, W)
        ops += 1
    for _ in range(tail):
        jadd(acc, acc, acc, f, g, C, W)
        ops += 1
    for i in range(L):
        out[i] = acc[i]
    return ops


@nb.njit(cache=True)
def jwalk(starts, deltas, schedule, f, g, C, out_hash, final):
    """Walk m sequences: x_i <- x_i * deltas[schedule[t]], hashing every state.

    out_hash[t*m + i] is the hash after t steps of sequence i (t = 0 is the start).
    The final states are written to `final`.
    """
    m = starts.shape[0]
    L = 2 * g + 1
    W = np.zeros((16, 16), dtype=np.uint64)
    cur = starts.copy()
    for i in range(m):
        out_hash[i] = jhash(cur[i], g, C)
    n = schedule.shape[0]
    for t in range(n):
        dl = deltas[schedule[t]]
        base = (t + 1) * m
        for i in range(m):
            jadd(cur[i], dl, cur[i], f, g, C, W)
            out_hash[base + i] = jhash(cur[i], g, C)
    for i in range(m):
        for j in range(L):
            final[i, j] = cur[i, j]
    return n * m


@nb.njit(cache=True)
def jadd_many(A, B, out, f, g, C):
    W = np.zeros((16, 16), dtype=np.uint64)
    for i in range(A.shape[0]):
        jadd(A[i], B[i], out[i], f, g, C, W)


@nb.njit(cache=True)
def jadd_one(A, B, out, f, g, C):
    W = np.zeros((16, 16), dtype=np.uint64)
    jadd(A, B, out, f, g, C, W)


@nb.njit(cache=True)
def jhash_many(A, g, C, out):
    for i in range(A.shape[0]):
        out[i] = jhash(A[i], g, C)
