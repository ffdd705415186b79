"""One curve at a time: filters, a conditional order computation, zeta recovery,
derived group orders and a self-check, producing one record per parameter t."""

import random
import signal
import time
from concurrent.futures import ProcessPoolExecutor

from ..curve import curve_new, jacobian_group, twist
from ..errors import JacsearchError, Reject, SingularCurve
from ..ff import field_new, poly_irreducible
from ..genalg.structure import full_exponent, group_order, plan_for
from ..zeta.lpoly import twist_lpoly, validate_lpoly, weil_bounds
from ..zeta.recover import recover_lpoly
from ..zeta.security import derived_orders, smith_filter
from .records import SearchRecord, done_t_values, truncate_torn_tail

SELF_CHECKS = 20


def two_torsion_filter(C):
    """True iff f is irreducible, which forces #J(C) to be odd."""
    return poly_irreducible(list(C.f), C.field)


def _field(cfg):
    return field_new(cfg.p, cfg.k)


def curve_for(cfg, t, F=None):
    F = F or _field(cfg)
    return curve_new(cfg.genus, F, cfg.fam.at(t))


def _self_check(G, N, rng, count=SELF_CHECKS):
    for _ in range(count):
        if not G.is_identity(G.exp(G.random(rng), N)):
            return False
    return True


def _security(derived):
    out = []
    for d in derived:
        if d.largest_prime is None:
            continue
        # with an unsplit composite left, the largest known prime means little
        known = d.cofactor_prime or d.near_prime
        out.append({"label": d.label,
                    "prime_bits": d.largest_prime.bit_length() if known else None,
                    "near_prime": d.near_prime,
                    "equivalent_bits": d.security_bits if known else None})
    return out


def process_t(cfg, t, F=None):
    """The record for one parameter value; never raises for curve-level failures."""
    t0 = time.perf_counter()
    F = F or _field(cfg)
    rng = random.Random(f"{cfg.seed}:{t}")
    f_int = cfg.fam.at(t)
    rec = SearchRecord(t=t, p=cfg.p, k=cfg.k, genus=cfg.genus,
                       f=[c % cfg.p for c in f_int], status="error",
                       config_hash=cfg.config_hash)
    stats = {}
    try:
        _run_curve(cfg, t, F, rng, rec, stats)
    except JacsearchError as exc:
        rec.status = "error"
        rec.detail = f"{type(exc).__name__}: {exc}"
    except (ValueError, ArithmeticError, AssertionError) as exc:
        rec.status = "error"
        rec.detail = f"{type(exc).__name__}: {exc}"
    rec.ops = {k: stats.get(k, 0) for k in ("exp", "search", "recovery")}
    rec.ms = (time.perf_counter() - t0) * 1000
    return rec


def _run_curve(cfg, t, F, rng, rec, stats):
    try:
        C = curve_new(cfg.genus, F, cfg.fam.at(t))
    except SingularCurve:
        rec.status = "rejected-filter"
        rec.detail = "singular"
        return
    if cfg.odd_only and not two_torsion_filter(C):
        rec.status = "rejected-filter"
        rec.detail = "two-torsion"
        return
    if cfg.genus == 3:
        smith_ok = smith_filter(list(C.f), F)
        rec.security.append({"check": "smith", "ok": smith_ok})
        if cfg.smith and not smith_ok:
            rec.status = "rejected-filter"
            rec.detail = "smith"
            return
    q, g = cfg.q, cfg.genus
    Ct = twist(C)
    GJ = jacobian_group(C)
    GT = jacobian_group(Ct)
    searched, other = (GT, GJ) if cfg.search_twist else (GJ, GT)
    B = cfg.bound
    try:
        N, _ = group_order(searched, B, rng, interval=weil_bounds(q, g), c=cfg.c,
                           plan=plan_for(B), E=full_exponent(B), stats=stats)
    except Reject as exc:
        rec.status = "b-hard"
        rec.detail = str(exc) or None
        return
    rec.lam = stats.get("lambda")
    P_searched = recover_lpoly(N, other, q, g, rng, stats)
    P = twist_lpoly(P_searched) if cfg.search_twist else P_searched
    ok, violations = validate_lpoly(P)
    if not ok:
        raise AssertionError("recovered L-polynomial fails validation: " + "; ".join(violations))
    if P_searched(1) != N:
        raise AssertionError("recovered L-polynomial disagrees with the computed order")
    if not (_self_check(GJ, P(1), rng) and _self_check(GT, P(-1), rng)):
        raise AssertionError("self-check failed: P(1) or P(-1) does not annihilate")
    rec.order = P(1)
    rec.lpoly = P
    rec.derived = derived_orders(P, cfg.targets, cfg.threshold, cfg.effort)
    rec.security.extend(_security(rec.derived))
    rec.status = "success"


def _chunk_worker(args):
    cfg, ts = args
    F = _field(cfg)
    return [process_t(cfg, t, F) for t in ts]


def _ignore_sigint():
    signal.signal(signal.SIGINT, signal.SIG_IGN)


def run_search(cfg, skip=(), stop=None):
    """Records for every t in the configured range, in t order.

    Work goes to `workers` processes in chunks of `batch` values of t; the
    output order and contents do not depend on either setting.  When `stop()`
    turns true no new work starts and the curves already running finish.
    """
    skip = set(skip)
    stop = stop or (lambda: False)
    ts = [t for t in cfg.t_values if t not in skip]
    chunks = [ts[i:i + cfg.batch] for i in range(0, len(ts), cfg.batch)]
    if cfg.workers == 1:
        F = _field(cfg) if chunks else None
        for chunk in chunks:
            for t in chunk:
                if stop():
                    return
                yield process_t(cfg, t, F)
        return
    with ProcessPoolExecutor(cfg.workers, initializer=_ignore_sigint) as pool:
        pending = []
        for chunk in chunks:
            if stop():
                break
            pending.append(pool.submit(_chunk_worker, (cfg, chunk)))
            if len(pending) >= 2 * cfg.workers:
                yield from pending.pop(0).result()
        while pending:
            yield from pending.pop(0).result()


def partition(cfg, shards):
    """Disjoint consecutive t-ranges covering cfg's range.  The seed stays the
    same, since records are seeded per t; shard outputs therefore union to the
    unsharded output."""
    if shards < 1:
        raise ValueError("shards must be at least 1")
    n = max(cfg.t_to - cfg.t_from + 1, 0)
    out = []
    start = cfg.t_from
    for i in range(shards):
        size = n // shards + (1 if i < n % shards else 0)
        out.append(cfg.with_range(start, start + size - 1))
        start += size
    return out


def write_records(cfg, records, fh):
    """Write each record as one line and flush it, so a kill loses at most one."""
    count = 0
    for rec in records:
        fh.write(rec.to_line())
        fh.flush()
        count += 1
    return count


def search_to_file(cfg, path=None, stop=None):
    """Run (or resume) the search, appending records to path; returns the count written."""
    path = path or cfg.out
    skip = ()
    if cfg.resume:
        truncate_torn_tail(path)
        skip = done_t_values(path, cfg.config_hash)
    mode = "a" if cfg.resume else "w"
    with open(path, mode, encoding="utf-8") as fh:
        return write_records(cfg, run_search(cfg, skip, stop), fh)
