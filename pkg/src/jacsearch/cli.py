"""Command-line front end: tune, search, verify, zeta, experiment.

Exit codes: 0 success, 1 usage error, 2 internal error, 3 a verify check failed.
"""

import argparse
import json
import random
import signal
import sys

from .curve import curve_new, jacobian_group, twist
from .errors import JacsearchError
from .ff import field_new
from .search.experiment import distribution_experiment
from .search.family import parse_family
from .search.pipeline import partition, run_search, search_to_file
from .search.records import (LABELS, SearchRecord, coerce, load_config, read_records)
from .search.tuning import N_MAX, N_MIN, choose_params
from .zeta.lpoly import LPolynomial, twist_lpoly, validate_lpoly
from .zeta.recover import recover_lpoly
from .zeta.security import derived_orders

EXIT_OK, EXIT_USAGE, EXIT_INTERNAL, EXIT_CHECK = 0, 1, 2, 3
ORACLE_LIMIT = 1 << 40


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def _emit(obj, fh=None):
    fh = fh or sys.stdout
    fh.write(json.dumps(obj, separators=(",", ":")) + "\n")
    fh.flush()


def _print_config(d):
    # resolved settings go to stderr so stdout stays pure JSONL
    print("# config " + json.dumps(d, sort_keys=True, default=str), file=sys.stderr, flush=True)


# tune -------------------------------------------------------------------------

def cmd_tune(args):
    if not N_MIN <= args.bits <= N_MAX:
        raise UsageError(f"--bits must lie in [{N_MIN}, {N_MAX}] (the calibrated range)")
    w_cands = [int(x) for x in args.w.split(",")] if args.w else None
    _print_config({"bits": args.bits, "w": w_cands})
    ch = choose_params(args.bits, w_cands)
    out = {"row": ch.row.to_json(), "space_saver": ch.space_saver.to_json(),
           "space_cost_ratio": ch.space_cost_ratio, "space_saver_within_5pct": ch.space_saver_ok,
           "recommended": {"u": ch.u, "B": ch.B, "w": ch.w, "m": ch.m}}
    if args.json:
        _emit(out)
    else:
        r = ch.row
        print(f"n={r.n} w={r.w} u={r.u:.2f} 1/sigma={r.inv_sigma:.0f} B={r.B} "
              f"E={r.E / 1e6:.3g}M S={r.S / 1e6:.3g}M (E+S)/sigma={r.cost:.3g} "
              f"16S={r.memory / 1e6:.3g}MB")
        s = ch.space_saver
        print(f"space saver: u={s.u:.2f} B={s.B} 16S={s.memory / 1e6:.3g}MB "
              f"cost x{ch.space_cost_ratio:.3f}")
        print(f"recommended: u = {ch.u:.2f}   # B = {ch.B}, w = {ch.w}, m = {ch.m}")
    return EXIT_OK


# search -----------------------------------------------------------------------

_SEARCH_KEYS = ("genus", "p", "k", "family", "t_from", "t_to", "u", "B", "targets", "out",
                "seed", "workers", "batch", "threshold", "effort", "c")


def _search_config(args):
    over = {}
    for key in _SEARCH_KEYS:
        v = getattr(args, key, None)
        if v is not None:
            over[key] = coerce(key, v)
    for key in ("odd_only", "resume", "smith"):
        v = getattr(args, key, None)
        if v is not None:
            over[key] = v
    try:
        cfg = load_config(args.config, over)
    except (ValueError, JacsearchError) as exc:
        raise UsageError(str(exc)) from exc
    if args.shards is not None:
        if not 0 <= args.shard_index < args.shards:
            raise UsageError("--shard-index must lie in [0, shards)")
        cfg = partition(cfg, args.shards)[args.shard_index]
    return cfg


def cmd_search(args):
    cfg = _search_config(args)
    _print_config(cfg.resolved())
    stopping = []

    def on_sigint(signum, frame):
        if stopping:
            raise KeyboardInterrupt
        stopping.append(True)
        print("# interrupted: finishing curves in flight", file=sys.stderr, flush=True)

    old = signal.signal(signal.SIGINT, on_sigint)
    try:
        stop = lambda: bool(stopping)  # noqa: E731
        if cfg.out:
            n = search_to_file(cfg, stop=stop)
        else:
            n = 0
            for rec in run_search(cfg, stop=stop):
                sys.stdout.write(rec.to_line())
                sys.stdout.flush()
                n += 1
    finally:
        signal.signal(signal.SIGINT, old)
    print(f"# {n} records", file=sys.stderr)
    return 130 if stopping else EXIT_OK


# verify -----------------------------------------------------------------------

def _curve_from_args(args):
    if args.p is None:
        raise UsageError("give --p")
    p = coerce("p", args.p)
    F = field_new(p, args.k)
    if args.f:
        f = [coerce("p", c) for c in args.f.split(",")]
    elif args.family:
        if args.t is None:
            raise UsageError("--family needs --t")
        f = parse_family(args.family).at(args.t)
    else:
        raise UsageError("give --f or --family with --t")
    g = (len(f) - 2) // 2
    return curve_new(g, F, f)


def _report(name, ok, detail=""):
    line = f"{'PASS' if ok else 'FAIL'} {name}" + (f": {detail}" if detail else "")
    print(line, flush=True)
    return ok


def verify_one(C, P, rng, claims=(), oracle=True, samples=20):
    """Run every check on curve C against P; returns True iff all pass."""
    ok = True
    valid, why = validate_lpoly(P)
    ok &= _report("validate_lpoly", valid, "; ".join(why))
    GJ = jacobian_group(C)
    GT = jacobian_group(twist(C))
    N, Nt = P(1), P(-1)
    ann = all(GJ.is_identity(GJ.exp(GJ.random(rng), N)) for _ in range(samples))
    ok &= _report(f"P(1) annihilates {samples} elements of J(C)", ann)
    ann = all(GT.is_identity(GT.exp(GT.random(rng), Nt)) for _ in range(samples))
    ok &= _report(f"P(-1) annihilates {samples} elements of J(C~)", ann)
    for claim in claims:
        label = claim["label"]
        d = derived_orders(P, (label,))[0]
        if str(d.order) != claim["order"]:
            ok &= _report(f"{label} order", False, "recorded order differs")
            continue
        again = d.to_json()
        same = again["near_prime"] == claim["near_prime"]
        if again["cofactor_prime"] and claim.get("cofactor_prime"):
            same &= again["largest_prime_bits"] == claim["largest_prime_bits"]
        ok &= _report(f"{label} near-prime claim", same,
                      f"largest prime {again['largest_prime_bits']} bits")
    q, g = C.field.q, C.g
    if oracle and C.field.k == 1 and q ** g <= ORACLE_LIMIT:
        from .oracle import naive_jacobian_order
        M = naive_jacobian_order(C, rng)
        ok &= _report("oracle #J(C)", M == N, f"oracle {M}")
    return ok


def cmd_verify(args):
    rng = random.Random(args.seed)
    all_ok = True
    if args.records:
        recs = [SearchRecord.from_json(r) for r in read_records(args.records)]
        _print_config({"records": args.records, "count": len(recs), "seed": args.seed})
        for rec in recs:
            if rec.status != "success":
                continue
            print(f"# t={rec.t}", flush=True)
            F = field_new(rec.p, rec.k)
            C = curve_new(rec.genus, F, rec.f)
            ok = verify_one(C, rec.lpoly, rng, rec.derived, not args.no_oracle)
            if rec.order is not None:
                ok &= _report("recorded order equals P(1)", rec.order == rec.lpoly(1))
            all_ok &= ok
    else:
        C = _curve_from_args(args)
        if not args.lpoly:
            raise UsageError("give --lpoly a1,a2[,a3] or --records FILE")
        half = [coerce("p", a) for a in args.lpoly.split(",")]
        if len(half) != C.g:
            raise UsageError(f"--lpoly needs {C.g} coefficients")
        P = LPolynomial.from_half(C.field.q, C.g, half)
        _print_config({"curve": C.poly_str(), "q": C.field.q, "lpoly": half, "seed": args.seed})
        all_ok = verify_one(C, P, rng, (), not args.no_oracle)
        for d in derived_orders(P, LABELS if C.g == 2 else ("J", "J_twist")):
            bits = d.largest_prime.bit_length() if d.largest_prime else None
            print(f"INFO {d.label}: {d.bits} bits, near_prime={d.near_prime}, "
                  f"largest prime {bits} bits, cofactor {d.cofactor}")
    print("verify: " + ("all checks passed" if all_ok else "some checks FAILED"))
    return EXIT_OK if all_ok else EXIT_CHECK


# zeta -------------------------------------------------------------------------

def cmd_zeta(args):
    C = _curve_from_args(args)
    N = coerce("p", args.order)
    _print_config({"curve": C.poly_str(), "q": C.field.q, "order": str(N),
                   "order_of": "twist" if args.twist_order else "curve", "seed": args.seed})
    rng = random.Random(args.seed)
    stats = {}
    q, g = C.field.q, C.g
    if args.twist_order:
        # N = #J(C~): recover P~ using J(C), then P(z) = P~(-z)
        P = twist_lpoly(recover_lpoly(N, jacobian_group(C), q, g, rng, stats))
    else:
        P = recover_lpoly(N, jacobian_group(twist(C)), q, g, rng, stats)
    _emit({"lpoly": P.to_json(), "a": [str(a) for a in P.half], "order": str(P(1)),
           "twist_order": str(P(-1)), "recovery_ops": stats.get("recovery", 0)})
    return EXIT_OK


# experiment -------------------------------------------------------------------

def cmd_experiment(args):
    us = tuple(float(x) for x in args.u.split(","))
    p = coerce("p", args.p) if args.p else None
    _print_config({"samples": args.samples, "u": us, "n": args.n, "p": p, "seed": args.seed,
                   "odd_only": args.odd_only})

    def progress(i, total):
        if args.progress and (i % 500 == 0 or i == total):
            print(f"# {i}/{total}", file=sys.stderr, flush=True)

    res = distribution_experiment(args.samples, us, args.n, p, args.seed, args.odd_only,
                                  progress=progress)
    if args.json:
        _emit(res.to_json())
    else:
        print(f"p = {res.p}, {args.samples} curves" + (", odd order only" if args.odd_only else ""))
        print(res.table())
    return EXIT_OK


# parser -----------------------------------------------------------------------

def _curve_flags(sp):
    sp.add_argument("--p", help="field characteristic, e.g. 2^61-1")
    sp.add_argument("--k", type=int, default=1, help="extension degree")
    sp.add_argument("--f", help="coefficients of f, low degree first, comma separated")
    sp.add_argument("--family", help='family string such as "x^5+x+t"')
    sp.add_argument("--t", type=int, help="family parameter")
    sp.add_argument("--seed", type=int, default=0)


def build_parser():
    ap = _Parser(prog="jacsearch", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    sp = sub.add_parser("tune", help="choose u, B and w for n-bit Jacobians")
    sp.add_argument("--bits", type=int, required=True)
    sp.add_argument("--w", help="allowed primorial indices, comma separated")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_tune)

    sp = sub.add_parser("search", help="search a curve family, one JSONL record per t")
    sp.add_argument("--config", help="key = value file; flags override it")
    sp.add_argument("--genus", type=int)
    sp.add_argument("--p")
    sp.add_argument("--k")
    sp.add_argument("--family")
    sp.add_argument("--t-from", dest="t_from")
    sp.add_argument("--t-to", dest="t_to", help="last t (inclusive)")
    grp = sp.add_mutually_exclusive_group()
    grp.add_argument("--u")
    grp.add_argument("--B")
    sp.add_argument("--odd-only", dest="odd_only", action="store_true", default=None)
    sp.add_argument("--smith", dest="smith", action="store_true", default=None)
    sp.add_argument("--no-smith", dest="smith", action="store_false")
    sp.add_argument("--targets", help=f"comma separated subset of {','.join(LABELS)}")
    sp.add_argument("--threshold")
    sp.add_argument("--effort")
    sp.add_argument("--c")
    sp.add_argument("--shards", type=int)
    sp.add_argument("--shard-index", dest="shard_index", type=int, default=0)
    sp.add_argument("--out")
    sp.add_argument("--resume", action="store_true", default=None)
    sp.add_argument("--seed")
    sp.add_argument("--workers")
    sp.add_argument("--batch")
    sp.set_defaults(func=cmd_search)

    sp = sub.add_parser("verify", help="re-check records or an inline curve and L-polynomial")
    sp.add_argument("--records", help="JSONL file written by search")
    _curve_flags(sp)
    sp.add_argument("--lpoly", help="a_1,...,a_g (write --lpoly=-5,7 when a_1 is negative)")
    sp.add_argument("--no-oracle", action="store_true")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("zeta", help="recover P(z) from #J(C) (or #J(C~))")
    _curve_flags(sp)
    sp.add_argument("--order", required=True)
    sp.add_argument("--twist-order", action="store_true",
                    help="the order given is #J(C~) rather than #J(C)")
    sp.set_defaults(func=cmd_zeta)

    sp = sub.add_parser("experiment", help="order distribution statistics for random curves")
    sp.add_argument("--samples", type=int, default=10_000)
    sp.add_argument("--u", default="2,3,4", help="comma separated u values")
    sp.add_argument("--n", type=int, default=48)
    sp.add_argument("--p", help="fixed prime (default: random near 2^(n/2))")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--odd-only", action="store_true")
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--progress", action="store_true")
    sp.set_defaults(func=cmd_experiment)
    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"jacsearch {args.cmd}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except JacsearchError as exc:
        print(f"jacsearch {args.cmd}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except Exception as exc:  # noqa: BLE001 - last-resort report for the exit code
        print(f"jacsearch {args.cmd}: internal error: {type(exc).__name__}: {exc}",
              file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
