"""Command-line entry point.

Exit codes: 0 success or all match, 1 verified mismatch, 2 usage error,
3 computational failure.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import cache
from .arith.numbers import is_prime, primes_up_to
from .arith.polynomial import IntPolynomial
from .counting import (
    SurfaceParams,
    count_table,
    default_rmax,
    ec_ap,
    frobenius_fit,
    load_curves,
    twisted_count,
)
from .counting.curves import BadPrime as CurveBadPrime
from .counting.fit import VerifyFailed
from .counting.surface import DEFAULT_BUDGET, BadPrime as SurfaceBadPrime, WorkBudgetExceeded
from .fixtures import FixtureChecksumError, FixtureError, load_fixtures, shipped_curves_path, shipped_fixtures
from .hecke import ConventionError, charpoly, eigenvalue_check, spectrum_fields
from .homology import VARIANTS, dimension
from .lfactors import compare_report, eisenstein_lift

OK, MISMATCH, USAGE, FAILURE = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _emit(args, payload: dict, text: str):
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def _fixtures(args):
    if args.fixtures:
        return load_fixtures(args.fixtures)
    if args.level is None:
        raise UsageError("--level or --fixtures is required")
    return shipped_fixtures(args.level)


def _map(fn, items, threads: int):
    """Ordered map; results do not depend on the worker count."""
    if threads <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


# -- subcommands --


def cmd_dim(args) -> int:
    d = dimension(args.level, args.variant)
    _emit(args, {"level": args.level, "variant": args.variant, "dim": d}, str(d))
    return OK


def _need(args, *names):
    for n in names:
        if getattr(args, n) is None:
            raise UsageError(f"--{n} is required")


def cmd_hecke(args) -> int:
    _need(args, "level", "prime")
    H, hit = cache.cached_or_build(args.cache, args.level, args.prime, args.op, args.convention)
    cp = charpoly(H)
    payload = {"level": H.level, "p": H.p, "kind": H.kind, "convention": H.convention,
               "dim": H.dim, "denominator": H.denominator, "cached": hit,
               "charpoly": list(cp.coeffs)}
    _emit(args, payload, f"{H.kind}_{H.p} on level {H.level}: dim {H.dim}, "
                         f"{'cache hit' if hit else 'computed'}\ncharpoly {cp}")
    return OK


def cmd_spectrum(args) -> int:
    _need(args, "level", "prime")
    H, _ = cache.cached_or_build(args.cache, args.level, args.prime, args.op, args.convention)
    sp = spectrum_fields(H, max_degree=args.deg or 4)
    factors = [{"factor": list(f.coeffs), "degree": f.degree, "multiplicity": e} for f, e in sp.factors]
    lines = [f"{args.op}_{args.prime} on level {args.level}, dim {H.dim}"]
    for f, e in sp.factors:
        tag = "unresolved block" if f.degree > sp.max_degree else f"degree {f.degree}"
        lines.append(f"  ({f})^{e}   [{tag}]")
    lines.append(f"rational eigenvalues with multiplicity: {sp.rational_count()}")
    _emit(args, {"level": args.level, "p": args.prime, "kind": args.op, "factors": factors,
                 "rational_count": sp.rational_count()}, "\n".join(lines))
    return OK


def _verify_one(job):
    a, p, value, rmax = job
    try:
        res = frobenius_fit(SurfaceParams(a), p, "verify", value, rmax=rmax)
    except VerifyFailed:
        return p, "mismatch", []
    return p, "match", sorted({d["direction"] for d in res.diagnostics[value]})


def cmd_check_table(args) -> int:
    _need(args, "a")
    table = _fixtures(args)
    pmax = args.pmax or 13
    jobs, skipped = [], []
    for p in table.primes():
        if p > pmax:
            continue
        value = table.value(p)
        if value is None or p == 2 or SurfaceParams(args.a).a.denominator % p == 0 \
                or (SurfaceParams(args.a).a_mod(p) ** 2 + 4) % p == 0:
            skipped.append(p)
            continue
        jobs.append((args.a, p, value, args.deg or default_rmax(p)))
    results = _map(_verify_one, jobs, args.threads)
    verdicts = {p: "skipped" for p in skipped}
    dirs = {}
    for p, v, d in results:
        verdicts[p] = v
        dirs[p] = d
    lines = [f"level {table.level} against a = {args.a}"]
    for p in sorted(verdicts):
        val = table.value(p)
        shown = "**" if val is None else f"{val[0]}{val[1]:+d}i"
        lines.append(f"{p:5d}  {shown:<12} {verdicts[p]}")
    n_mis = sum(v == "mismatch" for v in verdicts.values())
    lines.append(f"match {sum(v == 'match' for v in verdicts.values())}  mismatch {n_mis}  "
                 f"skipped {len(skipped)}")
    _emit(args, {"level": table.level, "a": str(args.a),
                 "verdicts": {str(p): v for p, v in sorted(verdicts.items())},
                 "directions": {str(p): d for p, d in sorted(dirs.items())}}, "\n".join(lines))
    return MISMATCH if n_mis else OK


def cmd_count(args) -> int:
    _need(args, "a", "prime")
    s = SurfaceParams(args.a)
    rs = [args.deg] if args.deg else [1]
    ks = [args.twist] if args.twist is not None else [0, 1, 2, 3]
    recs = [twisted_count(s, args.prime, r, k, budget=args.budget) for r in rs for k in ks]
    _emit(args, {"records": [{"a": str(c.a), "p": c.p, "r": c.r, "k": c.k, "count": c.count} for c in recs]},
          "\n".join(f"a={c.a} p={c.p} r={c.r} k={c.k} count={c.count}" for c in recs))
    return OK


def cmd_fit(args) -> int:
    _need(args, "a", "prime")
    s = SurfaceParams(args.a)
    rmax = args.deg or default_rmax(args.prime)
    counts = count_table(s, args.prime, rmax, args.budget)
    hypothesis = None
    if args.level is not None or args.fixtures:
        hypothesis = _fixtures(args).value(args.prime)
    if hypothesis is not None:
        try:
            res = frobenius_fit(s, args.prime, "verify", hypothesis, counts=counts)
        except VerifyFailed as exc:
            _emit(args, {"p": args.prime, "verdict": "mismatch"}, str(exc))
            return MISMATCH
    else:
        res = frobenius_fit(s, args.prime, "extract", counts=counts)
    payload = {"p": args.prime, "mode": "verify" if hypothesis else "extract",
               "candidates": [list(c) for c in res.candidates], "unique": res.unique,
               "fits": {f"{c[0]},{c[1]}": [{"unit": list(d["unit"]), "direction": d["direction"]}
                                           for d in res.diagnostics[c]] for c in res.candidates}}
    lines = [f"p={args.prime} r<={rmax}: {len(res.candidates)} candidate(s), "
             f"unique up to conjugation: {res.unique}"]
    for c in res.candidates:
        fits = ", ".join(f"unit {d['unit']} direction {d['direction']:+d}" for d in res.diagnostics[c])
        lines.append(f"  {c[0]}{c[1]:+d}i   {fits}")
    _emit(args, payload, "\n".join(lines))
    return OK


def cmd_lift(args) -> int:
    curves = load_curves(args.curves or shipped_curves_path())
    primes = [args.prime] if args.prime else primes_up_to(args.pmax or 13)
    rows, status = [], OK
    for c in curves:
        level = args.level
        for p in primes:
            try:
                ap = ec_ap(c, p)
            except CurveBadPrime:
                rows.append({"curve": c.label, "p": p, "skipped": True})
                continue
            row = {"curve": c.label, "p": p, "a_p": ap, "type1": eisenstein_lift(ap, p, 1),
                   "type2": eisenstein_lift(ap, p, 2)}
            if level is not None and level % p and level % c.conductor == 0:
                H, _ = cache.cached_or_build(args.cache, level, p, "E", args.convention)
                cp = charpoly(H)
                row["type1_mult"] = eigenvalue_check(cp, IntPolynomial([-row["type1"], 1]))
                row["type2_mult"] = eigenvalue_check(cp, IntPolynomial([-row["type2"], 1]))
                if row["type1_mult"] == 0 or row["type2_mult"] == 0:
                    status = MISMATCH
            rows.append(row)
    lines = []
    for r in rows:
        if r.get("skipped"):
            lines.append(f"{r['curve']:>5} p={r['p']:<3} skipped (bad prime)")
            continue
        s = f"{r['curve']:>5} p={r['p']:<3} a_p={r['a_p']:<4} pa+1={r['type1']:<6} a+p^2={r['type2']:<6}"
        if "type1_mult" in r:
            s += f" mult at level {args.level}: {r['type1_mult']}, {r['type2_mult']}"
        lines.append(s)
    _emit(args, {"rows": rows}, "\n".join(lines))
    return status


def cmd_hodge_check(args) -> int:
    from . import hodge

    rng = random.Random(args.seed)
    bad = 0
    for _ in range(args.samples):
        A, B = hodge.random_matrix(rng), hodge.random_matrix(rng)
        c = hodge.griffiths_commute(A, B)
        if not (c == hodge.tAB_symmetric(A, B) == (hodge.symplectic_E(A, B) == 0)):
            bad += 1
        if not hodge.polarization_preserved(hodge.make_N(A)):
            bad += 1
    planes = 0
    for _ in range(max(1, args.samples // 20)):
        A, B = hodge.random_isotropic_pair(rng)
        planes += hodge.is_maximal_isotropic([A, B]) and hodge.griffiths_commute(A, B)
    total = max(1, args.samples // 20)
    _emit(args, {"samples": args.samples, "failures": bad, "maximal_planes": planes, "planes": total},
          f"{args.samples} random pairs: {bad} failures; {planes}/{total} isotropic planes maximal")
    return OK if bad == 0 and planes == total else MISMATCH


def _extract_one(job):
    a, p, rmax = job
    return frobenius_fit(SurfaceParams(a), p, "extract", rmax=rmax)


def cmd_compare(args) -> int:
    _need(args, "a")
    table = _fixtures(args)
    pmax = args.pmax or 13
    s = SurfaceParams(args.a)
    modular, jobs = [], []
    for p in table.primes():
        if p > pmax:
            continue
        modular.append((p, table.value(p)))
        if table.value(p) is None or p == 2 or s.a.denominator % p == 0 or (s.a_mod(p) ** 2 + 4) % p == 0:
            continue
        jobs.append((args.a, p, args.deg or default_rmax(p)))
    rep = compare_report([(p, None if v is None else complex(*v)) for p, v in modular],
                         _map(_extract_one, jobs, args.threads))
    if args.json:
        print(rep.to_json())
    else:
        print(rep.table())
    return rep.exit_code


COMMANDS = {
    "dim": cmd_dim,
    "hecke": cmd_hecke,
    "spectrum": cmd_spectrum,
    "check-table": cmd_check_table,
    "count": cmd_count,
    "fit": cmd_fit,
    "lift": cmd_lift,
    "hodge-check": cmd_hodge_check,
    "compare": cmd_compare,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--level", type=int)
    common.add_argument("--prime", type=int)
    common.add_argument("--op", choices=("E", "D"), default="E")
    common.add_argument("--a", type=_rational)
    common.add_argument("--pmax", type=int)
    common.add_argument("--deg", type=int, help="extension degree r (count, fit) or max factor degree (spectrum)")
    common.add_argument("--twist", type=int, choices=(0, 1, 2, 3))
    common.add_argument("--fixtures")
    common.add_argument("--curves")
    common.add_argument("--cache", default=cache.default_dir())
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--json", action="store_true")
    common.add_argument("--variant", choices=VARIANTS, default="z")
    common.add_argument("--convention", default="cofactor")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    common.add_argument("--samples", type=int, default=1000)
    common.add_argument("--seed", type=int, default=0)

    parser = argparse.ArgumentParser(prog="gl3atlas", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    if args.prime is not None and not is_prime(args.prime):
        print(f"error: {args.prime} is not prime", file=sys.stderr)
        return USAGE
    try:
        return COMMANDS[args.command](args)
    except (UsageError, FixtureError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except (SurfaceBadPrime, CurveBadPrime) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except (FixtureChecksumError, ConventionError, ArithmeticError, WorkBudgetExceeded,
            cache.CacheCorrupt, OSError) as exc:
        print(f"failure: {exc}", file=sys.stderr)
        return FAILURE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


def main():
    sys.exit(run())
