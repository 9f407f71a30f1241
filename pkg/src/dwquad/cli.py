"""Command-line interface.

Subcommands: compute (one field), table (the four reference rows with a
golden diff), classgroup and linking (diagnostics), selftest (seeded
randomized identity checks).  Exit codes: 0 ok, 1 invalid input, 2 search
budget exhausted, 3 table/observation mismatch.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from .cache import CacheStore, cache_dir_from_env
from .etale import EtaleContext
from .invariants import PaperObservationViolated, compute_report
from .quadfield import ClassGroup, FieldSpec, parse_primes, two_torsion
from .relquad import SearchExhausted

GOLDEN_TABLE = [
    ((-11, -83, -107, -139, -191), Fraction(8), Fraction(8), False),
    ((29, -31, -43, -47, 101), Fraction(8), Fraction(20), False),
    ((-11, -59, -107), Fraction(1, 2), Fraction(7, 2), False),
    ((5, 193, -439), Fraction(1, 2), Fraction(1, 2), True),
]


def _fmt_value(x: Fraction, style: str = "text") -> str:
    if style == "text":
        if x.denominator == 1:
            return str(x.numerator)
        if x.denominator == 2:
            return f"{x.numerator / 2:.1f}"
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _linking_str(symmetric: bool) -> str:
    return "symmetric" if symmetric else "non-symmetric"


def _make_cache(args, spec: FieldSpec):
    directory = cache_dir_from_env(getattr(args, "cache_dir", None))
    if directory is None:
        return None
    return CacheStore(directory, spec.d, spec.primes)


def _row_worker(payload):
    primes, group, box_cap, cache_dir = payload
    spec = FieldSpec(tuple(primes))
    cache = CacheStore(cache_dir, spec.d, spec.primes) if cache_dir else None
    report = compute_report(spec, group, box_cap=box_cap, cache=cache)
    return report


def cmd_compute(args) -> int:
    try:
        spec = parse_primes(args.primes)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    t0 = time.perf_counter()
    try:
        report = compute_report(
            spec, args.group, box_cap=args.search_bound, cache=_make_cache(args, spec)
        )
    except PaperObservationViolated as exc:
        print(f"paper-observation violated: {exc}", file=sys.stderr)
        return 3
    except SearchExhausted as exc:
        print(f"error: search exhausted ({exc})", file=sys.stderr)
        return 2
    report.timings_ms["total"] = round(1000 * (time.perf_counter() - t0), 3)
    if args.format == "json":
        print(json.dumps(report.to_json_dict(), indent=2))
    elif args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["primes", "z_omega", "z_omega_hat", "linking"])
        writer.writerow(
            [
                " ".join(str(p) for p in spec.primes),
                _fmt_value(report.z_omega, "exact"),
                _fmt_value(report.z_omega_hat, "exact"),
                _linking_str(report.linking_symmetric),
            ]
        )
        sys.stdout.write(buf.getvalue())
    else:
        print(f"field: Q(sqrt({spec.d}))  primes: {', '.join(str(p) for p in spec.primes)}")
        print(f"group preset: {report.group}")
        print(f"Z_omega     = {_fmt_value(report.z_omega)}")
        print(f"Z_omega_hat = {_fmt_value(report.z_omega_hat)}")
        print(f"equal: {report.equal}")
        print(f"linking form: {_linking_str(report.linking_symmetric)}")
        print(f"duality hypotheses hold: {report.hypotheses_hold}")
        print(f"torsor count: {report.torsor_count}")
        if args.verbose:
            print(f"sigma: {report.sigma_vanishing}/{report.sigma_total} vanishing pullbacks")
            print(f"timings (ms): {report.timings_ms}")
    return 0


def cmd_table(args) -> int:
    rows = []
    payloads = [
        (primes, args.group, args.search_bound, cache_dir_from_env(args.cache_dir))
        for (primes, _, _, _) in GOLDEN_TABLE
    ]
    try:
        if args.jobs > 1:
            with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                rows = list(pool.map(_row_worker, payloads))
        else:
            rows = [_row_worker(p) for p in payloads]
    except PaperObservationViolated as exc:
        print(f"paper-observation violated: {exc}", file=sys.stderr)
        return 3
    except SearchExhausted as exc:
        print(f"error: search exhausted ({exc})", file=sys.stderr)
        return 2
    mismatches = []
    if args.group == "q8":
        for report, (primes, ez, ezh, esym) in zip(rows, GOLDEN_TABLE):
            if (report.z_omega, report.z_omega_hat, report.linking_symmetric) != (ez, ezh, esym):
                mismatches.append((primes, report, (ez, ezh, esym)))
    else:
        for report, (primes, _, _, esym) in zip(rows, GOLDEN_TABLE):
            if not report.equal or report.linking_symmetric != esym:
                mismatches.append((primes, report, ("equal", "equal", esym)))
    if args.format == "csv":
        writer = csv.writer(sys.stdout)
        writer.writerow(["primes", "z_omega", "z_omega_hat", "linking"])
        for report in rows:
            writer.writerow(
                [
                    " ".join(str(p) for p in report.spec.primes),
                    _fmt_value(report.z_omega, "exact"),
                    _fmt_value(report.z_omega_hat, "exact"),
                    _linking_str(report.linking_symmetric),
                ]
            )
    elif args.format == "json":
        print(json.dumps([r.to_json_dict() for r in rows], indent=2))
    else:
        header = f"{'Primes':32} {'Z_omega':>8} {'Z_omega_hat':>12} {'Linking form':>15}"
        print(header)
        for report in rows:
            primes = ", ".join(str(p) for p in report.spec.primes)
            print(
                f"{primes:32} {_fmt_value(report.z_omega):>8} "
                f"{_fmt_value(report.z_omega_hat):>12} "
                f"{_linking_str(report.linking_symmetric):>15}"
            )
    if mismatches:
        print("table mismatch against the reference values:", file=sys.stderr)
        for primes, report, expected in mismatches:
            print(
                f"  {primes}: got ({_fmt_value(report.z_omega, 'exact')}, "
                f"{_fmt_value(report.z_omega_hat, 'exact')}, "
                f"{_linking_str(report.linking_symmetric)}), expected {expected}",
                file=sys.stderr,
            )
        return 3
    return 0


def cmd_classgroup(args) -> int:
    try:
        spec = parse_primes(args.primes)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    try:
        data = two_torsion(spec, guard=args.guard)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    cl: ClassGroup = data["class_group"]
    out = {
        "primes": list(spec.primes),
        "d": spec.d,
        "h": cl.h,
        "elementary_divisors": cl.elementary_divisors() if cl.h <= 10**5 else None,
        "two_rank": cl.two_rank,
        "relation": "[p1]" + "".join(f"+[p{i + 1}]" for i in range(1, spec.r)) + "=0",
    }
    if args.format == "json":
        print(json.dumps(out, indent=2))
    else:
        print(f"class number h({spec.d}) = {cl.h}")
        if out["elementary_divisors"] is not None:
            print(f"elementary divisors: {out['elementary_divisors']}")
        print(f"2-rank: {out['two_rank']}")
        print(f"relation: {out['relation']}")
    return 0


def cmd_linking(args) -> int:
    try:
        spec = parse_primes(args.primes)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    ctx = EtaleContext(spec)
    L = ctx.linking_matrix()
    sym = ctx.linking_symmetric()
    if args.format == "json":
        print(json.dumps({"primes": list(spec.primes), "matrix": L, "symmetric": sym}, indent=2))
        return 0
    if spec.r == 1:
        print("symmetric (vacuous, rank 0)")
        return 0
    for row in L:
        print(" ".join(str(x) for x in row))
    print(_linking_str(sym))
    return 0


def cmd_selftest(args) -> int:
    import random

    from .cochains import Cochain
    from .duality import preset
    from .gmodules import GModule, Pairing
    from .groups import FiniteGroup

    rng = random.Random(args.seed)
    failures = 0
    for name in ("q8", "d4"):
        pre = preset(name)
        if not pre.data.omega.is_zero():
            failures += 1
            print(f"FAIL {name}: omega not zero")
    for trial in range(5):
        G = FiniteGroup.cyclic(rng.choice([2, 3, 4]))
        A = GModule.zn(G, rng.choice([2, 3, 4]))
        c = Cochain.random(G, A, rng.choice([1, 2]), rng)
        if not c.differential().differential().is_zero():
            failures += 1
            print(f"FAIL d^2 != 0 on trial {trial}")
        c2 = Cochain.random(G, A, 1, rng)
        mult = Pairing.zn_mult(A, A, A)
        lhs = c.cup(c2, mult).differential()
        sign = -1 if c.degree % 2 else 1
        rhs = c.differential().cup(c2, mult) + c.cup(c2.differential(), mult).smul(sign)
        if lhs != rhs:
            failures += 1
            print(f"FAIL leibniz on trial {trial}")
    if failures:
        print(f"selftest: {failures} failures")
        return 1
    print("selftest: ok")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="dw", description="Arithmetic gauge-theory invariants of imaginary quadratic integer rings")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_group=True):
        if with_group:
            p.add_argument("--primes", required=True, help="comma-separated signed primes, e.g. -11,-59,-107")
            p.add_argument("--group", choices=("q8", "d4"), default="q8")
        p.add_argument("--format", choices=("text", "json", "csv"), default="text")
        p.add_argument("--cache-dir", default=None, help="overrides DW_CACHE_DIR")
        p.add_argument("--search-bound", type=int, default=2**16, help="norm-equation box cap")
        p.add_argument("--jobs", type=int, default=1, help="parallel rows (table only)")
        p.add_argument("-v", "--verbose", action="store_true")

    p_compute = sub.add_parser("compute", help="invariants for one field")
    common(p_compute)
    p_compute.set_defaults(fn=cmd_compute)

    p_table = sub.add_parser("table", help="the four reference rows with a golden diff")
    common(p_table, with_group=False)
    p_table.add_argument("--group", choices=("q8", "d4"), default="q8")
    p_table.set_defaults(fn=cmd_table)

    p_cg = sub.add_parser("classgroup", help="class group structure and genus data")
    p_cg.add_argument("--primes", required=True)
    p_cg.add_argument("--format", choices=("text", "json"), default="text")
    p_cg.add_argument("--guard", type=int, default=10**9, help="|d| bound for form enumeration")
    p_cg.set_defaults(fn=cmd_classgroup)

    p_link = sub.add_parser("linking", help="linking matrix and symmetry verdict")
    p_link.add_argument("--primes", required=True)
    p_link.add_argument("--format", choices=("text", "json"), default="text")
    p_link.set_defaults(fn=cmd_linking)

    p_self = sub.add_parser("selftest", help="seeded randomized identity checks")
    p_self.add_argument("--seed", type=int, default=0)
    p_self.set_defaults(fn=cmd_selftest)

    args = parser.parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
