"""Command-line entry point: ``kummer-sandwich <subcommand> ...``.

Exit status: 0 when every requested check passes, 1 on a check failure, 2 on a
usage error.  Every subcommand prints JSON (default) or RFC 4180 CSV.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from fractions import Fraction
from typing import Sequence

from . import counting, kernels, kodaira, maps, moduli, periods
from .arith import BadReduction, PrimeField, QuadExt, format_rational, is_prime, parse_rational
from .surfaces import CATALOG, K3_FIBRATIONS, catalog, params_for

DEFAULT_RANK18 = ("3/7", "-5/2")
DEFAULT_RANK17 = ("7/3", "-2/5", "11/4")
SAMPLING_PRIME = 2**31 - 1


class UsageError(ValueError):
    pass


# --------------------------------------------------------------------------
# Argument parsing helpers
# --------------------------------------------------------------------------

def parse_primes(text: str) -> list[int]:
    """``3..101`` (all primes in the closed range) or a comma list of primes."""
    text = text.strip()
    if ".." in text:
        lo, _, hi = text.partition("..")
        try:
            lo_i, hi_i = int(lo), int(hi)
        except ValueError:
            raise UsageError(f"bad prime range {text!r}") from None
        return [p for p in range(max(lo_i, 3), hi_i + 1) if is_prime(p)]
    out = []
    for item in text.split(","):
        try:
            p = int(item)
        except ValueError:
            raise UsageError(f"bad prime {item!r}") from None
        if p < 3 or not is_prime(p):
            raise UsageError(f"{p} is not an odd prime")
        out.append(p)
    return out


def parse_rationals(text: str, count: int | None = None) -> list[Fraction]:
    try:
        values = [parse_rational(v) for v in text.split(",")]
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad rational list {text!r}: {exc}") from None
    if count is not None and len(values) != count:
        raise UsageError(f"expected {count} comma-separated rationals, got {len(values)}")
    return values


def _fmt(v):
    if isinstance(v, QuadExt):
        return str(v)
    if isinstance(v, (Fraction, int)):
        return format_rational(v)
    return v


# --------------------------------------------------------------------------
# Output
# --------------------------------------------------------------------------

def _cell(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (dict, list)):
        return json.dumps(v, sort_keys=True)
    return "" if v is None else v


def emit(rows: list[dict], payload: dict, fmt: str, out) -> None:
    """JSON: the payload with its rows.  CSV: only the rows, one per line."""
    if fmt == "csv":
        fields: list[str] = []
        for row in rows:
            fields += [k for k in row if k not in fields]
        writer = csv.DictWriter(out, fieldnames=fields, lineterminator="\r\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: _cell(row.get(k)) for k in fields})
    else:
        json.dump(payload, out, indent=2, sort_keys=True)
        out.write("\n")


# --------------------------------------------------------------------------
# Subcommands: each returns (rows, payload, ok)
# --------------------------------------------------------------------------

def cmd_count(args) -> tuple[list[dict], dict, bool]:
    primes = parse_primes(args.primes)
    fixed = parse_rationals(args.moduli, 3) if args.moduli else None
    if fixed is None and args.seed is None:
        raise UsageError("count needs --seed when --moduli is not given")
    reports, skipped = counting.count_sweep(primes, fixed, args.per_prime, args.seed or 0, args.threads)
    rows = [r.row(args.timing) for r in reports]
    ok = all(r.agree for r in reports)
    return rows, {"backend": kernels.BACKEND, "rows": rows, "skipped_bad_reduction": skipped, "ok": ok}, ok


def _family_params(args, family: str) -> tuple:
    if family == "rank18":
        return tuple(parse_rationals(v, 1)[0] for v in (args.l1, args.l2))
    return tuple(parse_rationals(args.moduli, 3))


def cmd_verify_maps(args) -> tuple[list[dict], dict, bool]:
    if args.seed is None:
        raise UsageError("verify-maps needs --seed")
    ids = args.ids.split(",") if args.ids else list(maps.MAPS) + list(maps.COMPOSITES)
    ctx = PrimeField(args.prime)
    rows = []
    for map_id in ids:
        if map_id not in maps.MAPS and map_id not in maps.COMPOSITES:
            raise UsageError(f"unknown map id {map_id!r}")
        family = "rank18" if map_id.endswith("18") else "rank17"
        rep = maps.verify_map(map_id, _family_params(args, family), ctx, args.trials, args.seed)
        rows.append(rep.to_json() | {"ok": rep.ok})
    if not args.ids:
        for family in ("rank18", "rank17"):
            params = _family_params(args, family)
            for rep in (maps.commutation_check(family, params, ctx, args.trials, args.seed),
                        maps.isogeny_doubling_check(family, params, ctx, args.trials, args.seed)):
                rows.append(rep.to_json() | {"ok": rep.ok})
    findings = []
    for src, tgt in maps.QUOTIENT_PAIRS:
        family = "rank18" if tgt.endswith("18") else "rank17"
        findings.append(maps.quotient_identity(src, tgt, _family_params(args, family)).to_json())
    zfib = maps.zfib_reading_finding(*_family_params(args, "rank18"))
    ok = all(r["ok"] for r in rows) and all(f["matches"] for f in findings)
    payload = {"p": ctx.p, "rows": rows, "quotient_identities": findings, "zfib_reading": zfib, "ok": ok}
    return rows, payload, ok


def _catalog_args(args, catalog_id: str) -> tuple:
    names = params_for(catalog_id)
    if names == ("l1", "l2"):
        return _family_params(args, "rank18")
    if names == ("L1", "L2", "L3"):
        return _family_params(args, "rank17")
    if names == ("lam",):
        return (parse_rationals(args.lam, 1)[0],)
    raise UsageError(f"{catalog_id} is not a Weierstrass fibration")


def cmd_fibers(args) -> tuple[list[dict], dict, bool]:
    if args.id not in K3_FIBRATIONS:
        raise UsageError(f"--id must be one of {', '.join(K3_FIBRATIONS)}")
    surface = catalog(args.id, *_catalog_args(args, args.id))
    records = kodaira.singular_fiber_summary(surface)
    rows = [r.to_json() for r in records]
    found = kodaira.census(records)
    expected = kodaira.census_for(args.id)
    diff = kodaira.census_diff(found, expected[1]) if expected else {}
    euler = kodaira.euler_sum(records)
    ok = not diff and euler == 24
    payload = {
        "catalog_id": args.id,
        "lemma": expected[0] if expected else None,
        "fibers": rows,
        "census": dict(sorted(found.items())),
        "expected": expected[1] if expected else None,
        "diff": {k: list(v) for k, v in diff.items()},
        "euler_sum": euler,
        "ok": ok,
    }
    return rows, payload, ok


def cmd_isogeny(args) -> tuple[list[dict], dict, bool]:
    lams = parse_rationals(args.rosenhain, 3)
    params = moduli.kummer_quartic_params(lams)
    lam = moduli.level_two_from_rosenhain(lams, args.sign)
    lam_p = moduli.richelot_transform(lam)
    back = moduli.richelot_transform(lam_p)
    nu, nu_p = counting.twist_factor(lam), counting.twist_factor(lam_p)
    reciprocity = nu.nu * nu_p.nu
    d_identity = params.identity_residual() == 0
    involution = back.as_tuple() == lam.as_tuple()
    ok = d_identity and involution and reciprocity == 1
    row = {
        "A": _fmt(params.A), "B": _fmt(params.B), "C": _fmt(params.C), "D": _fmt(params.D),
        "D_squared": _fmt(params.D * params.D),
        "D_identity": d_identity,
        "Lambda": [_fmt(v) for v in lam],
        "Lambda_prime": [_fmt(v) for v in lam_p],
        "richelot_involution": involution,
        "nu": _fmt(nu.nu),
        "nu_prime": _fmt(nu_p.nu),
        "nu_reciprocity": _fmt(reciprocity),
    }
    return [row], row | {"ok": ok}, ok


def cmd_relations(args) -> tuple[list[dict], dict, bool]:
    lams = parse_rationals(args.rosenhain, 3)
    reports = [counting.count_relation_check(lams, PrimeField(p)) for p in parse_primes(args.primes)]
    rows = [r.to_json() for r in reports]
    summary = counting.relation_summary(reports)
    ok = summary["relation1_holds"] and summary["relation2_holds"]
    return rows, {"rows": rows, "summary": summary, "ok": ok}, ok


def cmd_jacobian(args) -> tuple[list[dict], dict, bool]:
    import random

    reports = []
    if args.coeffs:
        if len(args.primes_list) != 1:
            raise UsageError("--coeffs needs exactly one prime")
        coeffs = [int(c) for c in args.coeffs.split(",")]
        try:
            reports.append(counting.jacobian_order(coeffs, PrimeField(args.primes_list[0])))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    else:
        if args.seed is None:
            raise UsageError("jacobian needs --seed for random curves")
        rng = random.Random(args.seed)
        for _ in range(args.random):
            ctx = PrimeField(rng.choice(args.primes_list))
            reports.append(counting.jacobian_order(counting.random_genus_two(ctx, rng), ctx))
    rows = [r.to_json() | {"in_weil_interval": r.in_weil_interval} for r in reports]
    ok = all(r.in_weil_interval for r in reports)
    return rows, {"rows": rows, "ok": ok}, ok


def cmd_periods(args) -> tuple[list[dict], dict, bool]:
    reports = []
    for lam in args.lam.split(","):
        reports.append(periods.holomorphic_period_check(lam, args.tol))
        for p, q in (("1/8", "3/8"), ("1/4", "3/4")):
            reports.append(periods.quadratic_transformation_check(p, q, lam, args.tol))
    rows = [r.to_json() for r in reports]
    ok = all(r.ok for r in reports)
    return rows, {"rows": rows, "ok": ok}, ok


def cmd_bench(args) -> tuple[list[dict], dict, bool]:
    from . import _kernels_py
    from .arith import binomials_mod_p

    rows = []
    for p in parse_primes(args.primes):
        ctx = PrimeField(p)
        binom = binomials_mod_p(ctx.half, ctx)
        matrix = [[ctx.reduce(c) for c in r] for r in counting.main2_cover(2, 3, 5).f.coefficient_matrix()]
        for name, impl in kernels.backends().items():
            for kernel, call in (
                ("naive", lambda: impl.closed_form_naive(2, 3, 5, p, binom)),
                ("convolution", lambda: impl.closed_form_conv(2, 3, 5, p, binom)),
                ("character_sum", lambda: impl.charsum_matrix(matrix, p, ctx.residue_table, args.threads or 1)),
            ):
                best = None
                for _ in range(args.repeat):
                    t0 = time.perf_counter_ns()
                    value = call()
                    dt = time.perf_counter_ns() - t0
                    best = dt if best is None else min(best, dt)
                rows.append({"p": p, "backend": name, "kernel": kernel, "value": value, "best_ns": best})
    values = {}
    for r in rows:
        values.setdefault(r["p"], set()).add(r["value"])
    ok = all(len(v) == 1 for v in values.values())
    return rows, {"rows": rows, "ok": ok}, ok


COMMANDS = {
    "count": cmd_count,
    "verify-maps": cmd_verify_maps,
    "fibers": cmd_fibers,
    "isogeny": cmd_isogeny,
    "relations": cmd_relations,
    "jacobian": cmd_jacobian,
    "periods": cmd_periods,
    "bench": cmd_bench,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kummer-sandwich", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--output", help="write here instead of stdout")
    common.add_argument("--threads", type=int, default=None, help="threads for the character-sum kernel")
    sub = parser.add_subparsers(dest="command", required=True)

    def moduli_flags(p):
        p.add_argument("--l1", default=DEFAULT_RANK18[0])
        p.add_argument("--l2", default=DEFAULT_RANK18[1])
        p.add_argument("--moduli", default=",".join(DEFAULT_RANK17), help="L1,L2,L3")
        p.add_argument("--lam", default="5/3")

    p = sub.add_parser("count", parents=[common], help="closed form against character sums")
    p.add_argument("--primes", default="3..101")
    p.add_argument("--moduli", help="fixed a,b,c; otherwise seeded random triples")
    p.add_argument("--per-prime", type=int, default=20)
    p.add_argument("--seed", type=int)
    p.add_argument("--timing", action="store_true", help="add t_naive_ns and t_conv_ns columns")

    p = sub.add_parser("verify-maps", parents=[common], help="sample the map catalog over F_p")
    moduli_flags(p)
    p.add_argument("--ids", help="comma list of map or composite ids (default: all)")
    p.add_argument("--prime", type=int, default=SAMPLING_PRIME)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int)

    p = sub.add_parser("fibers", parents=[common], help="singular fibers against the recorded census")
    moduli_flags(p)
    p.add_argument("--id", required=True)

    p = sub.add_parser("isogeny", parents=[common], help="Richelot moduli, Kummer parameters and nu")
    p.add_argument("--rosenhain", required=True, help="l1,l2,l3")
    p.add_argument("--sign", type=int, choices=(1, -1), default=1, help="branch of sqrt(l1 l2 l3)")

    p = sub.add_parser("relations", parents=[common], help="counting relations between the two sandwiches")
    p.add_argument("--rosenhain", default="2,3,6")
    p.add_argument("--primes", default="3..50")

    p = sub.add_parser("jacobian", parents=[common], help="genus-two Jacobian orders")
    p.add_argument("--primes", default="5,7,11,13")
    p.add_argument("--coeffs", help="c0,...,c5 or c0,...,c6 ascending")
    p.add_argument("--random", type=int, default=50)
    p.add_argument("--seed", type=int)

    p = sub.add_parser("periods", parents=[common], help="hypergeometric period identities")
    p.add_argument("--lam", default="2,5/2,3,10")
    p.add_argument("--tol", type=float, default=1e-10)

    p = sub.add_parser("bench", parents=[common], help="kernel timings for every backend")
    p.add_argument("--primes", default="31,61,101")
    p.add_argument("--repeat", type=int, default=3)
    return parser


def run(argv: Sequence[str] | None = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    if args.command == "jacobian":
        try:
            args.primes_list = parse_primes(args.primes)
        except UsageError as exc:
            print(json.dumps({"error": str(exc)}), file=sys.stderr)
            return 2
    try:
        rows, payload, ok = COMMANDS[args.command](args)
    except (UsageError, moduli.DegenerateModuli, BadReduction, KeyError, TypeError) as exc:
        print(json.dumps({"error": str(exc), "kind": type(exc).__name__}), file=sys.stderr)
        return 2
    buf = io.StringIO(newline="")
    emit(rows, payload, args.format, buf)
    if args.output:
        with open(args.output, "w", newline="") as fh:
            fh.write(buf.getvalue())
    else:
        stdout.write(buf.getvalue())
    return 0 if ok else 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
