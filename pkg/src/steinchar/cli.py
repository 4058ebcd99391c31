"""Command-line front end: bound tables, Monte-Carlo verification runs,
decomposition dumps, oracle suites, and reproducible sampling.

Configuration precedence: command-line flags beat STEINCHAR_* environment
variables, which beat the built-in defaults.  All floating-point output is
printed in exact round-trip form so golden files compare byte-for-byte.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys

import numpy as np

from . import oracle as oracle_mod
from . import sampling
from . import stats
from . import stein
from .characters import FAMILIES

_ENV_PREFIX = "STEINCHAR_"


def _env(name: str, default, cast):
    raw = os.environ.get(_ENV_PREFIX + name)
    if raw is None:
        return default
    try:
        return cast(raw)
    except (TypeError, ValueError):
        raise SystemExit(f"invalid {_ENV_PREFIX}{name}={raw!r}")


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json_text(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _csv_text(rows: list[dict], columns: list[str]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow(
            [repr(float(v)) if isinstance(v, (float, np.floating)) else v
             for v in (row[c] for c in columns)]
        )
    return buf.getvalue()


def _add_common(p: argparse.ArgumentParser, with_family=True) -> None:
    if with_family:
        p.add_argument("--family", required=True, choices=FAMILIES)
        p.add_argument("--n", type=int, required=True, help="size parameter (n >= 2; sphere n >= 3)")
    p.add_argument(
        "--format",
        choices=("json", "csv"),
        default=_env("FORMAT", "json", str),
        help="output format (default json; env STEINCHAR_FORMAT)",
    )
    p.add_argument("--out", default=None, help="write output to this file instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="steinchar",
        description=(
            "Explicit Kolmogorov bounds for the normal approximation of traces on "
            "compact matrix groups, the sphere, and the circular ensembles, with "
            "Monte-Carlo verification."
        ),
        epilog=(
            "Environment defaults (overridden by flags): STEINCHAR_SEED, "
            "STEINCHAR_COUNT, STEINCHAR_DELTA, STEINCHAR_FORMAT, STEINCHAR_WORKERS. "
            "For the sphere family --theta is the cap coordinate x in (-1, 1)."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bound", help="evaluate the Kolmogorov bound at a class, or its limit")
    _add_common(p)
    p.add_argument("--theta", type=float, default=None, help="class angle (x for the sphere)")
    p.add_argument("--limit", action="store_true", help="report the identity-class limit instead")

    p = sub.add_parser("verify", help="sample W and compare the empirical CDF to the bound")
    _add_common(p)
    p.add_argument("--count", type=int, default=_env("COUNT", 200_000, int))
    p.add_argument("--seed", type=int, default=_env("SEED", 0, int))
    p.add_argument("--delta", type=float, default=_env("DELTA", 0.01, float))
    p.add_argument("--workers", type=int, default=_env("WORKERS", 4, int))

    p = sub.add_parser("sample", help="draw W values (or exchangeable pairs with --theta)")
    _add_common(p)
    p.add_argument("--count", type=int, default=_env("COUNT", 10_000, int))
    p.add_argument("--seed", type=int, default=_env("SEED", 0, int))
    p.add_argument("--theta", type=float, default=None,
                   help="class parameter; if given, emit exchangeable pairs (w, w_prime)")

    p = sub.add_parser("decompose", help="emit a family's trace-square decomposition table")
    _add_common(p)
    p.add_argument("--theta", type=float, required=True, help="class angle (x for the sphere)")

    p = sub.add_parser("oracle", help="run an independent brute-force check suite")
    p.add_argument("--check", required=True, choices=("jack-gs", "pieri", "multiplicity", "limits"))
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--count", type=int, default=_env("COUNT", 100_000, int))
    p.add_argument("--seed", type=int, default=_env("SEED", 0, int))
    _add_common(p, with_family=False)

    p = sub.add_parser("table", help="paper bounds and exact limits for every family")
    p.add_argument("--n", default="2,5,10,50", help="comma-separated sizes")
    _add_common(p, with_family=False)
    return parser


def _cmd_bound(args) -> int:
    table = stein.builtin_table(args.family, args.n)
    if args.limit:
        rep = stein.limit_report(table)
        payload = {
            "family": rep.family,
            "n": rep.n,
            "exact_limit": rep.exact_limit,
            "paper_bound": rep.paper_bound,
        }
        if args.format == "csv":
            text = _csv_text([payload], ["family", "n", "exact_limit", "paper_bound"])
        else:
            text = _json_text(payload)
        _emit(text, args.out)
        return 0
    if args.theta is None:
        raise ValueError("provide --theta or --limit")
    rep = stein.bound(table, args.theta)
    payload = rep.to_json_dict()
    payload["paper_bound"] = stein.paper_bound(args.family, args.n)
    if args.format == "csv":
        cols = ["family", "n", "theta", "a", "term1", "term2", "total", "paper_bound"]
        text = _csv_text([payload], cols)
    else:
        text = _json_text(payload)
    _emit(text, args.out)
    return 0


def _cmd_verify(args) -> int:
    batch = sampling.sample_w(args.family, args.n, args.count, args.seed, workers=args.workers)
    bound_value = stein.paper_bound(args.family, args.n)
    report = stats.kolmogorov_distance(batch.values, delta=args.delta, bound=bound_value)
    payload = report.to_json_dict()
    payload.update({"family": args.family, "n": args.n, "seed": args.seed})
    if args.format == "csv":
        cols = ["family", "n", "seed", "count", "d_stat", "dkw_epsilon", "bound_compared", "passed"]
        text = _csv_text([payload], cols)
    else:
        text = _json_text(payload)
    _emit(text, args.out)
    return 0 if report.passed else 1


def _cmd_sample(args) -> int:
    if args.theta is not None:
        pairs = sampling.sample_pairs(args.family, args.n, args.theta, args.count, args.seed)
        if args.format == "csv":
            rows = [{"w": w, "w_prime": wp} for w, wp in zip(pairs.w, pairs.w_prime)]
            text = _csv_text(rows, ["w", "w_prime"])
        else:
            text = _json_text(pairs.to_json_dict())
    else:
        batch = sampling.sample_w(args.family, args.n, args.count, args.seed)
        if args.format == "csv":
            rows = [{"w": w} for w in batch.values]
            text = _csv_text(rows, ["w"])
        else:
            text = _json_text(batch.to_json_dict())
    _emit(text, args.out)
    return 0


def _cmd_decompose(args) -> int:
    table = stein.builtin_table(args.family, args.n)
    payload = table.to_json_dict(args.theta)
    if args.format == "csv":
        rows = [
            {
                "family": table.family,
                "n": table.n,
                "label": c["label"],
                "multiplicity": c["multiplicity"],
                "dim": c["dim"],
                "ratio_at_theta": c["ratio_at_theta"],
            }
            for c in payload["components"]
        ]
        text = _csv_text(rows, ["family", "n", "label", "multiplicity", "dim", "ratio_at_theta"])
    else:
        text = _json_text(payload)
    _emit(text, args.out)
    return 0


def _oracle_jack_gs(args) -> dict:
    checks = []
    for beta, alpha in ((1.0, 2.0), (4.0, 0.5), (2.0, 1.0)):
        res = oracle_mod.jack_gram_schmidt(2, beta)
        expected = 2.0 / (alpha + 1.0)
        checks.append(
            {
                "beta": beta,
                "coefficient": res.coefficient,
                "expected": expected,
                "tolerance": 1e-6,
                "passed": bool(abs(res.coefficient - expected) < 1e-6),
            }
        )
    return {"check": "jack-gs", "results": checks,
            "passed": all(c["passed"] for c in checks)}


def _oracle_pieri(args) -> dict:
    rng = np.random.default_rng(args.seed)
    n = args.n
    expect = {
        "coe": {"trivial": 4 * n / (n + 1), "(2)": 1.0, "(1,1)": 4 / 3,
                "(1,0^{n-2},-1)": 2.0},
        "cse": {"trivial": 2 * n / (2 * n - 1), "(2)": 1.0, "(1,1)": 2 / 3,
                "(1,0^{n-2},-1)": 2.0},
        "u": {"trivial": 2.0, "(2)": 1.0, "(1,1)": 1.0, "(1,0^{n-2},-1)": 2.0},
    }
    checks = []
    for ens in ("coe", "cse", "u"):
        res = oracle_mod.pieri_least_squares(n, ens, count=20 * 6, rng=rng)
        ok = res.residual < 1e-8 and all(
            abs(res.coefficients[k] - v) < 1e-8 for k, v in expect[ens].items()
        )
        checks.append(
            {
                "ensemble": ens,
                "coefficients": res.coefficients,
                "expected": expect[ens],
                "residual": res.residual,
                "tolerance": 1e-8,
                "passed": bool(ok),
            }
        )
    return {"check": "pieri", "n": n, "results": checks,
            "passed": all(c["passed"] for c in checks)}


def _oracle_multiplicity(args) -> dict:
    checks = []
    for family in FAMILIES:
        n = args.n if family != "sphere" else max(args.n, 3)
        table = stein.builtin_table(family, n)
        for comp in table.components:
            est = oracle_mod.monte_carlo_multiplicity(
                family, comp.label, 2, args.count, seed=args.seed, n=n
            )
            z = (est.estimate - comp.multiplicity) / est.stderr
            checks.append(
                {
                    "family": family,
                    "label": comp.label,
                    "estimate": est.estimate,
                    "expected": comp.multiplicity,
                    "stderr": est.stderr,
                    "z": z,
                    "passed": bool(abs(z) <= 3.0),
                }
            )
    return {"check": "multiplicity", "count": args.count, "results": checks,
            "passed": all(c["passed"] for c in checks)}


def _oracle_limits(args) -> dict:
    checks = []
    for family in FAMILIES:
        n = args.n if family != "sphere" else max(args.n, 3)
        table = stein.builtin_table(family, n)

        def term1_at(th, table=table):
            v = th if table.class_kind == "theta" else 1.0 - (1.0 - math.cos(th))
            a, rows = stein._deficits(table, v)
            return stein._term1(table.case_kind, a, rows)

        lim, err = oracle_mod.numeric_limit(term1_at)
        closed = stein.exact_limit(family, n)
        checks.append(
            {
                "family": family,
                "n": n,
                "extrapolated": lim,
                "closed_form": closed,
                "error_estimate": err,
                "passed": bool(abs(lim - closed) < 1e-8),
            }
        )
    return {"check": "limits", "results": checks,
            "passed": all(c["passed"] for c in checks)}


def _cmd_oracle(args) -> int:
    runner = {
        "jack-gs": _oracle_jack_gs,
        "pieri": _oracle_pieri,
        "multiplicity": _oracle_multiplicity,
        "limits": _oracle_limits,
    }[args.check]
    payload = runner(args)
    if args.format == "csv":
        rows = payload["results"]
        cols = list(rows[0].keys())
        text = _csv_text(rows, cols)
    else:
        text = _json_text(payload)
    _emit(text, args.out)
    return 0 if payload["passed"] else 1


def _cmd_table(args) -> int:
    sizes = [int(s) for s in str(args.n).split(",") if s]
    rows = []
    for n in sizes:
        for family in FAMILIES:
            nn = n if family != "sphere" else max(n, 3)
            rows.append(
                {
                    "family": family,
                    "n": nn,
                    "paper_bound": stein.paper_bound(family, nn),
                    "exact_limit": stein.exact_limit(family, nn),
                }
            )
    if args.format == "csv":
        text = _csv_text(rows, ["family", "n", "paper_bound", "exact_limit"])
    else:
        text = _json_text(rows)
    _emit(text, args.out)
    return 0


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = {
        "bound": _cmd_bound,
        "verify": _cmd_verify,
        "sample": _cmd_sample,
        "decompose": _cmd_decompose,
        "oracle": _cmd_oracle,
        "table": _cmd_table,
    }[args.command]
    try:
        return handler(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
