"""Command-line front end: enumeration, Schur Q-functions, scalar products, series and checks."""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Any, Sequence

from .algebra import SeriesContext
from .errors import BoundExceeded, DomainError, UsageError
from .harness import (
    DEFAULT_SEED,
    REGISTRY,
    CheckSpec,
    Limits,
    buc_macmahon_series,
    default_suite,
    report,
    run_suite,
    strict_buc_series,
)
from .lattice import scalar_product, scalar_product_context
from .partitions import parse_partition, strict_partitions_in_box
from .plane import enumerate_boxed_strict
from .schurq import schur_q

THREADS_ENV = "IBOSON_THREADS"
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _dims(text: str, n: int, flag: str) -> list[int]:
    try:
        vals = [int(t) for t in text.split(",")]
    except ValueError:
        raise UsageError(f"{flag} expects {n} comma-separated integers, got {text!r}") from None
    if len(vals) != n or any(v < 0 for v in vals):
        raise UsageError(f"{flag} expects {n} non-negative integers, got {text!r}")
    return vals


def _emit(result: dict[str, Any], human: str, as_json: bool) -> None:
    out = json.dumps(result, indent=2, ensure_ascii=False) if as_json else human
    sys.stdout.write(out + "\n")


# enumerate


def enumerate_result(args: argparse.Namespace) -> dict[str, Any]:
    if (args.plane is None) == (args.strict is None):
        raise UsageError("give exactly one of --plane N,L,M or --strict N,M")
    if args.plane is not None:
        n, l, m = _dims(args.plane, 3, "--plane")
        volume = n * l * m
        if volume > args.max_volume:
            raise BoundExceeded(f"box volume {volume} exceeds --max-volume {args.max_volume}")
        items = [[list(r) for r in pi.rows] for pi in enumerate_boxed_strict(n, l, m, limit=args.max_terms)]
        return {"kind": "plane", "box": [n, l, m], "count": len(items), "items": items}
    n, m = _dims(args.strict, 2, "--strict")
    if n * m > args.max_volume:
        raise BoundExceeded(f"box volume {n * m} exceeds --max-volume {args.max_volume}")
    items = [list(p.parts) for p in strict_partitions_in_box(n, m)]
    if len(items) > args.max_terms:
        raise BoundExceeded(f"{len(items)} items exceed --max-terms {args.max_terms}")
    return {"kind": "strict", "box": [n, m], "count": len(items), "items": items}


def render_enumeration(result: dict[str, Any]) -> str:
    lines = []
    for item in result["items"]:
        if result["kind"] == "plane":
            lines.append(";".join(",".join(map(str, r)) for r in item) or "∅")
        else:
            lines.append(",".join(map(str, item)) or "∅")
    lines.append(f"count: {result['count']}")
    return "\n".join(lines)


def cmd_enumerate(args: argparse.Namespace) -> int:
    result = enumerate_result(args)
    _emit(result, render_enumeration(result), args.json)
    return EXIT_OK


# schurq


def _variable_names(spec: str) -> list[str]:
    spec = spec.strip()
    if spec.isdigit():
        return [f"x{i}" for i in range(1, int(spec) + 1)]
    names = [t.strip() for t in spec.split(",") if t.strip()]
    if len(set(names)) != len(names) or not all(t.isidentifier() for t in names):
        raise UsageError(f"bad variable list {spec!r}")
    return names


def schurq_result(args: argparse.Namespace) -> dict[str, Any]:
    mu = parse_partition(args.mu)
    names = _variable_names(args.vars)
    # Q_mu is homogeneous of degree |mu|, so this cap loses nothing
    order = mu.weight if args.order is None else args.order
    ctx = SeriesContext(tuple(names), None, order)
    methods = ("pfaffian", "branching") if args.method == "both" else (args.method,)
    values = {m: schur_q(mu, ctx, names, m) for m in methods}
    first = values[methods[0]]
    agree = all(v == first for v in values.values())
    result: dict[str, Any] = {
        "mu": list(mu.parts),
        "variables": names,
        "order": order,
        "method": args.method,
        "series": str(first),
        "terms": first.to_json(),
    }
    if args.method == "both":
        result["agree"] = agree
    return result


def cmd_schurq(args: argparse.Namespace) -> int:
    result = schurq_result(args)
    human = result["series"]
    if result.get("agree") is False:
        human += "\nmethods disagree"
    _emit(result, human, args.json)
    return EXIT_OK if result.get("agree", True) else EXIT_FAIL


# scalar-product and series


def cmd_scalar_product(args: argparse.Namespace) -> int:
    n1, n2, m1, m2 = _dims(args.dims, 4, "--dims")
    if max(m1, m2) > args.max_volume:
        raise BoundExceeded(f"lattice size exceeds --max-volume {args.max_volume}")
    ctx, names = scalar_product_context(n1, n2, args.order)
    routes = ("lattice", "planepartition", "schurq") if args.route == "all" else (args.route,)
    values = {r: scalar_product((m1, m2), ctx, names, r) for r in routes}
    first = values[routes[0]]
    agree = all(v == first for v in values.values())
    result = {
        "dims": [n1, n2, m1, m2],
        "order": args.order,
        "routes": list(routes),
        "agree": agree,
        "series": str(first),
        "terms": first.to_json(),
    }
    human = result["series"] if agree else "routes disagree:\n" + "\n".join(f"{r}: {v}" for r, v in values.items())
    _emit(result, human, args.json)
    return EXIT_OK if agree else EXIT_FAIL


def cmd_series(args: argparse.Namespace) -> int:
    if args.order > args.max_order:
        raise BoundExceeded(f"order {args.order} exceeds --max-order {args.max_order}")
    fn = buc_macmahon_series if args.kind == "buc" else strict_buc_series
    s = fn(args.order)
    single = [int(s.coefficient({"q": k}).a) for k in range(args.order + 1)]
    result = {"kind": args.kind, "order": args.order, "series": str(s), "single": single, "terms": s.to_json()}
    human = f"{s}\nsingle-variable coefficients: {' '.join(map(str, single))}"
    _emit(result, human, args.json)
    return EXIT_OK


# verify


def _threads(args: argparse.Namespace) -> int:
    if args.threads is not None:
        return args.threads
    env = os.environ.get(THREADS_ENV)
    if env is None:
        return 1
    try:
        return max(1, int(env))
    except ValueError:
        raise UsageError(f"{THREADS_ENV} must be an integer, got {env!r}") from None


def verify_specs(args: argparse.Namespace) -> list[CheckSpec]:
    if args.check == "all":
        return default_suite(args.order if args.order is not None else 6, args.seed)
    if args.check not in REGISTRY:
        raise UsageError(f"unknown check {args.check!r}; known: all, {', '.join(REGISTRY)}")
    params: dict[str, Any] = {}
    if args.box is not None:
        params["box"] = [int(t) for t in args.box.split(",")]
    if args.dims is not None:
        params["dims"] = _dims(args.dims, 4, "--dims")
    if args.order is not None:
        params["order"] = args.order
    if args.check == "rtt":
        params["seed"] = args.seed
    if args.mutate:
        params["mutate"] = True
    return [CheckSpec(args.check, params)]


def render_report(rep: dict[str, Any]) -> str:
    lines = [f"seed: {rep['seed']}"]
    for r in rep["results"]:
        status = "PASS" if r["pass"] else "FAIL"
        params = " ".join(f"{k}={v}" for k, v in r["params"].items())
        lines.append(f"{status} {r['name']} {params} ({r['millis']} ms)".rstrip())
        if "witness" in r:
            lines.append(f"  witness: {r['witness']}")
    lines.append("all passed" if rep["pass"] else "some checks failed")
    return "\n".join(lines)


def cmd_verify(args: argparse.Namespace) -> int:
    limits = Limits(max_volume=args.max_volume, max_order=args.max_order)
    verdicts = run_suite(verify_specs(args), _threads(args), limits)
    rep = report(verdicts, args.seed)
    _emit(rep, render_report(rep), args.json)
    return EXIT_OK if rep["pass"] else EXIT_FAIL


# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="iboson", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--json", action="store_true", help="emit JSON instead of text")
        p.add_argument("--max-volume", type=int, default=128, help="refuse boxes larger than this (default 128)")
        p.add_argument("--max-terms", type=int, default=100_000, help="refuse listings longer than this (default 100000)")
        p.add_argument("--max-order", type=int, default=16, help="refuse truncation orders above this (default 16)")

    p = sub.add_parser("enumerate", help="list strict plane partitions or strict partitions in a box")
    p.add_argument("--plane", metavar="N,L,M", help="strict plane partitions with at most N rows, L columns, entries <= M")
    p.add_argument("--strict", metavar="N,M", help="strict partitions with at most N parts, each <= M")
    common(p)
    p.set_defaults(fn=cmd_enumerate)

    p = sub.add_parser("schurq", help="expand a Schur Q-function")
    p.add_argument("--mu", required=True, help='strict partition such as "3,1" ("" for the empty one)')
    p.add_argument("--vars", default="2", help="number of variables, or a comma-separated name list (default 2)")
    p.add_argument("--order", type=int, help="total-degree cap (default |mu|)")
    p.add_argument("--method", choices=("pfaffian", "branching", "both"), default="pfaffian")
    common(p)
    p.set_defaults(fn=cmd_schurq)

    p = sub.add_parser("scalar-product", help="boxed scalar product of the lattice model")
    p.add_argument("--dims", required=True, metavar="N1,N2,M1,M2")
    p.add_argument("--order", type=int, default=8, help="total-degree cap (default 8)")
    p.add_argument("--route", choices=("lattice", "planepartition", "schurq", "all"), default="all")
    common(p)
    p.set_defaults(fn=cmd_scalar_product)

    p = sub.add_parser("series", help="generating functions for pairs of plane partitions")
    p.add_argument("kind", choices=("buc", "strict-buc"))
    p.add_argument("--order", type=int, default=8, help="total-degree cap (default 8)")
    common(p)
    p.set_defaults(fn=cmd_series)

    p = sub.add_parser("verify", help="run identity checks; exit 0 iff all pass")
    p.add_argument("check", help=f"check name or 'all'; one of: {', '.join(REGISTRY)}")
    p.add_argument("--box", help="box dimensions for enumeration checks")
    p.add_argument("--dims", metavar="N1,N2,M1,M2", help="sizes for scalar-product")
    p.add_argument("--order", type=int, help="truncation order (default 6 for 'all')")
    p.add_argument("--threads", type=int, help=f"worker threads (default ${THREADS_ENV} or 1)")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED, help=f"RNG seed for sample points (default {DEFAULT_SEED})")
    p.add_argument("--mutate", action="store_true", help="corrupt one weight to exercise failure reporting")
    common(p)
    p.set_defaults(fn=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.fn(args)
    except BoundExceeded as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
