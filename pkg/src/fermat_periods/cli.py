"""Command line front end: ``fhv <subcommand> ...``.

Exit codes: 0 when every executed case passes, 1 when any fails, 2 on usage
or configuration errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .codim import codim
from .combinatorics import (
    FermatParams,
    LinearCycle,
    enumerate_index_set,
    enumerate_linear_cycles,
    in_check_set,
    linear_cycle_count,
)
from .matrix import MatrixFormatError, build_matrix, dump, load
from .periods import CompleteIntersection, DegreeVector, LinearPair, SingleCycle, ci_period, linear_cycle_period, pair_period
from .rank import compute_rank
from .suites import SuiteConfig, run_conjecture1_suite, run_prop3_suite, run_theorem2_suite


class UsageError(Exception):
    pass


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _params(args) -> FermatParams:
    if args.n is None or args.d is None:
        raise UsageError("--n and --d are required")
    try:
        return FermatParams(args.n, args.d)
    except ValueError as exc:
        raise UsageError(str(exc))


def _provenance(args, params: FermatParams):
    if args.degrees is not None:
        return CompleteIntersection(DegreeVector(args.degrees))
    if args.a is not None or args.b is not None:
        a = args.a if args.a is not None else (0,) * (params.half + 1)
        b = args.b if args.b is not None else tuple(range(params.nvars))
        return SingleCycle(LinearCycle(a, b))
    return LinearPair(args.m if args.m is not None else -1)


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def cmd_period(args) -> int:
    params = _params(args)
    if args.i is None:
        raise UsageError("--i is required")
    try:
        if args.degrees is not None:
            value = ci_period(params, DegreeVector(args.degrees), args.i)
            doc = {"normalized": value.to_json(), "scalar": "1/1"}
        elif args.a is not None or args.b is not None:
            src = _provenance(args, params)
            pv = linear_cycle_period(params, src.cycle, args.i)
            doc = {"normalized": pv.normalized.to_json(), "scalar": f"{pv.scalar.numerator}/{pv.scalar.denominator}"}
        else:
            pv = pair_period(params, args.m if args.m is not None else -1, args.i)
            doc = {"normalized": pv.normalized.to_json(), "scalar": f"{pv.scalar.numerator}/{pv.scalar.denominator}"}
    except ValueError as exc:
        raise UsageError(str(exc))
    if args.format == "json":
        _emit(json.dumps(doc), args.out)
    else:
        coeffs = ",".join(doc["normalized"]["coeffs"])
        _emit(f"scalar\t{doc['scalar']}\nnormalized\t{coeffs}", args.out)
    return 0


def cmd_matrix(args) -> int:
    params = _params(args)
    try:
        src = _provenance(args, params)
        matrix = build_matrix(params, src)
    except ValueError as exc:
        raise UsageError(str(exc))
    fmt = "tsv" if args.format == "tsv" else "json"
    data = dump(matrix, fmt)
    if args.out:
        Path(args.out).write_bytes(data)
    else:
        sys.stdout.write(data.decode())
        if not data.endswith(b"\n"):
            sys.stdout.write("\n")
    return 0


def cmd_rank(args) -> int:
    if args.input:
        path = Path(args.input)
        fmt = "tsv" if path.suffix == ".tsv" else "json"
        try:
            matrix = load(path.read_bytes(), fmt)
        except (OSError, MatrixFormatError) as exc:
            raise UsageError(str(exc))
    else:
        params = _params(args)
        try:
            matrix = build_matrix(params, _provenance(args, params))
        except ValueError as exc:
            raise UsageError(str(exc))
    result = compute_rank(matrix, args.method, args.primes)
    if args.format == "json":
        _emit(json.dumps({"shape": list(matrix.shape), **result.to_json()}), args.out)
    else:
        _emit(str(result.rank), args.out)
    return 0


def cmd_codim(args) -> int:
    if args.n is None or args.d is None or args.a is None:
        raise UsageError("--n, --d and --a are required")
    try:
        value = codim(args.n, args.d, args.a)
    except ValueError as exc:
        raise UsageError(str(exc))
    _emit(str(value), args.out)
    return 0


def cmd_count_cycles(args) -> int:
    params = _params(args)
    if args.enumerate:
        n_cycles = len(enumerate_linear_cycles(params))
    else:
        n_cycles = linear_cycle_count(params)
    _emit(str(n_cycles), args.out)
    return 0


def cmd_enumerate(args) -> int:
    params = _params(args)
    if args.what == "cycles":
        items = [c.to_json() for c in enumerate_linear_cycles(params)]
    elif args.what == "check":
        items = [list(t) for t in enumerate_index_set(params, params.top_degree) if in_check_set(params, t)]
    else:
        N = {"rows": params.row_degree, "cols": params.col_degree, "top": params.top_degree}.get(args.what)
        if N is None:
            try:
                N = int(args.what)
            except ValueError:
                raise UsageError(f"unknown set {args.what!r}")
        items = [list(t) for t in enumerate_index_set(params, N)]
    if args.format == "json":
        _emit(json.dumps(items), args.out)
    else:
        _emit("\n".join(json.dumps(x) for x in items), args.out)
    return 0


def _suite_config(args) -> SuiteConfig:
    try:
        return SuiteConfig(
            method=args.method,
            prime_count=args.primes,
            jobs=args.jobs,
            n=args.n,
            d=args.d,
            sample_size=0 if getattr(args, "exhaustive", False) else getattr(args, "sample", 4),
            max_d=getattr(args, "max_d", 6),
        )
    except ValueError as exc:
        raise UsageError(str(exc))


def _run_suite(runner, args) -> int:
    config = _suite_config(args)
    report = runner(config)
    if args.format == "json":
        text = json.dumps(report.to_json(), indent=2)
    elif args.format == "tsv":
        text = report.to_tsv()
    else:
        text = report.to_text()
    if args.out:
        Path(args.out).write_text(json.dumps(report.to_json(), indent=2) if args.format != "tsv" else text)
        print(report.to_text())
    else:
        print(text)
    return report.exit_code()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fhv", description="Periods of algebraic cycles in Fermat varieties and rank certification.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, fmt_default="text"):
        p.add_argument("--n", type=int)
        p.add_argument("--d", type=int)
        p.add_argument("--m", type=int)
        p.add_argument("--degrees", type=_ints)
        p.add_argument("--a", type=_ints)
        p.add_argument("--b", type=_ints)
        p.add_argument("--i", type=_ints)
        p.add_argument("--method", choices=["exact", "modular", "auto"], default="auto")
        p.add_argument("--primes", type=int, default=3)
        p.add_argument("--jobs", type=int, default=1)
        p.add_argument("--out")
        p.add_argument("--format", choices=["json", "tsv", "text"], default=fmt_default)

    p = sub.add_parser("period", help="period of one exponent index")
    common(p)
    p.set_defaults(func=cmd_period)

    p = sub.add_parser("matrix", help="build [p_{i+j}] and write it")
    common(p, "json")
    p.set_defaults(func=cmd_matrix)

    p = sub.add_parser("rank", help="rank of a dumped or freshly built matrix")
    common(p)
    p.add_argument("input", nargs="?")
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("codim", help="codimension number C_a")
    common(p)
    p.set_defaults(func=cmd_codim)

    p = sub.add_parser("count-cycles", help="number of canonical linear cycles")
    common(p)
    p.add_argument("--enumerate", action="store_true", help="count by enumeration")
    p.set_defaults(func=cmd_count_cycles)

    p = sub.add_parser("enumerate", help="list index sets or cycles")
    common(p)
    p.add_argument("what", nargs="?", default="rows", help="rows | cols | top | check | cycles | <N>")
    p.set_defaults(func=cmd_enumerate)

    for name, runner in (
        ("theorem2", run_theorem2_suite),
        ("conjecture1", run_conjecture1_suite),
        ("prop3", run_prop3_suite),
    ):
        p = sub.add_parser(name, help=f"run the {name} verification suite")
        common(p)
        if name == "conjecture1":
            p.add_argument("--sample", type=int, default=4)
            p.add_argument("--exhaustive", action="store_true")
        if name == "prop3":
            p.add_argument("--max-d", type=int, default=6)
        p.set_defaults(func=lambda args, runner=runner: _run_suite(runner, args))
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"fhv {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
