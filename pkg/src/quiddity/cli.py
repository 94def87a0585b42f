"""Command-line front end: family tables, raw series rows, the
exhaustive oracle, and the full verification suite.

Exit codes: 0 success, 1 verification mismatch, 2 usage or parse
error, 3 resource budget exceeded.
"""

import argparse
import csv
import json
import sys
from dataclasses import dataclass

from . import census, oracle, verify

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3

_SERIES_FAMILIES = ("P", "Q", "Ptilde", "U", "V", "W")


@dataclass
class RunConfig:
    """Validated bag of options for one command invocation."""

    command: str
    family: str = None
    k: int = None
    l: int = None
    n_max: int = None
    order: int = None
    target: str = None
    size: int = None
    bound: int = None
    list_solutions: bool = False
    output_format: str = "csv"
    workers: int = 1
    max_size: int = 12

    def validate(self):
        if self.workers < 1:
            raise ValueError("--workers must be at least 1")
        if (self.order is not None and self.n_max is not None
                and self.order < self.n_max + 1):
            raise ValueError("--order must be at least --n-max + 1")
        return self


def _print_table(table, output_format):
    if output_format == "json":
        print(table.to_json())
    else:
        print(table.to_csv(), end="")


def cmd_table(config):
    """Print one family of counts up to --n-max."""
    table = census.census_table(config.family, config.n_max,
                                k=config.k, l=config.l, order=config.order)
    _print_table(table, config.output_format)
    return EXIT_OK


def cmd_series(config):
    """Print raw coefficients 0..order of one named series."""
    order = 12 if config.order is None else config.order
    if order < 0:
        raise ValueError("--order must be nonnegative")
    family = config.family
    needs_k = family in ("U", "V", "W")
    needs_l = family == "W"
    if needs_k and config.k is None:
        raise ValueError(f"series {family} needs --k")
    if needs_l and config.l is None:
        raise ValueError(f"series {family} needs --l")
    if not needs_k and config.k is not None:
        raise ValueError(f"series {family} does not take --k")
    if not needs_l and config.l is not None:
        raise ValueError(f"series {family} does not take --l")
    if family == "P":
        label, ts = "P", census.series_P(order)
    elif family == "Q":
        label, ts = "Q", census.series_Q(order)
    elif family == "Ptilde":
        label, ts = "Ptilde", census.series_P_inverse(order)
    elif family == "U":
        label, ts = f"U({config.k})", census.series_U(config.k, order)
    elif family == "V":
        label, ts = f"V({config.k})", census.series_V(config.k, order)
    else:
        label, ts = f"W({config.k},{config.l})", census.series_W(config.k, config.l, order)
    table = census.CountTable(family=label, provenance="series",
                              entries=dict(enumerate(ts.coeffs)))
    _print_table(table, config.output_format)
    return EXIT_OK


def cmd_oracle(config):
    """Run the exhaustive search for one target and size."""
    query = oracle.OracleQuery(
        target=config.target,
        size=config.size,
        bound=config.bound,
        list_solutions=config.list_solutions,
        workers=config.workers,
    )
    result = oracle.solve(query)
    if config.output_format == "json":
        payload = {
            "target": str(config.target),
            "target_name": result.target_name,
            "size": result.size,
            "bound": result.bound,
            "count": str(result.count),
            "bound_touches": str(result.bound_touches),
            "exhaustive_within_bound": result.exhaustive_within_bound,
            "by_last": {str(k): str(v) for k, v in sorted(result.by_last.items())},
        }
        if config.list_solutions:
            payload["solutions"] = [list(t) for t in result.solutions]
        print(json.dumps(payload, indent=2))
    elif config.list_solutions:
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow([f"a{i}" for i in range(1, result.size + 1)])
        for digits in result.solutions:
            writer.writerow(digits)
    else:
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(["target", "size", "bound", "count",
                         "bound_touches", "exhaustive_within_bound"])
        writer.writerow([config.target, result.size, result.bound, result.count,
                         result.bound_touches, result.exhaustive_within_bound])
    return EXIT_OK


def cmd_verify(config):
    """Run every cross-check and report pass/fail per check."""
    order = verify.IDENTITY_ORDER if config.order is None else config.order
    report = verify.run_verify(max_size=config.max_size, order=order,
                               workers=config.workers)
    if config.output_format == "json":
        payload = {
            "passed": report.passed,
            "checks": [
                {"name": r.name, "passed": r.passed,
                 "expected": repr(r.expected), "actual": repr(r.actual)}
                for r in report.results
            ],
        }
        print(json.dumps(payload, indent=2))
    else:
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(["check", "status", "expected", "actual"])
        for r in report.results:
            writer.writerow([r.name, "PASS" if r.passed else "FAIL",
                             repr(r.expected), repr(r.actual)])
    if not report.passed:
        first = report.first_failure
        print(f"first failure: {first.name}: expected {first.expected!r}, "
              f"actual {first.actual!r}", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="quiddity",
        description="Count and enumerate positive integer solutions of "
                    "m_n(a_1..a_n) = +/-target over the modular group.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument("--format", dest="output_format",
                       choices=("csv", "json"), default="csv",
                       help="output format (default csv)")

    table = sub.add_parser("table", help="print one family of counts")
    table.add_argument("--family", required=True, choices=census.FAMILIES)
    table.add_argument("--n-max", dest="n_max", type=int, required=True,
                       help="largest index n to print")
    table.add_argument("--k", type=int, help="row index for U, V, W")
    table.add_argument("--l", type=int, help="second row index for W")
    table.add_argument("--order", type=int,
                       help="series truncation order (default n-max + 1)")
    add_format(table)

    series_cmd = sub.add_parser("series", help="print raw series coefficients")
    series_cmd.add_argument("--family", required=True, choices=_SERIES_FAMILIES)
    series_cmd.add_argument("--order", type=int, default=None,
                            help="truncation order (default 12)")
    series_cmd.add_argument("--k", type=int, help="row index for U, V, W")
    series_cmd.add_argument("--l", type=int, help="second row index for W")
    add_format(series_cmd)

    oracle_cmd = sub.add_parser("oracle", help="exhaustive search for one target")
    oracle_cmd.add_argument("--target", required=True,
                            help="Id | S | T | T^-1 | TS | ST | TSTS | STST | "
                                 "generator word | [[a,b],[c,d]]")
    oracle_cmd.add_argument("--size", type=int, required=True,
                            help="tuple length searched")
    oracle_cmd.add_argument("--bound", type=int,
                            help="largest component searched (default: size)")
    oracle_cmd.add_argument("--list", dest="list_solutions", action="store_true",
                            help="emit the solutions, not just the count")
    oracle_cmd.add_argument("--workers", type=int, default=1)
    add_format(oracle_cmd)

    verify_cmd = sub.add_parser("verify", help="run the full cross-check suite")
    verify_cmd.add_argument("--max-size", dest="max_size", type=int, default=12,
                            help="largest tuple size for the oracle checks")
    verify_cmd.add_argument("--order", type=int, default=None,
                            help="identity-suite truncation order (default 32)")
    verify_cmd.add_argument("--workers", type=int, default=1)
    add_format(verify_cmd)
    return parser


_CONFIG_FIELDS = ("family", "k", "l", "n_max", "order", "target", "size",
                  "bound", "list_solutions", "output_format", "workers",
                  "max_size")


def main(argv=None):
    """Parse arguments, dispatch, and return the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 for --help
        return int(exc.code or 0)
    config = RunConfig(command=args.command)
    for name in _CONFIG_FIELDS:
        if hasattr(args, name):
            setattr(config, name, getattr(args, name))
    handlers = {
        "table": cmd_table,
        "series": cmd_series,
        "oracle": cmd_oracle,
        "verify": cmd_verify,
    }
    try:
        return handlers[config.command](config.validate())
    except oracle.ResourceBudgetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def run():
    raise SystemExit(main())
