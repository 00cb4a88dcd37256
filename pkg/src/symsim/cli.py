"""Command-line entry point: run circuit files, query states, benchmark.

Exit codes: 0 success, 2 circuit parse or usage error, 3 backend error,
4 I/O error.  Results go to stdout, one per line; diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import random
import sys

from . import backends_loaded  # noqa: F401  (registers the standard backends)
from .api import (
    ConfigurationError,
    available_backends,
    measure,
    measurement_counts,
    prob,
)
from .benchmarks import BENCHMARKS, bench_run, format_table, write_csv
from .circuits import CircuitSyntaxError, load, run
from .ddcore import ResourceLimitError
from .numerics import PrecisionConfig

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_BACKEND = 3
EXIT_IO = 4


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _parse_prob_spec(spec: str) -> dict[int, int]:
    assignment = {}
    if not spec.strip():
        return assignment
    for token in spec.split(","):
        token = token.strip()
        parts = token.split("=")
        if len(parts) != 2:
            raise CliError("malformed prob token %r (want q=b)" % token, EXIT_PARSE)
        try:
            q, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise CliError(
                "malformed prob token %r (want integers)" % token, EXIT_PARSE
            ) from None
        if b not in (0, 1):
            raise CliError("prob token %r value must be 0 or 1" % token, EXIT_PARSE)
        if q in assignment:
            raise CliError("prob token %r repeats qubit %d" % (token, q), EXIT_PARSE)
        assignment[q] = b
    return assignment


def _precision_from_args(args) -> PrecisionConfig | None:
    if args.precision_bits is None and args.leaf_epsilon is None:
        return None
    bits = args.precision_bits if args.precision_bits is not None else 53
    return PrecisionConfig(mantissa_bits=bits, leaf_epsilon=args.leaf_epsilon)


def _cmd_run(args) -> int:
    try:
        circuit = load(args.circuit)
    except OSError as exc:
        raise CliError("cannot read circuit: %s" % exc, EXIT_IO) from None
    except CircuitSyntaxError as exc:
        raise CliError("circuit error: %s" % exc, EXIT_PARSE) from None
    queries = [_parse_prob_spec(spec) for spec in args.prob or []]
    try:
        precision = _precision_from_args(args)
        state = run(circuit, args.backend, precision)
        for spec, assignment in zip(args.prob or [], queries):
            value = prob(state, assignment)
            print("prob %s = %r" % (spec, value))
        if args.counts is not None:
            count = measurement_counts(state, args.counts, args.counts_tol)
            print("counts p=%r = %d" % (args.counts, count))
        if args.measure:
            rng = random.Random(args.seed)
            for _ in range(args.measure):
                print("measure = %s" % measure(state, rng))
    except (ConfigurationError, ResourceLimitError, ValueError) as exc:
        raise CliError("backend error: %s" % exc, EXIT_BACKEND) from None
    return EXIT_OK


def _cmd_bench(args) -> int:
    backends = []
    for chunk in args.backend:
        backends.extend(b.strip().lower() for b in chunk.split(",") if b.strip())
    try:
        qubit_list = [int(tok) for tok in args.qubits.split(",") if tok.strip()]
    except ValueError:
        raise CliError("malformed --qubits list %r" % args.qubits, EXIT_PARSE) from None
    if not qubit_list:
        raise CliError("--qubits list is empty", EXIT_PARSE)
    for b in backends:
        if b not in available_backends():
            raise CliError("unknown backend %r" % b, EXIT_BACKEND)
    reports = bench_run(
        args.suite,
        backends,
        qubit_list,
        runs=args.runs,
        budget=args.budget_secs,
        seed=args.seed,
        parallel=args.parallel,
    )
    print(format_table(reports), end="")
    if args.out:
        try:
            write_csv(reports, args.out)
        except OSError as exc:
            raise CliError("cannot write %s: %s" % (args.out, exc), EXIT_IO) from None
    return EXIT_OK


def _cmd_backends(args) -> int:
    print(" ".join(available_backends()))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="symsim",
        description="Symbolic quantum-circuit simulator with decision-diagram backends.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="simulate a .qc circuit file and query it")
    p_run.add_argument("--backend", required=True, help="bdd, wbdd, cflobdd or dense")
    p_run.add_argument("--circuit", required=True, help="path to a .qc file")
    p_run.add_argument(
        "--prob",
        action="append",
        metavar="Q=B,...",
        help="probability of a partial assignment; repeatable",
    )
    p_run.add_argument("--counts", type=float, help="count outcomes at probability P")
    p_run.add_argument(
        "--counts-tol", type=float, default=None, help="tolerance for --counts"
    )
    p_run.add_argument("--measure", type=int, default=0, help="draw K samples")
    p_run.add_argument("--seed", type=int, default=0, help="sampling seed")
    p_run.add_argument("--precision-bits", type=int, default=None)
    p_run.add_argument("--leaf-epsilon", type=float, default=None)
    p_run.set_defaults(func=_cmd_run)

    p_bench = sub.add_parser("bench", help="run the benchmark harness")
    p_bench.add_argument(
        "--suite", required=True, choices=BENCHMARKS + ("all",)
    )
    p_bench.add_argument(
        "--backend", required=True, action="append", help="repeatable or comma-separated"
    )
    p_bench.add_argument("--qubits", required=True, help="comma-separated widths")
    p_bench.add_argument("--runs", type=int, default=50)
    p_bench.add_argument("--budget-secs", type=float, default=900.0)
    p_bench.add_argument("--seed", type=int, default=0)
    p_bench.add_argument("--out", default=None, help="CSV output path")
    p_bench.add_argument(
        "--parallel", action="store_true", help="run cells in parallel processes"
    )
    p_bench.set_defaults(func=_cmd_bench)

    p_back = sub.add_parser("backends", help="list registered backends")
    p_back.set_defaults(func=_cmd_backends)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(str(exc), file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
