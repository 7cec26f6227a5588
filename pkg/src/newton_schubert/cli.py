"""Command-line front end.

Exit codes: 0 success, 1 oracle mismatch under ``--both``, 2 usage or
parse error, 3 ramification data failing the weight balance.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from .bench import SUITES, bench_suite
from .derivations import integral_of_word
from .enumerative import (
    count_nets,
    count_webs,
    hyperstalls,
    net_balance,
    ranestad,
    scherbak,
    schubert_degree,
    web_balance,
)
from .exterior import Shape, fundamental_index
from .newton import integrate_reduced, reduce_word
from .parsing import ParseError, parse_cycle

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_BALANCE = 0, 1, 2, 3
WORKERS_ENV = "NEWTON_SCHUBERT_WORKERS"


class UsageError(Exception):
    pass


class BalanceViolation(Exception):
    def __init__(self, what: str, expected: int, actual: int):
        super().__init__(f"{what}: total ramification weight is {actual}, expected {expected}")


def _int_list(text: str) -> list[int]:
    try:
        values = [int(x) for x in text.split(",") if x.strip() != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("empty integer list")
    return values


def _non_negative(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {value}")
    return value


def _shape(k: int, n: int) -> Shape:
    if not 1 <= k <= n:
        raise UsageError(f"need 1 <= k <= n, got k={k}, n={n}")
    return Shape(k, n)


def _workers(args) -> int:
    env = os.environ.get(WORKERS_ENV)
    if env:
        try:
            value = int(env)
        except ValueError:
            raise UsageError(f"{WORKERS_ENV} must be an integer, got {env!r}")
    elif args.workers is not None:
        value = args.workers
    else:
        value = os.cpu_count() or 1
    if value < 1:
        raise UsageError("worker count must be at least 1")
    return value


def _payload(value: int, shape: Shape, text: str) -> dict:
    return {"value": str(value), "shape": {"k": shape.k, "n": shape.n}, "input": text}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON instead of plain integers")
    common.add_argument("--json-out", metavar="PATH", help="also write the JSON payload to PATH")
    common.add_argument("--workers", type=int, default=None,
                        help=f"worker processes for composition sums (env {WORKERS_ENV} overrides)")

    parser = argparse.ArgumentParser(
        prog="newton-schubert",
        description="Exact Schubert calculus on Grassmannians and counts of linear series on P^1.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("degree", parents=[common], help="degree of a Schubert variety")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--index", type=_int_list, required=True, help="e.g. 1,2 (unsorted allowed, signed)")

    p = sub.add_parser("intersect", parents=[common], help="integral of a monomial in Schubert cycles")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("expr", help='e.g. "s1^3 * s[1,3,5]"')
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--oracle", action="store_true", help="use brute-force Leibniz iteration")
    mode.add_argument("--both", action="store_true", help="run both routes and require agreement")

    p = sub.add_parser("pencils", parents=[common], help="pencils on P^1 with prescribed ramification")
    p.add_argument("--n", type=_non_negative, required=True)
    p.add_argument("--ram", type=_int_list, required=True, help="ramification weights q1,...,qh")

    for name, helptext in (("nets", "rational plane curves (flexes, hyperflexes, cusps, tacnodes)"),
                           ("webs", "rational space curves (stalls, hyperstalls, flexes, cusps)")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("--n", type=_non_negative, required=True)
        for letter in "abcd":
            p.add_argument(f"--{letter}", type=_non_negative, default=0)

    p = sub.add_parser("hyperstalls", parents=[common], help="HS_n, curves with 2n hyperstalls")
    p.add_argument("--n", type=_non_negative, required=True)
    p.add_argument("--upto", action="store_true", help="print the table HS_0 .. HS_n")

    p = sub.add_parser("ranestad", parents=[common], help="curves with 2n flexes, f_{0,0,2n,0}")
    p.add_argument("--n", type=_non_negative, required=True)

    p = sub.add_parser("bench", parents=[common], help="closed form vs reduction vs naive timing")
    p.add_argument("--suite", choices=sorted(SUITES), required=True)
    p.add_argument("--n", type=_non_negative, required=True)
    p.add_argument("--repeats", type=int, default=3)
    return parser


def _emit(args, lines: list[str], payload) -> None:
    if args.json:
        print(json.dumps(payload))
    else:
        for line in lines:
            print(line)
    if args.json_out:
        with open(args.json_out, "w", encoding="utf-8") as fh:
            json.dump(payload, fh)
            fh.write("\n")


def _dispatch(args) -> int:
    cmd = args.command
    if cmd == "degree":
        shape = _shape(args.k, args.n)
        if len(args.index) != shape.k:
            raise UsageError(f"index needs {shape.k} entries, got {len(args.index)}")
        value = schubert_degree(args.index, shape)
        _emit(args, [str(value)], _payload(value, shape, ",".join(map(str, args.index))))
        return EXIT_OK

    if cmd == "intersect":
        shape = _shape(args.k, args.n)
        expr = parse_cycle(args.expr)
        word = expr.to_word()
        if args.oracle:
            value = integral_of_word(shape, word)
        else:
            value = integrate_reduced(reduce_word(word, fundamental_index(shape), shape))
            if args.both:
                oracle = integral_of_word(shape, word)
                if oracle != value:
                    print(f"mismatch: reduction gives {value}, oracle gives {oracle}", file=sys.stderr)
                    return EXIT_MISMATCH
        _emit(args, [str(value)], _payload(value, shape, str(expr)))
        return EXIT_OK

    if cmd == "pencils":
        n, q = args.n, args.ram
        if any(x < 0 for x in q):
            raise UsageError("ramification weights must be non-negative")
        if sum(q) != 2 * n:
            raise BalanceViolation("pencils need q1 + ... + qh = 2n", 2 * n, sum(q))
        value = scherbak(q, n)
        _emit(args, [str(value)], _payload(value, Shape(2, n + 2), ",".join(map(str, q))))
        return EXIT_OK

    if cmd in ("nets", "webs"):
        n, a, b, c, d = args.n, args.a, args.b, args.c, args.d
        r = 2 if cmd == "nets" else 3
        expected = (r + 1) * n
        actual = net_balance(a, b, c, d) if cmd == "nets" else web_balance(a, b, c, d)
        if actual != expected:
            raise BalanceViolation(f"{cmd} need a + 2b + 2c + 3d = {r + 1}n", expected, actual)
        if cmd == "nets":
            value = count_nets(a, b, c, d, n)
        else:
            value = count_webs(a, b, c, d, n, workers=_workers(args))
        text = f"a={a},b={b},c={c},d={d}"
        _emit(args, [str(value)], _payload(value, Shape(r + 1, n + r + 1), text))
        return EXIT_OK

    if cmd == "hyperstalls":
        workers = _workers(args)
        if args.upto:
            rows = [(i, hyperstalls(i, workers=workers)) for i in range(args.n + 1)]
            payload = [_payload(v, Shape(4, i + 4), f"hyperstalls {i}") for i, v in rows]
            _emit(args, [f"{i} {v}" for i, v in rows], payload)
        else:
            value = hyperstalls(args.n, workers=workers)
            _emit(args, [str(value)], _payload(value, Shape(4, args.n + 4), f"hyperstalls {args.n}"))
        return EXIT_OK

    if cmd == "ranestad":
        value = ranestad(args.n, workers=_workers(args))
        _emit(args, [str(value)], _payload(value, Shape(4, args.n + 4), f"ranestad {args.n}"))
        return EXIT_OK

    if cmd == "bench":
        if args.repeats < 1:
            raise UsageError("--repeats must be at least 1")
        results = bench_suite(args.suite, args.n, repeats=args.repeats, workers=_workers(args))
        lines = [f"{'method':<18} {'median_s':>12} {'terms':>10}  value"]
        lines += [f"{r.method:<18} {r.seconds:>12.6f} {r.terms:>10}  {r.value}" for r in results]
        naive = next(r for r in results if r.method == "naive-leibniz")
        closed = next(r for r in results if r.method == "closed-form")
        speedup = naive.seconds / closed.seconds if closed.seconds else float("inf")
        lines.append(f"closed-form speedup over naive: {speedup:.2f}x")
        payload = {"suite": args.suite, "n": args.n, "results": [r.as_json() for r in results],
                   "speedup": speedup}
        _emit(args, lines, payload)
        return EXIT_OK

    raise UsageError(f"unknown command {cmd!r}")  # pragma: no cover


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _dispatch(args)
    except ParseError as err:
        print(f"parse error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except UsageError as err:
        print(f"usage error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except BalanceViolation as err:
        print(f"balance violation: {err}", file=sys.stderr)
        return EXIT_BALANCE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
