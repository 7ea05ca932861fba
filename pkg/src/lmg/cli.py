"""Command line interface.

Exit codes: 0 affirmative or success, 1 negative verdict, 2 usage, parse or
precondition error.  Verdicts go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from lmg.classes import classify
from lmg.equivalence import distinguish, equivalent_mags
from lmg.errors import LMGError
from lmg.io import read_graph, serialize, write_graph
from lmg.oracle import models_equal
from lmg.representation import TARGETS, representable
from lmg.separation import independence_model
from lmg.transform import transform

OK, NO, ERROR = 0, 1, 2


def _cmd_classify(args) -> int:
    g = read_graph(args.file)
    for line in classify(g).lines():
        print(line)
    return OK


def _cmd_equiv(args) -> int:
    g1, g2 = read_graph(args.first), read_graph(args.second)
    if args.method == "oracle":
        same = models_equal(g1, g2)
    else:
        same = equivalent_mags(g1, g2, method=args.method)
    print("equivalent" if same else "not equivalent")
    if args.witness and not same:
        print(distinguish(g1, g2, args.method))
    return OK if same else NO


def _cmd_repr(args) -> int:
    g = read_graph(args.file)
    verdict = representable(g, args.target)
    print("possible" if verdict else "impossible")
    if args.explain and not verdict:
        print(verdict.explain())
    return OK if verdict else NO


def _cmd_transform(args) -> int:
    g = read_graph(args.file)
    report = transform(g, args.target, force=args.force)
    if args.output:
        write_graph(report.output, args.output)
        log_to = sys.stdout
    else:
        sys.stdout.write(serialize(report.output))
        log_to = sys.stderr  # keep stdout a parseable document
    if args.log:
        for line in report.lines():
            print(line, file=log_to)
    if args.force:
        print("warning: forced run, output not verified", file=sys.stderr)
    return OK


def _cmd_model(args) -> int:
    g = read_graph(args.file)
    for line in independence_model(g, max_condition_size=args.max_cond).lines():
        print(line)
    return OK


def _cmd_verify(args) -> int:
    g = read_graph(args.file)
    report = transform(g, args.target, verify=True)
    print("PASS" if report.verified else "FAIL")
    return OK if report.verified else NO


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lmg", description="Markov equivalence toolkit for mixed graphs")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("classify", help="class membership with witnesses")
    s.add_argument("file")
    s.set_defaults(func=_cmd_classify)

    s = sub.add_parser("equiv", help="decide Markov equivalence of two MAGs")
    s.add_argument("first")
    s.add_argument("second")
    s.add_argument("--method", choices=("order", "paths", "oracle"), default="order")
    s.add_argument("--witness", action="store_true", help="say why the graphs differ")
    s.set_defaults(func=_cmd_equiv)

    s = sub.add_parser("repr", help="does an equivalent graph of another class exist")
    s.add_argument("file")
    s.add_argument("--as", dest="target", choices=TARGETS, required=True)
    s.add_argument("--explain", action="store_true")
    s.set_defaults(func=_cmd_repr)

    s = sub.add_parser("transform", help="build an equivalent graph of a target class")
    s.add_argument("file")
    s.add_argument("--to", dest="target", choices=TARGETS, required=True)
    s.add_argument("-o", "--output")
    s.add_argument("--log", action="store_true", help="print every rewrite step")
    s.add_argument("--force", action="store_true", help="skip the representability check")
    s.set_defaults(func=_cmd_transform)

    s = sub.add_parser("model", help="print the independence model")
    s.add_argument("file")
    s.add_argument("--max-cond", type=int, default=None)
    s.set_defaults(func=_cmd_model)

    s = sub.add_parser("verify", help="transform and check the result by brute force")
    s.add_argument("file")
    s.add_argument("--to", dest="target", choices=TARGETS, required=True)
    s.set_defaults(func=_cmd_verify)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (LMGError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ERROR


if __name__ == "__main__":
    sys.exit(main())
