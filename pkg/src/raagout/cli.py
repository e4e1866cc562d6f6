"""Command-line front end: ``raagout analyze | verify | dot``."""
from __future__ import annotations

import argparse
import random
import sys
from pathlib import Path

from .automorphisms import InvalidGeneratorError, parse_generator_word
from .dot import SELECTORS, emit_dot
from .graph import GraphFormatError, free_product_factors, is_connected, load_graph
from .order import DisconnectedGraphError, LemmaViolation
from .report import analyze, dumps, kernel_report
from .suites import NEEDS_CONNECTED, SUITES, atlas_graphs, random_graph, run_suite

EXIT_OK = 0
EXIT_USAGE = 2  # argparse's own code
EXIT_PARSE = 3
EXIT_VERIFY = 4
EXIT_INPUT = 5
EXIT_INTERNAL = 6


def _write(text: str, out: str | None):
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def cmd_analyze(args) -> int:
    g = load_graph(args.graph)
    doc = analyze(g)
    if args.word is not None:
        if not is_connected(g):
            raise DisconnectedGraphError("--word needs a connected graph")
        doc["kernel"] = kernel_report(g, parse_generator_word(g, args.word), args.radius)
    _write(dumps(doc), args.output)
    return EXIT_OK


def _random_inputs(n: int, p: float, count: int, seed: int, connected: bool):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        g = random_graph(rng, rng.randint(1, n), p)
        if not connected or is_connected(g):
            out.append(g)
    return out


def cmd_verify(args) -> int:
    connected = args.suite in NEEDS_CONNECTED
    if args.random is not None:
        n, p, count = args.random
        graphs = _random_inputs(int(n), float(p), int(count), args.seed, connected)
    elif args.atlas is not None:
        graphs = atlas_graphs(args.atlas, connected=connected)
    elif args.graph is not None:
        g = load_graph(args.graph)
        graphs = free_product_factors(g)[1] if connected else [g]
    else:
        print("verify: give a graph file, --random n p count, or --atlas n", file=sys.stderr)
        return EXIT_USAGE
    result = run_suite(args.suite, graphs, seed=args.seed, radius=args.radius)
    _write(dumps(result.to_dict()), args.output)
    status = "pass" if result.ok else "FAIL"
    print(f"{args.suite}: {status} ({result.cases} graphs, {result.checks} checks, "
          f"{len(result.violations)} violations)", file=sys.stderr)
    return EXIT_OK if result.ok else EXIT_VERIFY


def cmd_dot(args) -> int:
    g = load_graph(args.graph)
    _write(emit_dot(g, args.which), args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="raagout", description="Combinatorics and outer automorphisms of RAAGs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="full analysis report of a graph (JSON)")
    p.add_argument("graph")
    p.add_argument("-o", "--output")
    p.add_argument("--word", help="generator word to add a kernel report for, e.g. 't(a,b) pc(b;d)'")
    p.add_argument("--radius", type=int, default=6)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("verify", help="run an invariant suite")
    p.add_argument("graph", nargs="?")
    p.add_argument("--random", nargs=3, metavar=("N", "P", "COUNT"),
                   help="COUNT seeded random graphs with at most N vertices and edge probability P")
    p.add_argument("--atlas", type=int, metavar="N", help="every graph with at most N <= 7 vertices")
    p.add_argument("--suite", required=True, choices=sorted(SUITES))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--radius", type=int, default=6)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("dot", help="DOT text for the graph, its class poset or its maximal classes")
    p.add_argument("graph")
    p.add_argument("--which", required=True, choices=SELECTORS)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_dot)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except GraphFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (InvalidGeneratorError, DisconnectedGraphError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except LemmaViolation as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
