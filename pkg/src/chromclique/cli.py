"""Command line interface.

Exit status: 0 success, 1 usage error, 2 contract or claim violation,
3 malformed graph6 input, 4 enumeration capacity exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path
from typing import Sequence

from . import asymptotics, constructions, qsearch, recolor
from .errors import CapacityError, ContractViolation, DiscrepancyError, Graph6Error, TheoremFalsified
from .graph import Graph, bits, from_graph6, to_graph6
from .solvers import Coloring, chromatic_number, clique_number, independence_number

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CLAIM = 2
EXIT_GRAPH6 = 3
EXIT_CAPACITY = 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse exits 2 by default; 2 is reserved here
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: usage error: {message}\n")


def _emit(text: str, output: str | None) -> None:
    if output:
        path = Path(output)
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(text)
        except OSError as exc:
            raise UsageError(f"cannot write {output}: {exc.strerror}") from None
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _read_graph(path: str | None) -> Graph:
    if path in (None, "-"):
        text = sys.stdin.read()
    else:
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    lines = [l.strip() for l in text.splitlines() if l.strip()]
    if not lines:
        raise Graph6Error("empty graph6 input", 0)
    line = lines[0]
    if line.startswith(">>graph6<<"):
        line = line[len(">>graph6<<") :]
    return from_graph6(line)


def _read_coloring(path: str, n: int) -> Coloring:
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc.msg}") from None
    colors = data.get("colors") if isinstance(data, dict) else data
    if not isinstance(colors, list) or not all(isinstance(c, int) for c in colors):
        raise UsageError(f"{path}: expected a list of integer colors or {{\"colors\": [...]}}")
    if len(colors) != n:
        raise ContractViolation(f"coloring has {len(colors)} entries for a graph on {n} vertices")
    try:
        return Coloring(tuple(colors))
    except ValueError as exc:
        raise ContractViolation(str(exc)) from None


# --------------------------------------------------------------------------
# subcommands


def cmd_qtable(args) -> int:
    cap = qsearch.HARD_CAP if args.allow_n8 else qsearch.DEFAULT_CAP
    entries = qsearch.q_table(args.n_max, cap=cap, prune=not args.no_prune, jobs=args.jobs)
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "c", "q", "witness_graph6"])
        for e in entries:
            w.writerow(e.row())
        text = buf.getvalue()
    else:
        rows = [
            {"n": e.n, "c": e.c, "q": e.q, "witness_graph6": e.witness_graph6, "verified": qsearch.verify_entry(e)}
            for e in entries
        ]
        text = _dump({"entries": rows, "monotonicity_flags": qsearch.monotonicity_flags(entries)})
    _emit(text, args.output)
    if args.plot:
        from .plotting import plot_qtable

        print(f"figure written to {plot_qtable(entries, args.plot)}", file=sys.stderr)
    return EXIT_OK


def cmd_construct(args) -> int:
    report = constructions.build(args.family, args.n, args.k)
    if args.emit == "graph6":
        _emit(to_graph6(report.graph) + "\n", args.output)
        return EXIT_OK
    status = EXIT_OK
    try:
        constructions.verify_construction(report)
        verified = True
    except DiscrepancyError:
        verified = False
        status = EXIT_CLAIM
    chi, _ = chromatic_number(report.graph)
    omega, _ = clique_number(report.graph)
    _emit(
        _dump(
            {
                "family": report.family,
                "n": report.n,
                "k": report.k,
                "graph6": to_graph6(report.graph),
                "claimed_chi": report.claimed_chi,
                "claimed_omega": report.claimed_omega,
                "computed_chi": chi,
                "computed_omega": omega,
                "verified": verified,
            }
        ),
        args.output,
    )
    return status


def cmd_verify(args) -> int:
    if args.family:
        if args.n is None or args.k is None:
            raise UsageError("--family needs --n and --k")
        report = constructions.build(args.family, args.n, args.k)
        g = report.graph
        claims = {"chi": report.claimed_chi, "omega": report.claimed_omega}
    else:
        g = _read_graph(args.input)
        claims = {name: getattr(args, name) for name in ("chi", "omega", "alpha") if getattr(args, name) is not None}
        if not claims:
            raise UsageError("give at least one of --chi, --omega, --alpha to check")
    computed = {}
    if "chi" in claims:
        computed["chi"] = chromatic_number(g)[0]
    if "omega" in claims:
        computed["omega"] = clique_number(g)[0]
    if "alpha" in claims:
        computed["alpha"] = independence_number(g)[0]
    verified = computed == claims
    _emit(_dump({"graph6": to_graph6(g), "claimed": claims, "computed": computed, "verified": verified}), args.output)
    return EXIT_OK if verified else EXIT_CLAIM


def cmd_solve(args) -> int:
    g = _read_graph(args.input)
    wanted = [name for name in ("omega", "chi", "alpha") if getattr(args, name)]
    if not wanted:
        wanted = ["omega", "chi", "alpha"]
    results = {}
    for name in wanted:
        if name == "chi":
            value, coloring = chromatic_number(g)
            results[name] = {"value": value, "colors": list(coloring.colors),
                             "verified": coloring.is_proper(g) and coloring.num_colors == value}
        else:
            value, mask = (clique_number if name == "omega" else independence_number)(g)
            ok = (g.is_clique if name == "omega" else g.is_independent)(mask) and mask.bit_count() == value
            results[name] = {"value": value, "vertices": list(bits(mask)), "verified": ok}
    if args.json:
        _emit(_dump({"graph6": to_graph6(g), **results}), args.output)
    else:
        _emit("".join(f"{results[name]['value']}\n" for name in wanted), args.output)
    return EXIT_OK


def cmd_witness(args) -> int:
    g = _read_graph(args.input)
    k = args.k
    if args.coloring:
        coloring = _read_coloring(args.coloring, g.n)
    else:
        chi, coloring = chromatic_number(g)
        if chi != g.n - k:
            raise ContractViolation(f"chi = {chi} but n - k = {g.n - k}; pass --coloring to use another coloring")
    if k >= 5:
        out = recolor.theorem_witness(g, coloring, k)
    elif k >= 3:
        out = recolor.proposition_witness(g, coloring, k)
    else:
        raise ContractViolation(f"witness needs k >= 3, got {k}")
    payload = recolor.outcome_to_json(out, g, coloring)
    payload["bound"] = recolor.guaranteed_clique(g.n, k)
    _emit(_dump(payload), args.output)
    return EXIT_OK if payload["verified"] else EXIT_CLAIM


def cmd_scaling(args) -> int:
    report = asymptotics.scaling_check(
        args.q, args.family, args.sizes, seed=args.seed, repeats=args.repeats, jobs=args.jobs
    )
    _emit(_dump(report.to_json()), args.output)
    if args.plot:
        from .plotting import plot_scaling

        print(f"figure written to {plot_scaling(report, args.plot)}", file=sys.stderr)
    return EXIT_OK if report.verified else EXIT_CLAIM


# --------------------------------------------------------------------------
# parser


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for every random choice (default 0)")
    common.add_argument("--output", "-o", help="write the main output here instead of stdout")

    parser = _Parser(prog="chromclique", description="Clique numbers of graphs with large chromatic number.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("qtable", parents=[common], help="exhaustive Q(n, c) table")
    p.add_argument("--n-max", type=_positive, required=True)
    p.add_argument("--jobs", type=_positive, default=qsearch.default_jobs(),
                   help="worker processes (default: $CHROMCLIQUE_JOBS or 1)")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--allow-n8", action="store_true", help="raise the cap from 7 to 8 (slow)")
    p.add_argument("--no-prune", action="store_true", help="run the exact solvers on every graph")
    p.add_argument("--plot", help="also save a figure of the table to this path")
    p.set_defaults(func=cmd_qtable)

    p = sub.add_parser("construct", parents=[common], help="build an extremal construction")
    p.add_argument("--family", choices=sorted(constructions.FAMILIES), required=True)
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--k", type=_positive, required=True)
    p.add_argument("--emit", choices=["graph6", "json"], default="graph6")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", parents=[common], help="check claimed invariants with the exact solvers")
    p.add_argument("--family", choices=sorted(constructions.FAMILIES))
    p.add_argument("--n", type=_positive)
    p.add_argument("--k", type=_positive)
    p.add_argument("--input", help="graph6 file ('-' or omitted: stdin) when no --family is given")
    p.add_argument("--chi", type=int)
    p.add_argument("--omega", type=int)
    p.add_argument("--alpha", type=int)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("solve", parents=[common], help="chi, omega, alpha of a graph6 input")
    p.add_argument("--input", help="graph6 file ('-' or omitted: stdin)")
    p.add_argument("--omega", action="store_true")
    p.add_argument("--chi", action="store_true")
    p.add_argument("--alpha", action="store_true")
    p.add_argument("--json", action="store_true", help="JSON with certificates instead of bare numbers")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("witness", parents=[common], help="clique witness or improved coloring")
    p.add_argument("--input", required=True, help="graph6 file ('-': stdin)")
    p.add_argument("--k", type=_positive, required=True)
    p.add_argument("--coloring", help="JSON list of colors (default: an optimal coloring, which needs chi = n - k)")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("scaling", parents=[common], help="greedy MIS coloring growth on graphs with small omega")
    p.add_argument("--q", type=_positive, default=3)
    p.add_argument("--family", choices=sorted(asymptotics.FAMILIES), default="bipartite")
    p.add_argument("--sizes", type=_positive, nargs="+", default=[16, 24, 32, 48, 60])
    p.add_argument("--repeats", type=_positive, default=1)
    p.add_argument("--jobs", type=_positive, default=qsearch.default_jobs())
    p.add_argument("--plot", help="also save a log-log figure to this path")
    p.set_defaults(func=cmd_scaling)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Graph6Error as exc:
        print(f"malformed graph6: {exc}", file=sys.stderr)
        return EXIT_GRAPH6
    except CapacityError as exc:
        print(f"capacity exceeded: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except TheoremFalsified as exc:
        print(f"claim failed: {exc}", file=sys.stderr)
        print(json.dumps(exc.reproducer, sort_keys=True), file=sys.stderr)
        return EXIT_CLAIM
    except (ContractViolation, DiscrepancyError) as exc:
        print(f"contract violation: {exc}", file=sys.stderr)
        return EXIT_CLAIM
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
