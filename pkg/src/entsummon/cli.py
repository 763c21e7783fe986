"""Command-line interface.

Exit codes: 0 feasible / success, 1 infeasible or failed check, 2 unknown,
64 usage error, 65 malformed input, 66 missing input file.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from . import gallery
from .access_pair import build_access_pair_graph
from .causal_conditions import OddCycle, Tag, verdict
from .causal_model import GraphError, causal_graph_from_spacetime
from .enumeration import (
    DEFAULT_SEED,
    LEMMAS,
    GraphClass,
    SizeGuardError,
    cross_check,
    graph_index,
    verdict_census,
)
from .graph_core import find_odd_cycle, two_quasi_clique_partitions, undirected_complement
from .io import (
    export_access_dot,
    export_dot,
    parse_graph,
    parse_scenario,
    render_access_graph,
    render_census,
    render_cross_check,
    render_simulation,
    render_verdict,
    render_witness,
    serialize_graph,
)
from .protocol_sim import call_pattern, simulate

EX_USAGE, EX_DATAERR, EX_NOINPUT = 64, 65, 66
EXIT_FOR_TAG = {Tag.FEASIBLE: 0, Tag.INFEASIBLE: 1, Tag.UNKNOWN: 2}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EX_USAGE, f"{self.prog}: error: {message}\n")


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _load_graph(path: str):
    return parse_graph(_read(path))


def _pair(text: str) -> tuple[int, int]:
    try:
        a, b = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("expected two comma-separated vertices, e.g. 2,4") from None
    return a, b


def _shard(text: str) -> tuple[int, int]:
    try:
        k, m = (int(x) for x in text.split("/"))
    except ValueError:
        raise argparse.ArgumentTypeError("expected k/m") from None
    if not (m >= 1 and 0 <= k < m):
        raise argparse.ArgumentTypeError("shard k/m needs 0 <= k < m")
    return k, m


def cmd_check(args, out) -> int:
    v = verdict(_load_graph(args.graph))
    out.write(render_verdict(v, args.format))
    return EXIT_FOR_TAG[v.tag]


def cmd_access_graph(args, out) -> int:
    out.write(render_access_graph(build_access_pair_graph(_load_graph(args.graph)), args.format))
    return 0


def cmd_simulate(args, out) -> int:
    g = _load_graph(args.graph)
    a, b = args.calls
    for v in (a, b):
        if not 1 <= v <= g.n:
            raise UsageError(f"called vertex {v} out of range 1..{g.n}")
    if a == b:
        raise UsageError("the two called vertices must differ")
    out.write(render_simulation(simulate(g, call_pattern(g.n, (a - 1, b - 1))), args.format))
    return 0


def cmd_partition(args, out) -> int:
    g = _load_graph(args.graph)
    parts = two_quasi_clique_partitions(g)
    if not parts:
        cycle = find_odd_cycle(undirected_complement(g))
        line = render_witness(OddCycle(cycle))[0]
        out.write(f"no-partition\t{line}\n" if args.format == "record" else f"no partition; {line}\n")
        return 1
    if not args.all:
        parts = parts[:1]
    for k1, k2 in parts:
        a = "{" + ",".join(f"D{v + 1}" for v in sorted(k1)) + "}"
        b = "{" + ",".join(f"D{v + 1}" for v in sorted(k2)) + "}"
        out.write(f"partition\t{a}\t{b}\n" if args.format == "record" else f"{a} | {b}\n")
    return 0


WATCHED = {"pentagon-with-one-way-chord": gallery.pentagon_with_one_way_chord}


def cmd_enumerate(args, out) -> int:
    cls = GraphClass(args.graph_class, args.n)
    if args.census:
        if args.sample is not None:
            raise UsageError("--census is exhaustive; drop --sample")
        watch = {}
        if cls.tag in ("all", "mixed"):
            watch = {name: g for name, make in WATCHED.items() if (g := make()).n == cls.n}
        census = verdict_census(cls, shard=args.shard, watch=list(watch.values()))
        names = {graph_index(cls, g): k for k, g in watch.items()}
        out.write(render_census(census, args.format, names))
        return 0
    lemmas = args.lemmas.split(",") if args.lemmas else None
    if args.sample is not None and args.shard is not None:
        raise UsageError("--shard applies to exhaustive runs only")
    report = cross_check(cls, lemmas, shard=args.shard, sample=args.sample, seed=args.seed)
    out.write(render_cross_check(report, args.format))
    return 0 if report.disagreements == 0 else 1


def cmd_from_spacetime(args, out) -> int:
    g = causal_graph_from_spacetime(parse_scenario(_read(args.scenario)))
    out.write(serialize_graph(g))
    return 0


def cmd_export_dot(args, out) -> int:
    g = _load_graph(args.graph)
    out.write(export_access_dot(build_access_pair_graph(g)) if args.access else export_dot(g))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="entsummon", description="Decide entanglement summoning tasks on causal graphs.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("text", "record"), default="text")

    s = sub.add_parser("check", parents=[fmt], help="decide feasibility of a graph file")
    s.add_argument("graph")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("access-graph", parents=[fmt], help="build the access-pair graph")
    s.add_argument("graph")
    s.set_defaults(func=cmd_access_graph)

    s = sub.add_parser("simulate", parents=[fmt], help="trace one call pattern")
    s.add_argument("graph")
    s.add_argument("--calls", type=_pair, required=True, metavar="I,J")
    s.set_defaults(func=cmd_simulate)

    s = sub.add_parser("partition", parents=[fmt], help="two-quasi-clique partition")
    s.add_argument("graph")
    s.add_argument("--all", action="store_true", help="list every ordered partition")
    s.set_defaults(func=cmd_partition)

    s = sub.add_parser("enumerate", parents=[fmt], help="lemma cross-checks or verdict census")
    s.add_argument("--class", dest="graph_class", choices=("all", "oriented", "bidirected", "mixed"),
                   default="all")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--lemmas", help="comma-separated names, or 'all'; choices: " + ", ".join(LEMMAS))
    s.add_argument("--shard", type=_shard, metavar="K/M")
    s.add_argument("--sample", type=int, metavar="COUNT")
    s.add_argument("--seed", type=int, default=DEFAULT_SEED)
    s.add_argument("--census", action="store_true", help="tabulate verdicts instead")
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("from-spacetime", help="causal graph of a Minkowski scenario")
    s.add_argument("scenario")
    s.set_defaults(func=cmd_from_spacetime)

    s = sub.add_parser("export-dot", help="DOT rendering of a graph or its access-pair graph")
    s.add_argument("graph")
    s.add_argument("--access", action="store_true")
    s.set_defaults(func=cmd_export_dot)
    return p


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except FileNotFoundError as exc:
        print(f"entsummon: cannot open {exc.filename}", file=sys.stderr)
        return EX_NOINPUT
    except (UsageError, SizeGuardError) as exc:
        print(f"entsummon: {exc}", file=sys.stderr)
        return EX_USAGE
    except (GraphError, ValueError) as exc:
        print(f"entsummon: {exc}", file=sys.stderr)
        return EX_DATAERR


if __name__ == "__main__":
    sys.exit(main())
