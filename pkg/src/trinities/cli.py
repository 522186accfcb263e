"""Command-line front end.

Input files use the line grammar described in :mod:`trinities.formats`:

``planegraph v1``
    ``vertex <id>: <dart> ...`` (counterclockwise) and ``edge <id>: <dart> <dart>``
``planedigraph v1``
    ``vertex <id>: <dart> ...`` and ``arc <id>: <tail-dart> <head-dart>``
``trinity v1``
    ``node <id> <R|E|V>``, ``edge <id>: <node> <node>``,
    ``triangle: <edge> <edge> <edge> <W|B>``

plus single-line ``chips:``, ``hypertree side=<C>:`` and
``arborescence root=<v> dir=<in|out>:`` records.  ``#`` comments run to the
end of a line.  Commands that take a trinity also accept a plane graph or a
balanced plane digraph and build its trinity first.

Exit status: 0 on success, 1 for invalid input, 2 when verification fails.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Optional, Sequence, TextIO

from . import formats
from .errors import FormatError, TrinityError
from .plane_structures import (
    BasePair,
    build_trinity_from_balanced_digraph,
    build_trinity_from_bipartite,
    build_trinity_from_plane_graph,
    sort_ids,
)

EXIT_OK, EXIT_INVALID, EXIT_VERIFY = 0, 1, 2


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # type: ignore[override]
        raise _UsageError(f"{self.prog}: {message}")


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise _UsageError(f"cannot read {path}: {exc.strerror}") from exc


def _build_parser() -> _Parser:
    p = _Parser(prog="trinities", description="Sandpile groups of trinities and their canonical actions.")
    sub = p.add_subparsers(dest="command", required=True)

    tri = sub.add_parser("trinity", help="build or validate trinities")
    tsub = tri.add_subparsers(dest="action", required=True)
    b = tsub.add_parser("build", help="build a trinity file")
    b.add_argument("--from", dest="source", choices=("planegraph", "digraph", "bipartite"), required=True)
    b.add_argument("--violet", help="comma-separated violet vertices (bipartite input)")
    b.add_argument("input")
    v = tsub.add_parser("validate", help="check every trinity invariant")
    v.add_argument("input")

    g = sub.add_parser("group", help="sandpile group of a derived digraph")
    g.add_argument("--color", choices=("V", "E", "R"), default="V")
    g.add_argument("input")

    h = sub.add_parser("hypertrees", help="list the hypertrees of one class")
    h.add_argument("--class", dest="cls", choices=("V", "E", "R"), required=True)
    h.add_argument("--host", choices=("V", "E", "R"), required=True)
    h.add_argument("input")

    j = sub.add_parser("jaeger", help="violet-cut Jaeger trees of the red graph")
    j.add_argument("--base", required=True, help="b0:b1:edge")
    j.add_argument("input")

    tr = sub.add_parser("tour", help="tour of a spanning tree")
    tr.add_argument("--tree", required=True, help="comma-separated tree edges")
    tr.add_argument("--base", required=True, help="b0:b1:edge")
    tr.add_argument("input")

    be = sub.add_parser("bernardi", help="Bernardi action")
    besub = be.add_subparsers(dest="action", required=True)
    ba = besub.add_parser("act")
    ba.add_argument("--chips", required=True)
    ba.add_argument("--hypertree", required=True)
    ba.add_argument("--base", help="b0:b1:edge; omitted means the canonical action")
    ba.add_argument("input")

    ro = sub.add_parser("rotor", help="rotor-routing action")
    rosub = ro.add_subparsers(dest="action", required=True)
    ra = rosub.add_parser("act")
    ra.add_argument("--root", required=True)
    ra.add_argument("--chips", required=True)
    ra.add_argument("--arb", required=True)
    ra.add_argument("input")

    ve = sub.add_parser("verify", help="seeded randomized verification")
    ve.add_argument("--seed", type=int)
    ve.add_argument("--instances", type=int, default=50)
    ve.add_argument("--max-vertices", type=int, default=6)
    ve.add_argument("--max-edges", type=int, default=12)
    ve.add_argument("--jobs", type=int, default=1)
    ve.add_argument("--check", action="append", help="restrict to the named check (repeatable)")
    ve.add_argument("input", nargs="?", help="verify this one structure file instead of a random corpus")

    ex = sub.add_parser("export", help="export to other formats")
    exsub = ex.add_subparsers(dest="action", required=True)
    dot = exsub.add_parser("dot")
    dot.add_argument("input")
    return p


def _load_trinity(path: str):
    return _parse_file(path, formats.load_trinity)


def _cmd_trinity(args, out: TextIO) -> int:
    kind = _parse_file(args.input, formats.detect_kind)
    if args.action == "validate":
        if kind != "trinity":
            t = _load_trinity(args.input)
        else:
            t = _parse_file(args.input, formats.parse_trinity, False)
        problems = t.validate()
        if problems:
            for msg in problems:
                out.write(f"invalid: {msg}\n")
            return EXIT_INVALID
        out.write(f"valid: {len(t.nodes)} nodes, {len(t.edges)} edges, {len(t.triangles)} triangles\n")
        return EXIT_OK
    if args.source == "planegraph":
        t = build_trinity_from_plane_graph(_parse_file(args.input, formats.parse_plane_graph))
    elif args.source == "digraph":
        t = build_trinity_from_balanced_digraph(_parse_file(args.input, formats.parse_plane_digraph))
    else:
        if not args.violet:
            raise _UsageError("--from bipartite needs --violet")
        g = _parse_file(args.input, formats.parse_plane_graph)
        violet = set(args.violet.split(","))
        for v in violet:
            g.check_vertex(v)
        t = build_trinity_from_bipartite(g, {v: "V" if v in violet else "E" for v in g.vertices})
    out.write(formats.serialize_trinity(t))
    return EXIT_OK


def _cmd_group(args, out: TextIO) -> int:
    from .sandpile_core import group_descriptor
    from .trinity_group import digraph_of

    t = _load_trinity(args.input)
    g = group_descriptor(digraph_of(t, args.color))
    out.write(f"order={g.order} factors=[{', '.join(map(str, g.invariant_factors))}]\n")
    return EXIT_OK


def _cmd_hypertrees(args, out: TextIO) -> int:
    from .hypertrees_jaeger import enumerate_hypertrees
    from .trinity_group import graph_of

    if args.cls == args.host:
        raise _UsageError("--class and --host must differ")
    t = _load_trinity(args.input)
    nodes = sort_ids(t.color_class(args.cls))
    for f in enumerate_hypertrees(graph_of(t, args.host), nodes):
        out.write(formats.serialize_hypertree(args.cls, {v: f[v] for v in nodes}))
    return EXIT_OK


def _cmd_jaeger(args, out: TextIO) -> int:
    from .hypertrees_jaeger import jaeger_table
    from .trinity_group import graph_of

    t = _load_trinity(args.input)
    base = BasePair.parse(args.base)
    table = jaeger_table(graph_of(t, "R"), base, t.color_class("V"))
    em = sort_ids(t.color_class("E"))
    for tree, f in zip(table.trees, table.other_values):
        record = formats.serialize_hypertree("E", {e: f[e] for e in em}).rstrip("\n")
        out.write(" ".join(tree.sorted_edges()) + " | " + record + "\n")
    return EXIT_OK


def _cmd_tour(args, out: TextIO) -> int:
    from .hypertrees_jaeger import SpanningTree, bernardi_break_divisor, tour
    from .trinity_group import graph_of

    base = BasePair.parse(args.base)
    tree = SpanningTree.of(x for x in args.tree.split(",") if x)
    if _parse_file(args.input, formats.detect_kind) == "planegraph":
        g = _parse_file(args.input, formats.parse_plane_graph)
        out.write(tour(g, tree, base).trace() + "\n")
        bd = bernardi_break_divisor(g, tree, base).chips
        out.write(formats.serialize_chips({v: bd[v] for v in sort_ids(g.vertices)}))
    else:
        out.write(tour(graph_of(_load_trinity(args.input), "R"), tree, base).trace() + "\n")
    return EXIT_OK


def _cmd_bernardi(args, out: TextIO) -> int:
    from .actions import bernardi_act

    t = _load_trinity(args.input)
    x = _parse_file(args.chips, formats.parse_chips)
    side, f = _parse_file(args.hypertree, formats.parse_hypertree)
    if side != "E":
        raise _UsageError("the Bernardi action acts on emerald hypertrees (side=E)")
    base = BasePair.parse(args.base) if args.base else None
    res = bernardi_act(t, x, f, base)
    em = sort_ids(t.color_class("E"))
    out.write(formats.serialize_hypertree("E", {e: res[e] for e in em}))
    return EXIT_OK


def _cmd_rotor(args, out: TextIO) -> int:
    from .actions import rotor_act
    from .trinity_group import digraph_of

    if _parse_file(args.input, formats.detect_kind) == "planedigraph":
        d = _parse_file(args.input, formats.parse_plane_digraph)
    else:
        d = digraph_of(_load_trinity(args.input), "V")
    x = _parse_file(args.chips, formats.parse_chips)
    a = _parse_file(args.arb, formats.parse_arborescence)
    out.write(formats.serialize_arborescence(rotor_act(d, args.root, x, a)))
    return EXIT_OK


def _cmd_verify(args, out: TextIO) -> int:
    from .verification import CHECK_NAMES, verify_corpus, verify_theorems

    seed = args.seed
    if seed is None:
        env = os.environ.get("TRINITY_SEED")
        try:
            seed = int(env) if env else 0
        except ValueError:
            raise _UsageError(f"TRINITY_SEED must be an integer, got {env!r}") from None
    for name in args.check or ():
        if name not in CHECK_NAMES:
            raise _UsageError(f"unknown check {name!r}")
    if args.instances < 1 or args.max_vertices < 2 or args.jobs < 1:
        raise _UsageError("--instances and --jobs must be positive and --max-vertices at least 2")
    if args.input:
        t = _load_trinity(args.input)
        g = None
        if _parse_file(args.input, formats.detect_kind) == "planegraph":
            g = _parse_file(args.input, formats.parse_plane_graph)
        report = verify_theorems(t, seed, g, args.input, args.check)
        out.write(f"seed={seed} file={args.input}\n")
    else:
        report = verify_corpus(seed, args.instances, args.max_vertices, args.max_edges, args.jobs, args.check)
        out.write(f"seed={seed} instances={args.instances} max-vertices={args.max_vertices} "
                  f"max-edges={args.max_edges}\n")
    out.write(report.table())
    if report.passed:
        out.write("all checks passed\n")
        return EXIT_OK
    out.write(report.counterexamples())
    return EXIT_VERIFY


def _cmd_export(args, out: TextIO) -> int:
    out.write(formats.trinity_to_dot(_load_trinity(args.input)))
    return EXIT_OK


def _parse_file(path: str, parser, *extra):
    """Parse a file, prefixing format errors with its path."""
    text = _read(path)
    try:
        return parser(text, *extra)
    except FormatError as exc:
        raise FormatError(f"{path}: {exc}") from exc


_COMMANDS = {
    "trinity": _cmd_trinity,
    "group": _cmd_group,
    "hypertrees": _cmd_hypertrees,
    "jaeger": _cmd_jaeger,
    "tour": _cmd_tour,
    "bernardi": _cmd_bernardi,
    "rotor": _cmd_rotor,
    "verify": _cmd_verify,
    "export": _cmd_export,
}


def run(argv: Sequence[str], stdout: Optional[TextIO] = None, stderr: Optional[TextIO] = None) -> int:
    out = stdout if stdout is not None else sys.stdout
    err = stderr if stderr is not None else sys.stderr
    parser = _build_parser()
    try:
        args = parser.parse_args(list(argv))
        return _COMMANDS[args.command](args, out)
    except _UsageError as exc:
        err.write(f"{exc}\n")
        return EXIT_INVALID
    except FormatError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INVALID
    except (TrinityError, KeyError) as exc:
        err.write(f"error: {type(exc).__name__}: {exc}\n")
        return EXIT_INVALID


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
