"""Line-based text formats.

Every file is UTF-8; ``#`` starts a comment running to the end of the line,
blank lines are ignored, and tokens are separated by whitespace.  Ids use
letters, digits and ``_ . ^ + - < > @``.

``planegraph v1``::

    vertex <id>: <dart> <dart> ...      # counterclockwise
    edge <id>: <dart> <dart>

``planedigraph v1``::

    vertex <id>: <dart> ...
    arc <id>: <tail-dart> <head-dart>

``trinity v1``::

    node <id> <R|E|V>
    edge <id>: <node> <node>
    triangle: <edge> <edge> <edge> <W|B>

Single-line records::

    chips: v1=3 v2=-1
    hypertree side=E: e1=0 e2=1
    arborescence root=v1 dir=in: a1 a2

Serializers emit exactly this layout (single spaces, one record per line,
final newline), so canonical files survive a parse/serialize round trip
byte for byte.
"""

from __future__ import annotations

import re
from typing import Iterator, Optional

from .errors import FormatError, TrinityError
from .plane_structures import PlaneGraph, RibbonDigraph, Triangle, Trinity, sort_ids, validate_trinity
from .hypertrees_jaeger import Hypertree
from .sandpile_core import Arborescence, ChipConfig

ID_RE = re.compile(r"[A-Za-z0-9_.^+<>@\-]+\Z")
INT_RE = re.compile(r"[+-]?\d+\Z")


class _Line:
    def __init__(self, number: int, raw: str):
        self.number = number
        self.raw = raw
        body = raw.split("#", 1)[0]
        self.body = body.rstrip()
        self.tokens: list[tuple[int, str]] = [(m.start() + 1, m.group()) for m in re.finditer(r"\S+", self.body)]

    def error(self, message: str, token_index: Optional[int] = None) -> FormatError:
        col = None
        if token_index is not None and token_index < len(self.tokens):
            col = self.tokens[token_index][0]
        elif token_index is not None:
            col = len(self.body) + 1
        return FormatError(message, self.number, col)


def _lines(text: str) -> Iterator[_Line]:
    for i, raw in enumerate(text.splitlines(), start=1):
        line = _Line(i, raw)
        if line.tokens:
            yield line


def _check_id(line: _Line, k: int, what: str) -> str:
    if k >= len(line.tokens):
        raise line.error(f"missing {what}", k)
    tok = line.tokens[k][1]
    if not ID_RE.match(tok):
        raise line.error(f"invalid {what} {tok!r}", k)
    return tok


def _expect_header(lines: list[_Line], header: str) -> None:
    if not lines:
        raise FormatError(f"empty input, expected {header!r}", 1, 1)
    first = lines[0]
    if " ".join(t for _, t in first.tokens) != header:
        raise first.error(f"expected header {header!r}", 0)


def _split_colon(line: _Line, keyword: str) -> tuple[str, list[tuple[int, str]]]:
    """``keyword <id>: rest`` -> (id, rest tokens with their indices)."""
    if len(line.tokens) < 2:
        raise line.error(f"{keyword} line needs an id", 1)
    tok = line.tokens[1][1]
    if not tok.endswith(":"):
        raise line.error(f"expected ':' after the {keyword} id", 1)
    ident = tok[:-1]
    if not ID_RE.match(ident):
        raise line.error(f"invalid {keyword} id {ident!r}", 1)
    return ident, [(k, t) for k, (_, t) in enumerate(line.tokens) if k >= 2]


def _parse_map(text: str, header: str, pair_keyword: str):
    lines = list(_lines(text))
    _expect_header(lines, header)
    rotation: dict[str, list[str]] = {}
    pairs: dict[str, tuple[str, str]] = {}
    dart_home: dict[str, int] = {}
    dart_used: dict[str, int] = {}
    pair_lines: list[tuple[_Line, int]] = []
    for line in lines[1:]:
        kw = line.tokens[0][1]
        if kw == "vertex":
            v, rest = _split_colon(line, "vertex")
            if v in rotation:
                raise line.error(f"duplicate vertex {v!r}", 1)
            darts = []
            for k, tok in rest:
                if not ID_RE.match(tok):
                    raise line.error(f"invalid dart id {tok!r}", k)
                if tok in dart_home:
                    raise line.error(f"dart {tok!r} already placed on line {dart_home[tok]}", k)
                dart_home[tok] = line.number
                darts.append(tok)
            rotation[v] = darts
        elif kw == pair_keyword:
            e, rest = _split_colon(line, pair_keyword)
            if e in pairs:
                raise line.error(f"duplicate {pair_keyword} {e!r}", 1)
            if len(rest) != 2:
                raise line.error(f"{pair_keyword} needs exactly two darts", rest[2][0] if len(rest) > 2 else len(line.tokens))
            for k, tok in rest:
                if not ID_RE.match(tok):
                    raise line.error(f"invalid dart id {tok!r}", k)
                if tok in dart_used:
                    raise line.error(f"dart {tok!r} already used on line {dart_used[tok]}", k)
                dart_used[tok] = line.number
            pairs[e] = (rest[0][1], rest[1][1])
            pair_lines.append((line, 2))
        else:
            raise line.error(f"unknown record {kw!r}", 0)
    for (line, _), (e, (d1, d2)) in zip(pair_lines, pairs.items()):
        for k, d in ((2, d1), (3, d2)):
            if d not in dart_home:
                raise line.error(f"dart {d!r} is not placed at any vertex", k)
    for d, n in dart_home.items():
        if d not in dart_used:
            raise FormatError(f"dart {d!r} belongs to no {pair_keyword}", n)
    return rotation, pairs


def parse_plane_graph(text: str) -> PlaneGraph:
    rotation, edges = _parse_map(text, "planegraph v1", "edge")
    return PlaneGraph(rotation, edges)


def parse_plane_digraph(text: str) -> RibbonDigraph:
    rotation, arcs = _parse_map(text, "planedigraph v1", "arc")
    return RibbonDigraph(rotation, arcs)


def _serialize_map(g: PlaneGraph, header: str, keyword: str) -> str:
    out = [header]
    for v, ds in g.rotation_lists.items():
        out.append(f"vertex {v}:" + "".join(" " + d for d in ds))
    for e, (d1, d2) in g.edges.items():
        out.append(f"{keyword} {e}: {d1} {d2}")
    return "\n".join(out) + "\n"


def serialize_plane_graph(g: PlaneGraph) -> str:
    return _serialize_map(g, "planegraph v1", "edge")


def serialize_plane_digraph(d: RibbonDigraph) -> str:
    return _serialize_map(d, "planedigraph v1", "arc")


def parse_trinity(text: str, validate: bool = True) -> Trinity:
    """Parse a trinity file; with ``validate`` every invariant is enforced."""
    lines = list(_lines(text))
    _expect_header(lines, "trinity v1")
    nodes: dict[str, str] = {}
    edges: dict[str, tuple[str, str]] = {}
    triangles: list[Triangle] = []
    for line in lines[1:]:
        kw = line.tokens[0][1]
        if kw == "node":
            if len(line.tokens) != 3:
                raise line.error("node line is 'node <id> <R|E|V>'", min(len(line.tokens), 3))
            n = _check_id(line, 1, "node id")
            c = line.tokens[2][1]
            if c not in ("R", "E", "V"):
                raise line.error(f"unknown color {c!r}", 2)
            if n in nodes:
                raise line.error(f"duplicate node {n!r}", 1)
            nodes[n] = c
        elif kw == "edge":
            e, rest = _split_colon(line, "edge")
            if len(rest) != 2:
                raise line.error("edge needs exactly two nodes", len(line.tokens) if len(rest) < 2 else rest[2][0])
            if e in edges:
                raise line.error(f"duplicate edge {e!r}", 1)
            for k, tok in rest:
                if tok not in nodes:
                    raise line.error(f"unknown node {tok!r}", k)
            edges[e] = (rest[0][1], rest[1][1])
        elif kw == "triangle:":
            toks = [t for _, t in line.tokens[1:]]
            if len(toks) != 4:
                raise line.error("triangle line is 'triangle: <edge> <edge> <edge> <W|B>'", min(len(line.tokens), 5))
            for k in range(1, 4):
                if toks[k - 1] not in edges:
                    raise line.error(f"triangle references unknown edge {toks[k - 1]!r}", k)
            if toks[3] not in ("W", "B"):
                raise line.error(f"unknown tag {toks[3]!r}", 4)
            triangles.append(Triangle((toks[0], toks[1], toks[2]), toks[3]))
        else:
            raise line.error(f"unknown record {kw!r}", 0)
    t = Trinity(nodes, edges, triangles)
    if validate:
        problems = validate_trinity(t)
        if problems:
            raise FormatError("invalid trinity: " + "; ".join(problems))
    return t


def serialize_trinity(t: Trinity) -> str:
    out = ["trinity v1"]
    for n, c in t.nodes.items():
        out.append(f"node {n} {c}")
    for e, (a, b) in t.edges.items():
        out.append(f"edge {e}: {a} {b}")
    for tri in t.triangles:
        out.append("triangle: " + " ".join(tri.edges) + " " + tri.tag)
    return "\n".join(out) + "\n"


def _single_record(text: str, what: str) -> _Line:
    lines = list(_lines(text))
    if len(lines) != 1:
        raise FormatError(f"expected exactly one {what} record, found {len(lines)}",
                          lines[1].number if len(lines) > 1 else 1, 1)
    return lines[0]


def _parse_assignments(line: _Line, start: int) -> dict[str, int]:
    vals: dict[str, int] = {}
    for k in range(start, len(line.tokens)):
        tok = line.tokens[k][1]
        if "=" not in tok:
            raise line.error(f"expected <id>=<integer>, got {tok!r}", k)
        key, val = tok.split("=", 1)
        if not ID_RE.match(key):
            raise line.error(f"invalid id {key!r}", k)
        if not INT_RE.match(val):
            raise line.error(f"invalid integer {val!r}", k)
        if key in vals:
            raise line.error(f"duplicate entry for {key!r}", k)
        vals[key] = int(val)
    return vals


def parse_chips(text: str) -> ChipConfig:
    line = _single_record(text, "chips")
    if line.tokens[0][1] != "chips:":
        raise line.error("expected 'chips:'", 0)
    return ChipConfig(_parse_assignments(line, 1))


def serialize_chips(x: ChipConfig) -> str:
    return "chips:" + "".join(f" {k}={x[k]}" for k in x) + "\n"


def parse_hypertree(text: str) -> tuple[str, Hypertree]:
    line = _single_record(text, "hypertree")
    if line.tokens[0][1] != "hypertree" or len(line.tokens) < 2:
        raise line.error("expected 'hypertree side=<R|E|V>:'", 0)
    m = re.fullmatch(r"side=([REV]):", line.tokens[1][1])
    if not m:
        raise line.error("expected 'side=<R|E|V>:'", 1)
    vals = _parse_assignments(line, 2)
    for k, v in vals.items():
        if v < 0:
            raise line.error(f"negative hypertree value at {k!r}", 2 + list(vals).index(k))
    return m.group(1), Hypertree(vals)


def serialize_hypertree(side: str, f: ChipConfig) -> str:
    return f"hypertree side={side}:" + "".join(f" {k}={f[k]}" for k in f) + "\n"


def parse_arborescence(text: str) -> Arborescence:
    line = _single_record(text, "arborescence")
    toks = [t for _, t in line.tokens]
    if len(toks) < 3 or toks[0] != "arborescence":
        raise line.error("expected 'arborescence root=<id> dir=<in|out>:'", 0)
    m = re.fullmatch(r"root=(.+)", toks[1])
    if not m or not ID_RE.match(m.group(1)):
        raise line.error("expected root=<id>", 1)
    m2 = re.fullmatch(r"dir=(in|out):", toks[2])
    if not m2:
        raise line.error("expected dir=in: or dir=out:", 2)
    arcs = []
    for k in range(3, len(toks)):
        if not ID_RE.match(toks[k]):
            raise line.error(f"invalid arc id {toks[k]!r}", k)
        if toks[k] in arcs:
            raise line.error(f"duplicate arc {toks[k]!r}", k)
        arcs.append(toks[k])
    return Arborescence(m.group(1), frozenset(arcs), m2.group(1))


def serialize_arborescence(a: Arborescence) -> str:
    return f"arborescence root={a.root} dir={a.direction}:" + "".join(" " + x for x in sort_ids(a.arcs)) + "\n"


def detect_kind(text: str) -> str:
    for line in _lines(text):
        head = " ".join(t for _, t in line.tokens)
        for kind in ("planegraph v1", "planedigraph v1", "trinity v1"):
            if head == kind:
                return kind.split()[0]
        first = line.tokens[0][1]
        if first in ("chips:", "hypertree", "arborescence"):
            return first.rstrip(":")
        raise line.error("unrecognized file type", 0)
    raise FormatError("empty input", 1, 1)


def load_trinity(text: str) -> Trinity:
    """A trinity from any of the three structure formats."""
    from .plane_structures import build_trinity_from_balanced_digraph, build_trinity_from_plane_graph

    kind = detect_kind(text)
    try:
        if kind == "trinity":
            return parse_trinity(text)
        if kind == "planegraph":
            return build_trinity_from_plane_graph(parse_plane_graph(text))
        if kind == "planedigraph":
            return build_trinity_from_balanced_digraph(parse_plane_digraph(text))
    except FormatError:
        raise
    except TrinityError as exc:
        raise FormatError(str(exc)) from exc
    raise FormatError(f"a {kind} file does not describe a trinity")


def trinity_to_dot(t: Trinity) -> str:
    """Graphviz rendering; white-triangle boundary edges are dashed."""
    fill = {"R": "red", "E": "green", "V": "violet"}
    white_edges = {e for i in t.white_triangles() for e in t.triangles[i].edges}
    out = ["graph trinity {"]
    for n, c in t.nodes.items():
        out.append(f'  "{n}" [color={fill[c]}, style=filled, fillcolor={fill[c]}];')
    for e, (a, b) in t.edges.items():
        style = ", style=dashed" if e in white_edges else ""
        out.append(f'  "{a}" -- "{b}" [label="{e}", color={fill[t.edge_color(e)]}{style}];')
    out.append("}")
    return "\n".join(out) + "\n"
