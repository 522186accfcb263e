"""The white-triangle lattice of a trinity and the isomorphisms it induces.

Nodes of all three colors index one integer vector space; each white
triangle contributes the characteristic vector of its three corners.  Two
vectors are white-triangle equivalent when they differ by a lattice vector.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional

from .errors import DegreeNonzero, NotFound, TrinityError
from .lattice import HermiteForm, SmithForm, hermite_normal_form, smith_normal_form
from .plane_structures import (
    COLORS,
    PlaneGraph,
    RibbonDigraph,
    Trinity,
    build_trinity_from_plane_graph,
    derived_bipartite,
    derived_digraph,
    natural_key,
    plane_graph_face_nodes,
    third_color,
)
from .sandpile_core import ChipConfig, PicClass, canonical_rep, group_descriptor


def digraph_of(t: Trinity, color: str) -> RibbonDigraph:
    """``D_color``, built once per trinity so its classes compare consistently."""
    key = ("digraph", color)
    if key not in t._cache:
        t._cache[key] = derived_digraph(t, color)
    return t._cache[key]


def graph_of(t: Trinity, color: str) -> PlaneGraph:
    key = ("bipartite", color)
    if key not in t._cache:
        t._cache[key] = derived_bipartite(t, color)
    return t._cache[key]


@dataclass(frozen=True)
class TriChipConfig:
    """Chips on all three color classes of one trinity."""

    x_V: ChipConfig
    x_E: ChipConfig
    x_R: ChipConfig

    @classmethod
    def single(cls, color: str, x: Mapping[str, int]) -> "TriChipConfig":
        parts = {"V": ChipConfig(), "E": ChipConfig(), "R": ChipConfig()}
        parts[color] = ChipConfig(x)
        return cls(parts["V"], parts["E"], parts["R"])

    @classmethod
    def from_vector(cls, t: Trinity, vec: Iterable[int]) -> "TriChipConfig":
        parts: dict[str, dict[str, int]] = {"V": {}, "E": {}, "R": {}}
        for n, v in zip(t.nodes, vec):
            parts[t.nodes[n]][n] = v
        return cls(ChipConfig(parts["V"]), ChipConfig(parts["E"]), ChipConfig(parts["R"]))

    def part(self, color: str) -> ChipConfig:
        return {"V": self.x_V, "E": self.x_E, "R": self.x_R}[color]

    def vector(self, t: Trinity) -> list[int]:
        return [self.part(c)[n] for n, c in t.nodes.items()]

    def __sub__(self, other: "TriChipConfig") -> "TriChipConfig":
        return TriChipConfig(self.x_V - other.x_V, self.x_E - other.x_E, self.x_R - other.x_R)

    def __add__(self, other: "TriChipConfig") -> "TriChipConfig":
        return TriChipConfig(self.x_V + other.x_V, self.x_E + other.x_E, self.x_R + other.x_R)


@dataclass(frozen=True, eq=False)
class WhiteTriangleMatrix:
    """Rows: trinity nodes in order.  Columns: white triangles in order."""

    nodes: tuple[str, ...]
    triangles: tuple[int, ...]
    rows: tuple[tuple[int, ...], ...]
    hermite: HermiteForm

    def column(self, k: int) -> list[int]:
        return [r[k] for r in self.rows]


def white_triangle_matrix(t: Trinity) -> WhiteTriangleMatrix:
    if "wtm" not in t._cache:
        nodes = tuple(t.nodes)
        idx = {n: i for i, n in enumerate(nodes)}
        whites = tuple(t.white_triangles())
        rows = [[0] * len(whites) for _ in nodes]
        for k, i in enumerate(whites):
            for n in t.triangle_nodes(i).values():
                rows[idx[n]][k] += 1
        herm = hermite_normal_form(rows, ncols=len(whites))
        t._cache["wtm"] = WhiteTriangleMatrix(nodes, whites, tuple(map(tuple, rows)), herm)
    return t._cache["wtm"]


def triangle_vector(t: Trinity, i: int) -> TriChipConfig:
    parts = {c: {n: 1} for c, n in t.triangle_nodes(i).items()}
    return TriChipConfig(ChipConfig(parts["V"]), ChipConfig(parts["E"]), ChipConfig(parts["R"]))


def white_triangle_equivalent(t: Trinity, a: TriChipConfig, b: TriChipConfig) -> bool:
    m = white_triangle_matrix(t)
    return m.hermite.contains((a - b).vector(t))


# ---------------------------------------------------------------------------
# phi / psi
# ---------------------------------------------------------------------------

def _transfer_system(t: Trinity, src: str, dst: str) -> tuple[SmithForm, list[str], list[str], list[str]]:
    key = ("transfer", src, dst)
    if key not in t._cache:
        m = white_triangle_matrix(t)
        third = third_color(src, dst)  # type: ignore[arg-type]
        src_nodes = [n for n in m.nodes if t.nodes[n] == src]
        third_nodes = [n for n in m.nodes if t.nodes[n] == third]
        dst_nodes = [n for n in m.nodes if t.nodes[n] == dst]
        pos = {n: i for i, n in enumerate(m.nodes)}
        stacked = [list(m.rows[pos[n]]) for n in src_nodes + third_nodes]
        t._cache[key] = (smith_normal_form(stacked, ncols=len(m.triangles)), src_nodes, third_nodes, dst_nodes)
    return t._cache[key]


def _as_chips(x) -> ChipConfig:
    return x.representative if isinstance(x, PicClass) else ChipConfig(x)


def _transfer(t: Trinity, src: str, dst: str, x) -> ChipConfig:
    """``y`` on ``dst`` with ``(x on src, y on dst, 0)`` a white-triangle combination."""
    if src == dst or src not in COLORS or dst not in COLORS:
        raise TrinityError(f"need two different colors, got {src!r} and {dst!r}")
    chips = _as_chips(x)
    if chips.degree != 0:
        raise DegreeNonzero(f"degree is {chips.degree}, not 0")
    smith, src_nodes, third_nodes, dst_nodes = _transfer_system(t, src, dst)
    for v in chips:
        if t.nodes.get(v) != src:
            raise TrinityError(f"{v!r} is not a {src} node")
    b = [chips[n] for n in src_nodes] + [0] * len(third_nodes)
    c = smith.solve(b)
    if c is None:
        raise NotFound("no white-triangle combination transports these chips")
    m = white_triangle_matrix(t)
    pos = {n: i for i, n in enumerate(m.nodes)}
    return ChipConfig({n: sum(r * ck for r, ck in zip(m.rows[pos[n]], c)) for n in dst_nodes})


def phi(t: Trinity, src: str, dst: str, x) -> PicClass:
    """``[y]`` with ``(x, 0, 0)`` white-triangle equivalent to ``(0, -y, 0)``."""
    return canonical_rep(digraph_of(t, dst), _transfer(t, src, dst, x))


def psi(t: Trinity, src: str, dst: str, x) -> PicClass:
    """``[y]`` with ``(x, 0, 0)`` white-triangle equivalent to ``(0, y, 0)``."""
    return canonical_rep(digraph_of(t, dst), -_transfer(t, src, dst, x))


@dataclass(frozen=True)
class TransportWitness:
    """Integer weights on white triangles and the chips they leave behind."""

    weights: Mapping[int, int]
    result: TriChipConfig
    rounds: int


def chip_transport(t: Trinity, x: Mapping[str, int], src: str = "V", dst: str = "E") -> TransportWitness:
    """Move chips off ``src`` by alternating weights along shortest paths of ``G_dst``.

    Each round pairs a vertex holding a positive amount with one holding a
    negative amount, picks the breadth-first shortest path (smallest ids
    first) between them and weights the white triangles on it
    ``-1, +1, -1, ...`` starting at the positive end.
    """
    chips = _as_chips(x)
    if chips.degree != 0:
        raise DegreeNonzero(f"degree is {chips.degree}, not 0")
    third = third_color(src, dst)  # type: ignore[arg-type]
    g = graph_of(t, dst)
    white_on = {}
    for e in g.edges:
        (w,) = [i for i in t.edge_triangles()[e] if t.triangles[i].tag == "W"]
        white_on[e] = w
    current = {n: 0 for n in t.nodes}
    for v in chips:
        if t.nodes.get(v) != src:
            raise TrinityError(f"{v!r} is not a {src} node")
        current[v] += chips[v]
    weights: dict[int, int] = {}
    rounds = 0

    def key(n: str):
        return natural_key(n)

    while True:
        pos = sorted((n for n in current if t.nodes[n] == src and current[n] > 0), key=key)
        if not pos:
            break
        v = pos[0]
        neg = {n for n in current if t.nodes[n] == src and current[n] < 0}
        # breadth-first search from v with sorted neighbor order
        prev: dict[str, Optional[tuple[str, str]]] = {v: None}
        q = deque([v])
        target = None
        while q and target is None:
            a = q.popleft()
            nbrs = sorted(((g.other_end(g.edge(d), a), g.edge(d)) for d in g.rotation_lists[a]),
                          key=lambda p: (key(p[0]), key(p[1])))
            for b, e in nbrs:
                if b not in prev:
                    prev[b] = (a, e)
                    if b in neg:
                        target = b
                        break
                    q.append(b)
        if target is None:
            raise TrinityError("graph is disconnected")
        path = []
        b = target
        while prev[b] is not None:
            a, e = prev[b]  # type: ignore[misc]
            path.append(e)
            b = a
        path.reverse()
        sign = -1
        for e in path:
            w = white_on[e]
            weights[w] = weights.get(w, 0) + sign
            for n in t.triangle_nodes(w).values():
                current[n] += sign
            sign = -sign
        rounds += 1
    if any(current[n] for n in current if t.nodes[n] in (src, third)):
        raise TrinityError("internal: transport left chips behind")
    result = TriChipConfig.from_vector(t, [current[n] for n in t.nodes])
    return TransportWitness({k: v for k, v in sorted(weights.items()) if v}, result, rounds)


def aw_structure(t: Trinity) -> tuple[int, list[int]]:
    """Free rank and torsion invariant factors of the trinity sandpile group."""
    m = white_triangle_matrix(t)
    smith = smith_normal_form([list(r) for r in m.rows], ncols=len(m.triangles))
    return len(m.nodes) - smith.rank, smith.invariant_factors


# ---------------------------------------------------------------------------
# Reference-orientation isomorphism for plane graphs
# ---------------------------------------------------------------------------

def cori_rossin_iso(g: PlaneGraph, x, flipped: Iterable[str] = (), trinity: Optional[Trinity] = None) -> PicClass:
    """Class on the bidirected dual (the red digraph of ``g``'s trinity).

    Every edge is oriented from its first dart unless listed in ``flipped``;
    the dual edge is the primal one turned clockwise.  ``x`` is solved as an
    integer combination of edge coboundaries and the same coefficients are
    applied on the dual side.
    """
    g.require_plane()
    chips = _as_chips(x)
    if chips.degree != 0:
        raise DegreeNonzero(f"degree is {chips.degree}, not 0")
    for v in chips:
        g.check_vertex(v)
    t = trinity if trinity is not None else build_trinity_from_plane_graph(g)
    faces = plane_graph_face_nodes(g)
    flip = set(flipped)
    vs = list(g.vertices)
    edges = list(g.edges)
    pos = {v: i for i, v in enumerate(vs)}
    rows = [[0] * len(edges) for _ in vs]
    dual: list[tuple[str, str]] = []
    for k, e in enumerate(edges):
        d1, d2 = g.edges[e]
        tail_dart = d2 if e in flip else d1
        tail, head = g.vertex(tail_dart), g.vertex(g.alpha(tail_dart))
        rows[pos[head]][k] += 1
        rows[pos[tail]][k] -= 1
        right = faces[g.face_of(tail_dart)]
        left = faces[g.face_of(g.alpha(tail_dart))]
        dual.append((left, right))  # tail, head of the turned edge
    herm = hermite_normal_form(rows, ncols=len(edges))
    a = herm.solve([chips[v] for v in vs])
    if a is None:
        raise NotFound("degree-0 configuration not in the coboundary lattice")
    y: dict[str, int] = {}
    for coeff, (tl, hd) in zip(a, dual):
        y[hd] = y.get(hd, 0) + coeff
        y[tl] = y.get(tl, 0) - coeff
    return canonical_rep(digraph_of(t, "R"), y)


def group_order(t: Trinity, color: str) -> int:
    return group_descriptor(digraph_of(t, color)).order
