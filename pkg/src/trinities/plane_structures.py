"""Combinatorial maps, trinities, and the conversions between them.

A map is stored as darts with three permutations: the rotation ``sigma``
(counterclockwise successor around a vertex), the pairing ``alpha`` (other
end of the same edge), and the face permutation ``phi = sigma o alpha``.
Walking a face with ``phi`` keeps the face on the right, and the corner
between ``d`` and ``sigma(d)`` lies in the face containing ``sigma(d)``.
"""

from __future__ import annotations

import random
import re
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Literal, Mapping, Optional, Sequence

from .errors import (
    Disconnected,
    Infeasible,
    InvalidTrinity,
    NonPlanar,
    NotBalanced,
    TrinityError,
    UnknownVertex,
)

Color = Literal["R", "E", "V"]
COLORS: tuple[Color, ...] = ("R", "E", "V")
WHITE, BLACK = "W", "B"

# counterclockwise color order of a triangle, by tag
_CCW = {WHITE: ("R", "V", "E"), BLACK: ("R", "E", "V")}


def natural_key(ident: str) -> tuple:
    """Sort key so that ``v2`` precedes ``v10``."""
    parts = re.split(r"(\d+)", ident)
    return tuple((0, int(p)) if p.isdigit() else (1, p) for p in parts if p != "")


def sort_ids(ids: Iterable[str]) -> list[str]:
    return sorted(ids, key=natural_key)


def other_colors(c: Color) -> tuple[Color, Color]:
    return tuple(x for x in COLORS if x != c)  # type: ignore[return-value]


def third_color(a: Color, b: Color) -> Color:
    (c,) = [x for x in COLORS if x not in (a, b)]
    return c


def fresh_ids(prefix: str, count: int, taken: Iterable[str]) -> list[str]:
    used = set(taken)
    out: list[str] = []
    i = 0
    while len(out) < count:
        name = f"{prefix}{i}"
        if name not in used:
            out.append(name)
        i += 1
    return out


# ---------------------------------------------------------------------------
# Ribbon graphs
# ---------------------------------------------------------------------------

class PlaneGraph:
    """An embedded graph as a combinatorial map.

    Parameters
    ----------
    rotation:
        vertex id -> darts at that vertex in counterclockwise order.
    edges:
        edge id -> its two darts.
    """

    def __init__(self, rotation: Mapping[str, Sequence[str]], edges: Mapping[str, Sequence[str]]):
        self.rotation_lists: dict[str, tuple[str, ...]] = {v: tuple(ds) for v, ds in rotation.items()}
        self.edges: dict[str, tuple[str, str]] = {}
        self._vertex: dict[str, str] = {}
        self._sigma: dict[str, str] = {}
        self._sigma_inv: dict[str, str] = {}
        self._alpha: dict[str, str] = {}
        self._edge: dict[str, str] = {}
        for v, ds in self.rotation_lists.items():
            for i, d in enumerate(ds):
                if d in self._vertex:
                    raise TrinityError(f"dart {d!r} appears twice in the rotation")
                self._vertex[d] = v
                nxt = ds[(i + 1) % len(ds)]
                self._sigma[d] = nxt
                self._sigma_inv[nxt] = d
        for e, pair in edges.items():
            if len(pair) != 2:
                raise TrinityError(f"edge {e!r} must have exactly two darts")
            d1, d2 = pair
            if d1 == d2:
                raise TrinityError(f"edge {e!r} pairs a dart with itself")
            for d in (d1, d2):
                if d not in self._vertex:
                    raise TrinityError(f"edge {e!r} uses dart {d!r} not placed at any vertex")
                if d in self._edge:
                    raise TrinityError(f"dart {d!r} belongs to two edges")
                self._edge[d] = e
            self._alpha[d1], self._alpha[d2] = d2, d1
            self.edges[e] = (d1, d2)
        missing = [d for d in self._vertex if d not in self._edge]
        if missing:
            raise TrinityError(f"dart {missing[0]!r} belongs to no edge")
        self._faces: Optional[list[tuple[str, ...]]] = None
        self._face_index: Optional[dict[str, int]] = None

    # -- basic access -------------------------------------------------------
    @property
    def vertices(self) -> tuple[str, ...]:
        return tuple(self.rotation_lists)

    @property
    def darts(self) -> tuple[str, ...]:
        return tuple(d for ds in self.rotation_lists.values() for d in ds)

    def has_vertex(self, v: str) -> bool:
        return v in self.rotation_lists

    def check_vertex(self, v: str) -> None:
        if v not in self.rotation_lists:
            raise UnknownVertex(f"unknown vertex {v!r}")

    def sigma(self, d: str) -> str:
        return self._sigma[d]

    def sigma_inv(self, d: str) -> str:
        return self._sigma_inv[d]

    def alpha(self, d: str) -> str:
        return self._alpha[d]

    def phi(self, d: str) -> str:
        return self._sigma[self._alpha[d]]

    def vertex(self, d: str) -> str:
        return self._vertex[d]

    def edge(self, d: str) -> str:
        return self._edge[d]

    def endpoints(self, e: str) -> tuple[str, str]:
        d1, d2 = self.edges[e]
        return self._vertex[d1], self._vertex[d2]

    def other_end(self, e: str, v: str) -> str:
        a, b = self.endpoints(e)
        return b if a == v else a

    def degree(self, v: str) -> int:
        return len(self.rotation_lists[v])

    def dart_at(self, e: str, v: str) -> str:
        """A dart of edge ``e`` sitting at ``v`` (the first one for loops)."""
        for d in self.edges[e]:
            if self._vertex[d] == v:
                return d
        raise TrinityError(f"edge {e!r} is not incident to {v!r}")

    # -- faces --------------------------------------------------------------
    def faces(self) -> list[tuple[str, ...]]:
        """Face boundaries as ``phi``-orbits, in a deterministic order."""
        if self._faces is None:
            seen: set[str] = set()
            faces = []
            for d in self.darts:
                if d in seen:
                    continue
                orbit = []
                x = d
                while x not in seen:
                    seen.add(x)
                    orbit.append(x)
                    x = self.phi(x)
                faces.append(tuple(orbit))
            self._faces = faces
            self._face_index = {d: i for i, f in enumerate(faces) for d in f}
        return self._faces

    def face_of(self, d: str) -> int:
        """Index of the face walked by dart ``d`` (the face on its right)."""
        self.faces()
        return self._face_index[d]  # type: ignore[index]

    def corner_face(self, d: str) -> int:
        """Index of the face containing the corner from ``d`` to ``sigma(d)``."""
        return self.face_of(self._sigma[d])

    def num_faces(self) -> int:
        if not self._vertex:
            return 1
        return len(self.faces())

    def euler_characteristic(self) -> int:
        return len(self.rotation_lists) - len(self.edges) + self.num_faces()

    # -- global properties ---------------------------------------------------
    def is_connected(self) -> bool:
        vs = self.vertices
        if not vs:
            return False
        seen = {vs[0]}
        todo = [vs[0]]
        while todo:
            v = todo.pop()
            for d in self.rotation_lists[v]:
                w = self._vertex[self._alpha[d]]
                if w not in seen:
                    seen.add(w)
                    todo.append(w)
        return len(seen) == len(vs)

    def is_planar(self) -> bool:
        return self.is_connected() and self.euler_characteristic() == 2

    def require_plane(self) -> None:
        if not self.is_connected():
            raise Disconnected("graph is not connected")
        if self.euler_characteristic() != 2:
            raise NonPlanar(f"Euler characteristic is {self.euler_characteristic()}, not 2")

    def validate(self) -> list[str]:
        problems = []
        if not self.is_connected():
            problems.append("graph is not connected")
        elif self.euler_characteristic() != 2:
            problems.append(f"Euler characteristic is {self.euler_characteristic()}, not 2")
        return problems

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PlaneGraph) or type(self) is not type(other):
            return NotImplemented
        return self.rotation_lists == other.rotation_lists and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((tuple(self.rotation_lists.items()), tuple(self.edges.items())))

    def __repr__(self) -> str:
        return f"{type(self).__name__}(|V|={len(self.rotation_lists)}, |E|={len(self.edges)})"

    # -- canonical form ------------------------------------------------------
    def _dart_flag(self, d: str) -> int:
        return 0

    def canonical_code(self) -> tuple:
        """Orientation-preserving isomorphism invariant (complete for connected maps)."""
        if not self._vertex:
            return ("empty", len(self.rotation_lists))
        best = None
        for start in self.darts:
            label = {start: 0}
            order = [start]
            q = deque([start])
            while q:
                d = q.popleft()
                for nb in (self._sigma[d], self._alpha[d]):
                    if nb not in label:
                        label[nb] = len(order)
                        order.append(nb)
                        q.append(nb)
            code = tuple((label[self._sigma[d]], label[self._alpha[d]], self._dart_flag(d)) for d in order)
            if best is None or code < best:
                best = code
        return (len(self.rotation_lists), best)

    def is_isomorphic(self, other: "PlaneGraph") -> bool:
        if not (self.is_connected() and other.is_connected()):
            raise Disconnected("isomorphism test needs connected maps")
        return self.canonical_code() == other.canonical_code()


class RibbonDigraph(PlaneGraph):
    """A ribbon graph whose every edge (arc) is ``(tail-dart, head-dart)``."""

    def __init__(self, rotation: Mapping[str, Sequence[str]], arcs: Mapping[str, Sequence[str]]):
        super().__init__(rotation, arcs)
        self._is_tail = {}
        for t, h in self.edges.values():
            self._is_tail[t] = True
            self._is_tail[h] = False

    @property
    def arcs(self) -> dict[str, tuple[str, str]]:
        return self.edges

    def is_tail_dart(self, d: str) -> bool:
        return self._is_tail[d]

    def tail(self, a: str) -> str:
        return self._vertex[self.edges[a][0]]

    def head(self, a: str) -> str:
        return self._vertex[self.edges[a][1]]

    def out_arcs(self, v: str) -> list[str]:
        """Out-arcs of ``v`` in counterclockwise order."""
        return [self._edge[d] for d in self.rotation_lists[v] if self._is_tail[d]]

    def out_degree(self, v: str) -> int:
        return sum(1 for d in self.rotation_lists[v] if self._is_tail[d])

    def in_degree(self, v: str) -> int:
        return len(self.rotation_lists[v]) - self.out_degree(v)

    def is_balanced(self) -> bool:
        for ds in self.rotation_lists.values():
            k = len(ds)
            if k % 2:
                return False
            for i in range(k):
                if self._is_tail[ds[i]] == self._is_tail[ds[(i + 1) % k]]:
                    return False
        return True

    def is_eulerian(self) -> bool:
        return all(self.out_degree(v) == self.in_degree(v) for v in self.rotation_lists)

    def _dart_flag(self, d: str) -> int:
        return 1 if self._is_tail[d] else 0

    def underlying(self) -> PlaneGraph:
        return PlaneGraph(self.rotation_lists, self.edges)


def bidirect(g: PlaneGraph) -> RibbonDigraph:
    """Replace each edge by two opposite arcs lying side by side.

    Edge ``e`` with darts ``(d1, d2)`` becomes arcs ``e>`` (from d1's end)
    and ``e<``; around each vertex the outgoing copy comes first.
    """
    rotation: dict[str, list[str]] = {}
    arcs: dict[str, tuple[str, str]] = {}
    for v, ds in g.rotation_lists.items():
        rotation[v] = []
        for d in ds:
            rotation[v].extend([d + ">", d + "<"])
    for e, (d1, d2) in g.edges.items():
        arcs[e + ">"] = (d1 + ">", d2 + "<")
        arcs[e + "<"] = (d2 + ">", d1 + "<")
    return RibbonDigraph(rotation, arcs)


def planar_dual(g: PlaneGraph) -> PlaneGraph:
    """Dual map carrying the rotation of the opposite orientation.

    Dual vertices are named ``f0, f1, ...`` in face order (skipping names
    already used by primal vertices); dual edge and dart ids equal the
    primal ones.
    """
    g.require_plane()
    faces = g.faces()
    names = fresh_ids("f", len(faces), g.vertices)
    rotation = {names[i]: f for i, f in enumerate(faces)}
    return PlaneGraph(rotation, g.edges)


# ---------------------------------------------------------------------------
# Trinities
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BasePair:
    b0: str
    b1: str
    edge: str

    def __str__(self) -> str:
        return f"{self.b0}:{self.b1}:{self.edge}"

    @classmethod
    def parse(cls, text: str) -> "BasePair":
        parts = text.strip().split(":")
        if len(parts) != 3 or not all(parts):
            raise TrinityError(f"base must look like b0:b1:edge, got {text!r}")
        return cls(*parts)


@dataclass(frozen=True)
class Triangle:
    edges: tuple[str, str, str]
    tag: str


class Trinity:
    """A three-colored triangulation of the sphere, stored by edge ids.

    ``nodes`` maps node id to color, ``edges`` maps edge id to its two end
    nodes, and ``triangles`` lists three edge ids plus a ``W``/``B`` tag.
    Construction does not validate; call :meth:`validate` or
    :func:`validate_trinity`.
    """

    def __init__(self, nodes: Mapping[str, str], edges: Mapping[str, Sequence[str]],
                 triangles: Iterable[Triangle | Sequence]):
        self.nodes: dict[str, str] = dict(nodes)
        self.edges: dict[str, tuple[str, str]] = {e: tuple(ab) for e, ab in edges.items()}  # type: ignore[misc]
        tris = []
        for t in triangles:
            if isinstance(t, Triangle):
                tris.append(t)
            else:
                *es, tag = t
                tris.append(Triangle(tuple(es), tag))  # type: ignore[arg-type]
        self.triangles: list[Triangle] = tris
        self._cache: dict = {}

    def __repr__(self) -> str:
        counts = {c: len(self.color_class(c)) for c in COLORS}
        return f"Trinity(R={counts['R']}, E={counts['E']}, V={counts['V']}, triangles={len(self.triangles)})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Trinity):
            return NotImplemented
        return (self.nodes == other.nodes and self.edges == other.edges
                and self.triangles == other.triangles)

    def __hash__(self) -> int:
        return hash((tuple(self.nodes.items()), tuple(self.edges.items()), tuple(self.triangles)))

    # -- simple queries -----------------------------------------------------
    def color_class(self, c: str) -> list[str]:
        return [n for n, col in self.nodes.items() if col == c]

    def edge_color(self, e: str) -> str:
        a, b = self.edges[e]
        return third_color(self.nodes[a], self.nodes[b])  # type: ignore[arg-type]

    def triangle_nodes(self, i: int) -> dict[str, str]:
        """Color -> node for triangle ``i``."""
        cached = self._cache.setdefault("tri_nodes", {})
        if i not in cached:
            ends = {n for e in self.triangles[i].edges for n in self.edges[e]}
            cached[i] = {self.nodes[n]: n for n in ends}
        return cached[i]

    def triangle_edge(self, i: int, color: str) -> str:
        """The edge of triangle ``i`` of the given edge color."""
        for e in self.triangles[i].edges:
            if self.edge_color(e) == color:
                return e
        raise TrinityError(f"triangle {i} has no {color} edge")

    def white_triangles(self) -> list[int]:
        return [i for i, t in enumerate(self.triangles) if t.tag == WHITE]

    def edge_triangles(self) -> dict[str, list[int]]:
        if "edge_tris" not in self._cache:
            out: dict[str, list[int]] = {e: [] for e in self.edges}
            for i, t in enumerate(self.triangles):
                for e in t.edges:
                    if e in out:
                        out[e].append(i)
            self._cache["edge_tris"] = out
        return self._cache["edge_tris"]

    def _local_structure(self):
        """Rotation of edges and corner triangles around every node."""
        if "local" in self._cache:
            return self._cache["local"]
        rot: dict[str, dict[str, str]] = {n: {} for n in self.nodes}
        after: dict[str, dict[str, int]] = {n: {} for n in self.nodes}
        for i, t in enumerate(self.triangles):
            by_color = self.triangle_nodes(i)
            ccw = [by_color[c] for c in _CCW[t.tag]]
            for k in range(3):
                a, b, c = ccw[k], ccw[(k + 1) % 3], ccw[(k + 2) % 3]
                eab = self.triangle_edge(i, self.nodes[c])
                eac = self.triangle_edge(i, self.nodes[b])
                if eab in rot[a]:
                    raise InvalidTrinity([f"edge {eab} is followed twice around node {a}"])
                rot[a][eab] = eac
                after[a][eab] = i
        self._cache["local"] = (rot, after)
        return rot, after

    def rotation_at(self, n: str) -> list[str]:
        """Edges at ``n`` in counterclockwise order, starting from the smallest id."""
        rot, _ = self._local_structure()
        r = rot[n]
        if not r:
            return []
        start = min(r, key=natural_key)
        out = [start]
        x = r[start]
        while x != start:
            if x in out or x not in r or len(out) > len(r):
                raise InvalidTrinity([f"the edges around node {n} do not form a cycle"])
            out.append(x)
            x = r[x]
        return out

    def triangles_around(self, n: str) -> list[int]:
        """Triangles at ``n`` in counterclockwise order, aligned with :meth:`rotation_at`."""
        _, after = self._local_structure()
        return [after[n][e] for e in self.rotation_at(n)]

    def validate(self) -> list[str]:
        return validate_trinity(self)

    def require_valid(self) -> None:
        problems = validate_trinity(self)
        if problems:
            raise InvalidTrinity(problems)


def validate_trinity(t: Trinity) -> list[str]:
    """List every violated invariant; an empty list means ``t`` is a valid trinity."""
    problems: list[str] = []
    for n, c in t.nodes.items():
        if c not in COLORS:
            problems.append(f"node {n} has unknown color {c!r}")
    edges_ok = True
    for e, ends in t.edges.items():
        if len(ends) != 2 or any(x not in t.nodes for x in ends):
            problems.append(f"edge {e} has an unknown endpoint")
            edges_ok = False
        elif t.nodes[ends[0]] == t.nodes[ends[1]]:
            problems.append(f"edge {e} joins two nodes of the same color")
            edges_ok = False
    for i, tri in enumerate(t.triangles):
        if tri.tag not in (WHITE, BLACK):
            problems.append(f"triangle {i} has unknown tag {tri.tag!r}")
        if len(tri.edges) != 3 or len(set(tri.edges)) != 3:
            problems.append(f"triangle {i} does not have three distinct edges")
            continue
        if any(e not in t.edges for e in tri.edges):
            problems.append(f"triangle {i} references an unknown edge")
            continue
        if not edges_ok:
            continue
        ends = [set(t.edges[e]) for e in tri.edges]
        nodes = set().union(*ends)
        colors = sorted(t.nodes[n] for n in nodes)
        if len(nodes) != 3 or colors != ["E", "R", "V"] or any(len(s) != 2 for s in ends):
            problems.append(f"triangle {i} is not a closed triple with one node of each color")
    if problems:
        return problems

    covering = t.edge_triangles()
    for e, tris in covering.items():
        if len(tris) != 2:
            problems.append(f"edge {e} lies in {len(tris)} triangles instead of 2")
        elif t.triangles[tris[0]].tag == t.triangles[tris[1]].tag:
            problems.append(f"edge {e} with two same-tag triangles")
    nv, ne, nt = len(t.nodes), len(t.edges), len(t.triangles)
    if 2 * ne != 3 * nt:
        problems.append(f"edge/triangle count mismatch: 2*{ne} != 3*{nt}")
    if nv - ne + nt != 2:
        problems.append(f"Euler count fails: {nv} - {ne} + {nt} != 2")

    # connectivity of the 1-skeleton
    if t.nodes:
        adj: dict[str, set[str]] = {n: set() for n in t.nodes}
        for a, b in t.edges.values():
            adj[a].add(b)
            adj[b].add(a)
        start = next(iter(t.nodes))
        seen = {start}
        todo = [start]
        while todo:
            x = todo.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    todo.append(y)
        if len(seen) != len(t.nodes):
            problems.append("trinity is not connected")

    if problems:
        return problems
    # every node's link must be a single cycle
    try:
        rot, _ = t._local_structure()
    except InvalidTrinity as exc:
        return problems + exc.problems
    for n in t.nodes:
        incident = {e for e, ab in t.edges.items() if n in ab}
        r = rot[n]
        if set(r) != incident:
            problems.append(f"node {n} has an edge without a following edge in the rotation")
            continue
        try:
            cycle = t.rotation_at(n)
        except InvalidTrinity as exc:
            problems.extend(exc.problems)
            continue
        if len(cycle) != len(incident):
            problems.append(f"the triangles around node {n} do not form a single disk")
    return problems


# ---------------------------------------------------------------------------
# Derived graphs
# ---------------------------------------------------------------------------

def derived_bipartite(t: Trinity, color: str) -> PlaneGraph:
    """``G_color``: the other two classes joined by the ``color`` edges.

    Darts are named ``<edge>@<node>``; edge ids are kept.
    """
    rot: dict[str, list[str]] = {}
    for n in t.nodes:
        if t.nodes[n] == color:
            continue
        rot[n] = [f"{e}@{n}" for e in t.rotation_at(n) if t.edge_color(e) == color]
    edges = {}
    for e, (a, b) in t.edges.items():
        if t.edge_color(e) == color:
            edges[e] = (f"{e}@{a}", f"{e}@{b}")
    return PlaneGraph(rot, edges)


def derived_digraph(t: Trinity, color: str) -> RibbonDigraph:
    """``D_color`` on the ``color`` class, one arc per ``color`` edge.

    An arc runs from the ``color`` corner of its black triangle to that of
    its white triangle.  Its tail dart is ``<edge>+``, its head dart ``<edge>-``.
    """
    covering = t.edge_triangles()
    tail_of: dict[str, str] = {}
    head_of: dict[str, str] = {}
    for e in t.edges:
        if t.edge_color(e) != color:
            continue
        for i in covering[e]:
            corner = t.triangle_nodes(i)[color]
            if t.triangles[i].tag == BLACK:
                tail_of[e] = corner
            else:
                head_of[e] = corner
    rot: dict[str, list[str]] = {}
    for n in t.nodes:
        if t.nodes[n] != color:
            continue
        darts = []
        for i in t.triangles_around(n):
            e = t.triangle_edge(i, color)
            darts.append(e + ("+" if t.triangles[i].tag == BLACK else "-"))
        rot[n] = darts
    arcs = {e: (e + "+", e + "-") for e in t.edges if t.edge_color(e) == color}
    return RibbonDigraph(rot, arcs)


# ---------------------------------------------------------------------------
# Building trinities
# ---------------------------------------------------------------------------

def build_trinity_from_bipartite(h: PlaneGraph, colors: Mapping[str, str],
                                 face_names: Optional[Sequence[str]] = None) -> Trinity:
    """Trinity whose red graph is the plane bipartite graph ``h``.

    ``colors`` assigns ``V`` or ``E`` to each vertex of ``h``.  Red nodes
    sit in the faces of ``h``; corner edges are named ``c.<dart>``.
    """
    h.require_plane()
    if not h.edges:
        raise Infeasible("a trinity needs at least one edge")
    for v in h.vertices:
        if colors.get(v) not in ("V", "E"):
            raise TrinityError(f"vertex {v!r} must be colored V or E")
    for e in h.edges:
        a, b = h.endpoints(e)
        if colors[a] == colors[b]:
            raise TrinityError(f"edge {e!r} does not join the two classes")
    faces = h.faces()
    if face_names is None:
        face_names = fresh_ids("f", len(faces), h.vertices)
    if len(set(face_names)) != len(faces) or set(face_names) & set(h.vertices):
        raise TrinityError("face names must be fresh and distinct")

    nodes: dict[str, str] = {v: colors[v] for v in h.vertices}
    for name in face_names:
        nodes[name] = "R"
    edges: dict[str, tuple[str, str]] = dict((e, h.endpoints(e)) for e in h.edges)
    for y in h.darts:
        name = "c." + y
        if name in edges:
            raise TrinityError(f"corner edge id {name!r} collides with an edge id")
        edges[name] = (h.vertex(y), face_names[h.corner_face(y)])
    triangles = []
    for y in h.darts:
        n = h.vertex(y)
        tag = WHITE if colors[n] == "V" else BLACK
        other_corner = h.sigma_inv(h.alpha(y))
        triangles.append(Triangle((h.edge(y), "c." + y, "c." + other_corner), tag))
    return Trinity(nodes, edges, triangles)


def subdivide(g: PlaneGraph) -> tuple[PlaneGraph, dict[str, str]]:
    """Put a new node on every edge; returns the graph and its V/E coloring.

    The new node takes the edge id.  The half of edge ``e`` at dart ``d``
    becomes edge ``d`` with darts ``d`` (old end) and ``d^`` (new node).
    """
    clash = set(g.vertices) & set(g.edges)
    if any(d + "^" in g._vertex for d in g.darts):
        raise TrinityError("dart ids ending in '^' are reserved for subdivision")
    if clash:
        raise TrinityError(f"vertex and edge ids overlap: {sort_ids(clash)[0]!r}")
    rot: dict[str, list[str]] = {v: list(ds) for v, ds in g.rotation_lists.items()}
    edges: dict[str, tuple[str, str]] = {}
    colors = {v: "V" for v in g.vertices}
    for e, (d1, d2) in g.edges.items():
        rot[e] = [d1 + "^", d2 + "^"]
        colors[e] = "E"
        edges[d1] = (d1, d1 + "^")
        edges[d2] = (d2, d2 + "^")
    return PlaneGraph(rot, edges), colors


def build_trinity_from_plane_graph(g: PlaneGraph) -> Trinity:
    """Barycentric trinity: violet vertices, emerald edges, red faces."""
    g.require_plane()
    if not g.edges:
        raise Infeasible("a trinity needs at least one edge")
    h, colors = subdivide(g)
    names = plane_graph_face_nodes(g)
    face_names = []
    for face in h.faces():
        # darts at original vertices keep their ids, and see the same face on their right
        d = next(x for x in face if h.vertex(x) in g.rotation_lists)
        face_names.append(names[g.face_of(d)])
    return build_trinity_from_bipartite(h, colors, face_names)


def plane_graph_face_nodes(g: PlaneGraph) -> list[str]:
    """Red node ids used by :func:`build_trinity_from_plane_graph`, by face index of ``g``."""
    return fresh_ids("f", g.num_faces(), list(g.vertices) + list(g.edges))


def build_trinity_from_balanced_digraph(d: RibbonDigraph) -> Trinity:
    """Trinity whose violet digraph is ``d``.

    Clockwise faces (walked by tail darts) get red nodes, the others
    emerald nodes.  Arc ids become violet edge ids.
    """
    d.require_plane()
    if not d.is_balanced():
        raise NotBalanced("in- and out-darts do not alternate around every vertex")
    if not d.edges:
        raise Infeasible("a trinity needs at least one arc")
    faces = d.faces()
    taken = list(d.vertices)
    red_names = iter(fresh_ids("r", len(faces), taken))
    em_names = iter(fresh_ids("s", len(faces), taken))
    face_node = []
    nodes: dict[str, str] = {v: "V" for v in d.vertices}
    for f in faces:
        if d.is_tail_dart(f[0]):
            name = next(red_names)
            nodes[name] = "R"
        else:
            name = next(em_names)
            nodes[name] = "E"
        face_node.append(name)
    edges: dict[str, tuple[str, str]] = {}
    for y in d.darts:
        edges["c." + y] = (d.vertex(y), face_node[d.corner_face(y)])
    triangles = []
    for a, (tl, hd) in d.arcs.items():
        if a in edges:
            raise TrinityError(f"arc id {a!r} collides with a corner edge id")
        red = face_node[d.face_of(tl)]
        em = face_node[d.face_of(hd)]
        edges[a] = (red, em)
        triangles.append(Triangle(("c." + hd, "c." + d.sigma_inv(hd), a), WHITE))
        triangles.append(Triangle(("c." + d.sigma_inv(tl), "c." + tl, a), BLACK))
    return Trinity(nodes, edges, triangles)


def rotate_colors(t: Trinity, shift: int = 1) -> Trinity:
    """Recolor R->E->V->R ``shift`` times; tags are preserved."""
    step = {"R": "E", "E": "V", "V": "R"}
    nodes = {}
    for n, c in t.nodes.items():
        for _ in range(shift % 3):
            c = step[c]
        nodes[n] = c
    return Trinity(nodes, t.edges, t.triangles)


# ---------------------------------------------------------------------------
# Random instances
# ---------------------------------------------------------------------------

def random_plane_graph(n_vertices: int, n_edges: int, seed: int) -> PlaneGraph:
    """Connected genus-0 multigraph on ``v1..vn`` with edges ``e1..em``.

    A random tree is grown by attaching new vertices at random corners;
    further edges join two corners of one face.  Loops appear only when
    there is a single vertex.
    """
    if n_vertices < 1 or n_edges < n_vertices - 1:
        raise Infeasible(f"cannot build a connected graph with {n_vertices} vertices and {n_edges} edges")
    rng = random.Random(seed)
    rot: dict[str, list[str]] = {f"v{i + 1}": [] for i in range(n_vertices)}
    edges: dict[str, tuple[str, str]] = {}
    count = 0

    def new_edge() -> tuple[str, str, str]:
        nonlocal count
        count += 1
        e = f"e{count}"
        return e, e + "+", e + "-"

    for i in range(1, n_vertices):
        v = f"v{i + 1}"
        u = f"v{rng.randint(1, i)}"
        e, d1, d2 = new_edge()
        pos = rng.randint(0, len(rot[u]))
        rot[u].insert(pos, d1)
        rot[v].append(d2)
        edges[e] = (d1, d2)

    while count < n_edges:
        g = PlaneGraph(rot, edges)
        if not g.edges:
            # single vertex: a loop
            e, d1, d2 = new_edge()
            rot["v1"].extend([d1, d2])
            edges[e] = (d1, d2)
            continue
        candidates = []
        for face in g.faces():
            # the corner ending at dart z sits just before z in its vertex's list
            corners = [(g.vertex(z), z) for z in face]
            if n_vertices == 1 or len({v for v, _ in corners}) > 1:
                candidates.append(corners)
        corners = rng.choice(candidates)
        while True:
            (va, za), (vb, zb) = rng.sample(corners, 2) if len(corners) > 1 else (corners[0], corners[0])
            if n_vertices == 1 or va != vb:
                break
        e, d1, d2 = new_edge()
        if za == zb:
            idx = rot[va].index(za)
            rot[va][idx:idx] = [d1, d2]
        else:
            rot[va].insert(rot[va].index(za), d1)
            rot[vb].insert(rot[vb].index(zb), d2)
        edges[e] = (d1, d2)
    return PlaneGraph(rot, edges)


def random_balanced_digraph(n_vertices: int, n_edges: int, seed: int) -> RibbonDigraph:
    """A balanced plane digraph grown from :func:`random_plane_graph`.

    Odd vertices are paired up along a spanning tree and those tree edges
    doubled, so every degree is even; faces are then two-colored and each
    edge is oriented with the first color on its right.  The result has
    between ``n_edges`` and ``n_edges + n_vertices - 1`` arcs.
    """
    g = random_plane_graph(n_vertices, n_edges, seed)
    rot = {v: list(ds) for v, ds in g.rotation_lists.items()}
    edges = dict(g.edges)
    # parity fix along a BFS tree
    parent: dict[str, tuple[str, str]] = {}
    order = [g.vertices[0]]
    seen = {order[0]}
    for v in order:
        for d in g.rotation_lists[v]:
            w = g.vertex(g.alpha(d))
            if w not in seen:
                seen.add(w)
                parent[w] = (v, g.edge(d))
                order.append(w)
    odd = {v: g.degree(v) % 2 for v in g.vertices}
    for v in reversed(order[1:]):
        if odd[v]:
            p, e = parent[v]
            odd[v] = 0
            odd[p] ^= 1
            d1, d2 = edges[e]
            c1, c2 = e + "x+", e + "x-"
            a, b = g.vertex(d1), g.vertex(d2)
            # the copy sits just counterclockwise of d1 at one end and just clockwise of d2 at the other
            rot[a].insert(rot[a].index(d1) + 1, c1)
            rot[b].insert(rot[b].index(d2), c2)
            edges[e + "x"] = (c1, c2)
    h = PlaneGraph(rot, edges)
    # two-color faces: faces sharing an edge get opposite colors
    faces = h.faces()
    color = [-1] * len(faces)
    color[0] = 0
    todo = [0]
    while todo:
        f = todo.pop()
        for z in faces[f]:
            other = h.face_of(h.alpha(z))
            if color[other] == -1:
                color[other] = 1 - color[f]
                todo.append(other)
            elif color[other] == color[f]:
                raise TrinityError("internal: faces are not two-colorable")
    arcs = {}
    for e, (d1, d2) in h.edges.items():
        arcs[e] = (d1, d2) if color[h.face_of(d1)] == 0 else (d2, d1)
    out = RibbonDigraph(rot, arcs)
    assert out.is_balanced()
    return out


def plane_graph_from_positions(positions: Mapping[str, tuple[float, float]],
                               edges: Mapping[str, tuple[str, str]]) -> PlaneGraph:
    """Straight-line drawing -> map.  Edge ``e = (u, w)`` gets darts ``e+`` at u, ``e-`` at w."""
    import math

    around: dict[str, list[tuple[float, str]]] = {v: [] for v in positions}
    pairs = {}
    for e, (u, w) in edges.items():
        for a, b, d in ((u, w, e + "+"), (w, u, e + "-")):
            (xa, ya), (xb, yb) = positions[a], positions[b]
            around[a].append((math.atan2(yb - ya, xb - xa), d))
        pairs[e] = (e + "+", e + "-")
    rot = {v: [d for _, d in sorted(lst)] for v, lst in around.items()}
    return PlaneGraph(rot, pairs)
