"""Hypertrees, tours, Jaeger trees and the Bernardi process on plane bipartite graphs.

Functions take the graph as a :class:`PlaneGraph` and name one vertex
class explicitly (``side`` for the class carrying a hypertree, ``cut_side``
for the class at which non-tree edges must be cut).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Collection, Iterable, Mapping, Optional

from .errors import InvalidBase, NotAHypertree, NotBipartite, TooLarge, TrinityError
from .plane_structures import BasePair, PlaneGraph, Trinity, derived_bipartite, sort_ids
from .sandpile_core import ChipConfig

SPANNING_TREE_LIMIT = 10**6
SUBSET_TEST_LIMIT = 16


class Hypertree(ChipConfig):
    """Nonnegative vector on one vertex class, realizable as tree degrees minus one."""

    __slots__ = ()

    def __repr__(self) -> str:
        return "Hypertree(" + super().__repr__()[len("ChipConfig("):]


@dataclass(frozen=True)
class SpanningTree:
    edges: frozenset

    @classmethod
    def of(cls, edges: Iterable[str]) -> "SpanningTree":
        return cls(frozenset(edges))

    def sorted_edges(self) -> list[str]:
        return sort_ids(self.edges)


@dataclass(frozen=True)
class TourRecord:
    steps: tuple[tuple[str, str], ...]
    cuts: tuple[tuple[str, str], ...]  # (edge, node where it was cut), in tour order

    def trace(self) -> str:
        return ", ".join(f"{v}{e}" for v, e in self.steps)

    def cut_at(self) -> dict[str, str]:
        return dict(self.cuts)


@dataclass(frozen=True)
class BreakDivisor:
    chips: ChipConfig
    tree: SpanningTree
    assignment: Mapping[str, str] = field(hash=False)  # non-tree edge -> endpoint holding its chip


# ---------------------------------------------------------------------------
# Trees and tours
# ---------------------------------------------------------------------------

class _DSU:
    def __init__(self, items: Iterable[str]):
        self.parent = {x: x for x in items}

    def find(self, x: str) -> str:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: str, b: str) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[ra] = rb
        return True


def is_spanning_tree(h: PlaneGraph, edges: Iterable[str]) -> bool:
    edges = list(edges)
    if len(set(edges)) != len(edges) or len(edges) != len(h.vertices) - 1:
        return False
    dsu = _DSU(h.vertices)
    for e in edges:
        if e not in h.edges:
            return False
        a, b = h.endpoints(e)
        if not dsu.union(a, b):
            return False
    return True


def _connected_with(h: PlaneGraph, edges: Iterable[str]) -> bool:
    dsu = _DSU(h.vertices)
    comps = len(h.vertices)
    for e in edges:
        a, b = h.endpoints(e)
        if dsu.union(a, b):
            comps -= 1
    return comps == 1


def enumerate_spanning_trees(h: PlaneGraph, limit: int = SPANNING_TREE_LIMIT) -> list[SpanningTree]:
    """Contraction-deletion on edges in increasing id order."""
    edges = sort_ids(h.edges)
    out: list[SpanningTree] = []
    need = len(h.vertices) - 1

    def rec(i: int, chosen: list[str], dsu_parent: dict[str, str]) -> None:
        if len(chosen) == need:
            out.append(SpanningTree(frozenset(chosen)))
            if len(out) > limit:
                raise TooLarge(f"more than {limit} spanning trees")
            return
        if i == len(edges):
            return
        if not _connected_with(h, chosen + edges[i:]):
            return
        e = edges[i]
        dsu = _DSU([])
        dsu.parent = dict(dsu_parent)
        a, b = h.endpoints(e)
        if dsu.union(a, b):
            rec(i + 1, chosen + [e], dsu.parent)
        rec(i + 1, chosen, dsu_parent)

    rec(0, [], {v: v for v in h.vertices})
    return out


def _base_dart(h: PlaneGraph, base: BasePair) -> str:
    if base.edge not in h.edges:
        raise InvalidBase(f"base edge {base.edge!r} is not an edge of the graph")
    a, b = h.endpoints(base.edge)
    if {a, b} != {base.b0, base.b1} or base.b0 == base.b1 and a != b:
        raise InvalidBase(f"base edge {base.edge!r} does not join {base.b0} and {base.b1}")
    return h.dart_at(base.edge, base.b0)


def tour(h: PlaneGraph, tree: SpanningTree, base: BasePair) -> TourRecord:
    """The tour of ``tree`` from ``base`` (positive rotation of ``h``)."""
    start = _base_dart(h, base)
    if not is_spanning_tree(h, tree.edges):
        raise TrinityError("not a spanning tree of the graph")
    steps = []
    cuts = []
    cut_seen: set[str] = set()
    d = start
    while True:
        v, e = h.vertex(d), h.edge(d)
        steps.append((v, e))
        if e in tree.edges:
            d = h.sigma(h.alpha(d))
        else:
            if e not in cut_seen:
                cut_seen.add(e)
                cuts.append((e, v))
            d = h.sigma(d)
        if d == start:
            break
    return TourRecord(tuple(steps), tuple(cuts))


def bernardi_break_divisor(g: PlaneGraph, tree: SpanningTree, base: BasePair) -> BreakDivisor:
    """Drop a chip where each non-tree edge is first cut through."""
    rec = tour(g, tree, base)
    chips = {v: 0 for v in g.vertices}
    for _, v in rec.cuts:
        chips[v] += 1
    return BreakDivisor(ChipConfig(chips), tree, dict(rec.cuts))


def break_divisors(g: PlaneGraph) -> set[ChipConfig]:
    """All break divisors, by brute force over spanning trees and chip placements."""
    out: set[ChipConfig] = set()
    for t in enumerate_spanning_trees(g):
        rest = [g.endpoints(e) for e in sort_ids(g.edges) if e not in t.edges]
        partial = [dict.fromkeys(g.vertices, 0)]
        for a, b in rest:
            nxt = []
            for p in partial:
                for v in {a, b}:
                    q = dict(p)
                    q[v] += 1
                    nxt.append(q)
            partial = nxt
        out.update(ChipConfig(p) for p in partial)
    return out


# ---------------------------------------------------------------------------
# Hypertrees
# ---------------------------------------------------------------------------

def _check_bipartite(h: PlaneGraph, side: Collection[str]) -> tuple[list[str], list[str]]:
    side_set = set(side)
    for v in side_set:
        h.check_vertex(v)
    for e in h.edges:
        a, b = h.endpoints(e)
        if (a in side_set) == (b in side_set):
            raise NotBipartite(f"edge {e!r} does not join the two classes")
    us = [v for v in h.vertices if v in side_set]
    ws = [v for v in h.vertices if v not in side_set]
    return us, ws


def _neighbors(h: PlaneGraph, us: Iterable[str]) -> dict[str, list[str]]:
    out = {}
    for u in us:
        seen = []
        for d in h.rotation_lists[u]:
            w = h.vertex(h.alpha(d))
            if w not in seen:
                seen.append(w)
        out[u] = sort_ids(seen)
    return out


def hypertree_of_tree(h: PlaneGraph, tree: SpanningTree, side: Collection[str]) -> Hypertree:
    """``deg_T(u) - 1`` on the class ``side``."""
    us, _ = _check_bipartite(h, side)
    if not is_spanning_tree(h, tree.edges):
        raise TrinityError("not a spanning tree of the graph")
    deg = {u: 0 for u in us}
    for e in tree.edges:
        for v in h.endpoints(e):
            if v in deg:
                deg[v] += 1
    return Hypertree({u: deg[u] - 1 for u in us})


class _Matcher:
    """Assign each vertex of W to at most one u, giving u exactly ``demand[u]`` partners."""

    def __init__(self, nbrs: Mapping[str, list[str]]):
        self.nbrs = nbrs
        self.owner: dict[str, str] = {}

    def augment(self, u: str) -> bool:
        seen: set[str] = set()

        def dfs(x: str) -> bool:
            for w in self.nbrs[x]:
                if w in seen:
                    continue
                seen.add(w)
                if w not in self.owner or dfs(self.owner[w]):
                    self.owner[w] = x
                    return True
            return False

        return dfs(u)

    def copy(self) -> "_Matcher":
        m = _Matcher(self.nbrs)
        m.owner = dict(self.owner)
        return m


def _hall_ok(nbrs: Mapping[str, list[str]], f: Mapping[str, int], us: Iterable[str]) -> bool:
    """``f(S) <= |N(S)| - 1`` for every nonempty ``S`` within ``us``."""
    us = list(us)
    m = _Matcher(nbrs)
    for u in us:
        for _ in range(f.get(u, 0)):
            if not m.augment(u):
                return False
    for u in us:
        if not m.copy().augment(u):
            return False
    return True


def _normalize(h: PlaneGraph, side: Collection[str], f: Mapping[str, int]):
    us, ws = _check_bipartite(h, side)
    if any(k not in set(us) for k in f):
        return None
    vals = {u: f.get(u, 0) for u in us}
    if any(v < 0 for v in vals.values()):
        return None
    if sum(vals.values()) != len(ws) - 1:
        return None
    return us, ws, vals


def is_hypertree(h: PlaneGraph, side: Collection[str], f: Mapping[str, int]) -> bool:
    """Membership in the hypertree set of ``h`` on ``side``.

    Decided by a transversal (b-matching) test of the neighborhood condition
    on the connected graph ``h``.
    """
    norm = _normalize(h, side, f)
    if norm is None or not h.is_connected():
        return False
    us, ws, vals = norm
    return _hall_ok(_neighbors(h, us), vals, us)


def is_hypertree_by_subsets(h: PlaneGraph, side: Collection[str], f: Mapping[str, int]) -> bool:
    """Exponential subset test; only for small classes."""
    norm = _normalize(h, side, f)
    if norm is None or not h.is_connected():
        return False
    us, ws, vals = norm
    if len(us) > SUBSET_TEST_LIMIT:
        raise TooLarge(f"subset test limited to {SUBSET_TEST_LIMIT} vertices")
    nbrs = _neighbors(h, us)
    for k in range(1, len(us) + 1):
        for s in combinations(us, k):
            gamma = set().union(*(nbrs[u] for u in s))
            if sum(vals[u] for u in s) > len(gamma) - 1:
                return False
    return True


def realize_hypertree(h: PlaneGraph, side: Collection[str], f: Mapping[str, int]) -> Optional[SpanningTree]:
    """A spanning tree with ``deg_T(u) = f(u) + 1`` on ``side``, or ``None``."""
    norm = _normalize(h, side, f)
    if norm is None or not h.is_connected():
        return None
    us, ws, vals = norm
    # one representative edge per neighbor suffices
    star: dict[str, list[tuple[str, str]]] = {}
    for u in us:
        seen = {}
        for d in h.rotation_lists[u]:
            w = h.vertex(h.alpha(d))
            if w not in seen:
                seen[w] = h.edge(d)
        star[u] = sorted(seen.items(), key=lambda kv: kv[0])
    order = sorted(us, key=lambda u: len(star[u]))

    def rec(i: int, parent: dict[str, str], chosen: list[str]) -> Optional[list[str]]:
        if i == len(order):
            return chosen
        u = order[i]
        for pick in combinations(star[u], vals[u] + 1):
            dsu = _DSU([])
            dsu.parent = dict(parent)
            if all(dsu.union(u, w) for w, _ in pick):
                found = rec(i + 1, dsu.parent, chosen + [e for _, e in pick])
                if found is not None:
                    return found
        return None

    found = rec(0, {v: v for v in h.vertices}, [])
    return SpanningTree.of(found) if found is not None else None


def enumerate_hypertrees(h: PlaneGraph, side: Collection[str]) -> list[Hypertree]:
    """All hypertrees on ``side``, in lexicographic order of the vertex order of ``h``.

    A depth-first search over values with the neighborhood condition
    checked on every prefix.
    """
    us, ws = _check_bipartite(h, side)
    if not h.is_connected():
        return []
    nbrs = _neighbors(h, us)
    total = len(ws) - 1
    caps = [len(nbrs[u]) - 1 for u in us]
    suffix = [0] * (len(us) + 1)
    for i in range(len(us) - 1, -1, -1):
        suffix[i] = suffix[i + 1] + max(caps[i], 0)
    out: list[Hypertree] = []
    vals: dict[str, int] = {}

    def rec(i: int, used: int) -> None:
        if i == len(us):
            if used == total:
                out.append(Hypertree(dict(vals)))
            return
        u = us[i]
        for k in range(0, min(caps[i], total - used) + 1):
            if used + k + suffix[i + 1] < total:
                continue
            vals[u] = k
            if _hall_ok(nbrs, vals, us[: i + 1]):
                rec(i + 1, used + k)
            del vals[u]

    rec(0, 0)
    return out


def hypertrees_from_spanning_trees(h: PlaneGraph, side: Collection[str]) -> set[Hypertree]:
    return {hypertree_of_tree(h, t, side) for t in enumerate_spanning_trees(h)}


# ---------------------------------------------------------------------------
# Jaeger trees and the Bernardi process
# ---------------------------------------------------------------------------

def is_jaeger_tree(h: PlaneGraph, tree: SpanningTree, base: BasePair, cut_side: Collection[str]) -> bool:
    """Whether every non-tree edge is cut through at its ``cut_side`` end."""
    cut_set = set(cut_side)
    rec = tour(h, tree, base)
    return all(v in cut_set for _, v in rec.cuts)


def _next_alive(h: PlaneGraph, d: str, removed: set[str]) -> str:
    x = h.sigma(d)
    while h.edge(x) in removed and x != d:
        x = h.sigma(x)
    return x


def bernardi_process(h: PlaneGraph, f: Mapping[str, int], base: BasePair, cut_side: Collection[str]) -> SpanningTree:
    """Greedy removal walk returning the cut-side Jaeger tree realizing ``f``.

    ``f`` lives on the class opposite ``cut_side``.  An edge met for the
    first time from its ``cut_side`` end is dropped whenever ``f`` stays
    realizable without it.
    """
    cut_set = set(cut_side)
    side = [v for v in h.vertices if v not in cut_set]
    if not is_hypertree(h, side, f):
        raise NotAHypertree(f"{dict(f)} is not a hypertree")
    start = _base_dart(h, base)
    removed: set[str] = set()
    examined_darts: set[str] = set()
    examined_edges: set[str] = set()
    d = start
    while d not in examined_darts:
        examined_darts.add(d)
        e = h.edge(d)
        first = e not in examined_edges
        examined_edges.add(e)
        if first and h.vertex(d) in cut_set:
            trial = _Subgraph(h, removed | {e})
            if trial.connected() and is_hypertree(trial.graph, side, f):
                removed.add(e)
                d = _next_alive(h, d, removed)
                continue
        d = _next_alive(h, h.alpha(d), removed)
    return SpanningTree.of(e for e in h.edges if e not in removed)


class _Subgraph:
    """``h`` minus some edges, with the inherited rotation."""

    def __init__(self, h: PlaneGraph, removed: set[str]):
        rot = {v: [d for d in ds if h.edge(d) not in removed] for v, ds in h.rotation_lists.items()}
        edges = {e: ds for e, ds in h.edges.items() if e not in removed}
        self.graph = PlaneGraph(rot, edges)

    def connected(self) -> bool:
        return self.graph.is_connected()


def enumerate_jaeger_trees(h: PlaneGraph, base: BasePair, cut_side: Collection[str]) -> list[SpanningTree]:
    """All cut-side Jaeger trees, by following the tour while branching on removals."""
    cut_set = set(cut_side)
    start = _base_dart(h, base)
    slack = len(h.edges) - len(h.vertices) + 1
    out: list[SpanningTree] = []

    def rec(d: str, removed: frozenset, examined: frozenset, examined_edges: frozenset) -> None:
        while d not in examined:
            examined = examined | {d}
            e = h.edge(d)
            first = e not in examined_edges
            examined_edges = examined_edges | {e}
            if first and h.vertex(d) in cut_set and len(removed) < slack:
                smaller = removed | {e}
                if _connected_with(h, [x for x in h.edges if x not in smaller]):
                    rec(_next_alive(h, d, set(smaller)), smaller, examined, examined_edges)
            d = _next_alive(h, h.alpha(d), set(removed))
        if len(removed) == slack:
            out.append(SpanningTree.of(x for x in h.edges if x not in removed))

    rec(start, frozenset(), frozenset(), frozenset())
    found = sorted(set(out), key=lambda t: t.sorted_edges())
    return [t for t in found if is_spanning_tree(h, t.edges)]


@dataclass
class JaegerTable:
    """Both hypertree images of every Jaeger tree for a fixed base."""

    trees: list[SpanningTree]
    cut_values: list[Hypertree]
    other_values: list[Hypertree]

    def other_to_cut(self) -> dict[Hypertree, Hypertree]:
        return dict(zip(self.other_values, self.cut_values))

    def cut_to_other(self) -> dict[Hypertree, Hypertree]:
        return dict(zip(self.cut_values, self.other_values))


def jaeger_table(h: PlaneGraph, base: BasePair, cut_side: Collection[str]) -> JaegerTable:
    cut_set = set(cut_side)
    other = [v for v in h.vertices if v not in cut_set]
    trees = enumerate_jaeger_trees(h, base, cut_set)
    return JaegerTable(trees,
                       [hypertree_of_tree(h, t, cut_set) for t in trees],
                       [hypertree_of_tree(h, t, other) for t in trees])


def bernardi_bijection(h: PlaneGraph, f: Mapping[str, int], base: BasePair, cut_side: Collection[str],
                       direction: str = "E->V") -> Hypertree:
    """The Jaeger-tree bijection between the two hypertree sets.

    ``E->V`` maps a hypertree on the class opposite ``cut_side`` to one on
    ``cut_side`` through the Bernardi process; ``V->E`` inverts it via the
    table of all Jaeger trees.
    """
    cut_set = set(cut_side)
    if direction == "E->V":
        t = bernardi_process(h, f, base, cut_set)
        return hypertree_of_tree(h, t, cut_set)
    if direction == "V->E":
        if not is_hypertree(h, cut_set, f):
            raise NotAHypertree(f"{dict(f)} is not a hypertree")
        table = jaeger_table(h, base, cut_set).cut_to_other()
        key = Hypertree(f)
        if key not in table:
            raise NotAHypertree(f"no Jaeger tree realizes {dict(f)}")
        return table[key]
    raise ValueError(f"unknown direction {direction!r}")


# ---------------------------------------------------------------------------
# Trinity-level duality
# ---------------------------------------------------------------------------

def dual_hypertree(t: Trinity, f: Mapping[str, int]) -> Hypertree:
    """``f* = d|_E - 1 - f`` from the red graph's emerald class to the violet graph's."""
    gr = derived_bipartite(t, "R")
    em = t.color_class("E")
    if not is_hypertree(gr, em, f):
        raise NotAHypertree(f"{dict(f)} is not a hypertree of the red graph")
    return Hypertree({e: gr.degree(e) - 1 - f.get(e, 0) for e in em})


def base_face(t: Trinity, base: BasePair) -> str:
    """The red node ``s0`` attached to a base of the red graph."""
    if base.edge not in t.edges or t.edge_color(base.edge) != "R":
        raise InvalidBase(f"{base.edge!r} is not an edge of the red graph")
    if set(t.edges[base.edge]) != {base.b0, base.b1}:
        raise InvalidBase(f"base edge {base.edge!r} does not join {base.b0} and {base.b1}")
    want = "B" if t.nodes[base.b0] == "V" else "W"
    for i in t.edge_triangles()[base.edge]:
        if t.triangles[i].tag == want:
            return t.triangle_nodes(i)["R"]
    raise InvalidBase("base edge lacks the expected triangle")


def jaeger_arborescence_dual(t: Trinity, tree: SpanningTree, base: BasePair):
    """The red-digraph arcs outside ``tree``, as a candidate arborescence away from ``s0``.

    The result is a genuine arborescence exactly when ``tree`` is a
    violet-cut Jaeger tree; callers check with ``is_arborescence``.
    """
    from .sandpile_core import Arborescence

    s0 = base_face(t, base)
    arcs = frozenset(e for e in t.edges if t.edge_color(e) == "R" and e not in tree.edges)
    return Arborescence(s0, arcs, "out")
