"""Group actions on hypertrees and arborescences.

* the sandpile action: shift a hypertree by a class and pick the unique
  hypertree of the resulting class,
* the Bernardi action of the violet group on emerald hypertrees of the red
  graph, both canonically and through a Jaeger-tree bijection,
* the rotor-routing action on in-arborescences.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Mapping, Optional, Sequence

from .errors import (
    DegreeNonzero,
    InvalidArborescence,
    NoChip,
    NotAHypertree,
    NotFound,
    RootMismatch,
    RootRouting,
    TrinityError,
)
from .hypertrees_jaeger import (
    Hypertree,
    bernardi_bijection,
    enumerate_hypertrees,
    jaeger_table,
)
from .plane_structures import BasePair, RibbonDigraph, Trinity, sort_ids
from .sandpile_core import (
    Arborescence,
    ChipConfig,
    PicClass,
    arborescence_problems,
    canonical_rep,
    group_descriptor,
)
from .trinity_group import digraph_of, graph_of, phi


# ---------------------------------------------------------------------------
# Sandpile action
# ---------------------------------------------------------------------------

@dataclass
class HypertreeIndex:
    """Hypertrees of one class, keyed by their linear equivalence class."""

    hypertrees: list[Hypertree]
    by_class: dict[ChipConfig, Hypertree]
    collisions: list[tuple[Hypertree, Hypertree]]


def hypertree_index(t: Trinity, cls: str, host: str) -> HypertreeIndex:
    """Hypertrees on ``cls`` in ``G_host``, indexed by their class in ``D_cls``."""
    if cls == host:
        raise TrinityError("the hypertree class must differ from the host color")
    key = ("hyperindex", cls, host)
    if key not in t._cache:
        g = graph_of(t, host)
        d = digraph_of(t, cls)
        hs = enumerate_hypertrees(g, t.color_class(cls))
        by_class: dict[ChipConfig, Hypertree] = {}
        collisions = []
        for f in hs:
            rep = canonical_rep(d, f).representative
            if rep in by_class:
                collisions.append((by_class[rep], f))
            else:
                by_class[rep] = f
        t._cache[key] = HypertreeIndex(hs, by_class, collisions)
    return t._cache[key]


def _class_chips(x) -> ChipConfig:
    return x.representative if isinstance(x, PicClass) else ChipConfig(x)


def sandpile_act(t: Trinity, cls: str, host: str, x, f: Mapping[str, int]) -> Hypertree:
    """The unique hypertree on ``cls`` (in ``G_host``) equivalent to ``x + f`` in ``D_cls``."""
    chips = _class_chips(x)
    if chips.degree != 0:
        raise DegreeNonzero(f"degree is {chips.degree}, not 0")
    index = hypertree_index(t, cls, host)
    hf = Hypertree(f)
    if hf not in set(index.hypertrees):
        raise NotAHypertree(f"{dict(f)} is not a hypertree on {cls} in G_{host}")
    target = canonical_rep(digraph_of(t, cls), chips + hf).representative
    if target not in index.by_class:
        raise NotFound("no hypertree in the shifted class")
    return index.by_class[target]


def bernardi_act(t: Trinity, x, f: Mapping[str, int], base: Optional[BasePair] = None) -> Hypertree:
    """Action of a violet class on emerald hypertrees of the red graph.

    Without ``base``: shift by the image of ``x`` in the emerald group.
    With ``base``: conjugate the violet sandpile action by the Jaeger-tree
    bijection for that base.
    """
    chips = _class_chips(x)
    if chips.degree != 0:
        raise DegreeNonzero(f"degree is {chips.degree}, not 0")
    if base is None:
        return sandpile_act(t, "E", "R", phi(t, "V", "E", chips), f)
    table = _jaeger_maps(t, base)
    hf = Hypertree(f)
    if hf not in table[0]:
        raise NotAHypertree(f"{dict(f)} is not an emerald hypertree of the red graph")
    moved = sandpile_act(t, "V", "R", chips, table[0][hf])
    return table[1][moved]


def _jaeger_maps(t: Trinity, base: BasePair):
    key = ("jaeger", base)
    if key not in t._cache:
        g = graph_of(t, "R")
        tab = jaeger_table(g, base, t.color_class("V"))
        forward = tab.other_to_cut()
        t._cache[key] = (forward, {v: k for k, v in forward.items()}, tab)
    return t._cache[key]


def bernardi_beta(t: Trinity, f: Mapping[str, int], base: BasePair) -> Hypertree:
    """Emerald-to-violet Jaeger bijection on the red graph, via the Bernardi process."""
    return bernardi_bijection(graph_of(t, "R"), f, base, t.color_class("V"), "E->V")


# ---------------------------------------------------------------------------
# Rotor routing
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RotorConfig:
    root: str
    rotors: Mapping[str, str]

    @classmethod
    def from_arborescence(cls, a: Arborescence, d: RibbonDigraph) -> "RotorConfig":
        return cls(a.root, {d.tail(x): x for x in a.arcs})

    def arcs(self) -> frozenset:
        return frozenset(self.rotors.values())


@dataclass(frozen=True)
class GameState:
    chips: ChipConfig
    rotors: RotorConfig


def _next_out_arc(d: RibbonDigraph, arc: str) -> str:
    v = d.tail(arc)
    outs = d.out_arcs(v)
    return outs[(outs.index(arc) + 1) % len(outs)]


def rotor_route_step(d: RibbonDigraph, s: GameState, v: str) -> GameState:
    """Advance the rotor at ``v`` and send one chip along it."""
    d.check_vertex(v)
    if v == s.rotors.root:
        raise RootRouting("the root does not route")
    if s.chips[v] <= 0:
        raise NoChip(f"no chip at {v}")
    new_arc = _next_out_arc(d, s.rotors.rotors[v])
    rotors = dict(s.rotors.rotors)
    rotors[v] = new_arc
    chips = s.chips + {v: -1, d.head(new_arc): 1}
    return GameState(chips, replace(s.rotors, rotors=rotors))


def _route_single_chip(d: RibbonDigraph, rotors: dict[str, str], root: str, v: str, limit: int) -> dict[str, str]:
    rotors = dict(rotors)
    steps = 0
    while v != root:
        arc = _next_out_arc(d, rotors[v])
        rotors[v] = arc
        v = d.head(arc)
        steps += 1
        if steps > limit:
            raise TrinityError(f"rotor game exceeded {limit} steps")
    return rotors


def _step_limit(d: RibbonDigraph) -> int:
    return len(d.vertices) * len(d.arcs) * (group_descriptor(d).order + 1)


def rotor_act(d: RibbonDigraph, root: str, x, a: Arborescence) -> Arborescence:
    """Rotor-routing action of ``x`` on an in-arborescence rooted at ``root``.

    ``x`` is written as ``sum x(v) (1_v - 1_root)``; each coefficient is
    reduced modulo the group order so that every move is a forward game.
    """
    if a.root != root or a.direction != "in":
        raise InvalidArborescence("need an in-arborescence at the given root")
    problems = arborescence_problems(d, a)
    if problems:
        raise InvalidArborescence("; ".join(problems))
    chips = _class_chips(x)
    if chips.degree != 0:
        raise DegreeNonzero(f"degree is {chips.degree}, not 0")
    order = group_descriptor(d).order
    limit = _step_limit(d)
    rotors = {d.tail(arc): arc for arc in a.arcs}
    for v in sort_ids(d.vertices):
        if v == root:
            continue
        for _ in range(chips[v] % order):
            rotors = _route_single_chip(d, rotors, root, v, limit)
    return Arborescence(root, frozenset(rotors.values()), "in")


def rotor_generator_tables(d: RibbonDigraph, root: str, arbs: Sequence[Arborescence]) -> dict[str, dict[Arborescence, Arborescence]]:
    """For each ``v``, the permutation ``A -> (1_v - 1_root) A`` on ``arbs``."""
    limit = _step_limit(d)
    out = {}
    for v in sort_ids(d.vertices):
        if v == root:
            continue
        perm = {}
        for a in arbs:
            rotors = {d.tail(arc): arc for arc in a.arcs}
            res = _route_single_chip(d, rotors, root, v, limit)
            perm[a] = Arborescence(root, frozenset(res.values()), "in")
        out[v] = perm
    return out


def arborescence_to_hypertree(t: Trinity, a: Arborescence, root: str) -> Hypertree:
    """Emerald hypertree of the red graph attached to an in-arborescence of ``D_V``.

    Counts, at each emerald node, the arcs of ``a`` whose violet edge ends
    there.
    """
    d = digraph_of(t, "V")
    if a.root != root or a.direction != "in":
        raise InvalidArborescence("need an in-arborescence at the given root")
    problems = arborescence_problems(d, a)
    if problems:
        raise InvalidArborescence("; ".join(problems))
    vals = {e: 0 for e in t.color_class("E")}
    for arc in a.arcs:
        for n in t.edges[arc]:
            if n in vals:
                vals[n] += 1
    return Hypertree(vals)


def arborescence_exchange_path(d: RibbonDigraph, a: Arborescence, b: Arborescence) -> list[Arborescence]:
    """Arborescences from ``a`` to ``b`` changing one arc at a time.

    At each step the differing vertex not reachable (along ``a``) from any
    other differing vertex takes its arc from ``b``; ties go to the smallest id.
    """
    if a.root != b.root or a.direction != b.direction:
        raise RootMismatch("arborescences have different roots or directions")
    for arb in (a, b):
        problems = arborescence_problems(d, arb)
        if problems:
            raise InvalidArborescence("; ".join(problems))
    forward = a.direction == "in"

    def owner(arc: str) -> str:
        return d.tail(arc) if forward else d.head(arc)

    def step(arc: str) -> str:
        return d.head(arc) if forward else d.tail(arc)

    target = {owner(x): x for x in b.arcs}
    current = {owner(x): x for x in a.arcs}
    path = [a]
    while True:
        diff = [v for v in sort_ids(current) if current[v] != target[v]]
        if not diff:
            return path
        diff_set = set(diff)
        below: set[str] = set()
        for w in diff:
            v = step(current[w])
            while v != a.root:
                if v in diff_set:
                    below.add(v)
                v = step(current[v])
        (w,) = [v for v in diff if v not in below][:1]
        current[w] = target[w]
        path.append(Arborescence(a.root, frozenset(current.values()), a.direction))
