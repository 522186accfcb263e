"""Randomized, exhaustive-per-instance checks of the trinity sandpile results.

:func:`verify_theorems` runs every check on one trinity and returns a
:class:`VerificationReport`; :func:`verify_corpus` does the same over a
seeded random corpus and merges the reports.  Every failure carries a
counterexample written in the text file formats, so it can be fed straight
back to the CLI.
"""

from __future__ import annotations

import random
import time
from collections import Counter, defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

from .actions import (
    arborescence_to_hypertree,
    bernardi_act,
    bernardi_beta,
    hypertree_index,
    rotor_act,
    rotor_generator_tables,
    sandpile_act,
)
from .errors import TooLarge, TrinityError
from .formats import serialize_chips, serialize_hypertree, serialize_plane_graph, serialize_trinity
from .hypertrees_jaeger import (
    Hypertree,
    SpanningTree,
    base_face,
    break_divisors,
    dual_hypertree,
    enumerate_hypertrees,
    enumerate_jaeger_trees,
    enumerate_spanning_trees,
    hypertrees_from_spanning_trees,
    is_hypertree,
    is_hypertree_by_subsets,
    jaeger_arborescence_dual,
    realize_hypertree,
    tour,
)
from .plane_structures import (
    BasePair,
    PlaneGraph,
    Trinity,
    build_trinity_from_balanced_digraph,
    build_trinity_from_plane_graph,
    random_balanced_digraph,
    random_plane_graph,
    rotate_colors,
    sort_ids,
)
from .sandpile_core import (
    ChipConfig,
    all_degree_zero_classes,
    canonical_rep,
    enumerate_arborescences,
    generator_classes,
    group_descriptor,
    is_arborescence,
    linearly_equivalent,
)
from .trinity_group import (
    aw_structure,
    chip_transport,
    cori_rossin_iso,
    digraph_of,
    graph_of,
    phi,
    psi,
)

MAX_GROUP_ORDER = 5000
FULL_ORBIT_LIMIT = 100   # larger groups check orbits of a seeded sample of hypertrees
ORBIT_SAMPLE = 10
RANDOM_CONFIGS = 20
MIN_BASES = 3

CHECK_NAMES = (
    "group order = det = arborescences",
    "representative theorem",
    "freeness and transitivity",
    "phi/psi isomorphisms",
    "white-triangle transport",
    "A_W structure",
    "bernardi commutes with actions",
    "base independence",
    "sandpile action duality",
    "bernardi action duality",
    "rotor = bernardi inverse",
    "cori-rossin agreement",
    "jaeger/arborescence duality",
    "same-s0 invariance",
    "tour twice per edge",
    "hypertree characterization",
    "break divisors",
    "dual hypertree involution",
)


class CheckFailed(Exception):
    def __init__(self, message: str, records: Iterable[str] = ()):
        super().__init__(message)
        self.records = list(records)


@dataclass
class Counterexample:
    label: str
    size: int
    message: str
    files: str  # plane graph or trinity file
    records: list[str] = field(default_factory=list)

    def render(self) -> str:
        """A structure file that ``trinities verify FILE`` accepts; records ride along as comments."""
        head = f"# counterexample from {self.label}: {self.message}\n"
        tail = "".join(f"# record: {r}" for r in self.records)
        return head + tail + self.files


@dataclass
class CheckRow:
    name: str
    instances: int = 0
    failures: int = 0
    skipped: int = 0
    counterexample: Optional[Counterexample] = None

    @property
    def status(self) -> str:
        if self.failures:
            return "FAIL"
        return "pass" if self.instances else "skip"


@dataclass
class VerificationReport:
    rows: dict[str, CheckRow] = field(default_factory=lambda: {n: CheckRow(n) for n in CHECK_NAMES})
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return all(r.failures == 0 for r in self.rows.values())

    def failures(self) -> list[CheckRow]:
        return [r for r in self.rows.values() if r.failures]

    def merge(self, other: "VerificationReport") -> None:
        for name, r in other.rows.items():
            mine = self.rows[name]
            mine.instances += r.instances
            mine.failures += r.failures
            mine.skipped += r.skipped
            c = r.counterexample
            if c is not None and (mine.counterexample is None or c.size < mine.counterexample.size):
                mine.counterexample = c
        self.seconds += other.seconds

    def table(self) -> str:
        width = max(len(n) for n in self.rows)
        out = [f"{'theorem':<{width}}  instances  result  counterexample"]
        for r in self.rows.values():
            if not (r.instances or r.skipped):
                continue  # not requested
            ce = r.counterexample.label if r.counterexample else "-"
            out.append(f"{r.name:<{width}}  {r.instances:>9}  {r.status:<6}  {ce}")
        return "\n".join(out) + "\n"

    def counterexamples(self) -> str:
        return "".join(r.counterexample.render() for r in self.failures() if r.counterexample)


# ---------------------------------------------------------------------------
# Individual checks.  Each raises CheckFailed on the first violation, returns
# False when it does not apply, and True otherwise.
# ---------------------------------------------------------------------------

@dataclass
class _Context:
    t: Trinity
    rng: random.Random
    plane_graph: Optional[PlaneGraph]
    bases: list[BasePair]


def _chips_record(x) -> str:
    return serialize_chips(x.representative if hasattr(x, "representative") else ChipConfig(x))


def _check_group_order(c: _Context) -> bool:
    for color in ("V", "E", "R"):
        d = digraph_of(c.t, color)
        g = group_descriptor(d)
        prod = 1
        for f in g.invariant_factors:
            prod *= f
        if abs(g.determinant) != prod:
            raise CheckFailed(f"D_{color}: |det| = {abs(g.determinant)} but factor product = {prod}")
        for r in sort_ids(d.vertices):
            n = len(enumerate_arborescences(d, r, "in"))
            if n != prod:
                raise CheckFailed(f"D_{color}: {n} in-arborescences at {r}, group order {prod}")
    return True


_PAIRS = (("V", "R"), ("E", "R"), ("V", "E"), ("R", "E"), ("E", "V"), ("R", "V"))


def _check_representative(c: _Context) -> bool:
    t = c.t
    for cls, host in _PAIRS:
        d = digraph_of(t, cls)
        order = group_descriptor(d).order
        index = hypertree_index(t, cls, host)
        if len(index.hypertrees) != order:
            raise CheckFailed(f"|B_{cls}(G_{host})| = {len(index.hypertrees)} but |Pic0(D_{cls})| = {order}")
        if index.collisions:
            a, b = index.collisions[0]
            raise CheckFailed(f"equivalent hypertrees on {cls} in G_{host}",
                              [serialize_hypertree(cls, a), serialize_hypertree(cls, b)])
        counts = Counter(canonical_rep(d, f).representative for f in index.hypertrees)
        nodes = sort_ids(t.color_class(cls))
        target = len(t.color_class(_third(cls, host))) - 1
        for _ in range(RANDOM_CONFIGS):
            vals = {v: c.rng.randint(-3, 3) for v in nodes}
            vals[nodes[0]] += target - sum(vals.values())
            x = ChipConfig(vals)
            rep = canonical_rep(d, x).representative
            if counts[rep] != 1:
                raise CheckFailed(f"{counts[rep]} hypertrees on {cls} in G_{host} equivalent to a configuration",
                                  [serialize_chips(x)])
            witness = index.by_class[rep]
            if not linearly_equivalent(d, x, witness):
                raise CheckFailed("canonical form and lattice membership disagree", [serialize_chips(x)])
    return True


def _third(a: str, b: str) -> str:
    (c,) = {"V", "E", "R"} - {a, b}
    return c


def _check_free_transitive(c: _Context) -> bool:
    t = c.t
    for cls, host in _PAIRS:
        d = digraph_of(t, cls)
        classes = all_degree_zero_classes(d)
        hs = hypertree_index(t, cls, host).hypertrees
        sample = hs if len(hs) <= FULL_ORBIT_LIMIT else c.rng.sample(hs, ORBIT_SAMPLE)
        for f in sample:
            orbit = {sandpile_act(t, cls, host, x, f) for x in classes}
            if len(orbit) != len(hs):
                raise CheckFailed(f"orbit of a hypertree on {cls} in G_{host} has {len(orbit)} of {len(hs)} elements",
                                  [serialize_hypertree(cls, f)])
    return True


_CYCLIC = (("V", "R", "E"), ("E", "V", "R"), ("R", "E", "V"))


def _check_phi_psi(c: _Context) -> bool:
    t = c.t
    for src, dst in _PAIRS:
        ds, dd = digraph_of(t, src), digraph_of(t, dst)
        classes = all_degree_zero_classes(ds)
        images = {phi(t, src, dst, x) for x in classes}
        if len(images) != len(classes) or len(classes) != group_descriptor(dd).order:
            raise CheckFailed(f"phi {src}->{dst} is not bijective")
        gens = generator_classes(ds)
        img = [phi(t, src, dst, x) for x in gens]
        for i, x in enumerate(gens):
            if psi(t, src, dst, x) != -img[i]:
                raise CheckFailed(f"phi {src}->{dst} != -psi", [_chips_record(x)])
            for j in range(i, len(gens)):
                if phi(t, src, dst, x + gens[j]) != img[i] + img[j]:
                    raise CheckFailed(f"phi {src}->{dst} not additive", [_chips_record(x), _chips_record(gens[j])])
    for a, b, e in _CYCLIC:
        for x in generator_classes(digraph_of(t, a)):
            if phi(t, b, e, phi(t, a, b, x)) != psi(t, a, e, x):
                raise CheckFailed(f"phi {b}->{e} o phi {a}->{b} != psi {a}->{e}", [_chips_record(x)])
    return True


def _check_transport(c: _Context) -> bool:
    t = c.t
    for src, dst in _PAIRS:
        d = digraph_of(t, src)
        for x in generator_classes(d):
            w = chip_transport(t, x.representative, src, dst)
            got = canonical_rep(digraph_of(t, dst), w.result.part(dst))
            if got != psi(t, src, dst, x):
                raise CheckFailed(f"transport {src}->{dst} disagrees with psi", [_chips_record(x)])
    return True


def _check_aw(c: _Context) -> bool:
    rank, torsion = aw_structure(c.t)
    for color in ("V", "E", "R"):
        want = group_descriptor(digraph_of(c.t, color)).invariant_factors
        if rank != 2 or torsion != want:
            raise CheckFailed(f"A_W has free rank {rank} and torsion {torsion}; Pic0(D_{color}) factors {want}")
    return True


def _red_bases(t: Trinity) -> list[BasePair]:
    g = graph_of(t, "R")
    out = []
    for d in g.darts:
        e = g.edge(d)
        out.append(BasePair(g.vertex(d), g.other_end(e, g.vertex(d)), e))
    return sorted(out, key=lambda b: (str(b)))


def _check_commuting(c: _Context) -> bool:
    t = c.t
    dv = digraph_of(t, "V")
    gens = generator_classes(dv)
    hs = hypertree_index(t, "E", "R").hypertrees
    for base in c.bases:
        beta = {f: bernardi_beta(t, f, base) for f in hs}
        for x in gens:
            y = phi(t, "V", "E", x)
            for f in hs:
                lhs = beta[sandpile_act(t, "E", "R", y, f)]
                rhs = sandpile_act(t, "V", "R", x, beta[f])
                if lhs != rhs:
                    raise CheckFailed(f"beta(phi(x) + f) != x + beta(f) for base {base}",
                                      [_chips_record(x), serialize_hypertree("E", f)])
    return True


def _check_base_independence(c: _Context) -> bool:
    t = c.t
    gens = generator_classes(digraph_of(t, "V"))
    hs = hypertree_index(t, "E", "R").hypertrees
    for x in gens:
        for f in hs:
            want = bernardi_act(t, x, f)
            for base in c.bases:
                if bernardi_act(t, x, f, base) != want:
                    raise CheckFailed(f"Bernardi action for base {base} differs from the canonical one",
                                      [_chips_record(x), serialize_hypertree("E", f)])
    return True


def _check_sandpile_duality(c: _Context) -> bool:
    t = c.t
    gens = generator_classes(digraph_of(t, "E"))
    hs = hypertree_index(t, "E", "R").hypertrees
    for x in gens:
        for f in hs:
            lhs = dual_hypertree(t, sandpile_act(t, "E", "R", x, f))
            rhs = sandpile_act(t, "E", "V", -x, dual_hypertree(t, f))
            if lhs != rhs:
                raise CheckFailed("(x + f)* != (-x) + f*", [_chips_record(x), serialize_hypertree("E", f)])
    return True


def _check_bernardi_duality(c: _Context) -> bool:
    t = c.t
    gens = generator_classes(digraph_of(t, "V"))
    hs = hypertree_index(t, "E", "R").hypertrees
    for x in gens:
        shifted = phi(t, "R", "E", phi(t, "V", "R", x))
        for f in hs:
            for base in [None, *c.bases]:
                lhs = dual_hypertree(t, bernardi_act(t, x, f, base))
                rhs = sandpile_act(t, "E", "V", shifted, dual_hypertree(t, f))
                if lhs != rhs:
                    raise CheckFailed("(x . f)* != phi_VR(x) . f*", [_chips_record(x), serialize_hypertree("E", f)])
    return True


def _check_rotor_inverse(c: _Context) -> bool:
    t = c.t
    d = digraph_of(t, "V")
    low = sort_ids(d.vertices)[0]
    # generator classes 1_v - 1_low, kept in that form for the rotor game
    gens = [(v, {v: 1, low: -1} if v != low else {}) for v in sort_ids(d.vertices)]
    target = set(hypertree_index(t, "E", "R").hypertrees)
    for root in sort_ids(d.vertices):
        arbs = enumerate_arborescences(d, root, "in")
        h = {a: arborescence_to_hypertree(t, a, root) for a in arbs}
        if set(h.values()) != target or len(h) != len(target):
            raise CheckFailed(f"arborescences at {root} do not map onto the emerald hypertrees")
        tables = rotor_generator_tables(d, root, arbs)
        identity = {a: a for a in arbs}
        inverse = {v: {b: a for a, b in p.items()} for v, p in tables.items()}
        for v, x in gens:
            # 1_v - 1_low = (1_v - 1_root) - (1_low - 1_root)
            fwd = tables.get(v, identity)
            back = inverse.get(low, identity)
            neg = {u: -k for u, k in x.items()}
            for a in arbs:
                moved = fwd[back[a]]
                if h[moved] != bernardi_act(t, neg, h[a]):
                    raise CheckFailed(f"rotor action at root {root} disagrees with the Bernardi action",
                                      [_chips_record(x), serialize_hypertree("E", h[a])])
            # the direct game agrees with the tables
            a0 = arbs[0]
            if rotor_act(d, root, x, a0) != fwd[back[a0]]:
                raise CheckFailed(f"rotor game and permutation tables disagree at root {root}", [_chips_record(x)])
    return True


def _check_cori_rossin(c: _Context) -> bool:
    g = c.plane_graph
    if g is None:
        return False
    t = c.t
    edges = list(g.edges)
    for x in generator_classes(digraph_of(t, "V")):
        want = phi(t, "V", "R", x)
        if cori_rossin_iso(g, x.representative, trinity=t) != want:
            raise CheckFailed("Cori-Rossin map != phi V->R", [_chips_record(x)])
        for e in edges:
            if cori_rossin_iso(g, x.representative, flipped=[e], trinity=t) != want:
                raise CheckFailed(f"Cori-Rossin map changes when {e} is flipped", [_chips_record(x)])
    return True


def _jaeger_set(t: Trinity, base: BasePair) -> frozenset:
    key = ("jaegerset", base)
    if key not in t._cache:
        g = graph_of(t, "R")
        t._cache[key] = frozenset(enumerate_jaeger_trees(g, base, t.color_class("V")))
    return t._cache[key]


def _check_jaeger_arborescence(c: _Context) -> bool:
    t = c.t
    dr = digraph_of(t, "R")
    red = [e for e in t.edges if t.edge_color(e) == "R"]
    order = group_descriptor(digraph_of(t, "V")).order
    for base in c.bases:
        s0 = base_face(t, base)
        jaeger = _jaeger_set(t, base)
        if len(jaeger) != order:
            raise CheckFailed(f"{len(jaeger)} Jaeger trees for base {base}, expected {order}")
        duals = {SpanningTree.of(e for e in red if e not in a.arcs)
                 for a in enumerate_arborescences(dr, s0, "out")}
        if duals != set(jaeger):
            raise CheckFailed(f"Jaeger trees for base {base} are not the duals of out-arborescences at {s0}")
        for tr in jaeger:
            if not is_arborescence(dr, jaeger_arborescence_dual(t, tr, base)):
                raise CheckFailed(f"dual of a Jaeger tree is not an arborescence for base {base}")
    return True


def _check_same_s0(c: _Context) -> bool:
    t = c.t
    groups: dict[str, list[BasePair]] = defaultdict(list)
    for b in _red_bases(t):
        groups[base_face(t, b)].append(b)
    multi = [bs for _, bs in sorted(groups.items()) if len(bs) > 1]
    if not multi:
        return False
    for bs in multi[:MIN_BASES]:
        first = _jaeger_set(t, bs[0])
        for b in bs[1:4]:
            if _jaeger_set(t, b) != first:
                raise CheckFailed(f"bases {bs[0]} and {b} share s0 but have different Jaeger trees")
    return True


def _check_tour(c: _Context) -> bool:
    t = c.t
    g = graph_of(t, "R")
    trees = list(_jaeger_set(t, c.bases[0])) if c.bases else []
    for base in c.bases:
        for tr in trees:
            rec = tour(g, tr, base)
            seen = Counter(rec.steps)
            per_edge = Counter(e for _, e in rec.steps)
            if any(n != 1 for n in seen.values()) or any(per_edge[e] != 2 for e in g.edges) \
                    or len(rec.steps) != 2 * len(g.edges):
                raise CheckFailed(f"tour for base {base} does not visit every edge once from each end")
    return bool(c.bases)


def _check_characterization(c: _Context) -> bool:
    t = c.t
    for host in ("R", "V", "E"):
        g = graph_of(t, host)
        for side in sort_ids({cl for cl in "VER" if cl != host}):
            nodes = sort_ids(t.color_class(side))
            if len(nodes) > 10:
                continue
            hs = set(enumerate_hypertrees(g, nodes))
            if len(enumerate_spanning_trees(g)) <= 20000 and hypertrees_from_spanning_trees(g, nodes) != hs:
                raise CheckFailed(f"hypertree enumeration on {side} in G_{host} disagrees with spanning trees")
            other = len(g.vertices) - len(nodes)
            candidates = list(hs)
            for _ in range(20):
                vals = {v: 0 for v in nodes}
                for _k in range(other - 1):
                    vals[c.rng.choice(nodes)] += 1
                candidates.append(Hypertree(vals))
            for f in candidates:
                a = is_hypertree_by_subsets(g, nodes, f)
                b = realize_hypertree(g, nodes, f) is not None
                flow = is_hypertree(g, nodes, f)
                if not (a == b == flow == (f in hs)):
                    raise CheckFailed(f"hypertree tests disagree on {side} in G_{host}",
                                      [serialize_hypertree(side, f)])
    return True


def _check_break_divisors(c: _Context) -> bool:
    g = c.plane_graph
    if g is None:
        return False
    t = c.t
    hs = hypertree_index(t, "V", "R").hypertrees
    mapped = {ChipConfig({v: g.degree(v) - 1 - f[v] for v in g.vertices}) for f in hs}
    brute = break_divisors(g)
    if mapped != brute:
        extra = sort_ids(str(x) for x in mapped ^ brute)[:1]
        raise CheckFailed(f"break divisors and hypertrees do not correspond: {extra}")
    return True


def _check_dual_involution(c: _Context) -> bool:
    t = c.t
    gv = graph_of(t, "V")
    em = t.color_class("E")
    src = hypertree_index(t, "E", "R").hypertrees
    dst = set(hypertree_index(t, "E", "V").hypertrees)
    images = set()
    for f in src:
        fs = dual_hypertree(t, f)
        if fs not in dst:
            raise CheckFailed("f* is not a hypertree of the violet graph", [serialize_hypertree("E", f)])
        back = Hypertree({e: gv.degree(e) - 1 - fs[e] for e in em})
        if back != f:
            raise CheckFailed("f** != f", [serialize_hypertree("E", f)])
        images.add(fs)
    if images != dst:
        raise CheckFailed("dual map is not onto the violet graph's hypertrees")
    return True


CHECKS: dict[str, Callable[[_Context], bool]] = dict(zip(CHECK_NAMES, (
    _check_group_order, _check_representative, _check_free_transitive, _check_phi_psi, _check_transport,
    _check_aw, _check_commuting, _check_base_independence, _check_sandpile_duality, _check_bernardi_duality, _check_rotor_inverse, _check_cori_rossin,
    _check_jaeger_arborescence, _check_same_s0, _check_tour, _check_characterization, _check_break_divisors,
    _check_dual_involution,
)))


def choose_bases(t: Trinity, rng: random.Random, count: int = MIN_BASES) -> list[BasePair]:
    bases = _red_bases(t)
    if len(bases) <= count:
        return bases
    return sorted(rng.sample(bases, count), key=str)


def verify_theorems(t: Trinity, seed: int = 0, plane_graph: Optional[PlaneGraph] = None,
                    label: str = "instance", checks: Optional[Iterable[str]] = None) -> VerificationReport:
    """Run the checks on ``t``; every check is exhaustive except where noted in its row."""
    t.require_valid()
    for color in ("V", "E", "R"):
        order = group_descriptor(digraph_of(t, color)).order
        if order > MAX_GROUP_ORDER:
            raise TooLarge(f"group order {order} exceeds {MAX_GROUP_ORDER}")
    start = time.perf_counter()
    rng = random.Random(f"{seed}:{label}")
    ctx = _Context(t, rng, plane_graph, choose_bases(t, rng))
    wanted = list(checks) if checks is not None else list(CHECK_NAMES)
    report = VerificationReport()
    for name in wanted:
        row = report.rows[name]
        try:
            applied = CHECKS[name](ctx)
        except CheckFailed as exc:
            row.instances = 1
            row.failures = 1
            row.counterexample = _counterexample(t, plane_graph, label, str(exc), exc.records)
            continue
        except TrinityError as exc:
            row.instances = 1
            row.failures = 1
            row.counterexample = _counterexample(t, plane_graph, label, f"{type(exc).__name__}: {exc}", [])
            continue
        if applied:
            row.instances = 1
        else:
            row.skipped = 1
    report.seconds = time.perf_counter() - start
    return report


def _counterexample(t: Trinity, g: Optional[PlaneGraph], label: str, message: str, records: list[str]) -> Counterexample:
    text = serialize_plane_graph(g) if g is not None else serialize_trinity(t)
    return Counterexample(label, len(t.nodes), message.replace("\n", " "), text, list(records))


# ---------------------------------------------------------------------------
# Random corpus
# ---------------------------------------------------------------------------

@dataclass
class Instance:
    label: str
    trinity: Trinity
    plane_graph: Optional[PlaneGraph] = None


def random_instance(seed: int, index: int, max_vertices: int = 6, max_edges: int = 12,
                    kind: Optional[str] = None) -> Instance:
    """One seeded instance: a plane graph, a balanced digraph, or a recolored plane graph."""
    rng = random.Random(f"corpus:{seed}:{index}")
    kinds = ("planegraph", "digraph", "recolored")
    kind = kind or kinds[index % 3]
    n = rng.randint(2, max(2, max_vertices))
    top = max(n - 1, min(max_edges, 3 * n - 6 if n >= 3 else n))
    m = rng.randint(n - 1, top)
    sub = rng.randrange(2**31)
    if kind == "digraph":
        # doubling tree edges adds up to n - 1 arcs; keep the total within max_edges
        m = max(n - 1, min(m, max_edges - (n - 1)))
        d = random_balanced_digraph(n, m, sub)
        return Instance(f"seed {seed} instance {index} (digraph)", build_trinity_from_balanced_digraph(d))
    g = random_plane_graph(n, m, sub)
    t = build_trinity_from_plane_graph(g)
    if kind == "recolored":
        return Instance(f"seed {seed} instance {index} (recolored)", rotate_colors(t, rng.choice((1, 2))))
    return Instance(f"seed {seed} instance {index} (planegraph)", t, g)


def _run_instance(args: tuple) -> VerificationReport:
    seed, index, max_vertices, max_edges, checks = args
    inst = random_instance(seed, index, max_vertices, max_edges)
    return verify_theorems(inst.trinity, seed, inst.plane_graph, inst.label, checks)


def verify_corpus(seed: int, instances: int, max_vertices: int = 6, max_edges: int = 12, jobs: int = 1,
                  checks: Optional[Iterable[str]] = None) -> VerificationReport:
    """Merged report over ``instances`` seeded instances, in index order."""
    wanted = tuple(checks) if checks is not None else None
    args = [(seed, i, max_vertices, max_edges, wanted) for i in range(instances)]
    total = VerificationReport()
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(_run_instance, args))
    else:
        reports = [_run_instance(a) for a in args]
    for r in reports:
        total.merge(r)
    return total
