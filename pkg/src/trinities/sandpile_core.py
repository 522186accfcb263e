"""Chip configurations, Laplacians and sandpile groups of Eulerian digraphs."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Literal, Mapping, Optional

from .errors import DegreeNonzero, InvalidArborescence, TooLarge, TrinityError, UnknownVertex
from .lattice import HermiteForm, SmithForm, determinant, hermite_normal_form, matvec, smith_normal_form
from .plane_structures import RibbonDigraph, natural_key, sort_ids

Direction = Literal["in", "out"]
ARBORESCENCE_LIMIT = 10**6


class ChipConfig(Mapping[str, int]):
    """An integer vector indexed by vertex ids; missing vertices hold 0."""

    __slots__ = ("_values", "_key")

    def __init__(self, values: Optional[Mapping[str, int]] = None, **kw: int):
        vals = dict(values or {})
        vals.update(kw)
        self._values = {k: int(v) for k, v in vals.items()}
        self._key: Optional[frozenset] = None

    @classmethod
    def zero(cls, support: Iterable[str] = ()) -> "ChipConfig":
        return cls({v: 0 for v in support})

    @classmethod
    def indicator(cls, v: str, support: Iterable[str] = ()) -> "ChipConfig":
        vals = {u: 0 for u in support}
        vals[v] = 1
        return cls(vals)

    @classmethod
    def from_vector(cls, order: Iterable[str], vec: Iterable[int]) -> "ChipConfig":
        return cls(dict(zip(order, vec)))

    def __getitem__(self, v: str) -> int:
        return self._values.get(v, 0)

    def __iter__(self) -> Iterator[str]:
        return iter(self._values)

    def __len__(self) -> int:
        return len(self._values)

    def __contains__(self, v: object) -> bool:
        return v in self._values

    @property
    def degree(self) -> int:
        return sum(self._values.values())

    def support(self) -> list[str]:
        return [v for v, x in self._values.items() if x]

    def vector(self, order: Iterable[str]) -> list[int]:
        return [self[v] for v in order]

    def _nonzero(self) -> frozenset:
        if self._key is None:
            self._key = frozenset((k, v) for k, v in self._values.items() if v)
        return self._key

    def __eq__(self, other: object) -> bool:
        if isinstance(other, ChipConfig):
            return self._nonzero() == other._nonzero()
        if isinstance(other, Mapping):
            return self._nonzero() == ChipConfig(other)._nonzero()
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._nonzero())

    def __add__(self, other: Mapping[str, int]) -> "ChipConfig":
        out = dict(self._values)
        for k, v in other.items():
            out[k] = out.get(k, 0) + v
        return ChipConfig(out)

    def __neg__(self) -> "ChipConfig":
        return ChipConfig({k: -v for k, v in self._values.items()})

    def __sub__(self, other: Mapping[str, int]) -> "ChipConfig":
        return self + (-ChipConfig(other))

    def __mul__(self, k: int) -> "ChipConfig":
        return ChipConfig({v: k * x for v, x in self._values.items()})

    __rmul__ = __mul__

    def restricted(self, vertices: Iterable[str]) -> "ChipConfig":
        return ChipConfig({v: self[v] for v in vertices})

    def __repr__(self) -> str:
        inner = " ".join(f"{k}={v}" for k, v in sorted(self._values.items(), key=lambda kv: natural_key(kv[0])))
        return f"ChipConfig({inner})"


@dataclass(frozen=True)
class LaplacianMatrix:
    """``L[u][v] = -outdeg(v)`` on the diagonal and ``#arcs v->u`` off it (self-arcs cancel)."""

    vertices: tuple[str, ...]
    rows: tuple[tuple[int, ...], ...]

    def entry(self, u: str, v: str) -> int:
        return self.rows[self.vertices.index(u)][self.vertices.index(v)]

    def column(self, v: str) -> list[int]:
        j = self.vertices.index(v)
        return [row[j] for row in self.rows]

    def as_lists(self) -> list[list[int]]:
        return [list(r) for r in self.rows]


def laplacian(d: RibbonDigraph, order: Optional[Iterable[str]] = None) -> LaplacianMatrix:
    vs = tuple(order) if order is not None else tuple(d.vertices)
    idx = {v: i for i, v in enumerate(vs)}
    n = len(vs)
    rows = [[0] * n for _ in range(n)]
    for a in d.arcs:
        t, h = d.tail(a), d.head(a)
        if t == h:
            continue
        rows[idx[t]][idx[t]] -= 1
        rows[idx[h]][idx[t]] += 1
    return LaplacianMatrix(vs, tuple(tuple(r) for r in rows))


def fire(d: RibbonDigraph, x: Mapping[str, int], v: str) -> ChipConfig:
    """Fire ``v`` once: ``x + L 1_v``."""
    d.check_vertex(v)
    out = dict(ChipConfig(x))
    for a in d.out_arcs(v):
        h = d.head(a)
        if h == v:
            continue
        out[v] = out.get(v, 0) - 1
        out[h] = out.get(h, 0) + 1
    return ChipConfig(out)


def _check_support(d: RibbonDigraph, x: Mapping[str, int]) -> None:
    for v in x:
        if not d.has_vertex(v):
            raise UnknownVertex(f"unknown vertex {v!r}")


# ---------------------------------------------------------------------------
# Group structure
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class GroupDescriptor:
    """Smith data of the reduced Laplacian, fixed once per digraph.

    ``deleted`` is the smallest vertex id; ``others`` the remaining
    vertices in row order.
    """

    vertices: tuple[str, ...]
    deleted: str
    others: tuple[str, ...]
    smith: SmithForm
    hermite: HermiteForm
    determinant: int

    @property
    def diagonal(self) -> list[int]:
        return self.smith.diagonal

    @property
    def invariant_factors(self) -> list[int]:
        return self.smith.invariant_factors

    @property
    def order(self) -> int:
        out = 1
        for f in self.diagonal:
            out *= f
        return out

    def residues(self, x: Mapping[str, int]) -> tuple[int, ...]:
        """Coordinates of ``x`` (off the deleted vertex) in the cyclic decomposition."""
        ux = matvec(self.smith.U, [x.get(v, 0) for v in self.others])
        return tuple(c % f for c, f in zip(ux, self.diagonal) if f != 1)

    def representative(self, x: Mapping[str, int]) -> ChipConfig:
        deg = sum(x.values())
        ux = matvec(self.smith.U, [x.get(v, 0) for v in self.others])
        c = [u % f if f else u for u, f in zip(ux, self.diagonal)]
        rep = matvec(self.smith.Uinv, c)
        vals = dict(zip(self.others, rep))
        vals[self.deleted] = deg - sum(rep)
        return ChipConfig({v: vals[v] for v in self.vertices})


def group_descriptor(d: RibbonDigraph, cross_check: bool = False) -> GroupDescriptor:
    """Sandpile group data of a connected Eulerian digraph (cached on ``d``).

    With ``cross_check`` the order is compared against arborescence counts
    at every root when there are at most eight vertices.
    """
    cached = getattr(d, "_group_descriptor", None)
    if cached is None:
        if not d.is_connected():
            raise TrinityError("digraph is not connected")
        if not d.is_eulerian():
            raise TrinityError("digraph is not Eulerian")
        vs = tuple(d.vertices)
        deleted = min(vs, key=natural_key)
        others = tuple(v for v in vs if v != deleted)
        lap = laplacian(d, vs)
        keep = [i for i, v in enumerate(vs) if v != deleted]
        reduced = [[lap.rows[i][j] for j in keep] for i in keep]
        smith = smith_normal_form(reduced, ncols=len(keep))
        herm = hermite_normal_form(reduced, ncols=len(keep))
        cached = GroupDescriptor(vs, deleted, others, smith, herm, determinant(reduced))
        d._group_descriptor = cached  # type: ignore[attr-defined]
    if cross_check and len(cached.vertices) <= 8:
        for r in cached.vertices:
            for direction in ("in", "out"):
                n = len(enumerate_arborescences(d, r, direction))
                if n != cached.order:
                    raise TrinityError(f"arborescence count {n} at {r} ({direction}) != group order {cached.order}")
        if abs(cached.determinant) != cached.order:
            raise TrinityError("determinant and invariant factors disagree")
    return cached


def linearly_equivalent(d: RibbonDigraph, x: Mapping[str, int], y: Mapping[str, int]) -> bool:
    """Whether ``y - x`` lies in the integer column lattice of the Laplacian."""
    _check_support(d, x)
    _check_support(d, y)
    if sum(x.values()) != sum(y.values()):
        return False
    g = group_descriptor(d)
    diff = [y.get(v, 0) - x.get(v, 0) for v in g.others]
    return g.hermite.contains(diff)


@dataclass(frozen=True)
class PicClass:
    """A linear equivalence class, identified by its canonical representative."""

    digraph: RibbonDigraph = field(compare=False, hash=False, repr=False)
    degree: int
    representative: ChipConfig

    def _check(self, other: "PicClass") -> None:
        if other.digraph is not self.digraph and other.digraph != self.digraph:
            raise TrinityError("classes live on different digraphs")

    def __add__(self, other: "PicClass") -> "PicClass":
        self._check(other)
        return canonical_rep(self.digraph, self.representative + other.representative)

    def __neg__(self) -> "PicClass":
        return canonical_rep(self.digraph, -self.representative)

    def __sub__(self, other: "PicClass") -> "PicClass":
        return self + (-other)

    def __mul__(self, k: int) -> "PicClass":
        return canonical_rep(self.digraph, self.representative * k)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return self.degree == 0 and not self.representative.support()

    def order(self) -> int:
        """Additive order of a degree-0 class."""
        if self.degree != 0:
            raise DegreeNonzero("only degree-0 classes have an order")
        k = 1
        acc = self
        while not acc.is_zero():
            acc = acc + self
            k += 1
        return k


def canonical_rep(d: RibbonDigraph, x: Mapping[str, int]) -> PicClass:
    _check_support(d, x)
    g = group_descriptor(d)
    rep = g.representative(x)
    return PicClass(d, rep.degree, rep)


def zero_class(d: RibbonDigraph) -> PicClass:
    return canonical_rep(d, {})


def generator_classes(d: RibbonDigraph, base: Optional[str] = None) -> list[PicClass]:
    """Classes of ``1_v - 1_base`` for every ``v`` (base defaults to the smallest id)."""
    vs = sort_ids(d.vertices)
    b = base if base is not None else vs[0]
    return [canonical_rep(d, {v: 1, b: -1} if v != b else {}) for v in vs]


def all_degree_zero_classes(d: RibbonDigraph) -> list[PicClass]:
    """Every element of the degree-0 group, generated from the cyclic decomposition."""
    g = group_descriptor(d)
    factors = [f for f in g.diagonal if f != 1]
    positions = [i for i, f in enumerate(g.diagonal) if f != 1]
    out = []

    def rec(i: int, c: list[int]) -> None:
        if i == len(factors):
            full = [0] * len(g.diagonal)
            for p, val in zip(positions, c):
                full[p] = val
            rep = matvec(g.smith.Uinv, full)
            vals = dict(zip(g.others, rep))
            vals[g.deleted] = -sum(rep)
            out.append(canonical_rep(d, vals))
            return
        for k in range(factors[i]):
            rec(i + 1, c + [k])

    rec(0, [])
    return out


# ---------------------------------------------------------------------------
# Arborescences
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Arborescence:
    root: str
    arcs: frozenset
    direction: str = "in"

    def sorted_arcs(self) -> list[str]:
        return sort_ids(self.arcs)


def arborescence_problems(d: RibbonDigraph, a: Arborescence) -> list[str]:
    problems = []
    if not d.has_vertex(a.root):
        return [f"unknown root {a.root!r}"]
    if a.direction not in ("in", "out"):
        return [f"unknown direction {a.direction!r}"]
    unknown = [x for x in a.arcs if x not in d.arcs]
    if unknown:
        return [f"unknown arc {sort_ids(unknown)[0]!r}"]
    if len(a.arcs) != len(d.vertices) - 1:
        problems.append(f"has {len(a.arcs)} arcs, needs {len(d.vertices) - 1}")
    # each non-root vertex: one arc leaving (in) or entering (out)
    owner = {}
    for x in a.arcs:
        v = d.tail(x) if a.direction == "in" else d.head(x)
        if v == a.root:
            problems.append(f"arc {x} {'leaves' if a.direction == 'in' else 'enters'} the root")
        elif v in owner:
            problems.append(f"vertex {v} has two arcs")
        owner[v] = x
    if problems:
        return problems
    for v in d.vertices:
        seen = set()
        while v != a.root:
            if v in seen or v not in owner:
                return [f"vertex {v} does not reach the root"]
            seen.add(v)
            x = owner[v]
            v = d.head(x) if a.direction == "in" else d.tail(x)
    return []


def is_arborescence(d: RibbonDigraph, a: Arborescence) -> bool:
    return not arborescence_problems(d, a)


def require_arborescence(d: RibbonDigraph, a: Arborescence) -> None:
    problems = arborescence_problems(d, a)
    if problems:
        raise InvalidArborescence("; ".join(problems))


def enumerate_arborescences(d: RibbonDigraph, root: str, direction: Direction = "in",
                            limit: int = ARBORESCENCE_LIMIT) -> list[Arborescence]:
    """All spanning arborescences towards (``in``) or away from (``out``) ``root``."""
    d.check_vertex(root)
    vs = [v for v in sort_ids(d.vertices) if v != root]
    choices = {}
    for v in vs:
        if direction == "in":
            opts = [a for a in d.arcs if d.tail(a) == v and d.head(a) != v]
        else:
            opts = [a for a in d.arcs if d.head(a) == v and d.tail(a) != v]
        choices[v] = sort_ids(opts)
    step = (lambda a: d.head(a)) if direction == "in" else (lambda a: d.tail(a))
    out: list[Arborescence] = []
    chosen: dict[str, str] = {}

    def closes_cycle(v: str) -> bool:
        seen = {v}
        w = step(chosen[v])
        while w in chosen:
            if w in seen:
                return True
            seen.add(w)
            w = step(chosen[w])
        return w in seen

    def rec(i: int) -> None:
        if i == len(vs):
            out.append(Arborescence(root, frozenset(chosen.values()), direction))
            if len(out) > limit:
                raise TooLarge(f"more than {limit} arborescences")
            return
        v = vs[i]
        for a in choices[v]:
            chosen[v] = a
            if not closes_cycle(v):
                rec(i + 1)
            del chosen[v]

    rec(0)
    return out
