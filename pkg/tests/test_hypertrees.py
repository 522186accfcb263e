import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from helpers import (
    BIP7_JAEGER,
    BIP7_NON_JAEGER,
    c3,
    diamond,
    bip7,
    bip7_trinity,
    k2,
    random_plane_graphs,
    random_trinities,
    theta,
)
from trinities.errors import InvalidBase, NotAHypertree
from trinities.plane_structures import BasePair, build_trinity_from_plane_graph, subdivide
from trinities.hypertrees_jaeger import (
    Hypertree,
    SpanningTree,
    base_face,
    bernardi_bijection,
    bernardi_break_divisor,
    bernardi_process,
    break_divisors,
    dual_hypertree,
    enumerate_hypertrees,
    enumerate_jaeger_trees,
    enumerate_spanning_trees,
    hypertree_of_tree,
    hypertrees_from_spanning_trees,
    is_hypertree,
    is_hypertree_by_subsets,
    is_jaeger_tree,
    is_spanning_tree,
    jaeger_arborescence_dual,
    realize_hypertree,
    tour,
)
from trinities.sandpile_core import ChipConfig, enumerate_arborescences, is_arborescence
from trinities.trinity_group import digraph_of, graph_of

BIP7_BASE = BasePair("v1", "e1", "x6")
VIOLET7 = ["v1", "v2", "v3"]
EMERALD7 = ["e1", "e2", "e3", "e4"]


def bip(g):
    h, colors = subdivide(g)
    return h, [v for v, c in colors.items() if c == "V"], [v for v, c in colors.items() if c == "E"]


# --- tours ------------------------------------------------------------------

def test_diamond_tour_and_break_divisor():
    g = diamond()
    tree = SpanningTree.of(["e1", "e3", "e5"])
    base = BasePair("v1", "v2", "e1")
    assert tour(g, tree, base).trace() == "v1e1, v2e2, v2e5, v4e3, v3e2, v3e3, v4e4, v4e5, v2e1, v1e4"
    bd = bernardi_break_divisor(g, tree, base)
    assert [bd.chips[v] for v in ("v1", "v2", "v3", "v4")] == [0, 1, 0, 1]
    assert bd.chips in break_divisors(g)


def test_k2_tour():
    rec = tour(k2(), SpanningTree.of(["e1"]), BasePair("v1", "v2", "e1"))
    assert len(rec.steps) == 2 and rec.cuts == ()


def test_tree_graph_has_zero_break_divisor():
    g = next(x for x in random_plane_graphs(30, seed=3) if len(x.edges) == len(x.vertices) - 1 and x.edges)
    (tree,) = enumerate_spanning_trees(g)
    e = next(iter(g.edges))
    a, b = g.endpoints(e)
    assert bernardi_break_divisor(g, tree, BasePair(a, b, e)).chips.support() == []


def test_theta_break_divisor_by_hand():
    # tree {e1} from v1 along e1: at v2 the next darts are e3-, e2- (non-tree, cut at v2)
    bd = bernardi_break_divisor(theta(), SpanningTree.of(["e1"]), BasePair("v1", "v2", "e1"))
    assert bd.chips.degree == 2
    assert bd.chips == ChipConfig(v2=2)


def test_tour_visits_every_edge_twice_once_per_end():
    for g in random_plane_graphs(25, seed=6, max_vertices=5, max_edges=8):
        if not g.edges:
            continue
        trees = enumerate_spanning_trees(g)[:10]
        for d in list(g.darts)[:4]:
            e = g.edge(d)
            base = BasePair(g.vertex(d), g.vertex(g.alpha(d)), e)
            for t in trees:
                rec = tour(g, t, base)
                assert len(rec.steps) == 2 * len(g.edges)
                for x in g.edges:
                    a, b = g.endpoints(x)
                    ends = sorted(v for v, y in rec.steps if y == x)
                    assert ends == sorted([a, b])


def test_invalid_base():
    with pytest.raises(InvalidBase):
        tour(diamond(), SpanningTree.of(["e1", "e3", "e5"]), BasePair("v1", "v3", "e1"))


# --- hypertrees --------------------------------------------------------------

def test_hypertree_of_tree_examples():
    h, vs, es = bip(k2())
    (tree,) = enumerate_spanning_trees(h)
    assert hypertree_of_tree(h, tree, vs) == Hypertree(v1=0, v2=0)
    gr = graph_of(build_trinity_from_plane_graph(theta()), "R")
    star = [d for d in gr.edges if gr.endpoints(d)[0] == "v1" or gr.endpoints(d)[1] == "v1"]
    extra = next(d for d in gr.edges if "v2" in gr.endpoints(d))
    assert hypertree_of_tree(gr, SpanningTree.of(star + [extra]), ["v1", "v2"]) == Hypertree(v1=2, v2=0)


def test_is_hypertree_examples():
    gr = graph_of(build_trinity_from_plane_graph(theta()), "R")
    assert is_hypertree(gr, ["v1", "v2"], {"v1": 1, "v2": 1})
    assert not is_hypertree(gr, ["v1", "v2"], {"v1": 1, "v2": 0})
    assert not is_hypertree(gr, ["v1", "v2"], {"v1": 3, "v2": -1})
    assert sorted(map(repr, enumerate_hypertrees(gr, ["v1", "v2"]))) == sorted(
        map(repr, [Hypertree(v1=2, v2=0), Hypertree(v1=1, v2=1), Hypertree(v1=0, v2=2)]))


def test_bip_c3_hypertrees_are_spanning_tree_vectors():
    g = c3()
    h, vs, es = bip(g)
    want = {Hypertree({e: int(e in t.edges) for e in g.edges}) for t in enumerate_spanning_trees(g)}
    assert set(enumerate_hypertrees(h, es)) == want and len(want) == 3


def test_enumeration_matches_spanning_tree_oracle_and_characterizations_agree():
    rng = random.Random(1)
    for _, t in random_trinities(24, seed=30, max_vertices=5, max_edges=7):
        for host in "RVE":
            g = graph_of(t, host)
            for side in [c for c in "VER" if c != host]:
                nodes = t.color_class(side)
                hs = set(enumerate_hypertrees(g, nodes))
                assert hs == hypertrees_from_spanning_trees(g, nodes)
                other = len(g.vertices) - len(nodes)
                for f in list(hs)[:6]:
                    assert is_hypertree_by_subsets(g, nodes, f)
                    tree = realize_hypertree(g, nodes, f)
                    assert tree is not None and hypertree_of_tree(g, tree, nodes) == f
                for _ in range(10):
                    vals = {v: 0 for v in nodes}
                    for _k in range(other - 1):
                        vals[rng.choice(nodes)] += 1
                    a = is_hypertree(g, nodes, vals)
                    assert a == is_hypertree_by_subsets(g, nodes, vals)
                    assert a == (realize_hypertree(g, nodes, vals) is not None)
                    assert a == (Hypertree(vals) in hs)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 5), st.integers(0, 3), st.integers(0, 10**6), st.data())
def test_hypertree_tests_agree_property(n, extra, seed, data):
    from trinities.plane_structures import random_plane_graph

    g = random_plane_graph(n, n - 1 + extra, seed)
    h, vs, es = bip(g)
    side = data.draw(st.sampled_from([vs, es]))
    other = len(h.vertices) - len(side)
    vals = {v: 0 for v in side}
    for _ in range(other - 1):
        vals[data.draw(st.sampled_from(sorted(side)))] += 1
    a = is_hypertree(h, side, vals)
    assert a == is_hypertree_by_subsets(h, side, vals)
    assert a == (realize_hypertree(h, side, vals) is not None)


# --- break divisors -----------------------------------------------------------

def test_break_divisor_hypertree_correspondence_both_directions():
    for g in random_plane_graphs(30, seed=41, max_vertices=5, max_edges=7):
        h, vs, es = bip(g)
        genus = len(g.edges) - len(g.vertices) + 1
        brute = break_divisors(g)
        # every nonnegative vector of degree genus, tested both ways
        for combo in itertools.combinations_with_replacement(sorted(g.vertices), genus):
            x = ChipConfig({v: combo.count(v) for v in g.vertices})
            f = {v: g.degree(v) - 1 - x[v] for v in g.vertices}
            assert (x in brute) == is_hypertree(h, vs, f)


def test_diamond_break_divisor_via_bernardi_bijection():
    g = diamond()
    t = build_trinity_from_plane_graph(g)
    gr = graph_of(t, "R")
    f = Hypertree({e: int(e in ("e1", "e3", "e5")) for e in t.color_class("E")})
    beta = bernardi_bijection(gr, f, BasePair("v1", "e1", "e1+"), t.color_class("V"), "E->V")
    x = {v: g.degree(v) - 1 - beta[v] for v in g.vertices}
    assert ChipConfig(x) in break_divisors(g)


# --- bip7 ------------------------------------------------------------------

def test_bip7_jaeger_trees():
    g = bip7()
    trees = enumerate_jaeger_trees(g, BIP7_BASE, VIOLET7)
    assert len(trees) == 7
    assert len(enumerate_hypertrees(g, EMERALD7)) == 7
    assert len(enumerate_spanning_trees(g)) == 50
    brute = [t for t in enumerate_spanning_trees(g) if is_jaeger_tree(g, t, BIP7_BASE, VIOLET7)]
    assert set(brute) == set(trees)
    # per-tree emerald vectors
    got = {tuple(t.sorted_edges()): {e: v for e, v in hypertree_of_tree(g, t, EMERALD7).items() if v}
           for t in trees}
    assert got == BIP7_JAEGER
    assert {hypertree_of_tree(g, t, EMERALD7) for t in trees} == set(enumerate_hypertrees(g, EMERALD7))


def test_bip7_non_jaeger_tree():
    g = bip7()
    tree = SpanningTree.of(BIP7_NON_JAEGER)
    assert is_spanning_tree(g, tree.edges)
    assert not is_jaeger_tree(g, tree, BIP7_BASE, VIOLET7)


def test_bip7_bernardi_process_and_round_trip():
    g = bip7()
    for edges, vals in BIP7_JAEGER.items():
        f = Hypertree({e: vals.get(e, 0) for e in EMERALD7})
        tree = bernardi_process(g, f, BIP7_BASE, VIOLET7)
        assert tree == SpanningTree.of(edges)
        assert is_jaeger_tree(g, tree, BIP7_BASE, VIOLET7)
        fv = bernardi_bijection(g, f, BIP7_BASE, VIOLET7, "E->V")
        assert bernardi_bijection(g, fv, BIP7_BASE, VIOLET7, "V->E") == f


def test_bip7_non_jaeger_dual_is_not_an_arborescence():
    t = bip7_trinity()
    a = jaeger_arborescence_dual(t, SpanningTree.of(BIP7_NON_JAEGER), BIP7_BASE)
    assert not is_arborescence(digraph_of(t, "R"), a)
    for edges in BIP7_JAEGER:
        assert is_arborescence(digraph_of(t, "R"), jaeger_arborescence_dual(t, SpanningTree.of(edges), BIP7_BASE))


def test_k2_bernardi():
    h, vs, es = bip(k2())
    base = BasePair("v1", "e1", "e1+")
    # the middle node of the path has degree 2 in the only tree, so its value is 1
    assert enumerate_hypertrees(h, es) == [Hypertree(e1=1)]
    tree = bernardi_process(h, {"e1": 1}, base, vs)
    assert tree.edges == frozenset(h.edges)
    assert bernardi_bijection(h, {"e1": 1}, base, vs) == Hypertree(v1=0, v2=0)
    assert bernardi_bijection(h, {"v1": 0, "v2": 0}, base, vs, "V->E") == Hypertree(e1=1)


def test_bernardi_process_rejects_non_hypertree():
    with pytest.raises(NotAHypertree):
        bernardi_process(bip7(), {"e1": 3}, BIP7_BASE, VIOLET7)


def test_jaeger_uniqueness_and_process_on_corpus():
    for _, t in random_trinities(15, seed=50, max_vertices=5, max_edges=7):
        g = graph_of(t, "R")
        vs, es = t.color_class("V"), t.color_class("E")
        for d in list(g.darts)[:3]:
            base = BasePair(g.vertex(d), g.vertex(g.alpha(d)), g.edge(d))
            for cut, other in ((vs, es), (es, vs)):
                trees = enumerate_jaeger_trees(g, base, cut)
                brute = [x for x in enumerate_spanning_trees(g) if is_jaeger_tree(g, x, base, cut)]
                assert set(trees) == set(brute)
                images = [hypertree_of_tree(g, x, other) for x in trees]
                assert sorted(map(repr, images)) == sorted(map(repr, enumerate_hypertrees(g, other)))
                cuts = [hypertree_of_tree(g, x, cut) for x in trees]
                assert len(set(cuts)) == len(trees) == len(enumerate_hypertrees(g, cut))
                for x, f in zip(trees, images):
                    assert bernardi_process(g, f, base, cut) == x


# --- duality ---------------------------------------------------------------------

def test_dual_hypertree_of_spanning_tree_is_dual_tree():
    g = diamond()
    t = build_trinity_from_plane_graph(g)
    for tree in enumerate_spanning_trees(g):
        f = Hypertree({e: int(e in tree.edges) for e in g.edges})
        assert dual_hypertree(t, f) == Hypertree({e: int(e not in tree.edges) for e in g.edges})


def test_dual_hypertree_involution_and_bijection():
    for _, t in random_trinities(18, seed=60):
        em = t.color_class("E")
        gv = graph_of(t, "V")
        src = enumerate_hypertrees(graph_of(t, "R"), em)
        dst = set(enumerate_hypertrees(gv, em))
        images = set()
        for f in src:
            fs = dual_hypertree(t, f)
            assert fs in dst
            assert Hypertree({e: gv.degree(e) - 1 - fs[e] for e in em}) == f
            images.add(fs)
        assert images == dst
    # K2: the red graph is a path through e1 (value 1), the violet graph a double edge (value 0)
    assert dual_hypertree(build_trinity_from_plane_graph(k2()), {"e1": 1}) == Hypertree(e1=0)


def test_jaeger_trees_are_duals_of_arborescences_and_same_s0():
    for _, t in random_trinities(15, seed=70):
        g = graph_of(t, "R")
        dr = digraph_of(t, "R")
        red = [e for e in t.edges if t.edge_color(e) == "R"]
        by_s0 = {}
        for d in g.darts:
            base = BasePair(g.vertex(d), g.vertex(g.alpha(d)), g.edge(d))
            s0 = base_face(t, base)
            trees = set(enumerate_jaeger_trees(g, base, t.color_class("V")))
            arbs = enumerate_arborescences(dr, s0, "out")
            assert len(trees) == len(arbs)
            assert trees == {SpanningTree.of(e for e in red if e not in a.arcs) for a in arbs}
            if s0 in by_s0:
                assert by_s0[s0] == trees
            by_s0[s0] = trees
