import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st
from sympy import Matrix

from helpers import c3, k2, random_trinities, theta
from trinities.errors import UnknownVertex
from trinities.plane_structures import bidirect, random_balanced_digraph
from trinities.sandpile_core import (
    Arborescence,
    ChipConfig,
    all_degree_zero_classes,
    arborescence_problems,
    canonical_rep,
    enumerate_arborescences,
    fire,
    generator_classes,
    group_descriptor,
    is_arborescence,
    laplacian,
    linearly_equivalent,
    zero_class,
)
from trinities.trinity_group import digraph_of


def matrix_tree_count(d, root):
    """In-arborescences at ``root`` by the matrix-tree theorem (sympy determinant)."""
    vs = [v for v in d.vertices if v != root]
    idx = {v: i for i, v in enumerate(vs)}
    m = [[0] * len(vs) for _ in vs]
    for a in d.arcs:
        t, h = d.tail(a), d.head(a)
        if t == h or t == root:
            continue
        m[idx[t]][idx[t]] += 1
        if h != root:
            m[idx[t]][idx[h]] -= 1
    return int(Matrix(m).det()) if vs else 1


def brute_force_arborescences(d, root):
    n = len(d.vertices)
    out = set()
    for combo in itertools.combinations(sorted(d.arcs), n - 1):
        a = Arborescence(root, frozenset(combo), "in")
        if is_arborescence(d, a):
            out.add(a)
    return out


def corpus_digraphs():
    out = [bidirect(k2()), bidirect(theta()), bidirect(c3())]
    for g, t in random_trinities(24, seed=1, max_vertices=5, max_edges=7):
        out.append(digraph_of(t, "V"))
    for k in range(10):
        out.append(random_balanced_digraph(2 + k % 4, 2 + k % 5, seed=100 + k))
    return out


def test_laplacian_examples():
    assert laplacian(bidirect(k2()), ["v1", "v2"]).as_lists() == [[-1, 1], [1, -1]]
    lc = laplacian(bidirect(c3()), ["v1", "v2", "v3"]).as_lists()
    assert all(lc[i][i] == -2 for i in range(3))
    assert all(lc[i][j] == 1 for i in range(3) for j in range(3) if i != j)
    assert laplacian(bidirect(theta()), ["v1", "v2"]).as_lists() == [[-3, 3], [3, -3]]


def test_laplacian_columns_and_rows_sum_to_zero():
    for d in corpus_digraphs():
        rows = laplacian(d).as_lists()
        assert all(sum(col) == 0 for col in zip(*rows))
        assert all(sum(r) == 0 for r in rows)  # L 1 = 0 for Eulerian digraphs


def test_fire_examples():
    assert fire(bidirect(k2()), {"v1": 1, "v2": 0}, "v1") == ChipConfig(v2=1)
    assert fire(bidirect(theta()), {"v1": 3}, "v1") == ChipConfig(v2=3)
    for d in corpus_digraphs()[:10]:
        x = ChipConfig({v: i for i, v in enumerate(d.vertices)})
        y = x
        for v in d.vertices:
            y = fire(d, y, v)
        assert y == x


def firing_search(d, x, y, bound=3):
    vs = list(d.vertices)
    for z in itertools.product(range(-bound, bound + 1), repeat=len(vs)):
        cur = ChipConfig(x)
        for v, k in zip(vs, z):
            for _ in range(abs(k)):
                cur = fire(d, cur, v) if k > 0 else cur - (fire(d, {}, v))
        if cur == ChipConfig(y):
            return True
    return False


def sympy_lattice_member(d, b, order):
    from sympy import ZZ
    from sympy.matrices.normalforms import smith_normal_form

    lap = laplacian(d, order).as_lists()

    def index(m):
        dd = smith_normal_form(Matrix(m), domain=ZZ)
        diag = [abs(int(dd[i, i])) for i in range(min(dd.shape)) if dd[i, i] != 0]
        prod = 1
        for v in diag:
            prod *= v
        return len(diag), prod

    return index(lap) == index([row + [bi] for row, bi in zip(lap, b)])


def test_linear_equivalence_examples():
    d = bidirect(theta())
    assert linearly_equivalent(d, {"v1": 2}, {"v1": 2})
    assert not linearly_equivalent(d, {"v1": 2}, {"v1": 1})
    assert linearly_equivalent(d, {"v1": 2, "v2": 0}, {"v1": -1, "v2": 3})
    assert firing_search(d, {"v1": 2}, {"v1": -1, "v2": 3})
    assert not linearly_equivalent(d, {"v1": 1, "v2": -1}, {})
    with pytest.raises(UnknownVertex):
        linearly_equivalent(d, {"zz": 1}, {})


def test_linear_equivalence_matches_firing_search():
    rng = random.Random(4)
    for d in [bidirect(theta()), bidirect(c3()), random_balanced_digraph(3, 3, seed=8)]:
        vs = sorted(d.vertices)
        for _ in range(15):
            x = {v: rng.randint(-2, 2) for v in vs}
            y = {v: rng.randint(-2, 2) for v in vs}
            y[vs[0]] += sum(x.values()) - sum(y.values())
            eq = linearly_equivalent(d, x, y)
            # a bounded search can only confirm; the sympy lattice index decides both ways
            if firing_search(d, x, y, bound=2):
                assert eq
            assert eq == sympy_lattice_member(d, [y[v] - x[v] for v in vs], vs)


def test_group_descriptor_examples():
    g = group_descriptor(bidirect(k2()))
    assert g.order == 1 and g.invariant_factors == []
    g = group_descriptor(bidirect(theta()))
    assert g.order == 3 and g.invariant_factors == [3]
    assert group_descriptor(bidirect(c3())).order == 3


def test_group_order_matches_matrix_tree_and_arborescences_everywhere():
    for d in corpus_digraphs():
        g = group_descriptor(d, cross_check=True)
        assert abs(g.determinant) == g.order
        for r in d.vertices:
            assert matrix_tree_count(d, r) == g.order
            assert len(enumerate_arborescences(d, r, "in")) == g.order
            assert len(enumerate_arborescences(d, r, "out")) == g.order


def test_arborescence_enumeration_matches_brute_force():
    for d in corpus_digraphs()[:12]:
        for r in d.vertices:
            assert set(enumerate_arborescences(d, r, "in")) == brute_force_arborescences(d, r)


def test_arborescence_examples():
    assert len(enumerate_arborescences(bidirect(k2()), "v1")) == 1
    assert len(enumerate_arborescences(bidirect(theta()), "v1", "in")) == 3
    assert all(len(enumerate_arborescences(bidirect(c3()), r)) == 3 for r in ("v1", "v2", "v3"))
    d = bidirect(c3())
    bad = Arborescence("v1", frozenset(), "in")
    assert arborescence_problems(d, bad)


def test_canonical_rep_examples():
    d = bidirect(theta())
    x = canonical_rep(d, {"v1": 1, "v2": -1})
    assert (x + x + x).is_zero()
    assert not x.is_zero() and x.order() == 3
    assert canonical_rep(d, {"v1": 2}) != canonical_rep(d, {"v1": 1, "v2": 1})
    assert zero_class(d).is_zero()


def test_canonical_rep_invariant_under_firing_and_agrees_with_lattice():
    rng = random.Random(12)
    for d in corpus_digraphs():
        vs = sorted(d.vertices)
        for _ in range(5):
            x = ChipConfig({v: rng.randint(-4, 4) for v in vs})
            c = canonical_rep(d, x)
            assert linearly_equivalent(d, x, c.representative)
            for v in vs:
                assert canonical_rep(d, fire(d, x, v)) == c
            y = ChipConfig({v: rng.randint(-4, 4) for v in vs})
            assert (canonical_rep(d, y) == c) == linearly_equivalent(d, x, y)


def test_group_elements_and_orders():
    for d in corpus_digraphs()[:20]:
        order = group_descriptor(d).order
        classes = all_degree_zero_classes(d)
        assert len(set(classes)) == order
        for c in classes:
            assert order % c.order() == 0
        gens = generator_classes(d)
        # generators 1_v - 1_base span the whole group
        span = {zero_class(d)}
        frontier = list(span)
        while frontier:
            nxt = []
            for a in frontier:
                for g in gens:
                    b = a + g
                    if b not in span:
                        span.add(b)
                        nxt.append(b)
            frontier = nxt
        assert span == set(classes)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-5, 5), min_size=3, max_size=3), st.lists(st.integers(-5, 5), min_size=3, max_size=3))
def test_class_addition_laws(a, b):
    d = bidirect(c3())
    x = canonical_rep(d, dict(zip(("v1", "v2", "v3"), a)))
    y = canonical_rep(d, dict(zip(("v1", "v2", "v3"), b)))
    assert x + y == y + x
    assert (x + y) - y == x
    assert x + (-x) == zero_class(d) or x.degree != 0


def test_chip_config_basics():
    x = ChipConfig(v1=2, v2=-2)
    assert x.degree == 0
    assert x == ChipConfig({"v1": 2, "v2": -2, "v3": 0})
    assert hash(x) == hash(ChipConfig({"v1": 2, "v2": -2, "v3": 0}))
    assert (x + {"v3": 1}).degree == 1
    assert (-x)["v1"] == -2 and (2 * x)["v2"] == -4
    assert x.support() == ["v1", "v2"]
