"""Small named instances shared by the test modules."""

from trinities.plane_structures import (
    PlaneGraph,
    build_trinity_from_balanced_digraph,
    build_trinity_from_bipartite,
    build_trinity_from_plane_graph,
    plane_graph_from_positions,
    random_balanced_digraph,
    random_plane_graph,
    rotate_colors,
)

DIAMOND_POSITIONS = {"v1": (8, 0), "v2": (4, 1.2), "v3": (0, 0), "v4": (4, -1.2)}
DIAMOND_EDGES = {"e1": ("v1", "v2"), "e2": ("v2", "v3"), "e3": ("v3", "v4"), "e4": ("v4", "v1"), "e5": ("v2", "v4")}

# violet v1..v3 and emerald e1..e4 placed so the Jaeger trees for base v1:e1:x6 are the seven listed below
BIP7_POSITIONS = {"v1": (14, 2), "v2": (22, 2), "v3": (18, 8.5),
                  "e1": (18, 0), "e2": (18, 4), "e3": (14, 6.5), "e4": (22, 6.5)}
BIP7_EDGES = {"x1": ("v3", "e3"), "x2": ("e3", "v1"), "x3": ("v3", "e4"), "x4": ("v3", "e2"),
              "x5": ("v1", "e2"), "x6": ("v1", "e1"), "x7": ("e1", "v2"), "x8": ("v2", "e2"),
              "x9": ("v2", "e4")}
BIP7_JAEGER = {
    ("x2", "x3", "x4", "x5", "x6", "x7"): {"e1": 1, "e2": 1},
    ("x2", "x3", "x5", "x6", "x7", "x9"): {"e1": 1, "e4": 1},
    ("x2", "x3", "x5", "x7", "x8", "x9"): {"e2": 1, "e4": 1},
    ("x1", "x2", "x3", "x4", "x6", "x7"): {"e1": 1, "e3": 1},
    ("x1", "x2", "x3", "x4", "x7", "x8"): {"e2": 1, "e3": 1},
    ("x1", "x2", "x3", "x7", "x8", "x9"): {"e3": 1, "e4": 1},
    ("x2", "x3", "x4", "x5", "x7", "x8"): {"e2": 2},
}
BIP7_NON_JAEGER = ("x1", "x2", "x3", "x4", "x6", "x8")


def k2():
    return PlaneGraph({"v1": ["e1+"], "v2": ["e1-"]}, {"e1": ("e1+", "e1-")})


def theta():
    return PlaneGraph({"v1": ["e1+", "e2+", "e3+"], "v2": ["e3-", "e2-", "e1-"]},
                      {f"e{i}": (f"e{i}+", f"e{i}-") for i in (1, 2, 3)})


def c3():
    return PlaneGraph({"v1": ["e1+", "e3-"], "v2": ["e2+", "e1-"], "v3": ["e3+", "e2-"]},
                      {"e1": ("e1+", "e1-"), "e2": ("e2+", "e2-"), "e3": ("e3+", "e3-")})


def diamond():
    return plane_graph_from_positions(DIAMOND_POSITIONS, DIAMOND_EDGES)


def bip7():
    return plane_graph_from_positions(BIP7_POSITIONS, BIP7_EDGES)


def bip7_trinity():
    g = bip7()
    return build_trinity_from_bipartite(g, {v: "V" if v.startswith("v") else "E" for v in g.vertices})


def random_plane_graphs(count, seed, max_vertices=6, max_edges=10):
    import random

    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(1, max_vertices)
        top = max(n - 1, min(max_edges, 3 * n - 6 if n >= 3 else n))
        m = rng.randint(max(n - 1, 1), max(top, 1))
        out.append(random_plane_graph(n, m, rng.randrange(10**9)))
    return out


def random_trinities(count, seed, max_vertices=5, max_edges=8):
    """Mixed corpus: plane-graph, balanced-digraph and recolored trinities."""
    import random

    rng = random.Random(seed)
    out = []
    for i in range(count):
        n = rng.randint(2, max_vertices)
        top = max(n - 1, min(max_edges, 3 * n - 6 if n >= 3 else n))
        m = rng.randint(n - 1, top)
        s = rng.randrange(10**9)
        if i % 3 == 1:
            out.append((None, build_trinity_from_balanced_digraph(random_balanced_digraph(n, m, s))))
            continue
        g = random_plane_graph(n, m, s)
        t = build_trinity_from_plane_graph(g)
        out.append((g, t) if i % 3 == 0 else (None, rotate_colors(t, 1 + i % 2)))
    return out
