"""Shared instance factories and independent oracles for the test suite."""

from __future__ import annotations

import itertools
import random
import sys

import networkx as nx
import pytest
from hypothesis import strategies as st
from networkx.algorithms import isomorphism

from edsbip.graph import Graph, build_graph, is_connected


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def from_nx(h: nx.Graph) -> Graph:
    idx = {v: i for i, v in enumerate(sorted(h.nodes()))}
    return build_graph(len(idx), [(idx[a], idx[b]) for a, b in h.edges()])


def nx_has_induced(g: Graph, pattern: Graph) -> bool:
    """Induced-subgraph test via networkx's VF2 (independent of the package)."""
    gm = isomorphism.GraphMatcher(to_nx(g), to_nx(pattern))
    return gm.subgraph_is_isomorphic()


def random_bipartite(rng: random.Random, n: int, p: float) -> Graph:
    left = rng.randint(1, max(1, n - 1))
    edges = [(a, b) for a in range(left) for b in range(left, n) if rng.random() < p]
    return build_graph(n, edges)


def random_sparse_bipartite(rng: random.Random, n: int, extra: int) -> Graph:
    """Random tree plus a few extra edges across the tree's bipartition."""
    parent = [None] + [rng.randrange(i) for i in range(1, n)]
    side = [0] * n
    edges = set()
    for i in range(1, n):
        side[i] = 1 - side[parent[i]]
        edges.add((parent[i], i))
    for _ in range(extra):
        a, b = rng.sample(range(n), 2)
        if side[a] != side[b]:
            edges.add((min(a, b), max(a, b)))
    return build_graph(n, edges)


def random_planted(rng: random.Random, stars: int, extra: int) -> tuple[Graph, list[int]]:
    """Stars joined leaf-to-leaf across opposite sides; centres form an e.d.s."""
    edges, side, leaves, centres, star_of = [], [], [], [], {}
    n = 0
    for k in range(stars):
        s = k % 2
        c = n
        centres.append(c)
        side.append(s)
        n += 1
        for _ in range(rng.randint(0, 3)):
            edges.append((c, n))
            side.append(1 - s)
            leaves.append(n)
            star_of[n] = k
            n += 1
    for _ in range(extra):
        if len(leaves) < 2:
            break
        a, b = rng.sample(leaves, 2)
        if star_of[a] != star_of[b] and side[a] != side[b]:
            edges.append((a, b))
    return build_graph(n, edges), centres


def mixed_instances(seed: int, count: int, max_n: int = 14):
    """Connected bipartite graphs from three families, n <= max_n."""
    rng = random.Random(seed)
    made = 0
    while made < count:
        kind = rng.randrange(3)
        if kind == 0:
            g = random_bipartite(rng, rng.randint(2, max_n), rng.choice([0.2, 0.3, 0.5]))
        elif kind == 1:
            g = random_sparse_bipartite(rng, rng.randint(2, max_n), rng.randint(0, 5))
        else:
            g, _ = random_planted(rng, rng.randint(1, 5), rng.randint(0, 10))
        if g.n > max_n or not is_connected(g):
            continue
        made += 1
        yield g


@st.composite
def bipartite_graphs(draw, min_n: int = 1, max_n: int = 10, connected: bool = False):
    n = draw(st.integers(min_n, max_n))
    if connected and n >= 2:
        # grow a spanning tree, attaching each vertex to an earlier one across the cut
        left = draw(st.integers(1, n - 1))
        order = [0, left] + [u for u in range(1, n) if u != left]
        chosen = []
        for k, u in enumerate(order[1:], start=1):
            across = [w for w in order[:k] if (w < left) != (u < left)]
            chosen.append(tuple(sorted((u, draw(st.sampled_from(across))))))
        pairs = [(a, b) for a in range(left) for b in range(left, n) if (a, b) not in chosen]
        if pairs:
            chosen += draw(st.lists(st.sampled_from(pairs), unique=True))
        return build_graph(n, chosen)
    left = draw(st.integers(0, n))
    pairs = [(a, b) for a in range(left) for b in range(left, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    g = build_graph(n, chosen)
    if connected:
        from hypothesis import assume

        assume(is_connected(g))
    return g


@st.composite
def any_graphs(draw, max_n: int = 8):
    n = draw(st.integers(0, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    return build_graph(n, chosen)


@pytest.fixture
def c6() -> Graph:
    return build_graph(6, [(i, (i + 1) % 6) for i in range(6)])


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for _, (_, line) in sorted(mod.RESULTS.items()):
        terminalreporter.write_line(line)
