import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from edsbip.graph import build_graph, complete_bipartite, cycle_graph, path_graph, spider_graph, square
from edsbip.recognize import (
    Pattern,
    PatternTooLarge,
    classify,
    contains_hole,
    contains_induced,
    find_induced_cycle,
    k23_degree3_exclusions,
    parse_pattern,
    shortest_induced_even_cycle_at_least,
)

from conftest import any_graphs, bipartite_graphs, nx_has_induced, to_nx

PATTERNS = [
    Pattern.path(4),
    Pattern.path(5),
    Pattern.path(7),
    Pattern.spider(1, 1, 1),
    Pattern.spider(2, 2, 2),
    Pattern.spider(1, 2, 4),
    Pattern.disjoint_paths(2, 4),
    Pattern.cycle(6),
    Pattern.named("A4"),
    Pattern.named("H4"),
]


def _is_induced_copy(g, pattern, image):
    pg = pattern.graph
    if len(set(image)) != pg.n:
        return False
    return all(
        g.has_edge(image[a], image[b]) == pg.has_edge(a, b)
        for a in range(pg.n)
        for b in range(a + 1, pg.n)
    )


def test_parse_pattern_roundtrip():
    for text in ["P7", "2P4", "S2,2,4", "C6", "A4", "H4", "K33", "K23"]:
        assert str(parse_pattern(text)).replace(",", "") == text.replace(",", "")
    with pytest.raises(ValueError):
        parse_pattern("Q5")


def test_named_shapes():
    a4 = Pattern.named("A4").graph
    assert (a4.n, a4.m) == (5, 5)
    h4 = Pattern.named("H4").graph
    assert (h4.n, h4.m) == (8, 9)
    assert nx.is_bipartite(to_nx(h4))


def test_contains_induced_examples():
    assert contains_induced(path_graph(7), Pattern.path(7)) in ([0, 1, 2, 3, 4, 5, 6], [6, 5, 4, 3, 2, 1, 0])
    assert contains_induced(cycle_graph(6), Pattern.spider(1, 1, 1)) is None
    w = contains_induced(spider_graph(2, 2, 4), Pattern.spider(1, 2, 4))
    assert w is not None and _is_induced_copy(spider_graph(2, 2, 4), Pattern.spider(1, 2, 4), w)


def test_pattern_cap():
    with pytest.raises(PatternTooLarge):
        contains_induced(path_graph(20), Pattern.path(14))


@settings(max_examples=300, deadline=None)
@given(any_graphs(10), st.sampled_from(PATTERNS))
def test_contains_induced_matches_vf2(g, pattern):
    w = contains_induced(g, pattern)
    assert (w is not None) == nx_has_induced(g, pattern.graph)
    if w is not None:
        assert _is_induced_copy(g, pattern, w)


@settings(max_examples=100, deadline=None)
@given(bipartite_graphs(2, 12), st.sampled_from(PATTERNS), st.randoms(use_true_random=False))
def test_freeness_is_hereditary(g, pattern, rnd):
    if contains_induced(g, pattern) is not None:
        return
    keep = [v for v in range(g.n) if rnd.random() < 0.7]
    h, _ = g.induced_subgraph(keep)
    assert contains_induced(h, pattern) is None


def _chordless_cycle_lengths(g):
    return sorted({len(c) for c in nx.chordless_cycles(to_nx(g)) if len(c) >= 3})


def test_even_cycle_examples():
    assert sorted(shortest_induced_even_cycle_at_least(cycle_graph(6), 6)) == list(range(6))
    assert shortest_induced_even_cycle_at_least(complete_bipartite(2, 3), 6) is None
    assert shortest_induced_even_cycle_at_least(spider_graph(2, 2, 4), 6) is None


def test_hole_examples():
    assert contains_hole(cycle_graph(5)) is not None
    assert contains_hole(cycle_graph(4)) is None
    assert contains_hole(square(cycle_graph(12))) is not None


@settings(max_examples=200, deadline=None)
@given(any_graphs(9), st.integers(3, 7))
def test_shortest_induced_cycle_matches_networkx(g, min_len):
    lengths = [k for k in _chordless_cycle_lengths(g) if k >= min_len]
    c = find_induced_cycle(g, min_len)
    if not lengths:
        assert c is None
        return
    assert c is not None and len(c) == lengths[0]
    k = len(c)
    assert all(g.has_edge(c[i], c[(i + 1) % k]) for i in range(k))
    chords = [
        (i, j)
        for i in range(k)
        for j in range(i + 2, k)
        if (i, j) != (0, k - 1) and g.has_edge(c[i], c[j])
    ]
    assert not chords


def test_classify_examples():
    rep = classify(cycle_graph(6))
    assert rep.bipartite and rep.p7free and rep.s222free and not rep.p5free
    rep = classify(path_graph(8))
    assert not rep.p7free
    assert rep.witnesses["p7free"] in ([0, 1, 2, 3, 4, 5, 6], [1, 2, 3, 4, 5, 6, 7],
                                       [6, 5, 4, 3, 2, 1, 0], [7, 6, 5, 4, 3, 2, 1])
    rep = classify(complete_bipartite(3, 3))
    assert rep.k33present and rep.maxdeg_le3


@settings(max_examples=80, deadline=None)
@given(bipartite_graphs(1, 11))
def test_classify_matches_vf2(g):
    rep = classify(g)
    checks = {
        "p5free": Pattern.path(5),
        "p7free": Pattern.path(7),
        "p9free": Pattern.path(9),
        "s222free": Pattern.spider(2, 2, 2),
        "s223free": Pattern.spider(2, 2, 3),
        "s224free": Pattern.spider(2, 2, 4),
        "s124free": Pattern.spider(1, 2, 4),
        "h4free": Pattern.named("H4"),
    }
    for key, pat in checks.items():
        assert getattr(rep, key) == (not nx_has_induced(g, pat.graph)), key
    assert rep.lp4free[2] == (not nx_has_induced(g, Pattern.disjoint_paths(2, 4).graph))
    # S1,2,4 sits inside S2,2,4, so non-freeness propagates
    if not rep.s224free:
        assert not rep.s124free


def test_k23_exclusions():
    g = complete_bipartite(2, 3)
    assert k23_degree3_exclusions(g) == [0, 1]
    assert k23_degree3_exclusions(cycle_graph(6)) == []


def test_random_hosts_spot_check():
    rng = random.Random(5)
    for _ in range(30):
        n = rng.randint(8, 12)
        g = build_graph(n, [(a, b) for a in range(n) for b in range(a + 1, n) if rng.random() < 0.3])
        for pat in (Pattern.path(6), Pattern.named("A4")):
            assert (contains_induced(g, pat) is not None) == nx_has_induced(g, pat.graph)
