"""Induced-subgraph detection for fixed small patterns and class reports."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property

from .graph import (
    Graph,
    NotBipartite,
    bipartition,
    bits,
    build_graph,
    complete_bipartite,
    components,
    cycle_graph,
    disjoint_union,
    is_connected,
    path_graph,
    spider_graph,
)

DEFAULT_PATTERN_CAP = 13
DEFAULT_LP4_CAP = 3


class PatternTooLarge(ValueError):
    pass


_NAMED_EDGES = {
    # C4 0-1-2-3 with a pendant 4 on vertex 2
    "A4": (5, [(0, 1), (1, 2), (2, 3), (3, 0), (2, 4)]),
    # domino 0-1-2 / 3-4-5 (rungs 0-3, 1-4, 2-5) plus pendant path 5-6-7
    "H4": (8, [(0, 1), (1, 2), (3, 4), (4, 5), (0, 3), (1, 4), (2, 5), (5, 6), (6, 7)]),
}


@dataclass(frozen=True)
class Pattern:
    """A fixed forbidden-subgraph shape.

    ``kind`` is one of ``path``, ``paths``, ``spider``, ``cycle`` or ``named``;
    ``params`` holds its integer parameters (or the name for ``named``).
    """

    kind: str
    params: tuple

    @classmethod
    def path(cls, k: int) -> "Pattern":
        if k < 1:
            raise ValueError("path needs at least one vertex")
        return cls("path", (k,))

    @classmethod
    def disjoint_paths(cls, copies: int, k: int) -> "Pattern":
        if copies < 1 or k < 1:
            raise ValueError("disjoint paths need positive parameters")
        return cls("paths", (copies, k))

    @classmethod
    def spider(cls, i: int, j: int, k: int) -> "Pattern":
        if min(i, j, k) < 1:
            raise ValueError("spider legs must have length >= 1")
        return cls("spider", (i, j, k))

    @classmethod
    def cycle(cls, m: int) -> "Pattern":
        if m < 3:
            raise ValueError("cycle needs at least three vertices")
        return cls("cycle", (m,))

    @classmethod
    def named(cls, name: str) -> "Pattern":
        name = name.upper()
        if name not in ("A4", "H4", "K23", "K33"):
            raise ValueError(f"unknown named pattern {name!r}")
        return cls("named", (name,))

    @cached_property
    def graph(self) -> Graph:
        if self.kind == "path":
            return path_graph(self.params[0])
        if self.kind == "paths":
            copies, k = self.params
            return disjoint_union(*[path_graph(k)] * copies)
        if self.kind == "spider":
            return spider_graph(*self.params)
        if self.kind == "cycle":
            return cycle_graph(self.params[0])
        name = self.params[0]
        if name == "K23":
            return complete_bipartite(2, 3)
        if name == "K33":
            return complete_bipartite(3, 3)
        n, edges = _NAMED_EDGES[name]
        return build_graph(n, edges)

    @property
    def size(self) -> int:
        return self.graph.n

    def __str__(self) -> str:
        if self.kind == "path":
            return f"P{self.params[0]}"
        if self.kind == "paths":
            return f"{self.params[0]}P{self.params[1]}"
        if self.kind == "spider":
            return "S{},{},{}".format(*self.params)
        if self.kind == "cycle":
            return f"C{self.params[0]}"
        return self.params[0]


def parse_pattern(text: str) -> Pattern:
    """Parse ``P7``, ``2P4``, ``S2,2,4``, ``C6``, ``A4``, ``H4``, ``K23``, ``K33``."""
    t = text.strip().upper().replace("_", "").replace("{", "").replace("}", "")
    if m := re.fullmatch(r"(\d+)P(\d+)", t):
        return Pattern.disjoint_paths(int(m[1]), int(m[2]))
    if m := re.fullmatch(r"P(\d+)", t):
        return Pattern.path(int(m[1]))
    if m := re.fullmatch(r"S(\d+),(\d+),(\d+)", t):
        return Pattern.spider(int(m[1]), int(m[2]), int(m[3]))
    if m := re.fullmatch(r"C(\d+)", t):
        return Pattern.cycle(int(m[1]))
    t = t.replace(",", "")
    if t in ("A4", "H4", "K23", "K33"):
        return Pattern.named(t)
    raise ValueError(f"cannot parse pattern {text!r}")


def _search_order(p: Graph) -> list[int]:
    # BFS per component from a highest-degree vertex, so that every vertex but
    # the first of its component has an earlier neighbour
    order: list[int] = []
    placed = set()
    for comp in components(p):
        start = max(comp, key=lambda v: (len(p.adj[v]), -v))
        queue = [start]
        placed.add(start)
        while queue:
            x = queue.pop(0)
            order.append(x)
            for y in p.adj[x]:
                if y not in placed:
                    placed.add(y)
                    queue.append(y)
    return order


def contains_induced(
    g: Graph, p: Pattern | Graph, cap: int = DEFAULT_PATTERN_CAP
) -> list[int] | None:
    """Host vertices realising ``p`` as an induced subgraph, in pattern order.

    Exhaustive backtracking; each new pattern vertex is drawn from the host
    neighbourhood of an already-mapped pattern neighbour and must agree on
    adjacency with every mapped vertex.
    """
    pg = p.graph if isinstance(p, Pattern) else p
    if pg.n > cap:
        raise PatternTooLarge(f"pattern has {pg.n} vertices, cap is {cap}")
    if pg.n == 0:
        return []
    if pg.n > g.n:
        return None
    order = _search_order(pg)
    pos = {v: i for i, v in enumerate(order)}
    # for each search position: earlier positions adjacent / non-adjacent
    earlier_adj = []
    earlier_non = []
    pdeg = []
    for i, pv in enumerate(order):
        a = [j for j in range(i) if pg.has_edge(pv, order[j])]
        earlier_adj.append(a)
        earlier_non.append([j for j in range(i) if j not in a])
        pdeg.append(len(pg.adj[pv]))
    hmasks = g.masks
    hdeg = [len(a) for a in g.adj]
    full = (1 << g.n) - 1
    k = pg.n
    image = [0] * k

    def place(i: int, used: int) -> bool:
        if i == k:
            return True
        cand = full & ~used
        for j in earlier_adj[i]:
            cand &= hmasks[image[j]]
        for j in earlier_non[i]:
            cand &= ~hmasks[image[j]]
        need = pdeg[i]
        while cand:
            low = cand & -cand
            c = low.bit_length() - 1
            cand ^= low
            if hdeg[c] < need:
                continue
            image[i] = c
            if place(i + 1, used | low):
                return True
        return False

    if not place(0, 0):
        return None
    return [image[pos[v]] for v in range(pg.n)]


def find_induced_cycle(
    g: Graph, min_len: int, max_len: int | None = None
) -> list[int] | None:
    """A shortest chordless cycle with ``min_len <= length <= max_len``."""
    return _shortest_induced_cycle(g, min_len, max_len)


def _shortest_induced_cycle(g: Graph, min_len: int, max_len: int | None) -> list[int] | None:
    # chordless paths grown from their smallest vertex; a path closes the
    # first time its tip sees the start again
    n = g.n
    masks = g.masks
    state = {"best": None, "limit": max_len if max_len is not None else n}

    def grow(path: list[int], path_mask: int, inner_closed: int, start: int) -> None:
        # inner_closed: closed neighbourhoods of path vertices other than the
        # start and the tip; a new vertex may not touch them
        last = path[-1]
        cand = masks[last] & ~path_mask & ~inner_closed
        cand &= ~((1 << start) - 1)
        while cand:
            low = cand & -cand
            q = low.bit_length() - 1
            cand ^= low
            length = len(path) + 1
            if (masks[start] >> q) & 1:
                # the tip sees the start: close here, never extend past a chord
                if min_len <= length <= state["limit"]:
                    state["best"] = path + [q]
                    state["limit"] = length - 1
                continue
            if length + 1 > state["limit"]:
                continue
            grow(path + [q], path_mask | low, inner_closed | masks[last] | (1 << last), start)

    for s in range(n):
        for p1 in g.adj[s]:
            if p1 > s:
                grow([s, p1], (1 << s) | (1 << p1), 0, s)
    return state["best"]


def shortest_induced_even_cycle_at_least(g: Graph, min_len: int) -> list[int] | None:
    """Shortest induced cycle of length >= ``min_len`` in a bipartite graph.

    ``None`` with ``min_len == 6`` means the graph is chordal bipartite.
    """
    bipartition(g)  # raises NotBipartite
    return _shortest_induced_cycle(g, min_len, None)


def contains_hole(g: Graph) -> list[int] | None:
    """Witness of a chordless cycle of length >= 5."""
    return _shortest_induced_cycle(g, 5, None)


@dataclass
class ClassReport:
    bipartite: bool
    connected: bool
    maxdeg_le3: bool
    p5free: bool
    p6free: bool
    p7free: bool
    p9free: bool
    s222free: bool
    s223free: bool
    s224free: bool
    s124free: bool
    lp4free: dict[int, bool]
    chordal_bipartite: bool
    h4free: bool
    k33present: bool
    k23_degree3_exclusions: list[int]
    witnesses: dict[str, list[int]] = field(default_factory=dict)

    def to_dict(self) -> dict:
        d = {
            "bipartite": self.bipartite,
            "connected": self.connected,
            "maxdeg_le3": self.maxdeg_le3,
            "p5free": self.p5free,
            "p6free": self.p6free,
            "p7free": self.p7free,
            "p9free": self.p9free,
            "s222free": self.s222free,
            "s223free": self.s223free,
            "s224free": self.s224free,
            "s124free": self.s124free,
            "lp4free": {str(k): v for k, v in sorted(self.lp4free.items())},
            "chordal_bipartite": self.chordal_bipartite,
            "h4free": self.h4free,
            "k33present": self.k33present,
            "k23_degree3_exclusions": list(self.k23_degree3_exclusions),
            "witnesses": {k: list(v) for k, v in sorted(self.witnesses.items())},
        }
        return d


def k23_degree3_exclusions(g: Graph) -> list[int]:
    """Degree-3 vertex pairs with identical neighbourhoods (the 2-side of a K_{2,3}).

    Neither vertex of such a pair can belong to an efficient dominating set.
    """
    by_nbhd: dict[tuple[int, ...], list[int]] = {}
    for v in range(g.n):
        if len(g.adj[v]) == 3:
            by_nbhd.setdefault(g.adj[v], []).append(v)
    out = []
    for group in by_nbhd.values():
        if len(group) >= 2:
            out.extend(group)
    return sorted(out)


def classify(g: Graph, lp4_cap: int = DEFAULT_LP4_CAP) -> ClassReport:
    """Which of the relevant hereditary classes ``g`` belongs to.

    Cheap tests run first and implications between patterns skip searches:
    P5-free implies P6-, P7- and P9-free; S2,2,2-free implies S2,2,3-free
    which implies S2,2,4-free, and S1,2,4-free implies S2,2,4-free.
    """
    wit: dict[str, list[int]] = {}

    def free(key: str, pattern: Pattern) -> bool:
        w = contains_induced(g, pattern)
        if w is not None:
            wit[key] = w
            return False
        return True

    try:
        bipartition(g)
        bip = True
    except NotBipartite as exc:
        bip = False
        wit["bipartite"] = exc.cycle
    connected = is_connected(g)
    maxdeg = g.max_degree() <= 3
    if not maxdeg:
        v = max(range(g.n), key=lambda u: (len(g.adj[u]), -u))
        wit["maxdeg_le3"] = [v, *g.adj[v][:4]]

    p5 = free("p5free", Pattern.path(5))
    p6 = p5 or free("p6free", Pattern.path(6))
    p7 = p6 or free("p7free", Pattern.path(7))
    p9 = p7 or free("p9free", Pattern.path(9))

    s222 = free("s222free", Pattern.spider(2, 2, 2))
    s223 = s222 or free("s223free", Pattern.spider(2, 2, 3))
    s124 = free("s124free", Pattern.spider(1, 2, 4))
    s224 = s223 or s124 or free("s224free", Pattern.spider(2, 2, 4))

    lp4: dict[int, bool] = {}
    for ell in range(1, lp4_cap + 1):
        if ell > 1 and lp4[ell - 1]:
            lp4[ell] = True
            continue
        pat = Pattern.path(4) if ell == 1 else Pattern.disjoint_paths(ell, 4)
        lp4[ell] = free(f"lp4free[{ell}]", pat)

    if bip:
        c = shortest_induced_even_cycle_at_least(g, 6)
        chordal = c is None
        if c is not None:
            wit["chordal_bipartite"] = c
    else:
        chordal = False
        wit["chordal_bipartite"] = wit["bipartite"]
    h4 = free("h4free", Pattern.named("H4"))
    k33 = contains_induced(g, Pattern.named("K33"))
    if k33 is not None:
        wit["k33present"] = k33
    excl = k23_degree3_exclusions(g) if bip else []
    return ClassReport(
        bipartite=bip,
        connected=connected,
        maxdeg_le3=maxdeg,
        p5free=p5,
        p6free=p6,
        p7free=p7,
        p9free=p9,
        s222free=s222,
        s223free=s223,
        s224free=s224,
        s124free=s124,
        lp4free=lp4,
        chordal_bipartite=chordal,
        h4free=h4,
        k33present=k33 is not None,
        k23_degree3_exclusions=excl,
        witnesses=wit,
    )


__all__ = [
    "ClassReport",
    "Pattern",
    "PatternTooLarge",
    "bits",
    "classify",
    "contains_hole",
    "contains_induced",
    "find_induced_cycle",
    "k23_degree3_exclusions",
    "parse_pattern",
    "shortest_induced_even_cycle_at_least",
]
