"""Exact Cover by 3-Sets to e.d.s. in bipartite graphs, and a girth-raising gadget.

Vertex layout of the transformation graph for an instance with ground set
size n and m triples::

    0 .. n-1          ground elements v_i
    n .. n+m-1        triple vertices x_j   (x_j ~ v_i whenever i is in triple j)
    n+m .. n+2m-1     pendant partners y_j  (y_j ~ x_j only)
    n+2m, +1, +2      z (adjacent to every v_i), w (z ~ w), u (w ~ u)

Exact covers correspond to e.d.s. via ``{x_j : j in cover} ∪ {y_j : j not in
cover} ∪ {w}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .eds import DEFAULT_BUDGET, BudgetExceeded, is_eds
from .graph import Graph, build_graph, diameter, girth

GROUND, X, Y, Z, W, U, GADGET = "v", "x", "y", "z", "w", "u", "gadget"


class InvalidSolution(ValueError):
    pass


class ShortCycleSurvived(RuntimeError):
    """Subdivision left a cycle of length at most 2k."""


class InvalidInstance(ValueError):
    pass


@dataclass(frozen=True)
class X3CInstance:
    n: int
    triples: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        if self.n < 0:
            raise InvalidInstance("ground set size must be non-negative")
        fixed = []
        for t in self.triples:
            t = tuple(sorted(t))
            if len(t) != 3 or len(set(t)) != 3:
                raise InvalidInstance(f"triple {t} needs three distinct members")
            if not all(0 <= a < self.n for a in t):
                raise InvalidInstance(f"triple {t} leaves [0, {self.n})")
            fixed.append(t)
        object.__setattr__(self, "triples", tuple(fixed))

    @property
    def m(self) -> int:
        return len(self.triples)

    def is_cover(self, chosen: Iterable[int]) -> bool:
        seen: list[int] = []
        for j in chosen:
            seen.extend(self.triples[j])
        return sorted(seen) == list(range(self.n))


@dataclass(frozen=True)
class Role:
    kind: str
    index: int | None = None
    # for gadget vertices: the original incidence edge (x vertex, v vertex)
    edge: tuple[int, int] | None = None
    position: int | None = None

    def to_dict(self) -> dict:
        d: dict = {"kind": self.kind}
        if self.index is not None:
            d["index"] = self.index
        if self.edge is not None:
            d["edge"] = list(self.edge)
            d["position"] = self.position
        return d


@dataclass
class ReductionMap:
    n: int
    m: int
    roles: list[Role]
    # one entry per subdivision round: (p, a, b, c, q) for every replaced edge
    rounds: list[list[tuple[int, int, int, int, int]]] = field(default_factory=list)

    def x(self, j: int) -> int:
        return self.n + j

    def y(self, j: int) -> int:
        return self.n + self.m + j

    @property
    def z(self) -> int:
        return self.n + 2 * self.m

    @property
    def w(self) -> int:
        return self.n + 2 * self.m + 1

    @property
    def u(self) -> int:
        return self.n + 2 * self.m + 2

    @property
    def base_order(self) -> int:
        return self.n + 2 * self.m + 3

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "roles": [r.to_dict() for r in self.roles],
            "subdivision_rounds": len(self.rounds),
        }


def x3c_to_ed(h: X3CInstance) -> tuple[Graph, ReductionMap]:
    n, m = h.n, h.m
    if n % 3:
        # an uncovered ground vertex could dominate z on its own
        raise InvalidInstance(f"ground set size {n} is not a multiple of 3")
    roles = [Role(GROUND, i) for i in range(n)]
    roles += [Role(X, j) for j in range(m)]
    roles += [Role(Y, j) for j in range(m)]
    roles += [Role(Z), Role(W), Role(U)]
    rmap = ReductionMap(n, m, roles)
    edges = []
    for j, t in enumerate(h.triples):
        edges.extend((rmap.x(j), i) for i in t)
        edges.append((rmap.x(j), rmap.y(j)))
    edges.extend((rmap.z, i) for i in range(n))
    edges += [(rmap.z, rmap.w), (rmap.w, rmap.u)]
    return build_graph(rmap.base_order, edges), rmap


def cover_to_eds(h: X3CInstance, rmap: ReductionMap, cover: Iterable[int]) -> list[int]:
    cover = sorted(set(cover))
    if not all(0 <= j < h.m for j in cover) or not h.is_cover(cover):
        raise InvalidSolution(f"{cover} is not an exact cover")
    chosen = set(cover)
    d = [rmap.x(j) if j in chosen else rmap.y(j) for j in range(h.m)]
    return sorted(d + [rmap.w])


def eds_to_cover(h: X3CInstance, rmap: ReductionMap, d: Iterable[int]) -> list[int]:
    d = set(d)
    if rmap.w not in d:
        raise InvalidSolution("w must belong to every e.d.s.")
    g, _ = x3c_to_ed(h)
    if not is_eds(g, d):
        raise InvalidSolution("not an e.d.s. of the transformation graph")
    cover = sorted(j for j in range(h.m) if rmap.x(j) in d)
    if not h.is_cover(cover):
        raise InvalidSolution(f"{cover} is not an exact cover")
    return cover


def round_trip(h: X3CInstance, rmap: ReductionMap, direction: str, solution: Iterable[int]) -> list[int]:
    if direction == "cover_to_eds":
        return cover_to_eds(h, rmap, solution)
    if direction == "eds_to_cover":
        return eds_to_cover(h, rmap, solution)
    raise ValueError(f"unknown direction {direction!r}")


# -- girth gadget -----------------------------------------------------------


def _subdivide(
    g: Graph, targets: Sequence[tuple[int, int]]
) -> tuple[Graph, list[tuple[int, int, int, int, int]]]:
    """Replace each edge (p, q) in ``targets`` by a path p-a-b-c-q."""
    drop = {frozenset(e) for e in targets}
    edges = [e for e in g.edges() if frozenset(e) not in drop]
    n = g.n
    gadgets = []
    for p, q in targets:
        a, b, c = n, n + 1, n + 2
        n += 3
        edges += [(p, a), (a, b), (b, c), (c, q)]
        gadgets.append((p, a, b, c, q))
    return build_graph(n, edges), gadgets


def rounds_for_girth(k: int) -> int:
    # after r rounds every cycle through the incidence edges has length at
    # least 2 + 2 * 4**r, so a single round already clears C_4 .. C_8
    r = 1
    while 2 + 2 * 4**r <= 2 * k:
        r += 1
    return max(r, k - 1)


def subdivide_for_girth(g: Graph, rmap: ReductionMap, k: int) -> tuple[Graph, ReductionMap]:
    """Subdivide the incidence chains until no even cycle of length <= 2k
    remains. Round one turns every x-v edge into a P_5; each later round
    does the same to every edge of the current chains."""
    if k < 2:
        return g, rmap
    chains: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for v in range(rmap.n):
        for x in g.adj[v]:
            if rmap.n <= x < rmap.n + rmap.m:
                chains[(x, v)] = [(x, v)]
    roles = list(rmap.roles)
    rounds = [list(r) for r in rmap.rounds]
    for _ in range(rounds_for_girth(k)):
        targets = [e for key in sorted(chains) for e in chains[key]]
        g, gadgets = _subdivide(g, targets)
        rounds.append(gadgets)
        it = iter(gadgets)
        for key in sorted(chains):
            new_chain = []
            for _old in chains[key]:
                p, a, b, c, q = next(it)
                new_chain += [(p, a), (a, b), (b, c), (c, q)]
            chains[key] = new_chain
        for key in sorted(chains):
            path = [chains[key][0][0]] + [e[1] for e in chains[key]]
            for pos, vtx in enumerate(path[1:-1], start=1):
                if vtx >= len(roles):
                    roles.extend([None] * (vtx + 1 - len(roles)))
                roles[vtx] = Role(GADGET, edge=key, position=pos)
    short = girth(g)
    if short is not None and short <= 2 * k:
        raise ShortCycleSurvived(f"girth {short} after subdividing for k={k}")
    return g, ReductionMap(rmap.n, rmap.m, roles, rounds)


def lift_eds(rmap: ReductionMap, d: Iterable[int]) -> list[int]:
    """Carry an e.d.s. of the unsubdivided graph through every round."""
    cur = set(d)
    for gadgets in rmap.rounds:
        for p, a, b, c, q in gadgets:
            if p in cur:
                cur.add(c)
            elif q in cur:
                cur.add(a)
            else:
                cur.add(b)
    return sorted(cur)


def project_eds(rmap: ReductionMap, d: Iterable[int]) -> list[int]:
    """Restrict an e.d.s. of the subdivided graph to the original vertices."""
    return sorted(x for x in d if x < rmap.base_order)


# -- brute-force X3C --------------------------------------------------------


def solve_x3c_brute(h: X3CInstance, cap: int = DEFAULT_BUDGET) -> list[int] | None:
    """Exact cover by backtracking on the lowest uncovered element."""
    if h.n % 3:
        return None
    containing: list[list[int]] = [[] for _ in range(h.n)]
    masks = []
    for j, t in enumerate(h.triples):
        masks.append(sum(1 << a for a in t))
        for a in t:
            containing[a].append(j)
    full = (1 << h.n) - 1
    chosen: list[int] = []
    nodes = 0

    def rec(covered: int) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > cap:
            raise BudgetExceeded(f"X3C search exceeded {cap} nodes")
        if covered == full:
            return True
        free = ~covered & full
        e = (free & -free).bit_length() - 1
        for j in containing[e]:
            if masks[j] & covered:
                continue
            chosen.append(j)
            if rec(covered | masks[j]):
                return True
            chosen.pop()
        return False

    return sorted(chosen) if rec(0) else None


__all__ = [
    "InvalidInstance",
    "InvalidSolution",
    "ReductionMap",
    "Role",
    "ShortCycleSurvived",
    "X3CInstance",
    "cover_to_eds",
    "diameter",
    "eds_to_cover",
    "lift_eds",
    "project_eds",
    "round_trip",
    "rounds_for_girth",
    "solve_x3c_brute",
    "subdivide_for_girth",
    "x3c_to_ed",
]
