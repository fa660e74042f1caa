"""Immutable undirected graphs and the structural queries the solvers rely on.

Vertices are dense 0-based integers. Every set-valued result is returned in
ascending order so that output is reproducible byte for byte.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

LEFT = 0
RIGHT = 1
UNREACHABLE = -1


class GraphError(ValueError):
    pass


class OutOfRange(GraphError):
    pass


class SelfLoop(GraphError):
    pass


class NotBipartite(GraphError):
    def __init__(self, cycle: Sequence[int]):
        super().__init__(f"graph is not bipartite; odd cycle {list(cycle)}")
        self.cycle = list(cycle)


class Disconnected(GraphError):
    pass


class EccentricityBoundViolated(GraphError):
    def __init__(self, vertex: int, eccentricity: int, bound: int):
        super().__init__(
            f"minimum eccentricity {eccentricity} (vertex {vertex}) exceeds {bound}"
        )
        self.vertex = vertex
        self.eccentricity = eccentricity
        self.bound = bound


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph with sorted adjacency lists.

    ``weights`` is carried through I/O untouched; no solver reads it.
    """

    n: int
    adj: tuple[tuple[int, ...], ...]
    weights: tuple[Fraction, ...] | None = field(default=None, compare=True)

    @cached_property
    def masks(self) -> tuple[int, ...]:
        """Open neighbourhoods as integer bitsets."""
        out = []
        for nbrs in self.adj:
            m = 0
            for u in nbrs:
                m |= 1 << u
            out.append(m)
        return tuple(out)

    @cached_property
    def closed_masks(self) -> tuple[int, ...]:
        return tuple(m | (1 << v) for v, m in enumerate(self.masks))

    @cached_property
    def nbr_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(a) for a in self.adj)

    @property
    def m(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def max_degree(self) -> int:
        return max((len(a) for a in self.adj), default=0)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adj[v]

    def closed_neighborhood(self, v: int) -> list[int]:
        return sorted((v, *self.adj[v]))

    def has_edge(self, u: int, v: int) -> bool:
        return (self.masks[u] >> v) & 1 == 1

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    def weight(self, v: int) -> Fraction:
        return Fraction(1) if self.weights is None else self.weights[v]

    def induced_subgraph(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Return ``(h, order)`` where vertex ``i`` of ``h`` is ``order[i]`` here."""
        order = sorted(set(vertices))
        index = {v: i for i, v in enumerate(order)}
        adj = tuple(
            tuple(index[u] for u in self.adj[v] if u in index) for v in order
        )
        weights = None
        if self.weights is not None:
            weights = tuple(self.weights[v] for v in order)
        return Graph(len(order), adj, weights), order

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


def build_graph(
    n: int,
    edges: Iterable[tuple[int, int]],
    weights: Sequence[Fraction | int] | None = None,
) -> Graph:
    if n < 0:
        raise OutOfRange(f"negative vertex count {n}")
    nbrs: list[set[int]] = [set() for _ in range(n)]
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise OutOfRange(f"edge ({u}, {v}) outside [0, {n})")
        if u == v:
            raise SelfLoop(f"self-loop at {u}")
        nbrs[u].add(v)
        nbrs[v].add(u)
    w = None
    if weights is not None:
        if len(weights) != n:
            raise GraphError("weight vector length differs from n")
        w = tuple(Fraction(x) for x in weights)
        if all(x == 1 for x in w):
            w = None
    return Graph(n, tuple(tuple(sorted(s)) for s in nbrs), w)


def path_graph(k: int) -> Graph:
    return build_graph(k, [(i, i + 1) for i in range(k - 1)])


def cycle_graph(k: int) -> Graph:
    return build_graph(k, [(i, (i + 1) % k) for i in range(k)])


def complete_bipartite(a: int, b: int) -> Graph:
    return build_graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def spider_graph(i: int, j: int, k: int) -> Graph:
    """S_{i,j,k}: centre 0, then the three legs in order, each listed outward."""
    edges = []
    nxt = 1
    for leg in (i, j, k):
        prev = 0
        for _ in range(leg):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return build_graph(nxt, edges)


def disjoint_union(*graphs: Graph) -> Graph:
    edges = []
    off = 0
    for g in graphs:
        edges.extend((u + off, v + off) for u, v in g.edges())
        off += g.n
    return build_graph(off, edges)


def bfs_distances(g: Graph, source: int, limit: int | None = None) -> list[int]:
    dist = [UNREACHABLE] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        x = queue.popleft()
        d = dist[x] + 1
        if limit is not None and d > limit:
            continue
        for y in g.adj[x]:
            if dist[y] == UNREACHABLE:
                dist[y] = d
                queue.append(y)
    return dist


def all_pairs_distances(g: Graph) -> list[list[int]]:
    return [bfs_distances(g, v) for v in range(g.n)]


def components(g: Graph) -> list[list[int]]:
    seen = [False] * g.n
    out = []
    for s in range(g.n):
        if seen[s]:
            continue
        comp = [s]
        seen[s] = True
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in g.adj[x]:
                if not seen[y]:
                    seen[y] = True
                    comp.append(y)
                    queue.append(y)
        out.append(sorted(comp))
    return out


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(components(g)) == 1


@dataclass(frozen=True)
class Bipartition:
    side: tuple[int, ...]

    @property
    def left(self) -> list[int]:
        return [v for v, s in enumerate(self.side) if s == LEFT]

    @property
    def right(self) -> list[int]:
        return [v for v, s in enumerate(self.side) if s == RIGHT]


def bipartition(g: Graph) -> Bipartition:
    """2-colour each component, lowest vertex of a component on the left.

    Raises NotBipartite carrying an odd cycle.
    """
    side = [UNREACHABLE] * g.n
    parent = [-1] * g.n
    for s in range(g.n):
        if side[s] != UNREACHABLE:
            continue
        side[s] = LEFT
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in g.adj[x]:
                if side[y] == UNREACHABLE:
                    side[y] = 1 - side[x]
                    parent[y] = x
                    queue.append(y)
                elif side[y] == side[x]:
                    raise NotBipartite(_odd_cycle(parent, x, y))
    return Bipartition(tuple(side))


def _odd_cycle(parent: list[int], x: int, y: int) -> list[int]:
    # x and y are adjacent with equal BFS colour; join their tree paths
    px = [x]
    while parent[px[-1]] != -1:
        px.append(parent[px[-1]])
    py = [y]
    while parent[py[-1]] != -1:
        py.append(parent[py[-1]])
    on_x = {v: i for i, v in enumerate(px)}
    j = 0
    while py[j] not in on_x:
        j += 1
    i = on_x[py[j]]
    return px[: i + 1] + list(reversed(py[:j]))


def is_bipartite(g: Graph) -> bool:
    try:
        bipartition(g)
    except NotBipartite:
        return False
    return True


@dataclass(frozen=True)
class Levels:
    """BFS strata N_0..N_k around ``root`` (N_0 = {root})."""

    root: int
    strata: tuple[tuple[int, ...], ...]
    level_of: tuple[int, ...]

    @property
    def depth(self) -> int:
        return len(self.strata) - 1

    def level(self, i: int) -> tuple[int, ...]:
        if 0 <= i < len(self.strata):
            return self.strata[i]
        return ()

    def upto(self, i: int) -> list[int]:
        return sorted(v for s in self.strata[: i + 1] for v in s)

    def reached(self) -> list[int]:
        return self.upto(self.depth)

    def unreachable(self) -> list[int]:
        return [v for v, lv in enumerate(self.level_of) if lv == UNREACHABLE]

    def star(self, g: Graph, i: int) -> list[int]:
        """Vertices of N_i with a neighbour in N_{i+1}."""
        return [x for x in self.level(i) if any(self.level_of[y] == i + 1 for y in g.adj[x])]

    def zero(self, g: Graph, i: int) -> list[int]:
        """Vertices of N_i with no neighbour in N_{i+1}."""
        return [x for x in self.level(i) if all(self.level_of[y] != i + 1 for y in g.adj[x])]


def distance_levels(g: Graph, v: int) -> Levels:
    if not 0 <= v < g.n:
        raise OutOfRange(f"root {v} outside [0, {g.n})")
    dist = bfs_distances(g, v)
    depth = max(dist)
    strata: list[list[int]] = [[] for _ in range(depth + 1)]
    for u, d in enumerate(dist):
        if d != UNREACHABLE:
            strata[d].append(u)
    return Levels(v, tuple(tuple(s) for s in strata), tuple(dist))


def shortest_path(g: Graph, s: int, t: int) -> list[int]:
    parent = {s: s}
    queue = deque([s])
    while queue:
        x = queue.popleft()
        if x == t:
            break
        for y in g.adj[x]:
            if y not in parent:
                parent[y] = x
                queue.append(y)
    if t not in parent:
        raise Disconnected(f"{t} unreachable from {s}")
    path = [t]
    while path[-1] != s:
        path.append(parent[path[-1]])
    return path[::-1]


def square(g: Graph) -> Graph:
    """G^2: x ~ y iff 1 <= d_G(x, y) <= 2."""
    masks = g.masks
    adj = []
    for v in range(g.n):
        m = masks[v]
        for u in g.adj[v]:
            m |= masks[u]
        m &= ~(1 << v)
        adj.append(tuple(_bits(m)))
    return Graph(g.n, tuple(adj), g.weights)


def _bits(m: int) -> list[int]:
    out = []
    while m:
        low = m & -m
        out.append(low.bit_length() - 1)
        m ^= low
    return out


bits = _bits


def find_homogeneous_set(g: Graph) -> list[int] | None:
    """Some homogeneous set (2 <= |H| < n), or None when ``g`` is prime.

    Grows the smallest module containing each vertex pair by absorbing
    splitters; every module contains the closure of any pair inside it, so
    the search is exhaustive.
    """
    n = g.n
    if n < 3:
        return None
    full = (1 << n) - 1
    masks = g.masks
    for a in range(n):
        for b in range(a + 1, n):
            module = (1 << a) | (1 << b)
            while True:
                common = full
                union = 0
                for x in _bits(module):
                    common &= masks[x]
                    union |= masks[x]
                splitters = (union & ~common) & ~module
                if not splitters:
                    break
                module |= splitters
            if module != full:
                return _bits(module)
    return None


def eccentricity(g: Graph, v: int) -> int:
    dist = bfs_distances(g, v)
    if UNREACHABLE in dist:
        raise Disconnected("graph is disconnected")
    return max(dist)


def find_central_vertex(g: Graph, t: int) -> int:
    """Lowest-index vertex of minimum eccentricity.

    In a connected P_t-free graph that eccentricity is at most t // 2; a
    larger minimum raises EccentricityBoundViolated.
    """
    if g.n == 0 or not is_connected(g):
        raise Disconnected("central vertex needs a connected non-empty graph")
    # high-degree vertices first so the running bound prunes later BFS runs
    order = sorted(range(g.n), key=lambda v: (-len(g.adj[v]), v))
    best_v, best_e = -1, g.n
    for v in order:
        e = _bounded_eccentricity(g, v, best_e if v < best_v else best_e - 1)
        if e is None:
            continue
        if e < best_e or (e == best_e and v < best_v):
            best_v, best_e = v, e
    bound = t // 2
    if best_e > bound:
        raise EccentricityBoundViolated(best_v, best_e, bound)
    return best_v


def _bounded_eccentricity(g: Graph, v: int, cap: int) -> int | None:
    # eccentricity of v, or None once it provably exceeds cap
    if cap < 0:
        return None
    dist = [UNREACHABLE] * g.n
    dist[v] = 0
    queue = deque([v])
    far = 0
    while queue:
        x = queue.popleft()
        d = dist[x] + 1
        for y in g.adj[x]:
            if dist[y] == UNREACHABLE:
                if d > cap:
                    return None
                dist[y] = d
                far = d
                queue.append(y)
    return far


def diameter(g: Graph) -> int:
    if g.n == 0:
        return 0
    if not is_connected(g):
        raise Disconnected("diameter of a disconnected graph is infinite")
    return max(max(bfs_distances(g, v)) for v in range(g.n))


def girth(g: Graph) -> int | None:
    """Length of a shortest cycle, None for forests."""
    best = None
    for s in range(g.n):
        dist = [UNREACHABLE] * g.n
        parent = [-1] * g.n
        dist[s] = 0
        queue = deque([s])
        while queue:
            x = queue.popleft()
            if best is not None and 2 * dist[x] + 1 >= best:
                break
            for y in g.adj[x]:
                if dist[y] == UNREACHABLE:
                    dist[y] = dist[x] + 1
                    parent[y] = x
                    queue.append(y)
                elif parent[x] != y:
                    c = dist[x] + dist[y] + 1
                    if best is None or c < best:
                        best = c
    return best
