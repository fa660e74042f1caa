"""Level-by-level construction of an e.d.s. containing a fixed root.

With the root v in D and N_0..N_k its distance levels, the state at index i
holds D_i (the members of D within distance i of v), which dominates every
vertex up to level i - 1 exactly once. Going from i to i + 1 adds a set Z of
level-(i+1) vertices that dominates the still-undominated part of N_i
(``n_prime``) exactly once, drawn from the level-(i+1) vertices at distance
at least 3 from D_i (``w_next``).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Sequence

from .eds import RuleOutcome
from .graph import Graph, Levels, distance_levels


class ExtendError(ValueError):
    pass


class NotExactlyOnce(ExtendError):
    pass


class DistanceViolation(ExtendError):
    pass


class CapExceeded(RuntimeError):
    pass


class Budget:
    """Counts candidate sets tried; raises CapExceeded past ``cap``."""

    def __init__(self, cap: int | None):
        self.cap = cap
        self.used = 0

    def tick(self, k: int = 1) -> None:
        self.used += k
        if self.cap is not None and self.used > self.cap:
            raise CapExceeded(f"more than {self.cap} candidate sets")


@dataclass(frozen=True)
class LevelState:
    graph: Graph
    levels: Levels
    i: int
    d: frozenset[int]
    dominated: frozenset[int]

    @property
    def n_prime(self) -> list[int]:
        return [x for x in self.levels.level(self.i) if x not in self.dominated]

    @property
    def w_next(self) -> list[int]:
        dom = self.dominated
        adj = self.graph.adj
        return [
            u
            for u in self.levels.level(self.i + 1)
            if u not in dom and not any(y in dom for y in adj[u])
        ]

    def excluded(self) -> set[int]:
        """N(D_i) ∪ N^2(D_i)."""
        adj = self.graph.adj
        first = {y for x in self.d for y in adj[x]} - self.d
        second = {z for y in first for z in adj[y]}
        return (first | second) - self.d

    @property
    def component_size(self) -> int:
        return sum(len(s) for s in self.levels.strata)

    @property
    def complete(self) -> bool:
        return len(self.dominated) == self.component_size

    @property
    def dead(self) -> bool:
        return not self.complete and self.i >= self.levels.depth


def init_state(g: Graph, v: int, levels: Levels | None = None) -> LevelState:
    """State at level 2 with D_2 = {v}."""
    lv = levels if levels is not None else distance_levels(g, v)
    return LevelState(g, lv, 2, frozenset([v]), frozenset([v, *g.adj[v]]))


@dataclass(frozen=True)
class Frontier:
    n_prime: list[int]
    w_next: list[int]
    candidates: dict[int, list[int]]
    empty: list[int]


def frontier(state: LevelState) -> Frontier:
    np_ = state.n_prime
    w = state.w_next
    wset = set(w)
    adj = state.graph.adj
    cands = {x: [u for u in adj[x] if u in wset] for x in np_}
    return Frontier(np_, w, cands, [x for x in np_ if not cands[x]])


def extend(state: LevelState, z: Iterable[int]) -> LevelState:
    """Advance to level i + 1 with D_{i+1} = D_i ∪ Z."""
    g = state.graph
    zs = sorted(set(z))
    wset = set(state.w_next)
    for u in zs:
        if u not in wset:
            raise DistanceViolation(f"{u} is not an admissible level-{state.i + 1} vertex")
    closed = g.closed_masks
    for a in range(len(zs)):
        for b in range(a + 1, len(zs)):
            if closed[zs[a]] & closed[zs[b]]:
                raise DistanceViolation(f"{zs[a]} and {zs[b]} are within distance 2")
    zmask = 0
    for u in zs:
        zmask |= 1 << u
    masks = g.masks
    for x in state.n_prime:
        hits = bin(masks[x] & zmask).count("1")
        if hits != 1:
            raise NotExactlyOnce(f"{x} dominated {hits} times")
    dom = set(state.dominated)
    for u in zs:
        dom.add(u)
        dom.update(g.adj[u])
    return LevelState(g, state.levels, state.i + 1, state.d | frozenset(zs), frozenset(dom))


@dataclass
class LevelForcing:
    """Result of the forcing fixpoint at one level."""

    no_eds: bool
    forced: set[int]
    remaining: list[int]  # members of N'_i not dominated by the forced set
    pool: set[int]  # members of W_{i+1} still compatible with the forced set
    reason: str | None = None


def force_level(state: LevelState) -> LevelForcing:
    g = state.graph
    lv = state.levels.level_of
    nxt = state.i + 2
    targets = state.n_prime
    pool = set(state.w_next)
    forced: set[int] = set()
    covered: set[int] = set()
    while True:
        remaining = [x for x in targets if x not in covered]
        pick = None
        for x in remaining:
            c = [u for u in g.adj[x] if u in pool]
            if not c:
                return LevelForcing(True, forced, remaining, pool, f"{x} has no candidate")
            if pick is None and len(c) == 1:
                pick = c[0]
        if pick is None:
            for u in sorted(pool):
                if not any(lv[y] == nxt for y in g.adj[u]):
                    pick = u
                    break
        if pick is None:
            return LevelForcing(False, forced, remaining, pool)
        forced.add(pick)
        covered.update(g.adj[pick])
        gone = {pick}
        for y in g.adj[pick]:
            gone.update(g.adj[y])
        pool -= gone


def di_forced_candidates(state: LevelState) -> RuleOutcome:
    """Forced members of Z_{i+1} given D_i.

    An undominated x in N_i with no admissible neighbour kills the branch; a
    unique admissible neighbour is forced, as is an admissible vertex with
    no neighbour in N_{i+2} (which at the last level is all of W_k).
    Applied to a fixpoint.
    """
    res = force_level(state)
    return RuleOutcome(res.no_eds, frozenset(res.forced), None, res.reason)


def cover_choices(
    g: Graph,
    targets: Sequence[int],
    pool: Iterable[int],
    start: Iterable[int] = (),
    allowed: Callable[[int], Iterable[int]] | None = None,
) -> Iterator[frozenset[int]]:
    """Every Z ⊇ start, Z \\ start ⊆ pool, pairwise at distance >= 3, that
    dominates each target exactly once.

    ``allowed(x)`` restricts which vertices may dominate target x; the check
    also applies to targets already dominated by earlier choices.
    """
    closed = g.closed_masks
    masks = g.masks
    pool_mask = 0
    for u in pool:
        pool_mask |= 1 << u
    blocked = 0
    covered = 0
    chosen = list(start)
    for u in chosen:
        blocked |= closed[u]
        covered |= masks[u]
    start_set = set(chosen)
    allowed_cache: dict[int, set[int]] = {}

    def allow(x: int) -> set[int] | None:
        if allowed is None:
            return None
        if x not in allowed_cache:
            allowed_cache[x] = set(allowed(x))
        return allowed_cache[x]

    def advance(idx: int, covered: int) -> int:
        # skip dominated targets; -1 when a dominator is not allowed
        while idx < len(targets) and (covered >> targets[idx]) & 1:
            x = targets[idx]
            a = allow(x)
            if a is not None:
                for z in chosen:
                    if (masks[z] >> x) & 1:
                        if z not in a and z not in start_set:
                            return -1
                        break
            idx += 1
        return idx

    def options(idx: int, blocked: int) -> list[int]:
        x = targets[idx]
        a = allow(x)
        return [
            u
            for u in g.adj[x]
            if (pool_mask >> u) & 1
            and not closed[u] & blocked
            and (a is None or u in a)
        ]

    idx = advance(0, covered)
    if idx < 0:
        return
    if idx == len(targets):
        yield frozenset(chosen)
        return
    # frames: [target index, blocked, covered, untried options, choice applied]
    stack = [[idx, blocked, covered, options(idx, blocked), False]]
    while stack:
        fr = stack[-1]
        if fr[4]:
            chosen.pop()
            fr[4] = False
        if not fr[3]:
            stack.pop()
            continue
        u = fr[3].pop(0)
        chosen.append(u)
        fr[4] = True
        nb = fr[1] | closed[u]
        nc = fr[2] | masks[u]
        nidx = advance(fr[0] + 1, nc)
        if nidx < 0:
            continue
        if nidx == len(targets):
            yield frozenset(chosen)
            continue
        stack.append([nidx, nb, nc, options(nidx, nb), False])


def exhaustive_extensions(state: LevelState, use_forced: bool = False) -> Iterator[frozenset[int]]:
    """All admissible Z for the next step."""
    if use_forced:
        res = force_level(state)
        if res.no_eds:
            return
        yield from cover_choices(state.graph, res.remaining, res.pool, start=sorted(res.forced))
        return
    yield from cover_choices(state.graph, state.n_prime, state.w_next)


def search(
    state: LevelState,
    chooser: Callable[[LevelState], Iterable[frozenset[int]]],
    budget: Budget | None = None,
) -> Iterator[frozenset[int]]:
    """Depth-first over chooser-proposed extensions; yields completed D sets."""
    stack = [(state, None)]
    while stack:
        st, it = stack[-1]
        if it is None:
            if st.complete:
                stack.pop()
                yield st.d
                continue
            if st.dead:
                stack.pop()
                continue
            it = iter(chooser(st))
            stack[-1] = (st, it)
        z = next(it, None)
        if z is None:
            stack.pop()
            continue
        if budget is not None:
            budget.tick()
        try:
            nxt = extend(st, z)
        except ExtendError:
            continue
        stack.append((nxt, None))


__all__ = [
    "Budget",
    "CapExceeded",
    "DistanceViolation",
    "ExtendError",
    "Frontier",
    "LevelForcing",
    "LevelState",
    "NotExactlyOnce",
    "cover_choices",
    "di_forced_candidates",
    "exhaustive_extensions",
    "extend",
    "force_level",
    "frontier",
    "init_state",
    "search",
]
