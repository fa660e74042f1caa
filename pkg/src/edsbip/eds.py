"""Efficient dominating sets: verification, the exact-cover oracle, forcing.

A set D is an efficient dominating set (e.d.s.) when every vertex has exactly
one member of D in its closed neighbourhood, i.e. the closed neighbourhoods of
D partition V.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .graph import Graph, Levels, bits

DEFAULT_BUDGET = 10**8

FOUND = "found"
NO_EDS = "no_eds"
NOT_APPLICABLE = "not_applicable"


class BudgetExceeded(RuntimeError):
    pass


class Conflict(ValueError):
    """Committing a vertex contradicts the e.d.s. property."""


@dataclass
class SolverOutcome:
    status: str
    eds: list[int] | None = None
    reason: str | None = None
    witness: list[int] | None = None
    stats: dict = field(default_factory=dict)
    all: list[list[int]] | None = None

    @property
    def found(self) -> bool:
        return self.status == FOUND

    def to_dict(self) -> dict:
        d: dict = {"status": self.status, "eds": self.eds, "stats": dict(self.stats)}
        if self.reason is not None:
            d["reason"] = self.reason
        if self.witness is not None:
            d["witness"] = list(self.witness)
        if self.all is not None:
            d["all"] = [list(x) for x in self.all]
        return d


def found(eds: Iterable[int], **stats) -> SolverOutcome:
    return SolverOutcome(FOUND, eds=sorted(eds), stats=stats)


def no_eds(reason: str | None = None, **stats) -> SolverOutcome:
    return SolverOutcome(NO_EDS, reason=reason, stats=stats)


def not_applicable(reason: str, witness=None, **stats) -> SolverOutcome:
    return SolverOutcome(
        NOT_APPLICABLE,
        reason=reason,
        witness=None if witness is None else list(witness),
        stats=stats,
    )


def domination_counts(g: Graph, d: Iterable[int]) -> list[int]:
    """|N[v] ∩ D| for every vertex v."""
    count = [0] * g.n
    for x in set(d):
        count[x] += 1
        for y in g.adj[x]:
            count[y] += 1
    return count


def is_eds(g: Graph, d: Iterable[int]) -> bool:
    return all(c == 1 for c in domination_counts(g, d))


def _mask_of(vs: Iterable[int]) -> int:
    m = 0
    for v in vs:
        m |= 1 << v
    return m


def brute_force_eds(g: Graph, mode: str = "first", cap: int = DEFAULT_BUDGET):
    """Exact cover of V by closed neighbourhoods.

    Branches on the lowest-index undominated vertex over the members of its
    closed neighbourhood, ascending. ``mode`` selects the return value:

    * ``first``: a SolverOutcome (FOUND with the first e.d.s., or NO_EDS),
    * ``all``: every e.d.s. in enumeration order (lexicographic),
    * ``count``: the number of e.d.s.

    Raises BudgetExceeded after ``cap`` search nodes.
    """
    if mode not in ("first", "all", "count"):
        raise ValueError(f"unknown mode {mode!r}")
    closed = g.closed_masks
    full = (1 << g.n) - 1
    results: list[list[int]] = []
    count = 0
    nodes = 0
    chosen: list[int] = []

    def rec(covered: int) -> bool:
        nonlocal count, nodes
        nodes += 1
        if nodes > cap:
            raise BudgetExceeded(f"oracle exceeded {cap} nodes")
        if covered == full:
            count += 1
            if mode != "count":
                results.append(sorted(chosen))
            return mode == "first"
        free = ~covered & full
        u = (free & -free).bit_length() - 1
        for d in g.closed_neighborhood(u):
            if closed[d] & covered:
                continue
            chosen.append(d)
            stop = rec(covered | closed[d])
            chosen.pop()
            if stop:
                return True
        return False

    rec(0)
    if mode == "count":
        return count
    if mode == "all":
        return sorted(results)
    if results:
        return found(results[0], nodes=nodes)
    return no_eds(nodes=nodes)


def eds_by_subsets(g: Graph) -> list[list[int]]:
    """All e.d.s. by enumerating every vertex subset (tiny graphs only)."""
    out = []
    for m in range(1 << g.n):
        d = bits(m)
        if is_eds(g, d):
            out.append(d)
    return sorted(out)


@dataclass(frozen=True)
class ReducedInstance:
    """Host graph with some vertices committed to D and others barred from it.

    ``alive`` is the residual vertex set: the host minus N[u] for every
    committed u. ``excluded`` holds residual vertices at distance two from a
    committed vertex.
    """

    graph: Graph
    committed: frozenset[int] = frozenset()
    excluded: frozenset[int] = frozenset()
    alive: frozenset[int] | None = None

    def __post_init__(self):
        if self.alive is None:
            dominated: set[int] = set()
            for c in self.committed:
                dominated.add(c)
                dominated.update(self.graph.adj[c])
            object.__setattr__(
                self, "alive", frozenset(set(range(self.graph.n)) - dominated)
            )

    def residual_graph(self) -> tuple[Graph, list[int]]:
        return self.graph.induced_subgraph(self.alive)

    def dominated(self) -> frozenset[int]:
        return frozenset(range(self.graph.n)) - self.alive

    def candidate(self, u: int) -> bool:
        return u in self.alive and u not in self.excluded


def apply_forced(instance: ReducedInstance, u: int) -> ReducedInstance:
    """Commit ``u``: remove N[u] from the residual graph, exclude N^2(u)."""
    g = instance.graph
    if u in instance.excluded:
        raise Conflict(f"vertex {u} is excluded")
    closed_u = g.closed_masks[u]
    for c in instance.committed:
        if c == u or closed_u & g.closed_masks[c]:
            raise Conflict(f"vertex {u} lies within distance 2 of committed {c}")
    if u not in instance.alive:
        raise Conflict(f"vertex {u} is already dominated")
    removed = {u, *g.adj[u]}
    second = set()
    for x in g.adj[u]:
        second.update(g.adj[x])
    alive = instance.alive - removed
    excluded = (instance.excluded | (second & alive)) & alive
    return ReducedInstance(
        g, instance.committed | {u}, frozenset(excluded), frozenset(alive)
    )


@dataclass(frozen=True)
class RuleOutcome:
    """Either ``no_eds`` (the current assumptions admit no e.d.s.) or a forced set."""

    no_eds: bool
    forced: frozenset[int] = frozenset()
    instance: ReducedInstance | None = None
    reason: str | None = None


def root_instance(g: Graph, v: int) -> ReducedInstance:
    return apply_forced(ReducedInstance(g), v)


def v_forced_rules(levels: Levels, instance: ReducedInstance) -> RuleOutcome:
    """Apply the root-level forcing rules to a fixpoint.

    With the root v committed (so N_1 ∪ N_2 is barred from D):

    - an undominated x in N_2 without a candidate neighbour in N_3 kills v;
    - two dead-end candidates (N_3 vertices with no N_4 neighbour) sharing an
      N_2 neighbour kill v;
    - the unique candidate N_3 neighbour of an undominated x in N_2 is forced;
    - otherwise any dead-end candidate is forced.

    Failure checks run before commitments; each commitment is followed by a
    fresh pass.
    """
    g = instance.graph
    lv = levels.level_of
    n2 = levels.level(2)
    n3 = levels.level(3)
    inst = instance
    forced: set[int] = set()
    while True:
        cand3 = [y for y in n3 if inst.candidate(y)]
        cand_set = set(cand3)
        for x in n2:
            if x in inst.alive and not any(y in cand_set for y in g.adj[x]):
                return RuleOutcome(True, frozenset(forced), inst, f"no candidate for {x}")
        lonely = [y for y in cand3 if not any(lv[z] == 4 for z in g.adj[y])]
        seen: dict[int, int] = {}
        for y in lonely:
            for x in g.adj[y]:
                if lv[x] == 2:
                    if x in seen:
                        return RuleOutcome(
                            True, frozenset(forced), inst, f"dead ends {seen[x]},{y} share {x}"
                        )
                    seen[x] = y
        pick = None
        for x in n2:
            if x in inst.alive:
                c = [y for y in g.adj[x] if y in cand_set]
                if len(c) == 1:
                    pick = c[0]
                    break
        if pick is None and lonely:
            pick = lonely[0]
        if pick is None:
            return RuleOutcome(False, frozenset(forced), inst)
        try:
            inst = apply_forced(inst, pick)
        except Conflict as exc:
            return RuleOutcome(True, frozenset(forced), inst, str(exc))
        forced.add(pick)


__all__ = [
    "BudgetExceeded",
    "Conflict",
    "DEFAULT_BUDGET",
    "FOUND",
    "NOT_APPLICABLE",
    "NO_EDS",
    "ReducedInstance",
    "RuleOutcome",
    "SolverOutcome",
    "apply_forced",
    "brute_force_eds",
    "domination_counts",
    "eds_by_subsets",
    "is_eds",
    "root_instance",
    "v_forced_rules",
]
