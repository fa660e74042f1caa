"""Polynomial e.d.s. algorithms for H-free bipartite classes.

Every solver takes a graph and returns a SolverOutcome. Disconnected input is
split into components (a graph has an e.d.s. iff every component has one).
Found certificates are always re-checked with ``is_eds``; NO_EDS is only
reported after the search space of every root was exhausted without hitting
a cap.

The solvers do not verify class membership up front. On a graph outside the
class a solver may miss an e.d.s. (never invent one); ``dispatch`` only routes
to a class-specific solver after recognising the class.
"""

from __future__ import annotations

import itertools
from typing import Callable, Iterable, Iterator

from .eds import (
    DEFAULT_BUDGET,
    FOUND,
    NO_EDS,
    NOT_APPLICABLE,
    BudgetExceeded,
    Conflict,
    SolverOutcome,
    apply_forced,
    brute_force_eds,
    found,
    is_eds,
    no_eds,
    not_applicable,
    root_instance,
)
from .graph import (
    EccentricityBoundViolated,
    Graph,
    NotBipartite,
    bipartition,
    components,
    distance_levels,
    find_central_vertex,
    find_homogeneous_set,
    shortest_path,
    square,
)
from .levels import (
    Budget,
    CapExceeded,
    LevelState,
    cover_choices,
    force_level,
    init_state,
    search,
)
from .recognize import DEFAULT_LP4_CAP, Pattern, classify, contains_induced

DESK_LIMIT = 24
CLASS_NAMES = ("auto", "p5", "p7", "lp4", "s222", "s223", "s224", "p9deg3", "oracle")


class UnknownClassName(ValueError):
    pass


class ClassViolation(ValueError):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


# -- shared plumbing ---------------------------------------------------------


def _per_component(
    g: Graph, solve: Callable[[Graph], SolverOutcome], name: str
) -> SolverOutcome:
    """Run ``solve`` on each component (bipartite input only) and merge."""
    try:
        bipartition(g)
    except NotBipartite as exc:
        return not_applicable("not bipartite", exc.cycle, solver=name)
    comps = components(g)
    if len(comps) == 1:
        out = solve(g)
        out.stats.setdefault("solver", name)
        return out
    eds: list[int] = []
    stats = {"solver": name, "components": len(comps)}
    pending = None
    for comp in comps:
        h, order = g.induced_subgraph(comp)
        out = solve(h)
        for k, v in out.stats.items():
            if isinstance(v, int) and not isinstance(v, bool):
                stats[k] = stats.get(k, 0) + v
        if out.status == NO_EDS:
            res = no_eds(out.reason, **stats)
            return res
        if out.status == NOT_APPLICABLE:
            if pending is None:
                w = None if out.witness is None else [order[i] for i in out.witness]
                pending = (out.reason, w)
            continue
        eds.extend(order[i] for i in out.eds)
    if pending is not None:
        return not_applicable(pending[0], pending[1], **stats)
    return _certified(g, eds, stats)


def _certified(g: Graph, eds: Iterable[int], stats: dict) -> SolverOutcome:
    eds = sorted(eds)
    if not is_eds(g, eds):
        raise AssertionError(f"solver produced a non-e.d.s. {eds}")
    return found(eds, **stats)


def _dominating_roots(g: Graph) -> list[int]:
    # every e.d.s. meets N[w]; a minimum-degree w keeps the root list short
    w = min(range(g.n), key=lambda v: (len(g.adj[v]), v))
    return sorted((w, *g.adj[w]))


def _trivial(g: Graph) -> SolverOutcome | None:
    if g.n == 0:
        return found([])
    if g.n == 1:
        return found([0])
    return None


def _run_roots(
    g: Graph,
    roots: list[int],
    chooser: Callable[[LevelState, Budget], Iterable[frozenset[int]]],
    cap: int | None,
    collect_all: bool = False,
) -> tuple[list[list[int]], dict, bool]:
    """Level search from every root; returns (certificates, stats, capped)."""
    budget = Budget(cap)
    certs: list[list[int]] = []
    seen = set()
    stats = {"roots": 0, "branches": 0}
    capped = False
    for v in roots:
        stats["roots"] += 1
        state = init_state(g, v)
        try:
            for d in search(state, lambda st: chooser(st, budget), budget):
                key = tuple(sorted(d))
                if key in seen:
                    continue
                seen.add(key)
                if not is_eds(g, key):
                    raise AssertionError(f"level search produced a non-e.d.s. {key}")
                certs.append(list(key))
                if not collect_all:
                    break
        except CapExceeded:
            capped = True
            break
        if certs and not collect_all:
            break
    stats["branches"] = budget.used
    return certs, stats, capped


# -- P5-free -----------------------------------------------------------------


def solve_p5_free(g: Graph) -> SolverOutcome:
    """Every root has at most three distance levels, so D = {v} ∪ N_3."""
    return _per_component(g, _p5_connected, "p5")


def _p5_connected(g: Graph) -> SolverOutcome:
    if (t := _trivial(g)) is not None:
        return t
    for v in range(g.n):
        lv = distance_levels(g, v)
        if lv.depth >= 4:
            x = lv.level(4)[0]
            return not_applicable("N_4 nonempty: not P5-free", shortest_path(g, v, x), roots=v + 1)
        d = [v, *lv.level(3)]
        if is_eds(g, d):
            return _certified(g, d, {"roots": v + 1})
    return no_eds(roots=g.n)


# -- P7-free -----------------------------------------------------------------


def solve_p7_free(g: Graph) -> SolverOutcome:
    return _per_component(g, _p7_connected, "p7")


def _p7_connected(g: Graph) -> SolverOutcome:
    if (t := _trivial(g)) is not None:
        return t
    try:
        v0 = find_central_vertex(g, 7)
    except EccentricityBoundViolated as exc:
        return not_applicable(f"not P7-free: {exc}")
    roots = sorted((v0, *g.adj[v0]))
    tested = 0
    for v in roots:
        lv = distance_levels(g, v)
        if lv.depth >= 5:
            return not_applicable("N_5 nonempty: not P7-free", shortest_path(g, v, lv.level(5)[0]))
        level_of = lv.level_of
        n3, n4 = lv.level(3), lv.level(4)
        inst = root_instance(g, v)
        # N_3 vertices without N_4 neighbours are forced
        ok = True
        for y in n3:
            if not any(level_of[z] == 4 for z in g.adj[y]):
                try:
                    inst = apply_forced(inst, y)
                except Conflict:
                    ok = False
                    break
        if not ok:
            continue
        base = sorted(inst.committed)
        # at most one further N_3 member; the rest of N_4 is then forced
        options = [None] + [y for y in n3 if inst.candidate(y)]
        for y in options:
            tested += 1
            if y is None:
                d = base + [z for z in n4 if z in inst.alive]
            else:
                ny = set(g.adj[y])
                d = base + [y] + [z for z in n4 if z not in ny and z in inst.alive]
            if is_eds(g, d):
                return _certified(g, d, {"roots": roots.index(v) + 1, "branches": tested})
    return no_eds(roots=len(roots), branches=tested)


# -- lP4-free ----------------------------------------------------------------


def maximal_independent_sets(
    g: Graph, vertices: Iterable[int], cap: int | None = None
) -> list[list[int]]:
    """Maximal independent sets of g[vertices] (Bron-Kerbosch with pivoting on
    the complement). Raises CapExceeded when more than ``cap`` exist."""
    masks = g.masks
    vs = 0
    for v in vertices:
        vs |= 1 << v
    closed = {}
    m = vs
    while m:
        low = m & -m
        v = low.bit_length() - 1
        closed[v] = (masks[v] | low) & vs
        m ^= low
    out: list[list[int]] = []

    def bk(r: list[int], p: int, x: int) -> None:
        if not p and not x:
            out.append(sorted(r))
            if cap is not None and len(out) > cap:
                raise CapExceeded(f"more than {cap} maximal independent sets")
            return
        px = p | x
        best, best_cnt = -1, None
        mm = px
        while mm:
            low = mm & -mm
            u = low.bit_length() - 1
            mm ^= low
            c = bin(p & closed[u]).count("1")
            if best_cnt is None or c < best_cnt:
                best, best_cnt = u, c
        branch = p & closed[best]
        while branch:
            low = branch & -branch
            v = low.bit_length() - 1
            branch ^= low
            r.append(v)
            bk(r, p & ~closed[v], x & ~closed[v])
            r.pop()
            p &= ~low
            x |= low

    if vs:
        bk([], vs, 0)
    else:
        out.append([])
    return sorted(out)


def solve_lp4_free(g: Graph, ell: int = 2, require_prime: bool = True) -> SolverOutcome:
    """Level search where each step enumerates maximal independent sets of
    the square restricted to the admissible pool."""
    if ell < 1:
        raise ValueError("ell must be positive")
    return _per_component(g, lambda h: _lp4_connected(h, ell, require_prime), f"lp4={ell}")


def _lp4_connected(g: Graph, ell: int, require_prime: bool) -> SolverOutcome:
    if (t := _trivial(g)) is not None:
        return t
    if require_prime:
        hs = find_homogeneous_set(g)
        if hs is not None:
            return not_applicable("not prime: homogeneous set", hs)
    depth_bound = 5 * ell - 2
    cap = max(1, g.n ** (2 * ell - 2))
    g2 = square(g)
    roots = _dominating_roots(g)
    for v in roots:
        lv = distance_levels(g, v)
        if lv.depth >= depth_bound:
            return not_applicable(
                f"distance level {depth_bound} nonempty: not {ell}P4-free",
                shortest_path(g, v, lv.level(depth_bound)[0]),
            )

    def chooser(state: LevelState, budget: Budget) -> Iterator[frozenset[int]]:
        res = force_level(state)
        if res.no_eds:
            return
        targets = state.n_prime
        tmask = 0
        for x in targets:
            tmask |= 1 << x
        masks = g.masks
        for z in maximal_independent_sets(g2, state.w_next, cap):
            if not res.forced <= set(z):
                continue
            hit = 0
            ok = True
            for u in z:
                if masks[u] & hit & tmask:
                    ok = False
                    break
                hit |= masks[u]
            if ok and (hit & tmask) == tmask:
                yield frozenset(z)

    try:
        certs, stats, capped = _run_roots(g, roots, chooser, None)
    except CapExceeded as exc:
        return not_applicable(f"cap exceeded: {exc}")
    if certs:
        return _certified(g, certs[0], stats)
    return no_eds(**stats)


# -- S_{2,2,k}-free ----------------------------------------------------------


def _next_nbhd(g: Graph, state: LevelState, u: int) -> frozenset[int]:
    lv = state.levels.level_of
    nxt = state.i + 2
    return frozenset(z for z in g.adj[u] if lv[z] == nxt)


def _inclusion_minimal(g: Graph, state: LevelState, cands: list[int]) -> list[int]:
    nb = {u: _next_nbhd(g, state, u) for u in cands}
    return [u for u in cands if all(nb[u] <= nb[w] for w in cands)]


def inclusion_forced_dominator(
    state: LevelState, x: int, pool: Iterable[int] | None = None
) -> list[int] | None:
    """Candidates for the dominator of ``x`` whose next-level neighbourhood is
    contained in that of every other candidate.

    In an S_{2,2,k}-free bipartite graph the D-vertex dominating an
    undominated x at level i >= k always has this property. Several
    candidates are returned when their next-level neighbourhoods coincide;
    None when no candidate qualifies.
    """
    g = state.graph
    allowed = set(state.w_next if pool is None else pool)
    cands = [u for u in g.adj[x] if u in allowed]
    if not cands:
        return None
    best = _inclusion_minimal(g, state, cands)
    return best or None


def _spider_chooser(seeded_levels: set[int]):
    """Chooser that fixes one seed vertex at the listed levels and otherwise
    lets every undominated vertex pick an inclusion-minimal dominator."""

    def chooser(state: LevelState, budget: Budget) -> Iterator[frozenset[int]]:
        g = state.graph
        res = force_level(state)
        if res.no_eds:
            return
        start = sorted(res.forced)
        if not res.remaining:
            yield frozenset(start)
            return
        if state.i in seeded_levels:
            seeds: list[int | None] = sorted(res.pool)
        else:
            seeds = [None]
        seen = set()
        for y in seeds:
            pool = set(res.pool)
            s = list(start)
            if y is not None:
                pool -= {y}
                for a in g.adj[y]:
                    pool -= set(g.adj[a])
                s.append(y)

            def allowed(x: int, pool=pool) -> list[int]:
                cands = [u for u in g.adj[x] if u in pool]
                return _inclusion_minimal(g, state, cands) if cands else []

            for z in cover_choices(g, res.remaining, pool, s, allowed):
                if z not in seen:
                    seen.add(z)
                    yield z

    return chooser


def _spider_solve(g: Graph, seeded_levels: set[int], collect_all: bool):
    cap = max(8, g.n**3)
    return _run_roots(
        g, _dominating_roots(g), _spider_chooser(seeded_levels), cap, collect_all
    )


def _spider_outcome(g: Graph, seeded_levels: set[int]) -> SolverOutcome:
    if (t := _trivial(g)) is not None:
        return t
    certs, stats, capped = _spider_solve(g, seeded_levels, False)
    if certs:
        return _certified(g, certs[0], stats)
    if capped:
        return not_applicable("cap exceeded", **stats)
    return no_eds(**stats)


def solve_s224_free(g: Graph) -> SolverOutcome:
    """Seed one member of D ∩ N_3 and one of D ∩ N_4, then inclusion-forced
    dominators from level 4 on."""
    return _per_component(g, lambda h: _spider_outcome(h, {2, 3}), "s224")


def solve_s223_free(g: Graph) -> SolverOutcome:
    return _per_component(g, lambda h: _spider_outcome(h, {2}), "s223")


def solve_s124_free(g: Graph) -> SolverOutcome:
    # S1,2,4 is an induced subgraph of S2,2,4
    out = solve_s224_free(g)
    out.stats["solver"] = "s124"
    return out


def enumerate_s222_free(g: Graph, check_class: bool = True) -> list[list[int]]:
    """All e.d.s. of an S_{2,2,2}-free bipartite graph (at most n per component).

    Raises ClassViolation when ``check_class`` finds an induced S_{2,2,2} or
    the graph is not bipartite.
    """
    try:
        bipartition(g)
    except NotBipartite as exc:
        raise ClassViolation("not bipartite", exc.cycle) from None
    if check_class:
        w = contains_induced(g, Pattern.spider(2, 2, 2))
        if w is not None:
            raise ClassViolation("induced S2,2,2 present", w)
    per_comp: list[list[list[int]]] = []
    for comp in components(g):
        h, order = g.induced_subgraph(comp)
        if h.n == 1:
            per_comp.append([[order[0]]])
            continue
        certs, _, capped = _spider_solve(h, set(), True)
        if capped:
            raise CapExceeded("enumeration exceeded its cap")
        per_comp.append([[order[i] for i in c] for c in certs])
    if not per_comp:
        return [[]]
    out = [sorted(itertools.chain(*parts)) for parts in itertools.product(*per_comp)]
    return sorted(out)


def solve_s222_free(g: Graph, check_class: bool = False) -> SolverOutcome:
    try:
        certs = enumerate_s222_free(g, check_class=check_class)
    except ClassViolation as exc:
        return not_applicable(str(exc), exc.witness, solver="s222")
    except CapExceeded as exc:
        return not_applicable(f"cap exceeded: {exc}", solver="s222")
    if not certs:
        out = no_eds(solver="s222")
    else:
        out = found(certs[0], solver="s222")
    out.all = certs
    out.stats["count"] = len(certs)
    return out


# -- P9-free, degree <= 3 ----------------------------------------------------


def find_k33_deg3(g: Graph) -> list[int] | None:
    """An induced K_{3,3} among vertices of degree 3 (a whole component when
    the maximum degree is 3)."""
    for v in range(g.n):
        if len(g.adj[v]) != 3:
            continue
        a = g.adj[v]
        twins = [u for u in g.adj[a[0]] if g.adj[u] == a]
        if len(twins) >= 3 and all(g.adj[x] == g.adj[a[0]] for x in a):
            return sorted(set(twins[:3]) | set(a))
    return None


def _p9_chooser(state: LevelState, budget: Budget) -> Iterator[frozenset[int]]:
    g = state.graph
    res = force_level(state)
    if res.no_eds:
        return
    start = sorted(res.forced)
    if state.i not in (2, 3):
        yield from cover_choices(g, res.remaining, res.pool, start)
        return
    targets = res.remaining
    pool = sorted(res.pool)
    masks, closed = g.masks, g.closed_masks
    tmask = 0
    for x in targets:
        tmask |= 1 << x
    # at most two unforced members at levels 3 and 4
    for size in (0, 1, 2):
        for extra in itertools.combinations(pool, size):
            if size == 2 and closed[extra[0]] & closed[extra[1]]:
                continue
            hit = 0
            for u in extra:
                hit |= masks[u]
            if hit & tmask == tmask and bin(hit & tmask).count("1") == sum(
                bin(masks[u] & tmask).count("1") for u in extra
            ):
                yield frozenset(start + list(extra))


def solve_p9_deg3(g: Graph) -> SolverOutcome:
    return _per_component(g, _p9_connected, "p9deg3")


def _p9_connected(g: Graph) -> SolverOutcome:
    if (t := _trivial(g)) is not None:
        return t
    if g.max_degree() > 3:
        v = max(range(g.n), key=lambda u: (len(g.adj[u]), -u))
        return not_applicable("maximum degree exceeds 3", [v, *g.adj[v][:4]])
    k33 = find_k33_deg3(g)
    if k33 is not None:
        return SolverOutcome(NO_EDS, reason="K33", witness=k33)
    try:
        v0 = find_central_vertex(g, 9)
    except EccentricityBoundViolated as exc:
        return not_applicable(f"not P9-free: {exc}")
    roots = sorted((v0, *g.adj[v0]))
    certs, stats, capped = _run_roots(g, roots, _p9_chooser, None)
    if certs:
        return _certified(g, certs[0], stats)
    return no_eds(**stats)


# -- oracle and dispatch -----------------------------------------------------


def solve_oracle(g: Graph, budget: int = DEFAULT_BUDGET) -> SolverOutcome:
    try:
        out = brute_force_eds(g, "first", budget)
    except BudgetExceeded as exc:
        return not_applicable(f"budget exceeded: {exc}", solver="oracle")
    out.stats["solver"] = "oracle"
    return out


def _parse_strategy(strategy: str) -> tuple[str, int | None]:
    name, _, arg = strategy.partition("=")
    name = name.strip().lower()
    if name not in CLASS_NAMES:
        raise UnknownClassName(f"unknown class {strategy!r}")
    if name == "lp4":
        try:
            return name, int(arg) if arg else 2
        except ValueError:
            raise UnknownClassName(f"bad lp4 parameter in {strategy!r}") from None
    if arg:
        raise UnknownClassName(f"class {name!r} takes no parameter")
    return name, None


def dispatch(g: Graph, strategy: str = "auto", budget: int = DEFAULT_BUDGET) -> SolverOutcome:
    """Run a named solver, or pick one (``auto``) per component."""
    name, ell = _parse_strategy(strategy)
    if name == "oracle":
        return solve_oracle(g, budget)
    if name == "p5":
        return solve_p5_free(g)
    if name == "p7":
        return solve_p7_free(g)
    if name == "lp4":
        return solve_lp4_free(g, ell)
    if name == "s222":
        return solve_s222_free(g, check_class=g.n <= DESK_LIMIT)
    if name == "s223":
        return solve_s223_free(g)
    if name == "s224":
        return solve_s224_free(g)
    if name == "p9deg3":
        return solve_p9_deg3(g)
    return _auto(g, budget)


def _auto(g: Graph, budget: int) -> SolverOutcome:
    try:
        bipartition(g)
    except NotBipartite as exc:
        if g.n <= DESK_LIMIT:
            return solve_oracle(g, budget)
        return not_applicable("not bipartite", exc.cycle, solver="auto")
    comps = components(g)
    eds: list[int] = []
    used: list[str] = []
    for comp in comps:
        h, order = g.induced_subgraph(comp)
        out = _auto_connected(h, budget)
        used.append(out.stats.get("solver", "?"))
        if out.status == NO_EDS:
            out.stats["solver"] = "auto:" + ",".join(used)
            if out.witness is not None:
                out.witness = [order[i] for i in out.witness]
            return out
        if out.status == NOT_APPLICABLE:
            out.stats["solver"] = "auto:" + ",".join(used)
            if out.witness is not None:
                out.witness = [order[i] for i in out.witness]
            return out
        eds.extend(order[i] for i in out.eds)
    return _certified(g, eds, {"solver": "auto:" + ",".join(used), "components": len(comps)})


def _auto_connected(g: Graph, budget: int) -> SolverOutcome:
    if (t := _trivial(g)) is not None:
        t.stats["solver"] = "trivial"
        return t
    if g.max_degree() <= 3 and (k33 := find_k33_deg3(g)) is not None:
        return SolverOutcome(NO_EDS, reason="K33", witness=k33, stats={"solver": "classify"})
    out = solve_p5_free(g)
    if out.status != NOT_APPLICABLE:
        return out
    if g.n > DESK_LIMIT:
        return _auto_large(g)
    rep = classify(g)
    attempts: list[Callable[[], SolverOutcome]] = []
    if rep.s222free:
        attempts.append(lambda: solve_s222_free(g))
    if rep.p7free:
        attempts.append(lambda: solve_p7_free(g))
    if rep.s223free:
        attempts.append(lambda: solve_s223_free(g))
    if rep.s224free:
        attempts.append(lambda: solve_s224_free(g))
    if rep.maxdeg_le3 and rep.p9free:
        attempts.append(lambda: solve_p9_deg3(g))
    for ell in range(2, DEFAULT_LP4_CAP + 1):
        if rep.lp4free.get(ell):
            attempts.append(lambda ell=ell: solve_lp4_free(g, ell))
            break
    for attempt in attempts:
        out = attempt()
        if out.status != NOT_APPLICABLE:
            return out
    return solve_oracle(g, budget)


def _auto_large(g: Graph) -> SolverOutcome:
    # class membership is too costly to verify here: only a certificate counts
    for solver in (solve_p7_free, solve_s224_free):
        out = solver(g)
        if out.status == FOUND:
            return out
    return not_applicable("no certificate found and class membership unverified at this size", solver="auto")


SOLVERS = {
    "p5": solve_p5_free,
    "p7": solve_p7_free,
    "lp4": solve_lp4_free,
    "s222": solve_s222_free,
    "s223": solve_s223_free,
    "s224": solve_s224_free,
    "p9deg3": solve_p9_deg3,
    "oracle": solve_oracle,
}
