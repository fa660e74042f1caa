"""Acceptance gate: one pass/fail line per criterion.

Run under pytest (the lines appear in the terminal summary) or directly with
``python3 tests/test_acceptance.py``.
"""

from __future__ import annotations

import random
import subprocess
import sys
import time
from collections import Counter
from pathlib import Path

import networkx as nx
import pytest

from edsbip.eds import NOT_APPLICABLE, brute_force_eds, eds_by_subsets, is_eds
from edsbip.generators import Xoshiro256, generate_with_certificate, random_x3c
from edsbip.graph import (
    diameter,
    distance_levels,
    find_central_vertex,
    eccentricity,
    find_homogeneous_set,
    is_bipartite,
    is_connected,
    square,
)
from edsbip.recognize import Pattern, classify, contains_hole, contains_induced
from edsbip.reductions import (
    cover_to_eds,
    eds_to_cover,
    solve_x3c_brute,
    subdivide_for_girth,
    x3c_to_ed,
)
from edsbip.solvers import (
    enumerate_s222_free,
    maximal_independent_sets,
    solve_lp4_free,
    solve_p5_free,
    solve_p7_free,
    solve_p9_deg3,
    solve_s223_free,
    solve_s224_free,
)

sys.path.insert(0, str(Path(__file__).parent))
from conftest import from_nx, random_bipartite, random_planted, random_sparse_bipartite  # noqa: E402

RESULTS: dict[tuple[int, str], tuple[bool, str]] = {}


def record(number: int, title: str, ok: bool, detail: str, tag: str = "") -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}: {detail}"
    RESULTS[(number, tag)] = (ok, line)
    print(line)
    assert ok, line


# -- 1 -----------------------------------------------------------------------


def test_criterion_1_oracle_vs_subsets():
    start = time.perf_counter()
    bad = 0
    atlas = 0
    for h in nx.graph_atlas_g()[1:]:
        if not nx.is_connected(h):
            continue
        g = from_nx(h)
        atlas += 1
        bad += brute_force_eds(g, "all") != eds_by_subsets(g)
    rng = random.Random(2024)
    sampled = 0
    while sampled < 1000:
        n = rng.randint(8, 10)
        p = rng.choice([0.2, 0.3, 0.45, 0.6])
        h = nx.gnp_random_graph(n, p, seed=rng.randrange(2**32))
        if not nx.is_connected(h):
            continue
        g = from_nx(h)
        sampled += 1
        bad += brute_force_eds(g, "all") != eds_by_subsets(g)
    elapsed = time.perf_counter() - start
    record(
        1,
        "oracle equals subset enumeration",
        bad == 0 and elapsed < 120,
        f"{atlas} atlas graphs (n<=7) + {sampled} random (8<=n<=10), {bad} mismatches, {elapsed:.1f}s",
    )


# -- 2 and 3 ------------------------------------------------------------------


def _class_instances(seed: int):
    rng = random.Random(seed)
    while True:
        kind = rng.randrange(3)
        if kind == 0:
            g = random_bipartite(rng, rng.randint(4, 14), rng.choice([0.25, 0.4, 0.6, 0.8]))
        elif kind == 1:
            g = random_sparse_bipartite(rng, rng.randint(4, 14), rng.randint(0, 8))
        else:
            g, _ = random_planted(rng, rng.randint(2, 6), rng.randint(0, 14))
        if g.n <= 14 and is_connected(g):
            yield g


SOLVERS = {
    "p5": solve_p5_free,
    "p7": solve_p7_free,
    "lp4": lambda g: solve_lp4_free(g, 2),
    "s223": solve_s223_free,
    "s224": solve_s224_free,
    "p9deg3": solve_p9_deg3,
}


def test_criterion_2_solvers_match_oracle():
    need = 500
    counts: Counter = Counter()
    found: Counter = Counter()
    mismatches: list[str] = []
    for g in _class_instances(7):
        if all(counts[k] >= need for k in SOLVERS):
            break
        rep = classify(g, lp4_cap=2)
        member = {
            "p5": rep.p5free,
            "p7": rep.p7free,
            "lp4": rep.lp4free[2] and find_homogeneous_set(g) is None,
            "s223": rep.s223free,
            "s224": rep.s224free,
            "p9deg3": rep.maxdeg_le3 and rep.p9free,
        }
        wanted = [k for k, v in member.items() if v and counts[k] < need]
        if not wanted:
            continue
        truth = brute_force_eds(g).found
        for key in wanted:
            out = SOLVERS[key](g)
            counts[key] += 1
            ok = out.status != NOT_APPLICABLE and out.found == truth
            if out.found:
                found[key] += 1
                ok = ok and is_eds(g, out.eds)
            if not ok:
                mismatches.append(f"{key}:{g.edges()}")
    summary = ", ".join(f"{k}={counts[k]} ({found[k]} found)" for k in SOLVERS)
    record(
        2,
        "class solvers match the oracle",
        not mismatches and all(counts[k] >= need for k in SOLVERS),
        f"{summary}; {len(mismatches)} mismatches",
    )


def test_criterion_3_s222_enumeration():
    checked = 0
    bad = 0
    total = 0
    for g in _class_instances(11):
        if checked >= 200:
            break
        if contains_induced(g, Pattern.spider(2, 2, 2)) is not None:
            continue
        got = enumerate_s222_free(g)
        checked += 1
        total += len(got)
        bad += got != brute_force_eds(g, "all") or len(got) > g.n
    record(3, "S2,2,2 enumeration is exact", bad == 0 and checked >= 200,
           f"{checked} instances, {total} e.d.s. listed, {bad} failures")


# -- 4 and 5 --------------------------------------------------------------------


def test_criterion_4_x3c_equivalence():
    rng = Xoshiro256(4)
    failures = 0
    with_cover = 0
    for i in range(300):
        n = (3, 6, 9, 12)[i % 4]
        m = 1 + rng.randbelow(8)
        planted = n // 3 <= m and rng.randbelow(2) == 1
        h = random_x3c(rng, n, m, planted)
        g, rmap = x3c_to_ed(h)
        cover = solve_x3c_brute(h)
        sol = brute_force_eds(g)
        ok = (cover is not None) == sol.found
        ok = ok and is_bipartite(g) and diameter(g) <= 6
        if cover is not None:
            with_cover += 1
            d = cover_to_eds(h, rmap, cover)
            ok = ok and is_eds(g, d) and eds_to_cover(h, rmap, d) == cover
        if sol.found:
            ok = ok and h.is_cover(eds_to_cover(h, rmap, sol.eds))
        failures += not ok
    record(4, "exact cover equivalence", failures == 0,
           f"300 instances ({with_cover} with a cover), {failures} failures")


def test_criterion_5_girth_gadget():
    rng = Xoshiro256(5)
    failures = 0
    count = 0
    for i in range(60):
        n = (3, 6, 9)[i % 3]
        m = 1 + rng.randbelow(5)
        planted = n // 3 <= m and rng.randbelow(2) == 1
        h = random_x3c(rng, n, m, planted)
        g, rmap = x3c_to_ed(h)
        g2, _ = subdivide_for_girth(g, rmap, 2)
        g3, _ = subdivide_for_girth(g, rmap, 3)
        ok = contains_induced(g2, Pattern.cycle(4)) is None
        ok = ok and brute_force_eds(g).found == brute_force_eds(g2).found
        ok = ok and all(contains_induced(g3, Pattern.cycle(k)) is None for k in (4, 6))
        failures += not ok
        count += 1
    record(5, "girth gadget", failures == 0, f"{count} instances (n<=9), {failures} failures")


# -- 6 -------------------------------------------------------------------------


def test_criterion_6_structure():
    rng = random.Random(66)
    viol: Counter = Counter()
    seen: Counter = Counter()
    a4 = Pattern.named("A4")
    attempts = 0
    while (seen["a"] < 100 or seen["c"] < 100 or seen["d"] < 100 or seen["e"] < 100) and attempts < 20000:
        attempts += 1
        if attempts % 2:
            g = random_sparse_bipartite(rng, rng.randint(5, 14), rng.randint(0, 6))
        else:
            g = random_bipartite(rng, rng.randint(4, 12), rng.choice([0.3, 0.5, 0.7]))
        if not is_connected(g):
            continue
        rep = classify(g, lp4_cap=2)
        if rep.maxdeg_le3 and rep.chordal_bipartite and seen["a"] < 100:
            seen["a"] += 1
            sq = square(g)
            viol["a"] += contains_hole(sq) is not None
            if rep.h4free:
                seen["b"] += 1
                viol["b"] += contains_induced(sq, a4) is not None
        if rep.lp4free[2] and find_homogeneous_set(g) is None and seen["c"] < 100:
            seen["c"] += 1
            sq = square(g)
            for v in range(g.n):
                n3 = distance_levels(g, v).level(3)
                if len(maximal_independent_sets(sq, n3)) > g.n**2:
                    viol["c"] += 1
        if rep.p7free and seen["d"] < 100:
            seen["d"] += 1
            viol["d"] += eccentricity(g, find_central_vertex(g, 7)) > 3
        if rep.maxdeg_le3 and rep.p9free and seen["e"] < 100:
            seen["e"] += 1
            for d in brute_force_eds(g, "all"):
                for v in d:
                    lv = distance_levels(g, v)
                    heavy = [y for y in d if lv.level_of[y] == 3 and any(lv.level_of[z] == 4 for z in g.adj[y])]
                    viol["e"] += len(heavy) > 2
    enough = all(seen[k] >= 100 for k in "acde") and seen["b"] > 0
    detail = "; ".join(f"({k}) {seen[k]} checked, {viol[k]} violations" for k in "abcde")
    record(6, "structural bounds", enough and not any(viol.values()), detail)


# -- 7 -------------------------------------------------------------------------


@pytest.fixture(scope="module")
def large_planted():
    # 500 stars with three leaves each: 2,000 vertices
    spec = "planted:degs=" + ";".join(["3"] * 500) + ",extra=400,layout=hub"
    out = generate_with_certificate(spec, 2000)
    assert out.value.n == 2000
    return out


@pytest.mark.parametrize("name", ["s224", "p7"])
def test_criterion_7_scale(large_planted, name):
    g = large_planted.value
    solver = solve_s224_free if name == "s224" else solve_p7_free
    start = time.perf_counter()
    out = solver(g)
    elapsed = time.perf_counter() - start
    ok = out.found and is_eds(g, out.eds) and elapsed < 60
    record(7, f"scale smoke test ({name})", ok, f"n={g.n}, m={g.m}, status={out.status}, {elapsed:.2f}s", tag=name)


# -- 8 -------------------------------------------------------------------------


def test_criterion_8_cli_determinism(tmp_path):
    graph = tmp_path / "g.txt"
    x3c = tmp_path / "h.txt"
    commands = [
        ["gen", "planted:degs=2;3;1;2,extra=5,layout=random", "--seed", "9", "--out", str(graph)],
        ["gen", "x3c:9,6,planted", "--seed", "3", "--out", str(x3c)],
        ["gen", "bip:6,6,0.3", "--seed", "12345"],
        ["solve", str(graph), "--json"],
        ["solve", str(graph), "--class", "oracle", "--all", "--json"],
        ["solve", str(graph), "--class", "s224", "--json"],
        ["recognize", str(graph), "--json"],
        ["reduce", "x3c", str(x3c), "--girth", "2"],
        ["verify", str(graph), "--set", "0,1"],
    ]
    runs = []
    for _ in range(2):
        for f in (graph, x3c):
            f.unlink(missing_ok=True)
        outputs = []
        for cmd in commands:
            proc = subprocess.run(
                [sys.executable, "-m", "edsbip", *cmd], capture_output=True, check=False
            )
            files = tuple(f.read_bytes() for f in (graph, x3c) if f.exists())
            outputs.append((proc.returncode, proc.stdout, files))
        runs.append(outputs)
    same = runs[0] == runs[1]
    record(8, "CLI determinism", same, f"{len(commands)} commands run twice, byte-identical={same}")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
