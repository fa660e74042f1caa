"""Seeded instance generators.

All randomness comes from xoshiro256** seeded through splitmix64, so a spec
string and a 64-bit seed pin down the output bit for bit on any platform.

Spec strings::

    named:P7 | named:C6 | named:S2,2,4 | named:K3,3 | named:A4 | named:H4
    bip:<nx>,<ny>,<p>
    hfree:<pattern>:<max_tries>:<inner spec>
    planted:degs=2;3;2[,extra=<k>][,layout=chain|hub|random]
    x3c:<n>,<m>[,planted]
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, TypeVar

from .graph import Graph, build_graph, complete_bipartite, cycle_graph, path_graph, spider_graph
from .recognize import Pattern, contains_induced, parse_pattern
from .reductions import X3CInstance

MASK64 = (1 << 64) - 1
T = TypeVar("T")


class GenSpecError(ValueError):
    pass


class RejectionExhausted(RuntimeError):
    pass


def _rotl(x: int, k: int) -> int:
    return ((x << k) | (x >> (64 - k))) & MASK64


def splitmix64(state: int) -> tuple[int, int]:
    """One splitmix64 step: returns (new state, output)."""
    state = (state + 0x9E3779B97F4A7C15) & MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return state, z ^ (z >> 31)


class Xoshiro256:
    """xoshiro256** 1.0 with the four state words filled by splitmix64."""

    def __init__(self, seed: int):
        st = seed & MASK64
        words = []
        for _ in range(4):
            st, out = splitmix64(st)
            words.append(out)
        self.s = words

    def next_u64(self) -> int:
        s = self.s
        result = (_rotl((s[1] * 5) & MASK64, 7) * 9) & MASK64
        t = (s[1] << 17) & MASK64
        s[2] ^= s[0]
        s[3] ^= s[1]
        s[1] ^= s[2]
        s[0] ^= s[3]
        s[2] ^= t
        s[3] = _rotl(s[3], 45)
        return result

    def random(self) -> float:
        """Uniform in [0, 1) from the top 53 bits."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def randbelow(self, n: int) -> int:
        if n <= 0:
            raise ValueError("n must be positive")
        # rejection sampling on the smallest covering power of two
        k = max(1, (n - 1).bit_length())
        while True:
            r = self.next_u64() >> (64 - k)
            if r < n:
                return r

    def choice(self, seq: Sequence[T]) -> T:
        return seq[self.randbelow(len(seq))]

    def shuffle(self, items: list) -> None:
        for i in range(len(items) - 1, 0, -1):
            j = self.randbelow(i + 1)
            items[i], items[j] = items[j], items[i]

    def sample(self, seq: Sequence[T], k: int) -> list[T]:
        pool = list(seq)
        if k > len(pool):
            raise ValueError("sample larger than population")
        for i in range(k):
            j = i + self.randbelow(len(pool) - i)
            pool[i], pool[j] = pool[j], pool[i]
        return pool[:k]


@dataclass(frozen=True)
class Generated:
    value: Graph | X3CInstance
    certificate: list[int] | None = None


# -- named -------------------------------------------------------------------


def named_graph(name: str) -> Graph:
    key = name.strip().upper().replace(" ", "")
    if key[:1] in "PC" and key[1:].isdigit():
        k = int(key[1:])
        return path_graph(k) if key[0] == "P" else cycle_graph(k)
    if key.startswith("K") and "," in key:
        a, b = key[1:].split(",")
        return complete_bipartite(int(a), int(b))
    if key.startswith("S") and key.count(",") == 2:
        i, j, k = (int(t) for t in key[1:].split(","))
        return spider_graph(i, j, k)
    try:
        return parse_pattern(key).graph
    except ValueError:
        raise GenSpecError(f"unknown named graph {name!r}") from None


# -- random ------------------------------------------------------------------


def random_bipartite(rng: Xoshiro256, nx: int, ny: int, p: float) -> Graph:
    if not 0.0 <= p <= 1.0:
        raise GenSpecError("edge probability must lie in [0, 1]")
    edges = [(a, nx + b) for a in range(nx) for b in range(ny) if rng.random() < p]
    return build_graph(nx + ny, edges)


def planted_eds(
    rng: Xoshiro256, degrees: Sequence[int], extra: int = 0, layout: str = "chain"
) -> tuple[Graph, list[int]]:
    """Bipartite graph with the star centres as an e.d.s.

    Each centre gets its own leaves; all further edges join leaves of
    different stars on opposite sides, so no vertex is dominated twice.
    ``chain`` links consecutive stars, ``random`` links each star to an
    earlier one, ``hub`` hangs every other star off the first one's leaves
    so that one hub leaf sees every star within distance 2.
    """
    if layout not in ("chain", "hub", "random"):
        raise GenSpecError(f"unknown layout {layout!r}")
    if any(d < 0 for d in degrees):
        raise GenSpecError("degrees must be non-negative")
    if layout == "hub" and degrees and any(d < 1 for d in degrees):
        raise GenSpecError("hub layout needs every star to have a leaf")
    n = 0
    centres: list[int] = []
    leaves: list[list[int]] = []
    side: list[int] = []
    edges: list[tuple[int, int]] = []

    def add_star(deg: int, s: int) -> None:
        nonlocal n
        c = n
        centres.append(c)
        side.append(s)
        n += 1
        ls = []
        for _ in range(deg):
            edges.append((c, n))
            side.append(1 - s)
            ls.append(n)
            n += 1
        leaves.append(ls)

    for k, deg in enumerate(degrees):
        if layout == "chain":
            add_star(deg, k % 2)
            if k and leaves[k - 1] and leaves[k]:
                edges.append((rng.choice(leaves[k - 1]), rng.choice(leaves[k])))
        elif layout == "random":
            earlier = [x for ls in leaves for x in ls]
            if earlier and deg:
                anchor = rng.choice(earlier)
                add_star(deg, side[anchor])
                edges.append((anchor, leaves[k][0]))
            else:
                add_star(deg, 0)
        else:
            add_star(deg, 0 if k == 0 else 1)
            if k:
                hub = leaves[0]
                edges.append((hub[0], leaves[k][0]))
                for x in leaves[k][1:]:
                    edges.append((rng.choice(hub), x))
    all_leaves = [x for ls in leaves for x in ls]
    star_of = {x: k for k, ls in enumerate(leaves) for x in ls}
    for _ in range(extra):
        if len(all_leaves) < 2:
            break
        a, b = rng.sample(all_leaves, 2)
        if star_of[a] != star_of[b] and side[a] != side[b]:
            edges.append((a, b))
    return build_graph(n, sorted({(min(e), max(e)) for e in edges})), centres


def random_x3c(rng: Xoshiro256, n: int, m: int, planted: bool = False) -> X3CInstance:
    if n < 3:
        raise GenSpecError("ground set needs at least 3 elements")
    triples: list[tuple[int, int, int]] = []
    if planted:
        if n % 3:
            raise GenSpecError("a planted cover needs n divisible by 3")
        perm = list(range(n))
        rng.shuffle(perm)
        triples = [tuple(sorted(perm[i : i + 3])) for i in range(0, n, 3)]
    while len(triples) < m:
        triples.append(tuple(sorted(rng.sample(range(n), 3))))
    rng.shuffle(triples)
    return X3CInstance(n, tuple(triples[:m]) if not planted else tuple(triples))


# -- spec strings --------------------------------------------------------------


def _ints(text: str, count: int | None = None) -> list[int]:
    try:
        vals = [int(t) for t in text.split(",")]
    except ValueError:
        raise GenSpecError(f"expected integers in {text!r}") from None
    if count is not None and len(vals) != count:
        raise GenSpecError(f"expected {count} integers in {text!r}")
    return vals


def _generate(spec: str, rng: Xoshiro256) -> Generated:
    kind, sep, body = spec.strip().partition(":")
    if not sep:
        raise GenSpecError(f"spec {spec!r} lacks a kind prefix")
    kind = kind.lower()
    if kind == "named":
        return Generated(named_graph(body))
    if kind == "bip":
        parts = body.split(",")
        if len(parts) != 3:
            raise GenSpecError("bip spec is bip:<nx>,<ny>,<p>")
        try:
            nx, ny, p = int(parts[0]), int(parts[1]), float(parts[2])
        except ValueError:
            raise GenSpecError(f"bad bip spec {spec!r}") from None
        return Generated(random_bipartite(rng, nx, ny, p))
    if kind == "hfree":
        pieces = body.split(":", 2)
        if len(pieces) != 3:
            raise GenSpecError("hfree spec is hfree:<pattern>:<tries>:<inner>")
        pattern: Pattern = parse_pattern(pieces[0])
        tries = _ints(pieces[1], 1)[0]
        for _ in range(tries):
            out = _generate(pieces[2], rng)
            if isinstance(out.value, Graph) and contains_induced(out.value, pattern) is None:
                return out
        raise RejectionExhausted(f"no {pattern}-free sample in {tries} tries")
    if kind == "planted":
        opts = {}
        for item in body.split(","):
            key, eq, val = item.partition("=")
            if not eq:
                raise GenSpecError(f"planted option {item!r} needs key=value")
            opts[key.strip()] = val.strip()
        if "degs" not in opts:
            raise GenSpecError("planted spec needs degs=")
        degs = _ints(opts.pop("degs").replace(";", ","))
        extra = int(opts.pop("extra", "0"))
        layout = opts.pop("layout", "chain")
        if opts:
            raise GenSpecError(f"unknown planted options {sorted(opts)}")
        g, cert = planted_eds(rng, degs, extra, layout)
        return Generated(g, cert)
    if kind == "x3c":
        parts = body.split(",")
        planted = parts[-1].strip() == "planted"
        if planted:
            parts = parts[:-1]
        n, m = _ints(",".join(parts), 2)
        return Generated(random_x3c(rng, n, m, planted))
    raise GenSpecError(f"unknown spec kind {kind!r}")


def generate_with_certificate(spec: str, seed: int) -> Generated:
    return _generate(spec, Xoshiro256(seed))


def generate(spec: str, seed: int) -> Graph | X3CInstance:
    return generate_with_certificate(spec, seed).value


def planted_spec(centres: int, rng: Xoshiro256, max_degree: int = 3, extra: int = 0, layout: str = "hub") -> str:
    """Spec string for a planted instance with random star sizes."""
    degs = ";".join(str(1 + rng.randbelow(max_degree)) for _ in range(centres))
    return f"planted:degs={degs},extra={extra},layout={layout}"


__all__ = [
    "GenSpecError",
    "Generated",
    "RejectionExhausted",
    "Xoshiro256",
    "generate",
    "generate_with_certificate",
    "named_graph",
    "planted_eds",
    "planted_spec",
    "random_bipartite",
    "random_x3c",
    "splitmix64",
]
