"""Plain-text graph and X3C files.

Graph file::

    # comments anywhere
    n m
    u v            (m edge lines, 0-based)
    w u weight     (optional vertex weights; integers or fractions like 3/2)

X3C file::

    n m
    a b c          (m triple lines)

Writers emit a canonical form (sorted edges, weights only when some weight
differs from 1), so parse(format(g)) == g.
"""

from __future__ import annotations

import sys
from fractions import Fraction
from pathlib import Path
from typing import Iterable

from .graph import Graph, GraphError, build_graph
from .reductions import InvalidInstance, X3CInstance


class FormatError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


def _content_lines(text: str) -> list[tuple[int, list[str]]]:
    out = []
    for no, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            out.append((no, body.split()))
    return out


def _int(tok: str, no: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise FormatError(f"expected an integer, got {tok!r}", no) from None


def parse_graph(text: str) -> Graph:
    lines = _content_lines(text)
    if not lines:
        raise FormatError("missing header 'n m'")
    no, head = lines[0]
    if len(head) != 2:
        raise FormatError("header must be 'n m'", no)
    n, m = _int(head[0], no), _int(head[1], no)
    if n < 0 or m < 0:
        raise FormatError("negative counts in header", no)
    edges: list[tuple[int, int]] = []
    weights: list[Fraction] | None = None
    for no, toks in lines[1:]:
        if toks[0] == "w":
            if len(toks) != 3:
                raise FormatError("weight line must be 'w u weight'", no)
            u = _int(toks[1], no)
            if not 0 <= u < n:
                raise FormatError(f"weight for vertex {u} outside [0, {n})", no)
            try:
                val = Fraction(toks[2])
            except (ValueError, ZeroDivisionError):
                raise FormatError(f"bad weight {toks[2]!r}", no) from None
            if weights is None:
                weights = [Fraction(1)] * n
            weights[u] = val
            continue
        if weights is not None:
            raise FormatError("edge line after weight lines", no)
        if len(toks) != 2:
            raise FormatError("edge line must be 'u v'", no)
        u, v = _int(toks[0], no), _int(toks[1], no)
        if not (0 <= u < n and 0 <= v < n):
            raise FormatError(f"edge ({u}, {v}) outside [0, {n})", no)
        edges.append((u, v))
    if len(edges) != m:
        raise FormatError(f"header announces {m} edges, found {len(edges)}")
    try:
        g = build_graph(n, edges, weights)
    except GraphError as exc:
        raise FormatError(str(exc)) from None
    if g.m != m:
        raise FormatError("duplicate edges")
    return g


def format_graph(g: Graph, comments: Iterable[str] = ()) -> str:
    out = [f"# {c}" for c in comments]
    out.append(f"{g.n} {g.m}")
    out.extend(f"{u} {v}" for u, v in g.edges())
    if g.weights is not None:
        out.extend(f"w {v} {w}" for v, w in enumerate(g.weights))
    return "\n".join(out) + "\n"


def parse_x3c(text: str) -> X3CInstance:
    lines = _content_lines(text)
    if not lines:
        raise FormatError("missing header 'n m'")
    no, head = lines[0]
    if len(head) != 2:
        raise FormatError("header must be 'n m'", no)
    n, m = _int(head[0], no), _int(head[1], no)
    triples = []
    for no, toks in lines[1:]:
        if len(toks) != 3:
            raise FormatError("triple line must be 'a b c'", no)
        triples.append(tuple(_int(t, no) for t in toks))
    if len(triples) != m:
        raise FormatError(f"header announces {m} triples, found {len(triples)}")
    try:
        return X3CInstance(n, tuple(triples))
    except InvalidInstance as exc:
        raise FormatError(str(exc)) from None


def format_x3c(h: X3CInstance) -> str:
    out = [f"{h.n} {h.m}"]
    out.extend(" ".join(map(str, t)) for t in h.triples)
    return "\n".join(out) + "\n"


def read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def read_graph(path: str) -> Graph:
    return parse_graph(read_text(path))


def read_x3c(path: str) -> X3CInstance:
    return parse_x3c(read_text(path))


__all__ = [
    "FormatError",
    "format_graph",
    "format_x3c",
    "parse_graph",
    "parse_x3c",
    "read_graph",
    "read_text",
    "read_x3c",
]
