"""Command-line driver: solve, verify, recognize, reduce, gen."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from .eds import (
    NO_EDS,
    NOT_APPLICABLE,
    BudgetExceeded,
    brute_force_eds,
    domination_counts,
    found,
    no_eds,
    not_applicable,
)
from .generators import GenSpecError, RejectionExhausted, generate_with_certificate
from .graph import Graph, is_connected
from .io import FormatError, format_graph, format_x3c, read_graph, read_x3c
from .recognize import classify
from .reductions import InvalidInstance, diameter, subdivide_for_girth, x3c_to_ed
from .solvers import UnknownClassName, dispatch, solve_s222_free

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2
EXIT_NO_EDS = 3
EXIT_NOT_APPLICABLE = 4


class InputError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True)


def _ints(xs) -> str:
    return " ".join(map(str, xs))


# -- solve -------------------------------------------------------------------


def cmd_solve(args: argparse.Namespace) -> int:
    g = read_graph(args.file)
    cls = args.cls.strip().lower()
    if args.all and cls not in ("s222", "oracle"):
        raise InputError("--all needs --class s222 or --class oracle")
    if args.all and cls == "oracle":
        try:
            every = brute_force_eds(g, "all", args.budget)
        except BudgetExceeded as exc:
            out = not_applicable(str(exc), solver="oracle")
        else:
            out = found(every[0], solver="oracle") if every else no_eds(solver="oracle")
            out.all = every
            out.stats["count"] = len(every)
    elif args.all:
        out = solve_s222_free(g, check_class=True)
    else:
        out = dispatch(g, cls, args.budget)
    if args.json:
        print(_dump(out.to_dict()))
    else:
        if out.found:
            if out.all is not None:
                for d in out.all:
                    print(_ints(d))
            else:
                print(_ints(out.eds))
        elif out.status == NO_EDS:
            print("no efficient dominating set" + (f" ({out.reason})" if out.reason else ""))
        else:
            print(f"not applicable: {out.reason}")
            if out.witness is not None:
                print(f"witness: {_ints(out.witness)}")
    if out.status == NO_EDS:
        return EXIT_NO_EDS
    if out.status == NOT_APPLICABLE:
        return EXIT_NOT_APPLICABLE
    return EXIT_OK


# -- verify ------------------------------------------------------------------


def _parse_set(text: str, n: int) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        vals = [int(t) for t in text.replace(" ", ",").split(",") if t]
    except ValueError:
        raise InputError(f"malformed vertex set {text!r}") from None
    for v in vals:
        if not 0 <= v < n:
            raise InputError(f"vertex {v} outside [0, {n})")
    return vals


def cmd_verify(args: argparse.Namespace) -> int:
    g = read_graph(args.file)
    d = _parse_set(args.set, g.n)
    counts = domination_counts(g, d)
    bad = [(v, c) for v, c in enumerate(counts) if c != 1]
    if args.json:
        print(_dump({"eds": not bad, "violations": [{"vertex": v, "count": c} for v, c in bad]}))
    elif not bad:
        print("ok: efficient dominating set")
    else:
        for v, c in bad:
            print(f"vertex {v}: dominated {c} times")
    return EXIT_OK if not bad else EXIT_FAIL


# -- recognize ---------------------------------------------------------------


def cmd_recognize(args: argparse.Namespace) -> int:
    g = read_graph(args.file)
    rep = classify(g, lp4_cap=args.lp4_cap)
    data = rep.to_dict()
    if args.json:
        print(_dump(data))
        return EXIT_OK
    witnesses = data.pop("witnesses")
    for key, val in data.items():
        if isinstance(val, dict):
            for k, v in val.items():
                print(f"{k}{key}: {str(v).lower()}")
            continue
        if isinstance(val, list):
            print(f"{key}: {_ints(val)}")
            continue
        line = f"{key}: {str(val).lower()}"
        if key in witnesses:
            line += f"  witness {_ints(witnesses[key])}"
        print(line)
    return EXIT_OK


# -- reduce ------------------------------------------------------------------


def cmd_reduce(args: argparse.Namespace) -> int:
    h = read_x3c(args.file)
    g, rmap = x3c_to_ed(h)
    if args.girth:
        g, rmap = subdivide_for_girth(g, rmap, args.girth)
    diam = diameter(g) if is_connected(g) and g.n else None
    text = format_graph(g, [f"diameter {diam if diam is not None else 'infinite'}"])
    roles = rmap.to_dict()
    roles["diameter"] = diam
    if args.out:
        Path(args.out).write_text(text)
        roles_path = args.roles or args.out + ".roles.json"
        Path(roles_path).write_text(_dump(roles) + "\n")
        print(f"vertices {g.n} edges {g.m} diameter {diam}")
    else:
        sys.stdout.write(text)
        if args.roles:
            Path(args.roles).write_text(_dump(roles) + "\n")
    return EXIT_OK


# -- gen ---------------------------------------------------------------------


def cmd_gen(args: argparse.Namespace) -> int:
    out = generate_with_certificate(args.spec, args.seed)
    if isinstance(out.value, Graph):
        comments = [f"spec {args.spec} seed {args.seed}"]
        if out.certificate is not None:
            comments.append(f"planted {_ints(out.certificate)}")
        text = format_graph(out.value, comments)
    else:
        text = f"# spec {args.spec} seed {args.seed}\n" + format_x3c(out.value)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="edsbip", description="Efficient dominating sets in bipartite graphs."
    )
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="find an efficient dominating set")
    s.add_argument("file", help="graph file ('-' for stdin)")
    s.add_argument(
        "--class",
        dest="cls",
        default="auto",
        help="auto|p5|p7|lp4=<l>|s222|s223|s224|p9deg3|oracle (default auto)",
    )
    s.add_argument("--json", action="store_true")
    s.add_argument("--all", action="store_true", help="list every e.d.s. (s222 or oracle)")
    s.add_argument("--budget", type=int, default=10**8, help="oracle node budget")
    s.add_argument(
        "--seedless-deterministic",
        action="store_true",
        help="accepted for compatibility; every solver is deterministic already",
    )
    s.set_defaults(func=cmd_solve)

    v = sub.add_parser("verify", help="check a candidate set")
    v.add_argument("file")
    v.add_argument("--set", required=True, help='comma-separated vertices, e.g. "0,3"')
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("recognize", help="report class membership with witnesses")
    r.add_argument("file")
    r.add_argument("--json", action="store_true")
    r.add_argument("--lp4-cap", type=int, default=3)
    r.set_defaults(func=cmd_recognize)

    red = sub.add_parser("reduce", help="build the graph for an exact-cover instance")
    red.add_argument("kind", choices=["x3c"])
    red.add_argument("file")
    red.add_argument("--girth", type=int, default=0, help="remove even cycles up to 2k")
    red.add_argument("--out")
    red.add_argument("--roles", help="role map path (default <out>.roles.json)")
    red.set_defaults(func=cmd_reduce)

    gn = sub.add_parser("gen", help="generate an instance from a spec string")
    gn.add_argument("spec")
    gn.add_argument("--seed", type=int, default=0)
    gn.add_argument("--out")
    gn.set_defaults(func=cmd_gen)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (
        FormatError,
        GenSpecError,
        RejectionExhausted,
        UnknownClassName,
        InputError,
        InvalidInstance,
        OSError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
