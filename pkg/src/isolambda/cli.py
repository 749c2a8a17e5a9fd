"""Command-line front end.

    isolambda [--deterministic] [--atoms A,B] typecheck FILE
    isolambda reduce FILE [--all | --seed N] [--trace] [--fuel N] [--json]
    isolambda class FILE [--expanded] [--json]
    isolambda measure FILE [--json]
    isolambda prop NAME [--trials N] [--seed S]
    isolambda demo NAME [--trace]

Exit status: 0 on success, 1 for parse/type errors, exhausted fuel or failed
properties, 2 for usage errors.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from contextlib import nullcontext

from . import config
from .analysis import SUITES, GenConfig, run_property_suite
from .measures import measures
from .parser import ParseError, parse_program
from .printer import show_term, show_type
from .reduction import FuelExhausted, ReductionCycle, Trace, normalize_all, normalize_random
from .syntax import App, Atom, Term, show_path
from .term_equiv import ClassTooLarge, ac_norm, enumerate_class
from .typing import TypeCheckError, infer


def _fuel_default() -> int:
    env = os.environ.get("ISOLAMBDA_FUEL")
    if env:
        try:
            return int(env)
        except ValueError:
            pass
    return config.DEFAULT_FUEL


def _load(path: str, atoms) -> Term:
    if path == "-":
        src = sys.stdin.read()
    else:
        with open(path, encoding="utf-8") as fh:
            src = fh.read()
    prog = parse_program(src, atoms)
    infer(prog.term)
    return prog.term


def _trace_json(tr: Trace) -> dict:
    steps = []
    for st in tr.steps:
        steps.append({
            "rule": st.rule,
            "position": show_path(st.position),
            "term": show_term(st.result),
            "equiv": [
                {"rule": e.rule, "direction": e.direction, "position": show_path(e.position), "term": show_term(e.result)}
                for e in st.pre_equiv
            ],
        })
    return {"start": show_term(tr.start), "steps": steps, "end": show_term(tr.end)}


def _trace_lines(tr: Trace) -> list:
    out = []
    for st in tr.steps:
        for e in st.pre_equiv:
            out.append(f"{e.rule}/{e.direction} @ {show_path(e.position)} : {show_term(e.result)}")
        out.append(f"{st.rule} @ {show_path(st.position)} : {show_term(st.result)}")
    return out


def cmd_typecheck(args) -> int:
    t = _load(args.file, args.atoms)
    print(f": {show_type(infer(t).type)}")
    return 0


def cmd_reduce(args) -> int:
    t = _load(args.file, args.atoms)
    fuel = args.fuel if args.fuel is not None else _fuel_default()
    if args.seed is not None and not args.all:
        tr = normalize_random(t, args.seed, fuel)
        if args.json:
            print(json.dumps(_trace_json(tr), indent=2, ensure_ascii=False))
            return 0
        if args.trace:
            print(f"start : {show_term(tr.start)}")
            for line in _trace_lines(tr):
                print(line)
        print(show_term(tr.end))
        return 0
    nfs = normalize_all(t, fuel)
    if args.json:
        print(json.dumps({"start": show_term(ac_norm(t)), "normal_forms": [show_term(n) for n in nfs]}, indent=2, ensure_ascii=False))
        return 0
    for n in nfs:
        print(show_term(n))
    return 0


def cmd_class(args) -> int:
    t = _load(args.file, args.atoms)
    cls = enumerate_class(t)
    members = cls.expanded() if args.expanded else cls.members
    if args.json:
        data = {
            "representative": show_term(cls.representative),
            "members": [show_term(m) for m in members],
            "edges": [
                {"from": show_term(m), "rule": e.rule, "direction": e.direction,
                 "position": show_path(e.position), "to": show_term(e.result)}
                for m in cls.members for e in cls.edges[m.key]
            ],
        }
        print(json.dumps(data, indent=2, ensure_ascii=False))
        return 0
    print(f"-- {len(members)} members")
    for m in members:
        print(show_term(m))
    if not args.expanded:
        print("-- edges")
        for m in cls.members:
            for e in cls.edges[m.key]:
                print(f"{show_term(m)}  ~{e.rule}/{e.direction} @ {show_path(e.position)}~>  {show_term(e.result)}")
    return 0


def cmd_measure(args) -> int:
    t = _load(args.file, args.atoms)
    m = measures(t)
    if args.json:
        print(json.dumps({"S": m.s, "P": m.p, "M": m.m}))
    else:
        print(f"S = {m.s}\nP = {m.p}\nM = {m.m}")
    return 0


def cmd_prop(args) -> int:
    cfg = GenConfig(atom_alphabet=args.atoms or ["T1", "T2", "T3"])
    rep = run_property_suite(args.name, args.trials, args.seed, cfg)
    print(f"{rep.name}: {rep.trials} trials, {len(rep.failures)} failures")
    for f in rep.failures:
        print(f"  {f.describe()}")
    return 0 if rep.ok else 1


def _demos() -> dict:
    from .encodings import canon, cocanon, mk_bool, mk_fst, mk_ite, mk_nth, mk_list, mk_pair, mk_snd, naive_bool
    from .parser import parse_term
    from .syntax import Arrow

    r, s, u = parse_term("r:A"), parse_term("s:A"), parse_term("u:A")
    rb, sb = parse_term("r:B"), parse_term("s:B")
    return {
        "pairs": [("fst <r,s>", mk_fst(mk_pair(r, s))), ("snd <r,s>", mk_snd(mk_pair(r, s)))],
        "lists": [(f"nth {i} [r,s,u]", mk_nth(mk_list([r, s, u]), i)) for i in (1, 2, 3)],
        "cocanon": [("{[t]^A}", cocanon(canon(parse_term("t:B"), Atom("A")), Arrow(Atom("A"), Atom("B"))))],
        "booleans": [
            ("if TT then r else s", mk_ite(mk_bool(True), rb, sb)),
            ("if FF then r else s", mk_ite(mk_bool(False), rb, sb)),
        ],
        "naive": [
            ("TRUE r s", App(App(naive_bool(True), r), s)),
            ("FALSE r s", App(App(naive_bool(False), r), s)),
        ],
    }


def cmd_demo(args) -> int:
    demos = _demos()
    names = list(demos) if args.name == "all" else [args.name]
    for name in names:
        if name not in demos:
            print(f"unknown demo {name!r}; choose from {', '.join(demos)} or all", file=sys.stderr)
            return 2
        print(f"== {name}")
        for label, t in demos[name]:
            nfs = normalize_all(t)
            print(f"{label}:  {show_term(t)}")
            print(f"  normal forms: {', '.join(show_term(n) for n in nfs)}")
            if args.trace:
                tr = normalize_random(t, 0)
                for line in _trace_lines(tr):
                    print(f"    {line}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="isolambda", description="λ-calculus with isomorphic types identified")
    p.add_argument("--deterministic", action="store_true", help="drop commutativity and associativity of conjunction")
    p.add_argument("--atoms", type=lambda s: [a for a in s.replace(",", " ").split() if a], default=None,
                   help="declared atom alphabet, e.g. A,B,C")
    sub = p.add_subparsers(dest="cmd", required=True)

    tc = sub.add_parser("typecheck", help="print the canonical type of a program")
    tc.add_argument("file")
    tc.set_defaults(func=cmd_typecheck)

    rd = sub.add_parser("reduce", help="normal forms or one seeded reduction path")
    rd.add_argument("file")
    rd.add_argument("--all", action="store_true", help="print every reachable normal form (default)")
    rd.add_argument("--seed", type=int, default=None, help="follow one path chosen with this seed")
    rd.add_argument("--trace", action="store_true", help="print each step of the seeded path")
    rd.add_argument("--fuel", type=int, default=None, help="bound on explored classes")
    rd.add_argument("--json", action="store_true")
    rd.set_defaults(func=cmd_reduce)

    cl = sub.add_parser("class", help="members of the equivalence class")
    cl.add_argument("file")
    cl.add_argument("--expanded", action="store_true", help="spell out every grouping and order of sums")
    cl.add_argument("--json", action="store_true")
    cl.set_defaults(func=cmd_class)

    me = sub.add_parser("measure", help="print S, P and M")
    me.add_argument("file")
    me.add_argument("--json", action="store_true")
    me.set_defaults(func=cmd_measure)

    pr = sub.add_parser("prop", help="run a property suite on generated terms")
    pr.add_argument("name", choices=SUITES)
    pr.add_argument("--trials", type=int, default=100)
    pr.add_argument("--seed", type=int, default=0)
    pr.set_defaults(func=cmd_prop)

    de = sub.add_parser("demo", help="replay the pair, list, cocanon and boolean encodings")
    de.add_argument("name", nargs="?", default="all")
    de.add_argument("--trace", action="store_true")
    de.set_defaults(func=cmd_demo)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "trials", 1) is not None and getattr(args, "trials", 1) < 0:
        print("--trials must be non-negative", file=sys.stderr)
        return 2
    if getattr(args, "fuel", None) is not None and args.fuel < 1:
        print("--fuel must be positive", file=sys.stderr)
        return 2
    ctx = config.deterministic() if args.deterministic else nullcontext()
    with ctx:
        try:
            return args.func(args)
        except ParseError as e:
            print(f"{getattr(args, 'file', '')}:{e}", file=sys.stderr)
        except TypeCheckError as e:
            print(f"{getattr(args, 'file', '')}: type error: {e}", file=sys.stderr)
        except OSError as e:
            print(f"error: {e}", file=sys.stderr)
        except (FuelExhausted, ReductionCycle, ClassTooLarge) as e:
            print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
    return 1


if __name__ == "__main__":
    sys.exit(main())
