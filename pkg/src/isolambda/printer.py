"""Concrete syntax output.

The printed form parses back to the same tree (up to the names chosen for
bound variables).  Level names ``_k`` introduced by α-normalisation are shown
as x, y, z, ... so output stays readable.
"""
from __future__ import annotations

from .syntax import App, Arrow, Atom, Conj, Lam, Proj, Sum, Term, Type, Var, free_names

_NICE = ["x", "y", "z", "u", "v", "w"]


def show_type(a: Type) -> str:
    if isinstance(a, Atom):
        return a.name
    if isinstance(a, Arrow):
        d = show_type(a.domain)
        if isinstance(a.domain, Arrow):
            d = f"({d})"
        return f"{d} -> {show_type(a.codomain)}"
    left = show_type(a.left)
    right = show_type(a.right)
    if not isinstance(a.left, Atom):
        left = f"({left})"
    if not isinstance(a.right, Atom):
        right = f"({right})"
    return f"{left} /\\ {right}"


def _ann(a: Type) -> str:
    s = show_type(a)
    return s if isinstance(a, Atom) else f"({s})"


def show_term(t: Term, ascii_only: bool = True) -> str:
    taken = set(free_names(t))
    names: dict = {}
    depth_names: dict = {}

    def pick(binder: str, depth: int) -> str:
        if not (binder.startswith("_") and binder[1:].isdigit()):
            return binder
        if depth in depth_names:
            return depth_names[depth]
        i = depth
        while True:
            cand = _NICE[i % len(_NICE)] + (str(i // len(_NICE)) if i >= len(_NICE) else "")
            if cand not in taken:
                break
            i += len(_NICE)
        depth_names[depth] = cand
        return cand

    def go(u: Term, depth: int, env: dict) -> str:
        if isinstance(u, Var):
            if u.name in env:
                shown, ann = env[u.name]
                return shown if ann == u.ann else f"{shown}:{_ann(u.ann)}"
            return f"{u.name}:{_ann(u.ann)}"
        if isinstance(u, Lam):
            shown = pick(u.binder, depth)
            inner = dict(env)
            inner[u.binder] = (shown, u.ann)
            return f"\\{shown}:{_ann(u.ann)}. {go(u.body, depth + 1, inner)}"
        if isinstance(u, Proj):
            return f"pi[{show_type(u.ann)}]({go(u.body, depth, env)})"
        if isinstance(u, App):
            f = go(u.fun, depth, env)
            if isinstance(u.fun, (Lam, Sum)):
                f = f"({f})"
            a = go(u.arg, depth, env)
            if isinstance(u.arg, (Lam, Sum, App)):
                a = f"({a})"
            return f"{f} {a}"
        left = go(u.left, depth, env)
        right = go(u.right, depth, env)
        if isinstance(u.left, Lam):
            left = f"({left})"
        if isinstance(u.right, (Lam, Sum)):
            right = f"({right})"
        return f"{left} + {right}"

    return go(t, 0, {})


def show_pretty(t: Term) -> str:
    """Unicode rendering for reports: λ, π, ⇒, ∧."""
    s = show_term(t)
    return (
        s.replace("\\", "λ")
        .replace("pi[", "π[")
        .replace(" -> ", "⇒")
        .replace(" /\\ ", "∧")
    )
