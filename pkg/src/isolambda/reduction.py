"""Reduction →, reduction modulo ≡* (written ⇝), normal forms and traces.

Reduction works on ≡* classes: the successors of a class are the classes of
every → step out of every member.  The reachable part of the class graph is
explored once and memoised by class representative, which gives the set of
normal forms, the longest path and seeded random walks.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterator, Optional

from . import config
from .syntax import App, Lam, Proj, Sum, Term, Var, children, replace_at, subst_term, sum_of, summands
from .term_equiv import (
    EquivClass, EquivStep, ac_norm, enumerate_class, is_sum_modulo, rule_positions,
)
from .type_canon import bipartitions, canon_type, leaves
from .typing import type_of

REDUCTION_RULES = ("beta", "pi_n", "pi_1", "delta")


class FuelExhausted(Exception):
    """Exploration needed more class expansions than the fuel allowed."""


class ReductionCycle(Exception):
    """A ⇝ cycle was found, so the start term is not strongly normalising."""

    def __init__(self, term: Term):
        super().__init__("reduction cycle")
        self.term = term


@dataclass(frozen=True)
class RedStep:
    rule: str
    position: tuple
    pre_equiv: tuple
    result: Term = field(compare=False)
    source: Optional[Term] = field(default=None, compare=False)


@dataclass
class Trace:
    start: Term
    steps: list
    end: Term


# ---------------------------------------------------------------- δ side conditions

_CTX_MEMO: dict = {}


def _under_proj(t: Term, hole: str) -> bool:
    if isinstance(t, Proj) and isinstance(t.body, Var) and t.body.name == hole:
        return True
    return any(_under_proj(c, hole) for c in children(t))


def delta_context_ok(t: Term, path: tuple) -> bool:
    """The context around ``path`` is not ≡* to one placing the hole right
    under a projection."""
    if path:
        parent = t
        for i in path[:-1]:
            parent = children(parent)[i]
        if isinstance(parent, Proj):
            return False
    u = t
    for i in path:
        u = children(u)[i]
    ty = type_of(u)
    hole = Var("#h", ty)
    ctx = ac_norm(replace_at(t, path, hole))
    k = (config.mode(), ctx.key)
    hit = _CTX_MEMO.get(k)
    if hit is None:
        cls = enumerate_class(ctx)
        hit = not any(_under_proj(m, "#h") for m in cls.members)
        _CTX_MEMO[k] = hit
    return hit


def delta_allowed(u: Term) -> bool:
    """u has a conjunctive type and is not ≡* to a sum."""
    if isinstance(u, Sum):
        return False
    ty = type_of(u)
    if ty is None or not bipartitions(ty):
        return False
    return is_sum_modulo(u) is None


# ---------------------------------------------------------------- one step


def _local(u: Term, ac: bool) -> Iterator[tuple]:
    if isinstance(u, App) and isinstance(u.fun, Lam):
        ta = type_of(u.arg)
        if ta is not None and ta == canon_type(u.fun.ann):
            yield "beta", subst_term(u.fun.body, u.arg, u.fun.binder, u.fun.ann)
    if isinstance(u, Proj):
        p = u.ann
        if type_of(u.body) == p:
            yield "pi_1", u.body
        if isinstance(u.body, Sum):
            if ac:
                parts = summands(u.body)
                seen = set()
                for k in range(1, len(parts)):
                    for idx in combinations(range(len(parts)), k):
                        pick = sum_of([parts[i] for i in idx])
                        if pick.key in seen:
                            continue
                        seen.add(pick.key)
                        if type_of(pick) == p:
                            yield "pi_n", pick
            elif type_of(u.body.left) == p:
                yield "pi_n", u.body.left
            elif config.is_deterministic() and type_of(u.body.right) == p:
                # positional projection on the right component
                yield "pi_n", u.body.right


def direct_step(t: Term) -> list:
    """All → successors of t itself, without ≡ moves before the step."""
    t = ac_norm(t)
    ac = not config.is_deterministic()
    out = []
    seen = set()
    for path, u in rule_positions(t, ac):
        for rule, new in _local(u, ac):
            _add(out, seen, t, rule, path, new)
        if delta_allowed(u) and delta_context_ok(t, path):
            for a, b in bipartitions(type_of(u)):
                _add(out, seen, t, "delta", path, Sum(Proj(a, u), Proj(b, u)))
    return out


def _add(out, seen, t, rule, path, new):
    res = ac_norm(replace_at(t, path, new))
    k = (rule, path, res.key)
    if k not in seen:
        seen.add(k)
        out.append(RedStep(rule, path, (), res, t))


# ---------------------------------------------------------------- the class graph


@dataclass
class _Node:
    cls: EquivClass
    succ: dict  # successor representative key -> (set of rules, witness RedStep)


class ReductionGraph:
    """Reachable ⇝ graph over classes, built lazily and memoised."""

    def __init__(self, fuel: Optional[int] = None):
        self.fuel = config.DEFAULT_FUEL if fuel is None else fuel
        self.nodes: dict = {}
        self.expanded = 0

    def node(self, t: Term) -> _Node:
        cls = enumerate_class(t)
        n = self.nodes.get(cls.key)
        if n is not None:
            return n
        self.expanded += 1
        if self.expanded > self.fuel:
            raise FuelExhausted(f"more than {self.fuel} classes explored")
        succ: dict = {}
        for m in cls.members:
            for st in direct_step(m):
                target = enumerate_class(st.result)
                entry = succ.get(target.key)
                if entry is None:
                    succ[target.key] = ({st.rule}, st)
                else:
                    entry[0].add(st.rule)
        n = _Node(cls, dict(sorted(succ.items(), key=lambda kv: (len(kv[0]), kv[0]))))
        self.nodes[cls.key] = n
        return n

    def successors(self, t: Term) -> list:
        n = self.node(t)
        return [self._rep(k) for k in n.succ]

    def _rep(self, key: str) -> Term:
        return self.nodes[key].cls.representative if key in self.nodes else _rep_of(key)

    def explore(self, t: Term) -> str:
        """Build the whole reachable graph; detect cycles.  Returns the root key."""
        root = self.node(t)
        state = {root.cls.key: 1}
        stack = [(root, iter(list(root.succ.items())))]
        while stack:
            n, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                state[n.cls.key] = 2
                stack.pop()
                continue
            key, (_, st) = nxt
            s = state.get(key)
            if s == 1:
                raise ReductionCycle(st.result)
            if s == 2:
                continue
            child = self.node(st.result)
            state[key] = 1
            stack.append((child, iter(list(child.succ.items()))))
        return root.cls.key

    def _postorder(self, root: str) -> list:
        order, seen = [], set()
        stack = [(root, False)]
        while stack:
            k, done = stack.pop()
            if done:
                order.append(k)
                continue
            if k in seen:
                continue
            seen.add(k)
            stack.append((k, True))
            for c in self.nodes[k].succ:
                if c not in seen:
                    stack.append((c, False))
        return order

    def normal_forms(self, t: Term) -> list:
        root = self.explore(t)
        nfs = {}
        for k in self._postorder(root):
            if not self.nodes[k].succ:
                nfs[k] = self.nodes[k].cls.representative
        return [nfs[k] for k in sorted(nfs, key=lambda k: (len(k), k))]

    def longest(self, t: Term) -> int:
        root = self.explore(t)
        depth: dict = {}
        for k in self._postorder(root):
            depth[k] = max((1 + depth[c] for c in self.nodes[k].succ), default=0)
        return depth[root]

    def avoids(self, t: Term, rule: str) -> bool:
        """Whether some maximal path from t uses no step labelled only ``rule``."""
        root = self.explore(t)
        ok: dict = {}
        for k in self._postorder(root):
            succ = self.nodes[k].succ
            if not succ:
                ok[k] = True
            else:
                ok[k] = any(ok[c] for c, (rules, _) in succ.items() if rules - {rule})
        return ok[root]


def _rep_of(key: str) -> Term:
    from .term_equiv import _REGISTRY

    return _REGISTRY[(config.mode(), key)].representative


def _fuel(fuel: Optional[int]) -> int:
    return config.DEFAULT_FUEL if fuel is None else fuel


def red_modulo(t: Term) -> list:
    """Red(t): one representative per successor class, least key first."""
    return ReductionGraph(fuel=1).successors(t)


def is_normal(t: Term) -> bool:
    return not red_modulo(t)


def normalize_all(t: Term, fuel: Optional[int] = None) -> list:
    """Every normal form reachable by ⇝*, one representative per class."""
    return ReductionGraph(_fuel(fuel)).normal_forms(t)


def max_steps(t: Term, fuel: Optional[int] = None) -> int:
    """Length of the longest ⇝ path from t."""
    return ReductionGraph(_fuel(fuel)).longest(t)


def normalize_random(t: Term, seed: int = 0, fuel: Optional[int] = None) -> Trace:
    """One maximal ⇝ path, choosing uniformly among successor classes."""
    rng = random.Random(seed)
    g = ReductionGraph(_fuel(fuel))
    cur = ac_norm(t)
    start = cur
    steps = []
    while True:
        n = g.node(cur)
        if not n.succ:
            break
        keys = list(n.succ)
        key = keys[rng.randrange(len(keys))]
        _, st = n.succ[key]
        pre = tuple(n.cls.path(cur, st.source))
        steps.append(RedStep(st.rule, st.position, pre, st.result, st.source))
        cur = st.result
        if len(steps) > g.fuel:
            raise FuelExhausted(f"path longer than {g.fuel} steps")
    return Trace(start, steps, cur)


def clear_caches() -> None:
    _CTX_MEMO.clear()
