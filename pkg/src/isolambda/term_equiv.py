"""The symmetric relation ≡ and its equivalence classes.

Terms handled here are kept annotation-canonical (every annotation is the
canonical representative of its type), which realises rule (subst), and
α-normal.  Two readings of the rules are provided:

* the literal one (:func:`equiv_step`), which applies each rule to the
  immediate children of a node and includes (comm) and (asso);
* the AC one used for class enumeration in the default calculus.  There sums
  are flattened and sorted, so (comm) and (asso) hold silently, and each rule
  that looks at a sum considers every way of grouping its summands.

Both generate the same ≡* classes; the AC reading just has far fewer members.
In the deterministic subsystem sums are never reordered and only the literal
reading (without (comm) and (asso)) exists.

Rule (split) carries one extra side condition: neither summand may by itself
cover the projected type.  Without it the relation, together with (δ) and
(πₙ), admits the cycle r → π_A(r)+π_B(r) ≡ π_{A∧B}(r+r) → r.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import Iterator, Optional

from . import config
from .syntax import (
    App, Lam, Proj, Sum, Term, Var, alpha_norm, children, free_names, rename_free,
    replace_at, sum_of, summands, with_children,
)
from .type_canon import apply_type, arrow, canon_type, conj, proj_ok, proj_splits
from .typing import type_of

RULES = ("comm", "asso", "dist_ii", "dist_ie", "dist_ei", "dist_ee", "curry", "subst", "split")


class ClassTooLarge(Exception):
    """The configured member cap was exceeded while enumerating a class."""


@dataclass(frozen=True)
class EquivStep:
    rule: str
    direction: str
    position: tuple
    result: Term = field(compare=False)

    def reversed(self, source: Term) -> "EquivStep":
        return EquivStep(self.rule, "RL" if self.direction == "LR" else "LR", self.position, source)


# ---------------------------------------------------------------- normal forms

_AC_CACHE: dict = {}


def canon_term(t: Term) -> Term:
    """α-normal, annotation-canonical form."""
    return alpha_norm(t, canon_type)


def _sort_sums(t: Term) -> Term:
    if t.__dict__.get("_ss"):
        return t
    kids = [_sort_sums(c) for c in children(t)]
    t = with_children(t, kids)
    if isinstance(t, Sum):
        parts = summands(t)
        ordered = sorted(parts, key=lambda u: (len(u.key), u.key))
        if [p.key for p in parts] != [p.key for p in ordered] or not _right_nested(t):
            t = sum_of(ordered)
    object.__setattr__(t, "_ss", True)
    return t


def _right_nested(t: Term) -> bool:
    while isinstance(t, Sum):
        if isinstance(t.left, Sum):
            return False
        t = t.right
    return True


def ac_norm(t: Term) -> Term:
    """Class-member normal form: canon_term plus, by default, sorted sums."""
    k = (config.mode(), t.key)
    hit = _AC_CACHE.get(k)
    if hit is not None:
        return hit
    out = canon_term(t)
    if not config.is_deterministic():
        out = _sort_sums(out)
    if len(_AC_CACHE) > 500_000:
        _AC_CACHE.clear()
    _AC_CACHE[k] = out
    _AC_CACHE[(k[0], out.key)] = out
    return out


# ---------------------------------------------------------------- views on sums


def _groupings(x: Term, ac: bool, ordered: bool) -> list:
    """Ways to see x as a binary sum X + Y."""
    if not isinstance(x, Sum):
        return []
    if not ac:
        return [(x.left, x.right)]
    parts = summands(x)
    n = len(parts)
    out = []
    seen = set()
    for k in range(1, n):
        for idx in combinations(range(n), k):
            a = [parts[i] for i in idx]
            b = [parts[i] for i in range(n) if i not in idx]
            ka = tuple(p.key for p in a)
            kb = tuple(p.key for p in b)
            if (ka, kb) in seen:
                continue
            if not ordered and (kb, ka) in seen:
                continue
            seen.add((ka, kb))
            out.append((sum_of(a), sum_of(b)))
    return out


def _pairs(u: Term, ac: bool) -> list:
    """Ways to see the sum u as p + q + rest (rest possibly empty)."""
    if not isinstance(u, Sum):
        return []
    if not ac:
        return [(u.left, u.right, [])]
    parts = summands(u)
    out = []
    seen = set()
    for i, j in combinations(range(len(parts)), 2):
        p, q = parts[i], parts[j]
        if (p.key, q.key) in seen:
            continue
        seen.add((p.key, q.key))
        rest = [parts[k] for k in range(len(parts)) if k not in (i, j)]
        out.append((p, q, rest))
        if p.key != q.key:
            out.append((q, p, rest))
    return out


def _with_rest(new: Term, rest: list) -> Term:
    return sum_of([new] + rest) if rest else new


# ---------------------------------------------------------------- local rules


def _covers(p, tx, ty) -> bool:
    return proj_ok(p, tx) or proj_ok(p, ty)


def local_steps(u: Term, ac: bool) -> Iterator[tuple]:
    """(rule, direction, replacement) for every rule instance rooted at u."""
    literal_ac = not ac and not config.is_deterministic()
    if isinstance(u, Sum):
        if literal_ac:
            yield "comm", "LR", Sum(u.right, u.left)
            if isinstance(u.left, Sum):
                yield "asso", "LR", Sum(u.left.left, Sum(u.left.right, u.right))
            if isinstance(u.right, Sum):
                yield "asso", "RL", Sum(Sum(u.left, u.right.left), u.right.right)
        for p, q, rest in _pairs(u, ac):
            # dist_ii, right to left
            if isinstance(p, Lam) and isinstance(q, Lam) and p.ann == q.ann:
                qb = q.body
                if q.binder != p.binder:
                    if p.binder in free_names(q.body):
                        qb = None
                    else:
                        qb = rename_free(q.body, q.binder, p.binder)
                if qb is not None:
                    yield "dist_ii", "RL", _with_rest(Lam(p.binder, p.ann, Sum(p.body, qb)), rest)
            # dist_ie, right to left
            if isinstance(p, App) and isinstance(q, App) and p.arg == q.arg:
                yield "dist_ie", "RL", _with_rest(App(Sum(p.fun, q.fun), p.arg), rest)
            # split, right to left
            if isinstance(p, Proj) and isinstance(q, Proj):
                tx, ty = type_of(p.body), type_of(q.body)
                if tx is not None and ty is not None:
                    whole = conj(p.ann, q.ann)
                    if proj_ok(p.ann, tx) and proj_ok(q.ann, ty) and not _covers(whole, tx, ty):
                        yield "split", "RL", _with_rest(Proj(whole, Sum(p.body, q.body)), rest)
    elif isinstance(u, Lam):
        for x, y in _groupings(u.body, ac, ordered=False):
            yield "dist_ii", "LR", Sum(Lam(u.binder, u.ann, x), Lam(u.binder, u.ann, y))
        if isinstance(u.body, Proj):
            yield "dist_ei", "RL", Proj(arrow(canon_type(u.ann), u.body.ann), Lam(u.binder, u.ann, u.body.body))
    elif isinstance(u, App):
        for x, y in _groupings(u.fun, ac, ordered=False):
            yield "dist_ie", "LR", Sum(App(x, u.arg), App(y, u.arg))
        if isinstance(u.fun, Proj):
            ta = type_of(u.arg)
            tr = type_of(u.fun.body)
            if ta is not None and tr is not None:
                b = apply_type(u.fun.ann, ta)
                rest = apply_type(tr, ta)
                if b is not None and rest is not None and proj_ok(b, rest):
                    yield "dist_ee", "LR", Proj(b, App(u.fun.body, u.arg))
        if isinstance(u.fun, App):
            yield "curry", "LR", App(u.fun.fun, Sum(u.fun.arg, u.arg))
        for x, y in _groupings(u.arg, ac, ordered=True):
            yield "curry", "RL", App(App(u.fun, x), y)
    elif isinstance(u, Proj):
        body = u.body
        if isinstance(body, Lam):
            b = apply_type(u.ann, canon_type(body.ann))
            if b is not None:
                yield "dist_ei", "LR", Lam(body.binder, body.ann, Proj(b, body.body))
        if isinstance(body, App):
            ta = type_of(body.arg)
            tr = type_of(body.fun)
            if ta is not None and tr is not None:
                rest = apply_type(tr, ta)
                if rest is not None and proj_ok(u.ann, rest):
                    yield "dist_ee", "RL", App(Proj(arrow(ta, u.ann), body.fun), body.arg)
        for x, y in _groupings(body, ac, ordered=False):
            tx, ty = type_of(x), type_of(y)
            if tx is None or ty is None or _covers(u.ann, tx, ty):
                continue
            for p1, p2 in proj_splits(u.ann, tx, ty):
                yield "split", "LR", Sum(Proj(p1, x), Proj(p2, y))


def rule_positions(t: Term, ac: bool, path: tuple = (), parent_sum: bool = False) -> Iterator[tuple]:
    """Positions where rules are tried; inner nodes of a sum chain are skipped
    in the AC reading because the chain is handled as one n-ary node."""
    if not (ac and parent_sum and isinstance(t, Sum)):
        yield path, t
    for i, c in enumerate(children(t)):
        yield from rule_positions(c, ac, path + (i,), isinstance(t, Sum))


def _steps(t: Term, ac: bool) -> list:
    norm = ac_norm if ac else canon_term
    out = []
    seen = set()
    for path, u in rule_positions(t, ac):
        for rule, direction, new in local_steps(u, ac):
            res = norm(replace_at(t, path, new))
            if res.key == t.key:
                continue
            k = (rule, direction, path, res.key)
            if k in seen:
                continue
            seen.add(k)
            out.append(EquivStep(rule, direction, path, res))
    return out


def equiv_step(t: Term) -> list:
    """All one-step ≡ successors of t, literal rules, every position, both ways.

    The input is first put in α-normal, annotation-canonical form; (subst) is
    therefore implicit and never reported as a separate step.
    """
    return _steps(canon_term(t), ac=False)


def ac_steps(t: Term) -> list:
    """One-step successors in the reading used for class enumeration."""
    ac = not config.is_deterministic()
    return _steps(ac_norm(t), ac=ac)


# ---------------------------------------------------------------- classes


class EquivClass:
    """A materialised ≡* class.

    ``members`` are in class-member normal form (see :func:`ac_norm`);
    ``edges`` maps a member key to the steps leaving it.
    """

    def __init__(self, members: list, edges: dict):
        self.members = members
        self.edges = edges
        self.keys = {m.key: m for m in members}
        self.representative = min(members, key=lambda m: (len(m.key), m.key))

    def __len__(self):
        return len(self.members)

    def __contains__(self, t: Term) -> bool:
        return ac_norm(t).key in self.keys

    @property
    def key(self) -> str:
        return self.representative.key

    def sums(self) -> list:
        return [m for m in self.members if isinstance(m, Sum)]

    def path(self, src: Term, dst: Term) -> list:
        """Steps leading from src to dst inside the class (both members)."""
        a, b = ac_norm(src).key, ac_norm(dst).key
        if a == b:
            return []
        back: dict = {a: None}
        queue = deque([a])
        while queue:
            cur = queue.popleft()
            for step in self.edges[cur]:
                nk = step.result.key
                if nk in back:
                    continue
                back[nk] = (cur, step)
                if nk == b:
                    out = []
                    while back[nk] is not None:
                        prev, st = back[nk]
                        out.append(st)
                        nk = prev
                    return out[::-1]
                queue.append(nk)
        raise ValueError("terms are not in the same class")

    def expanded(self, limit: int = 10_000) -> list:
        """Members with every grouping and ordering of sums spelled out."""
        if config.is_deterministic():
            return list(self.members)
        out = {}
        for m in self.members:
            for v in _variants(m):
                out.setdefault(v.key, v)
                if len(out) >= limit:
                    return list(out.values())
        return list(out.values())


def _shapes(parts: list) -> Iterator[Term]:
    if len(parts) == 1:
        yield parts[0]
        return
    for k in range(1, len(parts)):
        for left in _shapes(parts[:k]):
            for right in _shapes(parts[k:]):
                yield Sum(left, right)


def _variants(t: Term) -> Iterator[Term]:
    if isinstance(t, Sum):
        parts = summands(t)
        seen = set()
        for perm in permutations(range(len(parts))):
            order = tuple(parts[i].key for i in perm)
            if order in seen:
                continue
            seen.add(order)
            for shape in _shapes([parts[i] for i in perm]):
                yield from _sub_variants(shape)
        return
    yield from _sub_variants(t)


def _sub_variants(t: Term) -> Iterator[Term]:
    kids = children(t)
    if not kids:
        yield t
        return
    if isinstance(t, Sum):
        for a in _sub_variants(t.left) if isinstance(t.left, Sum) else _variants(t.left):
            for b in _sub_variants(t.right) if isinstance(t.right, Sum) else _variants(t.right):
                yield Sum(a, b)
        return
    if len(kids) == 1:
        for a in _variants(kids[0]):
            yield with_children(t, [a])
        return
    for a in _variants(kids[0]):
        for b in _variants(kids[1]):
            yield with_children(t, [a, b])


_REGISTRY: dict = {}


def clear_caches() -> None:
    _REGISTRY.clear()
    _AC_CACHE.clear()


def enumerate_class(t: Term, cap: Optional[int] = None) -> EquivClass:
    """The ≡* class of t, by breadth-first closure of the one-step relation."""
    cap = cap or config.DEFAULT_CLASS_CAP
    start = ac_norm(t)
    mode = config.mode()
    hit = _REGISTRY.get((mode, start.key))
    if hit is not None:
        if len(hit) > cap:
            raise ClassTooLarge(f"class exceeds {cap} members")
        return hit
    members = [start]
    edges: dict = {}
    seen = {start.key}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        steps = ac_steps(cur)
        edges[cur.key] = steps
        for st in steps:
            if st.result.key not in seen:
                seen.add(st.result.key)
                members.append(st.result)
                queue.append(st.result)
                if len(members) > cap:
                    raise ClassTooLarge(f"class exceeds {cap} members")
    cls = EquivClass(members, edges)
    for m in members:
        _REGISTRY[(mode, m.key)] = cls
    return cls


def equiv_star(a: Term, b: Term) -> bool:
    return b in enumerate_class(a)


def is_sum_modulo(t: Term) -> Optional[tuple]:
    """A decomposition t ≡* t1 + t2, if the class of t has a sum member."""
    cls = enumerate_class(t)
    sums = cls.sums()
    if not sums:
        return None
    s = min(sums, key=lambda m: (len(m.key), m.key))
    return s.left, s.right


def is_hole(t: Term) -> bool:
    return isinstance(t, Var) and t.name.startswith("#h")
