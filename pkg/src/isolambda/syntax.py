"""Abstract syntax of types and terms.

Types and terms are immutable.  Every node carries a serialisation string
``key`` that is computed once at construction; equality and hashing go through
it, so structurally equal trees are interchangeable and cheap to compare.

Bound variables are given level names (``_0``, ``_1``, ...) by :func:`alpha_norm`.
Two terms are α-equivalent exactly when their α-normal forms have the same key.
User programs cannot spell identifiers beginning with ``_`` or ``#``, so level
names and reserved names never clash with source names.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterator, Optional, Union


from . import config


# ---------------------------------------------------------------- types


@dataclass(frozen=True, eq=False)
class Atom:
    name: str
    key: str = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "key", self.name)

    def __eq__(self, other):
        return isinstance(other, (Atom, Arrow, Conj)) and self.key == other.key

    def __hash__(self):
        return hash(self.key)


@dataclass(frozen=True, eq=False)
class Arrow:
    domain: "Type"
    codomain: "Type"
    key: str = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "key", f"({self.domain.key}>{self.codomain.key})")

    def __eq__(self, other):
        return isinstance(other, (Atom, Arrow, Conj)) and self.key == other.key

    def __hash__(self):
        return hash(self.key)


@dataclass(frozen=True, eq=False)
class Conj:
    left: "Type"
    right: "Type"
    key: str = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "key", f"[{self.left.key}&{self.right.key}]")

    def __eq__(self, other):
        return isinstance(other, (Atom, Arrow, Conj)) and self.key == other.key

    def __hash__(self):
        return hash(self.key)


Type = Union[Atom, Arrow, Conj]


def type_atoms(a: Type) -> Iterator[str]:
    """Atom names of ``a`` in left-to-right order, with repetitions."""
    if isinstance(a, Atom):
        yield a.name
    elif isinstance(a, Arrow):
        yield from type_atoms(a.domain)
        yield from type_atoms(a.codomain)
    else:
        yield from type_atoms(a.left)
        yield from type_atoms(a.right)


# ---------------------------------------------------------------- terms


class _TermBase:
    """Shared behaviour: key-based equality, cached free variables."""

    __slots__ = ()

    def __eq__(self, other):
        return isinstance(other, _TermBase) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    @property
    def fv(self) -> frozenset:
        cached = self.__dict__.get("_fv")
        if cached is None:
            cached = frozenset(_free_vars(self))
            object.__setattr__(self, "_fv", cached)
        return cached


@dataclass(frozen=True, eq=False)
class Var(_TermBase):
    name: str
    ann: Type
    key: str = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "key", f"{self.name}^{self.ann.key}")

    __eq__ = _TermBase.__eq__
    __hash__ = _TermBase.__hash__


@dataclass(frozen=True, eq=False)
class Lam(_TermBase):
    binder: str
    ann: Type
    body: "Term"
    key: str = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "key", f"L{self.binder}^{self.ann.key}.({self.body.key})")

    __eq__ = _TermBase.__eq__
    __hash__ = _TermBase.__hash__


@dataclass(frozen=True, eq=False)
class App(_TermBase):
    fun: "Term"
    arg: "Term"
    key: str = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "key", f"@({self.fun.key},{self.arg.key})")

    __eq__ = _TermBase.__eq__
    __hash__ = _TermBase.__hash__


@dataclass(frozen=True, eq=False)
class Sum(_TermBase):
    left: "Term"
    right: "Term"
    key: str = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "key", f"+({self.left.key},{self.right.key})")

    __eq__ = _TermBase.__eq__
    __hash__ = _TermBase.__hash__


@dataclass(frozen=True, eq=False)
class Proj(_TermBase):
    ann: Type
    body: "Term"
    key: str = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "key", f"p{self.ann.key}({self.body.key})")

    __eq__ = _TermBase.__eq__
    __hash__ = _TermBase.__hash__


Term = Union[Var, Lam, App, Sum, Proj]
Path = tuple  # of child indices

HOLE = "#h"


def children(t: Term) -> tuple:
    if isinstance(t, Var):
        return ()
    if isinstance(t, (Lam, Proj)):
        return (t.body,)
    if isinstance(t, App):
        return (t.fun, t.arg)
    return (t.left, t.right)


def with_children(t: Term, kids) -> Term:
    """Rebuild ``t`` with new children, reusing ``t`` when nothing changed."""
    old = children(t)
    if all(a is b for a, b in zip(old, kids)):
        return t
    if isinstance(t, Lam):
        return Lam(t.binder, t.ann, kids[0])
    if isinstance(t, Proj):
        return Proj(t.ann, kids[0])
    if isinstance(t, App):
        return App(kids[0], kids[1])
    return Sum(kids[0], kids[1])


def subterm_at(t: Term, path: Path) -> Term:
    for i in path:
        t = children(t)[i]
    return t


def replace_at(t: Term, path: Path, new: Term) -> Term:
    if not path:
        return new
    kids = list(children(t))
    kids[path[0]] = replace_at(kids[path[0]], path[1:], new)
    return with_children(t, kids)


def positions(t: Term, path: Path = ()) -> Iterator[tuple]:
    """All (path, subterm) pairs, pre-order."""
    yield path, t
    for i, c in enumerate(children(t)):
        yield from positions(c, path + (i,))


def show_path(path: Path) -> str:
    return ".".join(map(str, path)) if path else "ε"


def size(t: Term) -> int:
    return 1 + sum(size(c) for c in children(t))


# ---------------------------------------------------------------- variables


def _free_vars(t: Term) -> set:
    if isinstance(t, Var):
        return {(t.name, t.ann)}
    if isinstance(t, Lam):
        return {v for v in t.body.fv if v[0] != t.binder}
    out = set()
    for c in children(t):
        out |= c.fv
    return out


def free_vars(t: Term) -> set:
    """Free (name, annotation) pairs."""
    return set(t.fv)


def free_names(t: Term) -> set:
    return {n for n, _ in t.fv}


def all_vars(t: Term) -> set:
    """vars(t): free and bound (name, annotation) pairs, binders included."""
    out = set()

    def walk(u):
        if isinstance(u, Var):
            out.add((u.name, u.ann))
        elif isinstance(u, Lam):
            out.add((u.binder, u.ann))
        for c in children(u):
            walk(c)

    walk(t)
    return out


def is_functional(vs) -> bool:
    """No name carries two non-equivalent annotations."""
    from .type_canon import type_equiv

    seen: dict = {}
    for name, ann in vs:
        prev = seen.get(name)
        if prev is None:
            seen[name] = ann
        elif prev != ann and not type_equiv(prev, ann):
            return False
    return True


def fresh_name(base: str, avoid) -> str:
    name = base + "'"
    while name in avoid:
        name += "'"
    return name


def subst_term(r: Term, s: Term, x: str, ann: Optional[Type] = None) -> Term:
    """Capture-avoiding r[s/x].

    ``ann`` is accepted for symmetry with the x^A notation; occurrences are
    matched by name since a well-typed term gives all of them equivalent
    annotations.
    """
    s_free = free_names(s)

    def go(u: Term) -> Term:
        if isinstance(u, Var):
            return s if u.name == x else u
        if x not in free_names(u):
            return u
        if isinstance(u, Lam):
            if u.binder == x:
                return u
            if u.binder in s_free:
                new = fresh_name(u.binder, s_free | free_names(u.body) | {x})
                body = rename_free(u.body, u.binder, new)
                return Lam(new, u.ann, go(body))
            return Lam(u.binder, u.ann, go(u.body))
        return with_children(u, [go(c) for c in children(u)])

    return go(r)


def rename_free(t: Term, old: str, new: str) -> Term:
    """Rename free occurrences of ``old``; ``new`` must not be captured."""

    def go(u):
        if isinstance(u, Var):
            return Var(new, u.ann) if u.name == old else u
        if isinstance(u, Lam) and u.binder == old:
            return u
        if old not in free_names(u):
            return u
        return with_children(u, [go(c) for c in children(u)])

    return go(t)


def map_types(t: Term, f: Callable[[Type], Type]) -> Term:
    """Apply ``f`` to every annotation."""

    def go(u):
        if isinstance(u, Var):
            a = f(u.ann)
            return u if a == u.ann else Var(u.name, a)
        if isinstance(u, Lam):
            a = f(u.ann)
            b = go(u.body)
            return u if (a == u.ann and b is u.body) else Lam(u.binder, a, b)
        if isinstance(u, Proj):
            a = f(u.ann)
            b = go(u.body)
            return u if (a == u.ann and b is u.body) else Proj(a, b)
        return with_children(u, [go(c) for c in children(u)])

    return go(t)


def replace_type(t: Type, a: Type, b: Type) -> Type:
    """Syntactic t[a/b] on types: every subtree equal to b becomes a."""
    if t == b:
        return a
    if isinstance(t, Arrow):
        return Arrow(replace_type(t.domain, a, b), replace_type(t.codomain, a, b))
    if isinstance(t, Conj):
        return Conj(replace_type(t.left, a, b), replace_type(t.right, a, b))
    return t


def subst_type(r: Term, a: Type, b: Type) -> Term:
    """r[a/b]: replace every occurrence of type b inside annotations by a."""
    return map_types(r, lambda t: replace_type(t, a, b))


# ---------------------------------------------------------------- α-normal form


def _level(name: str) -> int:
    if name.startswith("_") and name[1:].isdigit():
        return int(name[1:])
    return -1


def alpha_norm(t: Term, canon: Optional[Callable[[Type], Type]] = None) -> Term:
    """Rename binders by depth (``_base``, ``_base+1``, ...).

    ``base`` exceeds every level name free in ``t`` so no free variable is
    captured.  When ``canon`` is given every annotation is mapped through it.
    Returns ``t`` itself when nothing changes.
    """
    base = 1 + max((_level(n) for n, _ in t.fv), default=-1)
    ann = canon or (lambda a: a)

    tagged = canon is not None
    mode = config.mode()

    def go(u, depth, env):
        # a subterm already normalised at this depth is left alone
        if tagged and u.__dict__.get("_an") == (mode, depth) and all(env.get(n, n) == n for n, _ in u.fv):
            return u
        out = _go(u, depth, env)
        if tagged:
            object.__setattr__(out, "_an", (mode, depth))
        return out

    def _go(u, depth, env):
        if isinstance(u, Var):
            name = env.get(u.name, u.name)
            a = ann(u.ann)
            if name == u.name and a == u.ann:
                return u
            return Var(name, a)
        if isinstance(u, Lam):
            name = f"_{depth}"
            inner = dict(env)
            inner[u.binder] = name
            body = go(u.body, depth + 1, inner)
            a = ann(u.ann)
            if name == u.binder and body is u.body and a == u.ann:
                return u
            return Lam(name, a, body)
        if isinstance(u, Proj):
            body = go(u.body, depth, env)
            a = ann(u.ann)
            if body is u.body and a == u.ann:
                return u
            return Proj(a, body)
        return with_children(u, [go(c, depth, env) for c in children(u)])

    return go(t, base, {})


def alpha_equiv(a: Term, b: Term) -> bool:
    return alpha_norm(a).key == alpha_norm(b).key


# ---------------------------------------------------------------- sums


def summands(t: Term) -> list:
    """Flatten a tree of sums into its leaves (non-sum subterms)."""
    if isinstance(t, Sum):
        return summands(t.left) + summands(t.right)
    return [t]


def sum_of(parts) -> Term:
    """Right-nested sum of a non-empty sequence."""
    parts = list(parts)
    out = parts[-1]
    for p in reversed(parts[:-1]):
        out = Sum(p, out)
    return out
