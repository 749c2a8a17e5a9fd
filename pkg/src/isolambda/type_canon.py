"""Canonical forms of types and the decision procedure for type equivalence.

A conjunction-free type is read as a list of arguments followed by an atom
head: ``S1 -> ... -> Sk -> t``.  In the default calculus a canonical type is a
multiset of conjunction-free types; the ordered canonical form sorts every
argument list and the conjunct list by the quasi-lexicographic order on keys
(length first, then bytes) and re-associates conjunctions to the right.

In the deterministic subsystem conjunction is neither commutative nor
associative, so the canonical form keeps the conjunction tree and the argument
order and only applies distribution and currying.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from . import config
from .syntax import Arrow, Atom, Conj, Type


def qlex(a: Type):
    """Sort key for the quasi-lexicographic order."""
    return (len(a.key), a.key)


@dataclass(frozen=True)
class CanonicalType:
    """Non-empty list of conjunction-free conjuncts."""

    conjuncts: tuple

    def to_type(self) -> Type:
        return conj_list(self.conjuncts)

    def __len__(self):
        return len(self.conjuncts)


# ---------------------------------------------------------------- building blocks


def conj_list(parts) -> Type:
    """Right-associated conjunction of a non-empty sequence."""
    parts = list(parts)
    out = parts[-1]
    for p in reversed(parts[:-1]):
        out = Conj(p, out)
    return out


def arrows(args, head: Type) -> Type:
    out = head
    for a in reversed(list(args)):
        out = Arrow(a, out)
    return out


def split_cf(cf: Type) -> tuple:
    """(arguments, head atom) of a conjunction-free type."""
    args = []
    while isinstance(cf, Arrow):
        args.append(cf.domain)
        cf = cf.codomain
    return args, cf


def leaves(a: Type) -> list:
    """Conjuncts of a type read as a conjunction tree."""
    if isinstance(a, Conj):
        return leaves(a.left) + leaves(a.right)
    return [a]


def is_conj_free(a: Type) -> bool:
    if isinstance(a, Conj):
        return False
    if isinstance(a, Arrow):
        return is_conj_free(a.domain) and is_conj_free(a.codomain)
    return True


# ---------------------------------------------------------------- ⟨A⟩ and ⟨A⟩ₒ


def canonicalize(a: Type) -> CanonicalType:
    """⟨A⟩ without any reordering: conjuncts in tree order, arguments prefixed."""
    return CanonicalType(tuple(_canon_plain(a)))


def _canon_plain(a: Type) -> list:
    if isinstance(a, Atom):
        return [a]
    if isinstance(a, Conj):
        return _canon_plain(a.left) + _canon_plain(a.right)
    pre = _canon_plain(a.domain)
    out = []
    for r in _canon_plain(a.codomain):
        args, head = split_cf(r)
        out.append(arrows(pre + args, head))
    return out


_ORDERED: dict = {}


def _ordered_conjuncts(a: Type) -> tuple:
    hit = _ORDERED.get(a.key)
    if hit is not None:
        return hit
    if isinstance(a, Atom):
        res = (a,)
    elif isinstance(a, Conj):
        res = tuple(sorted(_ordered_conjuncts(a.left) + _ordered_conjuncts(a.right), key=qlex))
    else:
        pre = list(_ordered_conjuncts(a.domain))
        out = []
        for r in _ordered_conjuncts(a.codomain):
            args, head = split_cf(r)
            # sorting the whole argument list (not only the new prefix) is what
            # makes A -> B -> C and B -> A -> C coincide
            out.append(arrows(sorted(pre + args, key=qlex), head))
        res = tuple(sorted(out, key=qlex))
    _ORDERED[a.key] = res
    return res


_DET: dict = {}


def _det_canon(a: Type) -> Type:
    """Canonical form in the deterministic subsystem (tree kept, order kept)."""
    hit = _DET.get(a.key)
    if hit is not None:
        return hit
    if isinstance(a, Atom):
        res = a
    elif isinstance(a, Conj):
        res = Conj(_det_canon(a.left), _det_canon(a.right))
    else:
        pre = leaves(_det_canon(a.domain))
        res = _map_leaves(_det_canon(a.codomain), lambda r: arrows(pre + split_cf(r)[0], split_cf(r)[1]))
    _DET[a.key] = res
    return res


def _map_leaves(a: Type, f) -> Type:
    if isinstance(a, Conj):
        return Conj(_map_leaves(a.left, f), _map_leaves(a.right, f))
    return f(a)


def order_canonical(a: Type) -> CanonicalType:
    """⟨A⟩ₒ in the active calculus."""
    if config.is_deterministic():
        return CanonicalType(tuple(leaves(_det_canon(a))))
    return CanonicalType(_ordered_conjuncts(a))


def canon_type(a: Type) -> Type:
    """The representative type used for every stored annotation."""
    if config.is_deterministic():
        return _det_canon(a)
    return conj_list(_ordered_conjuncts(a))


def type_equiv(a: Type, b: Type) -> bool:
    return canon_type(a) == canon_type(b)


def conjunct_multiset(a: Type) -> Counter:
    """Multiset of ordered-canonical conjuncts."""
    return Counter(order_canonical(a).conjuncts)


def clear_caches() -> None:
    _ORDERED.clear()
    _DET.clear()


# ---------------------------------------------------------------- operations on canonical types
#
# Everything below takes and returns types already in canonical form.


def conj(a: Type, b: Type) -> Type:
    """Canonical form of a ∧ b."""
    if config.is_deterministic():
        return Conj(a, b)
    return conj_list(sorted(leaves(a) + leaves(b), key=qlex))


def conj_many(parts) -> Type:
    parts = list(parts)
    if config.is_deterministic():
        return conj_list(parts)
    return conj_list(sorted((l for p in parts for l in leaves(p)), key=qlex))


def arrow(a: Type, b: Type) -> Type:
    """Canonical form of a ⇒ b."""
    return canon_type(Arrow(a, b))


def _sub_multiset(small: list, big: list) -> Optional[list]:
    """big minus small when small ⊆ big (as multisets), else None."""
    rest = list(big)
    for x in small:
        for i, y in enumerate(rest):
            if y == x:
                del rest[i]
                break
        else:
            return None
    return rest


def apply_type(f: Type, a: Type) -> Optional[Type]:
    """Result type of applying something of type f to something of type a.

    Every conjunct of f has to take a's conjuncts as arguments; they are
    consumed and the rest is the result.  None when the application is
    ill-typed.
    """
    need = leaves(a)
    if config.is_deterministic():
        k = len(need)

        def cut(cf):
            args, head = split_cf(cf)
            if args[:k] != need:
                raise _NoFit
            return arrows(args[k:], head)

        try:
            return _map_leaves(f, cut)
        except _NoFit:
            return None
    out = []
    for cf in leaves(f):
        args, head = split_cf(cf)
        rest = _sub_multiset(need, args)
        if rest is None:
            return None
        out.append(arrows(rest, head))
    return conj_list(sorted(out, key=qlex))


class _NoFit(Exception):
    pass


def proj_ok(p: Type, t: Type) -> bool:
    """Whether π_p applies to a term of type t."""
    if p == t:
        return True
    if config.is_deterministic():
        return isinstance(t, Conj) and (t.left == p or t.right == p)
    return _sub_multiset(leaves(p), leaves(t)) is not None


def proj_strict(p: Type, t: Type) -> bool:
    return p != t and proj_ok(p, t)


def minus(t: Type, p: Type) -> Optional[Type]:
    """t with the conjuncts of p removed (None when nothing is left)."""
    rest = _sub_multiset(leaves(p), leaves(t))
    if not rest:
        return None
    return conj_list(rest)


def _distinct_subsets(items: list):
    """Distinct sub-multisets of a sorted list, as (chosen, rest) index splits."""
    seen = set()
    n = len(items)
    for k in range(1, n):
        for idx in combinations(range(n), k):
            chosen = tuple(items[i].key for i in idx)
            if chosen in seen:
                continue
            seen.add(chosen)
            yield [items[i] for i in idx], [items[i] for i in range(n) if i not in idx]


def bipartitions(t: Type) -> list:
    """Ways to read t as A ∧ B with A, B non-empty (the δ split points).

    In the default calculus every split of the conjunct multiset is produced
    once up to swapping the halves.
    """
    if config.is_deterministic():
        return [(t.left, t.right)] if isinstance(t, Conj) else []
    out = []
    seen = set()
    for a, b in _distinct_subsets(leaves(t)):
        ka, kb = conj_list(a).key, conj_list(b).key
        if (kb, ka) in seen:
            continue
        seen.add((ka, kb))
        out.append((conj_list(a), conj_list(b)))
    return out


def proj_splits(p: Type, t1: Type, t2: Type) -> list:
    """Ways to read p as P1 ∧ P2 with π_P1 applicable at t1 and π_P2 at t2."""
    if config.is_deterministic():
        if isinstance(p, Conj) and proj_ok(p.left, t1) and proj_ok(p.right, t2):
            return [(p.left, p.right)]
        return []
    out = []
    for a, b in _distinct_subsets(leaves(p)):
        pa, pb = conj_list(a), conj_list(b)
        if proj_ok(pa, t1) and proj_ok(pb, t2):
            out.append((pa, pb))
    return out


def type_size(a: Type) -> int:
    if isinstance(a, Atom):
        return 1
    if isinstance(a, Arrow):
        return 1 + type_size(a.domain) + type_size(a.codomain)
    return 1 + type_size(a.left) + type_size(a.right)
