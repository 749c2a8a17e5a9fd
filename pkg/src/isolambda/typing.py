"""Type assignment modulo type equivalence.

Types are computed bottom-up in canonical form, so the (≡) rule never has to
be searched for: two derivable types are equivalent exactly when their
canonical forms coincide.

* variables get their annotation;
* λx^A.r needs every free occurrence of x in r to be annotated with a type
  equivalent to A;
* r s needs each conjunct of r's type to take s's conjuncts as arguments;
* r + s gets the conjunction;
* π_A(r) needs A's conjuncts to be a sub-multiset of r's.

The functionality side condition is checked on free variables only, which
keeps typing invariant under renaming of bound variables.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from . import config
from .syntax import App, Lam, Proj, Sum, Term, Type, Var, children, show_path
from .type_canon import apply_type, arrow, canon_type, conj, leaves, minus, order_canonical, proj_ok, split_cf

NON_FUNCTIONAL = "NonFunctionalVars"
ARROW_EXPECTED = "ArrowExpected"
ARG_MISMATCH = "ArgMismatch"
PROJ_NOT_AVAILABLE = "ProjNotAvailable"


class TypeCheckError(Exception):
    def __init__(self, kind: str, path: tuple, detail: str):
        super().__init__(f"{kind} at {show_path(path)}: {detail}")
        self.kind = kind
        self.path = path
        self.detail = detail


@dataclass(frozen=True)
class TypingResult:
    type: Type
    canonical: object = field(compare=False)


_CACHE: dict = {}
_CACHE_LIMIT = 400_000


def clear_cache() -> None:
    _CACHE.clear()


def _functional(fv) -> bool:
    seen: dict = {}
    for name, ann in fv:
        c = canon_type(ann)
        prev = seen.setdefault(name, c)
        if prev != c:
            return False
    return True


def type_of(t: Term) -> Optional[Type]:
    """Canonical type of t, or None when t is not typable."""
    k = (config.mode(), t.key)
    if k in _CACHE:
        return _CACHE[k]
    res = _compute(t)
    if len(_CACHE) > _CACHE_LIMIT:
        _CACHE.clear()
    _CACHE[k] = res
    return res


def _compute(t: Term) -> Optional[Type]:
    if isinstance(t, Var):
        return canon_type(t.ann)
    if isinstance(t, Lam):
        body = type_of(t.body)
        if body is None:
            return None
        a = canon_type(t.ann)
        for name, ann in t.body.fv:
            if name == t.binder and canon_type(ann) != a:
                return None
        return arrow(a, body)
    if isinstance(t, Proj):
        body = type_of(t.body)
        p = canon_type(t.ann)
        if body is None or not proj_ok(p, body):
            return None
        return p
    left, right = children(t)
    tl = type_of(left)
    if tl is None:
        return None
    tr = type_of(right)
    if tr is None or not _functional(t.fv):
        return None
    if isinstance(t, Sum):
        return conj(tl, tr)
    return apply_type(tl, tr)


def _explain(t: Term, path: tuple) -> TypeCheckError:
    """Locate the innermost failing node of an untypable term."""
    from .printer import show_type

    for i, c in enumerate(children(t)):
        if type_of(c) is None:
            return _explain(c, path + (i,))
    if isinstance(t, Lam):
        a = canon_type(t.ann)
        bad = [ann for name, ann in t.body.fv if name == t.binder and canon_type(ann) != a]
        return TypeCheckError(
            NON_FUNCTIONAL, path,
            f"binder {t.binder}:{show_type(t.ann)} but an occurrence is annotated {show_type(bad[0])}",
        )
    if isinstance(t, Proj):
        return TypeCheckError(
            PROJ_NOT_AVAILABLE, path,
            f"cannot project {show_type(canon_type(t.ann))} out of {show_type(type_of(t.body))}",
        )
    if not _functional(t.fv):
        names = sorted({n for n, _ in t.fv})
        clash = [n for n in names if len({canon_type(a) for m, a in t.fv if m == n}) > 1]
        return TypeCheckError(NON_FUNCTIONAL, path, f"variable {clash[0]} has two non-equivalent annotations")
    f, a = type_of(t.fun), type_of(t.arg)
    if all(not split_cf(cf)[0] for cf in leaves(f)):
        return TypeCheckError(ARROW_EXPECTED, path + (0,), f"{show_type(f)} is not a function type")
    return TypeCheckError(ARG_MISMATCH, path, f"function of type {show_type(f)} cannot take an argument of type {show_type(a)}")


def infer(t: Term) -> TypingResult:
    """The type of t, or TypeCheckError locating the failure."""
    ty = type_of(t)
    if ty is None:
        raise _explain(t, ())
    return TypingResult(ty, order_canonical(ty))


def typable(t: Term) -> bool:
    return type_of(t) is not None


def check(t: Term, a: Type) -> bool:
    """Whether t has type a (modulo ≡); raises when t is not typable at all."""
    return infer(t).type == canon_type(a)


@dataclass(frozen=True)
class Inversion:
    """Generation-lemma reading of a typable term's head constructor."""

    rule: str
    type: Type
    parts: dict


def invert(t: Term) -> Inversion:
    ty = infer(t).type
    if isinstance(t, Var):
        return Inversion("ax", ty, {"annotation": canon_type(t.ann)})
    if isinstance(t, Lam):
        return Inversion("=>i", ty, {"domain": canon_type(t.ann), "codomain": type_of(t.body)})
    if isinstance(t, App):
        return Inversion("=>e", ty, {"function": type_of(t.fun), "argument": type_of(t.arg)})
    if isinstance(t, Sum):
        return Inversion("/\\i", ty, {"left": type_of(t.left), "right": type_of(t.right)})
    body = type_of(t.body)
    rest = minus(body, ty) if body != ty else None
    return Inversion("/\\e1" if rest is None else "/\\en", ty, {"body": body, "rest": rest})
