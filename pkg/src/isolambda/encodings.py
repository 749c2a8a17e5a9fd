"""Term builders for labelled pairs and lists, canon/cocanon and booleans.

Labels live in a reserved namespace: label i is the type ``#i -> #i``, whose
closed inhabitant ``\\y:#i. y`` is used to select a component.  The parser
never accepts ``#``, so labels cannot collide with user atoms.
"""
from __future__ import annotations

from typing import Optional

from .analysis import prove
from .syntax import App, Arrow, Atom, Lam, Proj, Sum, Term, Type, Var, free_names
from .type_canon import apply_type, canon_type, conj_list, leaves, qlex, split_cf
from .typing import infer


class EncodingError(ValueError):
    """A builder was given a term of the wrong shape or type."""


def label_type(i: int) -> Type:
    if i < 1:
        raise ValueError("labels start at 1")
    a = Atom(f"#{i}")
    return Arrow(a, a)


def label_witness(i: int) -> Term:
    a = Atom(f"#{i}")
    return Lam("y", a, Var("y", a))


def _fresh(base: str, *terms: Term) -> str:
    used = set()
    for t in terms:
        used |= free_names(t)
    name = base
    n = 0
    while name in used:
        n += 1
        name = f"{base}{n}"
    return name


def mk_list(items: list) -> Term:
    """λx^{L1}.t1 + ... + λx^{Ln}.tn."""
    if not items:
        raise EncodingError("a list needs at least one element")
    for t in items:
        infer(t)
    x = _fresh("l", *items)
    parts = [Lam(x, label_type(i + 1), t) for i, t in enumerate(items)]
    out = parts[-1]
    for p in reversed(parts[:-1]):
        out = Sum(p, out)
    return out


def mk_pair(r: Term, s: Term) -> Term:
    return mk_list([r, s])


def mk_nth(p: Term, i: int, closed: bool = True) -> Term:
    """Select component i: π_{Li⇒A}(p) applied to a label-i witness."""
    ty = infer(p).type
    lab = canon_type(label_type(i))
    part = [cf for cf in leaves(ty) if lab in split_cf(cf)[0]]
    if not part:
        raise EncodingError(f"term has no component labelled {i}")
    proj = conj_list(sorted(part, key=qlex))
    witness = label_witness(i) if closed else Var(f"y{i}", label_type(i))
    return App(Proj(proj, p), witness)


def mk_fst(p: Term, closed: bool = True) -> Term:
    return mk_nth(p, 1, closed)


def mk_snd(p: Term, closed: bool = True) -> Term:
    return mk_nth(p, 2, closed)


def canon(t: Term, a: Type) -> Term:
    """[t]^A = λz^A.t with z fresh."""
    return Lam(_fresh("z", t), a, t)


def dummy(d: Type, avoid: Term) -> Term:
    """A term of type d: a closed one when easy to find, otherwise λx^A.y^B
    (or y^d) with y free."""
    found = prove(canon_type(d), [])
    if found is not None:
        return found
    y = _fresh("y", avoid)
    if isinstance(d, Arrow):
        return Lam("x", d.domain, Var(y, d.codomain))
    return Var(y, d)


def cocanon(t: Term, arrow: Type) -> Term:
    """{t}: apply t to a dummy argument.

    ``arrow`` is either t's own type A⇒B (the dummy then has type A) or the
    type of the dummy itself, as in {x}^{A⇒A} with x:(A⇒A)⇒B.
    """
    ty = infer(t).type
    if isinstance(arrow, Arrow) and canon_type(arrow) == ty:
        d = arrow.domain
    elif apply_type(ty, canon_type(arrow)) is not None:
        d = arrow
    else:
        raise EncodingError("cocanon needs a function whose argument matches the given type")
    return App(t, dummy(d, t))


def _aa(a: Type) -> Type:
    return Arrow(a, a)


def mk_bool(v: bool, a: Optional[Type] = None, b: Optional[Type] = None) -> Term:
    """TT = λx^B.λy^{(A⇒A)⇒B}.x and FF = λx^{(A⇒A)⇒B}.λy^B.{x}^{A⇒A}."""
    a = a or Atom("A")
    b = b or Atom("B")
    branch = Arrow(_aa(a), b)
    if v:
        return Lam("x", b, Lam("y", branch, Var("x", b)))
    return Lam("x", branch, Lam("y", b, cocanon(Var("x", branch), _aa(a))))


def mk_ite(c: Term, r: Term, s: Term, a: Optional[Type] = None) -> Term:
    """If c then r else s := c r [s]^{A⇒A}."""
    a = a or Atom("A")
    tr, ts = infer(r).type, infer(s).type
    if tr != ts:
        raise EncodingError("both branches must have the same type")
    return App(App(c, r), canon(s, _aa(a)))


def naive_bool(v: bool, a: Optional[Type] = None) -> Term:
    """λx^A.λy^A.x (or .y): the booleans that do not work."""
    a = a or Atom("A")
    return Lam("x", a, Lam("y", a, Var("x" if v else "y", a)))
