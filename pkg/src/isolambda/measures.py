"""The measures S, P and M on terms.

S counts variables, λ's and π's.  P bounds how many sums a term can expose
through the equivalence rules.  M bounds the size of every equivalent term and
is invariant under the equivalence.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .syntax import App, Lam, Proj, Sum, Term, Var


def size_S(t: Term) -> int:
    if isinstance(t, Var):
        return 1
    if isinstance(t, (Lam, Proj)):
        return 1 + size_S(t.body)
    if isinstance(t, App):
        return size_S(t.fun) + size_S(t.arg)
    return size_S(t.left) + size_S(t.right)


@lru_cache(maxsize=100_000)
def potential_P(t: Term) -> int:
    if isinstance(t, Var):
        return 0
    if isinstance(t, (Lam, Proj)):
        return potential_P(t.body)
    if isinstance(t, App):
        return potential_P(t.fun)
    return 1 + potential_P(t.left) + potential_P(t.right)


@lru_cache(maxsize=100_000)
def measure_M(t: Term) -> int:
    if isinstance(t, Var):
        return 1
    if isinstance(t, (Lam, Proj)):
        return 1 + measure_M(t.body) + potential_P(t.body)
    if isinstance(t, App):
        return measure_M(t.fun) + measure_M(t.arg) + potential_P(t.fun) * measure_M(t.arg)
    return measure_M(t.left) + measure_M(t.right)


@dataclass(frozen=True)
class MeasureTriple:
    s: int
    p: int
    m: int


def measures(t: Term) -> MeasureTriple:
    return MeasureTriple(size_S(t), potential_P(t), measure_M(t))
