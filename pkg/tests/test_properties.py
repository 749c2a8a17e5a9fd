"""Property-based checks with hypothesis."""
from hypothesis import given, settings
from hypothesis import strategies as st

from isolambda import config
from isolambda.analysis import GenConfig, gen_typed_term
from isolambda.measures import measure_M, potential_P
from isolambda.parser import parse_term, parse_type
from isolambda.printer import show_term, show_type
from isolambda.reduction import red_modulo
from isolambda.syntax import Arrow, Atom, Conj, alpha_equiv, alpha_norm
from isolambda.term_equiv import ac_norm, canon_term, enumerate_class, equiv_step
from isolambda.type_canon import canon_type, conjunct_multiset, leaves, type_equiv, type_size
from isolambda.typing import type_of

ATOMS = st.sampled_from([Atom("A"), Atom("B"), Atom("C")])

types = st.recursive(
    ATOMS,
    lambda inner: st.one_of(st.builds(Arrow, inner, inner), st.builds(Conj, inner, inner)),
    max_leaves=6,
)


def iso_step(a, choice):
    """Rewrite ``a`` at the root with one of the four type isomorphisms."""
    if isinstance(a, Conj):
        if choice == 0:
            return Conj(a.right, a.left)
        if choice == 1 and isinstance(a.left, Conj):
            return Conj(a.left.left, Conj(a.left.right, a.right))
    if isinstance(a, Arrow):
        if choice == 2 and isinstance(a.codomain, Conj):
            return Conj(Arrow(a.domain, a.codomain.left), Arrow(a.domain, a.codomain.right))
        if choice == 3 and isinstance(a.domain, Conj):
            return Arrow(a.domain.left, Arrow(a.domain.right, a.codomain))
    return a


def iso_deep(a, choices):
    if not choices:
        return a
    c, rest = choices[0], choices[1:]
    if isinstance(a, Arrow):
        a = Arrow(iso_deep(a.domain, rest), iso_deep(a.codomain, rest))
    elif isinstance(a, Conj):
        a = Conj(iso_deep(a.left, rest), iso_deep(a.right, rest))
    return iso_step(a, c)


@given(types)
def test_canonical_form_is_idempotent(a):
    c = canon_type(a)
    assert canon_type(c) == c
    assert type_equiv(a, c)


@given(types, st.lists(st.integers(0, 3), max_size=6))
def test_isomorphisms_preserve_the_canonical_form(a, choices):
    assert type_equiv(a, iso_deep(a, choices))


@given(types)
def test_canonical_conjuncts_are_conjunction_free(a):
    for cf in leaves(canon_type(a)):
        assert "&" not in cf.key
    assert sum(conjunct_multiset(a).values()) == len(leaves(canon_type(a)))
    assert type_size(a) >= 1


@given(types)
def test_type_printing_round_trips(a):
    assert parse_type(show_type(a)) == a


@given(types, types)
def test_deterministic_equivalence_implies_default_equivalence(a, b):
    with config.deterministic():
        det = type_equiv(a, b)
    if det:
        assert type_equiv(a, b)


seeds = st.integers(0, 10**6)


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_equivalence_steps_preserve_type_and_measures(seed):
    t = gen_typed_term(GenConfig(seed=seed))
    ty, m, p = type_of(t), measure_M(t), potential_P(t)
    for step in equiv_step(t):
        assert type_of(step.result) == ty
        assert measure_M(step.result) == m
        assert potential_P(step.result) == p


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_reduction_preserves_type(seed):
    t = gen_typed_term(GenConfig(seed=seed))
    for s in red_modulo(t):
        assert type_of(s) == type_of(t)


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_term_printing_round_trips(seed):
    t = gen_typed_term(GenConfig(seed=seed))
    again = parse_term(show_term(t))
    assert alpha_equiv(again, t)


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_normalisations_are_idempotent(seed):
    t = gen_typed_term(GenConfig(seed=seed))
    assert alpha_norm(alpha_norm(t)).key == alpha_norm(t).key
    assert canon_term(canon_term(t)).key == canon_term(t).key
    assert ac_norm(ac_norm(t)).key == ac_norm(t).key


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_every_class_member_has_the_same_class(seed):
    t = gen_typed_term(GenConfig(seed=seed))
    cls = enumerate_class(t)
    m = measure_M(t)
    for member in cls.members:
        assert enumerate_class(member) is cls
        assert measure_M(member) == m
