"""The measures S, P and M."""
import pytest

from isolambda.measures import measure_M, measures, potential_P, size_S
from isolambda.parser import parse_term
from isolambda.term_equiv import equiv_step


@pytest.mark.parametrize("src, s, p, m", [
    ("r:A", 1, 0, 1),
    ("r:A + s:B", 2, 1, 2),
    (r"\x:A. x + x", 3, 1, 4),
    (r"(\x:A. x) + (\x:A. x)", 4, 1, 4),
    (r"(r:A -> B + s:A -> C) a:A", 3, 1, 4),
    ("pi[A](r:A + s:B)", 3, 1, 4),
])
def test_measure_values(src, s, p, m):
    t = parse_term(src)
    assert (size_S(t), potential_P(t), measure_M(t)) == (s, p, m)


def test_dist_ii_changes_size_but_not_m():
    t = parse_term(r"\x:A. x + x")
    (step,) = [st for st in equiv_step(t) if st.rule == "dist_ii"]
    before, after = measures(t), measures(step.result)
    assert (before.s, after.s) == (3, 4)
    assert before.p == after.p and before.m == after.m


def test_m_bounds_size_over_the_class():
    from isolambda.term_equiv import enumerate_class

    t = parse_term(r"(\x:A. \y:B. x) (r:A + s:B)")
    m = measure_M(t)
    for member in enumerate_class(t).members:
        assert size_S(member) <= m
        assert measure_M(member) == m
