"""The symmetric relation on terms and its classes."""
import pytest

from isolambda import config
from isolambda.parser import parse_term
from isolambda.printer import show_term
from isolambda.syntax import show_path
from isolambda.term_equiv import (
    RULES, ClassTooLarge, ac_norm, enumerate_class, equiv_star, equiv_step, is_sum_modulo,
)
from isolambda.typing import type_of


def steps(src):
    return {(st.rule, st.direction, show_path(st.position), show_term(st.result))
            for st in equiv_step(parse_term(src))}


@pytest.mark.parametrize("src, rule, direction, result", [
    ("r:A + s:B", "comm", "LR", "s:B + r:A"),
    ("(r:A + s:B) + t:C", "asso", "LR", "r:A + (s:B + t:C)"),
    (r"\x:A. r:B + s:C", "dist_ii", "LR", r"(\x:A. r:B) + (\x:A. s:C)"),
    (r"(\x:A. r:B) + (\x:A. s:C)", "dist_ii", "RL", r"\x:A. r:B + s:C"),
    ("(f:A->B + g:A->C) a:A", "dist_ie", "LR", "f:(A -> B) a:A + g:(A -> C) a:A"),
    ("f:A->B a:A + g:A->C a:A", "dist_ie", "RL", "(f:(A -> B) + g:(A -> C)) a:A"),
    ("f:A->B->C a:A b:B", "curry", "LR", "f:(A -> B -> C) (a:A + b:B)"),
    ("f:A->B->C (a:A + b:B)", "curry", "RL", "f:(A -> B -> C) a:A b:B"),
    (r"pi[A->B](\x:A. r:B + s:C)", "dist_ei", "LR", r"\x:A. pi[B](r:B + s:C)"),
    (r"\x:A. pi[B](r:B/\C)", "dist_ei", "RL", r"pi[A -> B](\x:A. r:(B /\ C))"),
    (r"pi[B->C](f:B->C/\D) b:B", "dist_ee", "LR", r"pi[C](f:((B -> C) /\ (B -> D)) b:B)"),
    (r"pi[C](f:B->C/\D b:B)", "dist_ee", "RL", r"pi[B -> C](f:((B -> C) /\ (B -> D))) b:B"),
    (r"pi[A /\ B](r:A + s:B)", "split", "LR", "pi[A](r:A) + pi[B](s:B)"),
    ("pi[A](r:A) + pi[B](s:B)", "split", "RL", r"pi[A /\ B](r:A + s:B)"),
])
def test_each_rule_at_the_root(src, rule, direction, result):
    assert (rule, direction, "ε", result) in steps(src)
    assert rule in RULES


def test_steps_inside_contexts_are_located():
    assert ("comm", "LR", "0.0", r"\x:A. pi[A](s:B + x)") in steps(r"\x:A. pi[A](x + s:B)")


def test_split_is_not_used_when_one_summand_already_covers():
    # pi[A](r:A + s:B) must not become pi[A](r) + pi[?](s)
    assert not [s for s in steps("pi[A](r:A + s:B)") if s[0] == "split"]


def test_every_step_preserves_the_type():
    t = parse_term(r"pi[B -> A]((\x:A /\ B. x) s:A) t:B")
    ty = type_of(t)
    for st in equiv_step(t):
        assert type_of(st.result) == ty


def test_step_reversal_reaches_the_source():
    t = parse_term(r"\x:A. r:B + s:C")
    for st in equiv_step(t):
        back = st.reversed(t)
        assert back.direction != st.direction
        assert back.result.key == t.key


def test_class_of_lambda_over_sum():
    cls = enumerate_class(parse_term(r"\x:A. x + x"))
    assert sorted(show_term(m) for m in cls.members) == [
        r"(\x:A. x) + (\x:A. x)", r"\x:A. x + x",
    ]
    assert show_term(cls.representative) == r"\x:A. x + x"


def test_class_paths_are_step_sequences():
    cls = enumerate_class(parse_term(r"pi[A->B](\x:A. r:B + s:C)"))
    assert len(cls) == 3
    a, b = cls.members[0], cls.members[-1]
    path = cls.path(a, b)
    assert path and path[-1].result.key == b.key


def test_expanded_class_spells_out_sum_orders():
    cls = enumerate_class(parse_term("r:A + s:B"))
    assert len(cls) == 1
    assert {show_term(m) for m in cls.expanded()} == {"r:A + s:B", "s:B + r:A"}


@pytest.mark.parametrize("left, right, same", [
    (r"(\x:A. \y:B. x) + (\x:A. \y:B. y)", r"\x:A. \y:B. x + y", True),
    ("r:A + s:B", "s:B + r:A", True),
    ("f:A->B->C a:A b:B", "f:A->B->C b:B a:A", True),
    ("r:A + s:B", "r:A", False),
])
def test_equiv_star(left, right, same):
    assert equiv_star(parse_term(left), parse_term(right)) is same


def test_is_sum_modulo():
    assert is_sum_modulo(parse_term(r"\x:A. r:B + s:C")) is not None
    assert is_sum_modulo(parse_term("r:A")) is None


def test_ac_norm_sorts_and_renames():
    a = ac_norm(parse_term(r"s:B + (\z:A. z)"))
    b = ac_norm(parse_term(r"(\y:A. y) + s:B"))
    assert a.key == b.key


def test_class_cap_is_enforced():
    t = parse_term(r"(\x:A. \y:B. \z:C. x + y + z) (a:A + b:B + c:C)")
    with pytest.raises(ClassTooLarge):
        enumerate_class(t, cap=3)


def test_deterministic_mode_has_no_commutativity():
    with config.deterministic():
        assert not equiv_star(parse_term("r:A + s:B"), parse_term("s:B + r:A"))
        rules = {st.rule for st in equiv_step(parse_term("(r:A + s:B) + t:C"))}
        assert "comm" not in rules and "asso" not in rules
