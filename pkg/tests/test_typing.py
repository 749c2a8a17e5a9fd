"""Type assignment modulo type equivalence, errors and inversion."""
import pytest

from isolambda import config
from isolambda.parser import parse_term, parse_type
from isolambda.printer import show_type
from isolambda.typing import (
    ARG_MISMATCH, ARROW_EXPECTED, NON_FUNCTIONAL, PROJ_NOT_AVAILABLE, TypeCheckError, check, infer,
    invert, typable, type_of,
)


def ty(src):
    return show_type(infer(parse_term(src)).type)


@pytest.mark.parametrize("src, expected", [
    ("r:A", "A"),
    (r"\x:A. x", "A -> A"),
    (r"\x:A /\ B. x", "(A -> B -> A) /\\ (A -> B -> B)"),
    ("r:A + s:B", "A /\\ B"),
    ("pi[A](r:A + s:B)", "A"),
    (r"(\x:A. \y:B. x) (r:A + s:B)", "A"),
    (r"(\x:A. \y:B. x) s:B", "A -> A"),
    (r"pi[B -> A]((\x:A /\ B. x) s:A) t:B", "A"),
    (r"(\x:A. \y:B. x + y) r:A s:B", "A /\\ B"),
    (r"(\x:A. x) + (\x:A. x)", "(A -> A) /\\ (A -> A)"),
])
def test_type_of_examples(src, expected):
    assert ty(src) == expected


def test_application_takes_arguments_in_any_order():
    # A -> B -> C and B -> A -> C are the same type
    assert ty(r"(\x:A. \y:B. x) s:B r:A") == "A"


def test_application_to_each_conjunct():
    assert ty(r"((\x:A. x) + (\x:A. c:C)) a:A") == "A /\\ C"


@pytest.mark.parametrize("src, kind, path", [
    (r"\x:A. x:B", NON_FUNCTIONAL, ()),
    ("x:A + x:B", NON_FUNCTIONAL, ()),
    ("f:A (a:B)", ARROW_EXPECTED, (0,)),
    ("f:A -> B (a:B)", ARG_MISMATCH, ()),
    ("pi[C](r:A + s:B)", PROJ_NOT_AVAILABLE, ()),
    ("pi[A /\\ A](r:A + s:B)", PROJ_NOT_AVAILABLE, ()),
    (r"\y:A. pi[C](r:A)", PROJ_NOT_AVAILABLE, (0,)),
])
def test_type_errors_are_located(src, kind, path):
    t = parse_term(src)
    assert type_of(t) is None and not typable(t)
    with pytest.raises(TypeCheckError) as err:
        infer(t)
    assert err.value.kind == kind
    assert err.value.path == path


def test_bound_variables_may_reuse_free_names_at_other_types():
    # the functionality condition looks at free variables only
    assert ty(r"x:A + (\x:B. x)") == "A /\\ (B -> B)"


def test_check_works_modulo_equivalence():
    t = parse_term(r"\x:A. \y:B. x")
    assert check(t, parse_type("(A /\\ B) -> A"))
    assert check(t, parse_type("B -> A -> A"))
    assert not check(t, parse_type("A -> A"))


def test_inversion():
    inv = invert(parse_term("pi[A](r:A + s:B)"))
    assert inv.rule == "/\\en"
    assert show_type(inv.parts["rest"]) == "B"
    assert invert(parse_term("pi[A](r:A)")).rule == "/\\e1"
    app = invert(parse_term(r"(\x:A. x) r:A"))
    assert app.rule == "=>e" and show_type(app.parts["argument"]) == "A"


def test_deterministic_mode_fixes_argument_order():
    t = parse_term(r"(\x:A. \y:B. x) s:B r:A")
    assert typable(t)
    with config.deterministic():
        assert not typable(t)
        assert ty(r"(\x:A. \y:B. x) r:A s:B") == "A"
