"""Terms, positions, substitution and α-equivalence."""
import pytest

from isolambda.parser import parse_term, parse_type
from isolambda.printer import show_term
from isolambda.syntax import (
    App, Atom, Lam, Proj, Sum, Var, alpha_equiv, alpha_norm, free_names, free_vars,
    fresh_name, positions, rename_free, replace_at, show_path, size, subst_term, subst_type,
    subterm_at, sum_of, summands,
)

A, B = Atom("A"), Atom("B")


def test_keys_give_structural_equality():
    assert Var("x", A) == Var("x", A)
    assert Var("x", A) != Var("x", B)
    assert hash(Lam("x", A, Var("x", A))) == hash(Lam("x", A, Var("x", A)))
    assert Sum(Var("r", A), Var("s", A)) != Sum(Var("s", A), Var("r", A))


def test_free_vars_respect_binders():
    t = parse_term(r"\x:A. x + y:B")
    assert free_vars(t) == {("y", B)}
    assert free_names(t) == {"y"}


@pytest.mark.parametrize("path, shown", [((), "ε"), ((0,), "0"), ((1, 0, 1), "1.0.1")])
def test_show_path(path, shown):
    assert show_path(path) == shown


def test_positions_and_replace():
    t = parse_term("pi[A](r:A + s:B)")
    paths = [p for p, _ in positions(t)]
    assert paths == [(), (0,), (0, 0), (0, 1)]
    assert subterm_at(t, (0, 1)) == Var("s", B)
    u = replace_at(t, (0, 1), Var("q", B))
    assert show_term(u) == "pi[A](r:A + q:B)"
    # untouched siblings are shared
    assert subterm_at(u, (0, 0)) is subterm_at(t, (0, 0))


def test_size_counts_nodes():
    assert size(parse_term(r"\x:A. x + x")) == 4


@pytest.mark.parametrize("base, avoid, expected", [
    ("x", set(), "x'"),
    ("x", {"x'"}, "x''"),
    ("y", {"y'", "y''"}, "y'''"),
])
def test_fresh_name(base, avoid, expected):
    assert fresh_name(base, avoid) == expected


def test_substitution_avoids_capture():
    t = parse_term(r"\y:A. x:B")
    out = subst_term(t, Var("y", A), "x")
    assert isinstance(out, Lam) and out.binder != "y"
    assert out.body == Var("y", A)


def test_substitution_stops_at_shadowing_binder():
    t = parse_term(r"\x:A. x")
    assert subst_term(t, Var("r", A), "x") == t


def test_substitution_replaces_every_free_occurrence():
    t = parse_term(r"x:A + (\y:B. x:A)")
    out = subst_term(t, Var("r", A), "x", A)
    assert show_term(out) == r"r:A + (\y:B. r:A)"


def test_rename_free():
    t = parse_term(r"x:A + (\x:A. x)")
    assert show_term(rename_free(t, "x", "z")) == r"z:A + (\x:A. x)"


def test_subst_type_replaces_atoms_in_annotations():
    t = parse_term(r"\x:A. x")
    # r[a/b] replaces b by a
    assert subst_type(t, B, A) == parse_term(r"\x:B. x")


@pytest.mark.parametrize("left, right, same", [
    (r"\x:A. x", r"\y:A. y", True),
    (r"\x:A. \y:A. x", r"\y:A. \x:A. y", True),
    (r"\x:A. \y:A. x", r"\x:A. \y:A. y", False),
    (r"\x:A. x", r"\y:B. y", False),
    (r"\x:A. y:A", r"\z:A. y:A", True),
])
def test_alpha_equivalence(left, right, same):
    assert alpha_equiv(parse_term(left), parse_term(right)) is same


def test_alpha_norm_does_not_capture_free_level_names():
    t = Lam("x", A, App(Var("_0", parse_type("A -> A")), Var("x", A)))
    n = alpha_norm(t)
    assert n.binder != "_0"
    assert free_names(n) == {"_0"}


def test_summands_and_sum_of():
    parts = [Var(n, A) for n in "rst"]
    s = sum_of(parts)
    assert summands(s) == parts
    assert summands(Sum(Sum(parts[0], parts[1]), parts[2])) == parts
    assert isinstance(Proj(A, s).body, Sum)
