"""Generator, meta-theorem checkers and property suites."""
import pytest

from isolambda.analysis import (
    SUITES, GenConfig, check_csn, check_redpi, check_sn, gen_typed_term, prove, run_property_suite,
    shrink,
)
from isolambda.parser import parse_term, parse_type
from isolambda.printer import show_term
from isolambda.syntax import alpha_equiv, size
from isolambda.type_canon import canon_type
from isolambda.typing import type_of


@pytest.mark.parametrize("seed", range(10))
def test_generated_terms_are_closed_and_typable(seed):
    t = gen_typed_term(GenConfig(seed=seed))
    assert type_of(t) is not None
    assert not t.fv
    assert size(t) <= GenConfig().max_size


def test_generator_is_reproducible():
    a = gen_typed_term(GenConfig(seed=7))
    b = gen_typed_term(GenConfig(seed=7))
    assert a.key == b.key


def test_generator_respects_the_alphabet():
    t = gen_typed_term(GenConfig(seed=1, atom_alphabet=["P"]))
    assert set(show_term(t).replace("->", " ").split()) & {"T1", "T2", "T3"} == set()


@pytest.mark.parametrize("kwargs", [{"max_depth": 0}, {"sum_bias": 0}])
def test_bad_generator_config(kwargs):
    with pytest.raises(ValueError):
        GenConfig(**kwargs)


def test_prove():
    assert alpha_equiv(prove(canon_type(parse_type("A -> A")), []), parse_term(r"\x:A. x"))
    assert prove(canon_type(parse_type("A")), []) is None
    env = [("f", canon_type(parse_type("B -> A"))), ("b", canon_type(parse_type("B")))]
    assert show_term(prove(canon_type(parse_type("A")), env)) == "f:(B -> A) b:B"


def test_check_sn():
    rep = check_sn(parse_term("pi[A](r:A + s:A)"))
    assert rep.terminated and rep.ns == 1 and rep.nf_count == 2


@pytest.mark.parametrize("src, lams, stuck", [
    (r"(\x:A. x) + (\x:B. x)", 2, 0),
    (r"(\x:A /\ B. x) a:A", 0, 1),
])
def test_csn_shapes(src, lams, stuck):
    shape = check_csn(parse_term(src))
    assert shape is not None
    assert (len(shape.lambda_group), len(shape.stuck_group)) == (lams, stuck)


def test_csn_rejects_other_shapes():
    assert check_csn(parse_term("r:A")) is None


def test_redpi_holds_on_a_plain_sum():
    assert check_redpi(parse_term(r"(\x:A. x) + (\x:B. x)"), parse_type("A -> A"))


def test_redpi_counterexample():
    # the projection distributes under the binder and stops at pi[A](x)
    assert not check_redpi(parse_term(r"\x:A /\ B. x"), parse_type("A -> B -> A"))


def test_shrink_keeps_the_failure():
    t = parse_term(r"(\x:A. x) (pi[A](r:A + s:B))")
    out = shrink(t, lambda v: type_of(v) is not None and "s^B" in v.key)
    assert "s^B" in out.key
    assert size(out) < size(t)


@pytest.mark.parametrize("name", [n for n in SUITES if n not in ("sn", "csn", "redpi")])
def test_small_suites_pass(name):
    rep = run_property_suite(name, 20, seed=1)
    assert rep.ok, [f.describe() for f in rep.failures]


def test_unknown_suite():
    with pytest.raises(ValueError):
        run_property_suite("nope", 1, 0)
