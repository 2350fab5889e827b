from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from lukra.formulas import (
    BOT,
    TOP,
    Delta,
    FormulaError,
    Imp,
    Var,
    eval_formula,
    imp_k,
    match,
    parse,
    rational_eval,
    substitute,
    to_text,
    variables,
)
from lukra.algebra import make_chain


def test_precedence_and_associativity():
    assert parse("p -> D q -> p") == Imp(Var("p"), Imp(Delta(Var("q")), Var("p")))
    assert parse("p -> q -> r") == Imp(Var("p"), Imp(Var("q"), Var("r")))
    assert parse("(p -> q) -> r") == Imp(Imp(Var("p"), Var("q")), Var("r"))
    assert parse("D p -> q") == Imp(Delta(Var("p")), Var("q"))
    assert parse("D (p -> q)") == Delta(Imp(Var("p"), Var("q")))


def test_sugar():
    p, q = Var("p"), Var("q")
    assert parse("p ->[2] q") == Imp(p, Imp(p, q))
    assert parse("p ->[0] q") == q
    assert parse("p | q") == Imp(Imp(p, q), q)
    assert parse("~p") == Imp(p, BOT)
    assert parse("p & q") == parse("~(~p | ~q)")
    assert parse("T") == TOP and parse("F") == BOT


def test_unicode_aliases():
    assert parse("p → Δ q") == parse("p -> D q")
    assert parse("⊤ → ¬ p") == parse("T -> ~p")


def test_parse_errors_carry_position():
    with pytest.raises(FormulaError):
        parse("p ->")
    with pytest.raises(FormulaError) as exc:
        parse("p q")
    assert "position" in str(exc.value)
    with pytest.raises(FormulaError):
        parse("(p -> q")


formulas = st.recursive(
    st.sampled_from([Var("p"), Var("q"), Var("r"), TOP, BOT]),
    lambda inner: st.one_of(
        st.builds(Imp, inner, inner),
        st.builds(Delta, inner),
    ),
    max_leaves=12,
)


@given(formulas)
def test_print_parse_roundtrip(f):
    assert parse(to_text(f)) == f


@given(formulas)
def test_rational_eval_matches_chain_eval(f):
    # the 4-chain embeds in [0,1] at {0, 1/3, 2/3, 1}
    A = make_chain(4, with_delta=True, with_bottom=True)
    idx = {"p": 1, "q": 2, "r": 3}
    rat = {k: Fraction(v, 3) for k, v in idx.items()}
    assert rational_eval(f, rat) == Fraction(eval_formula(f, A, idx), 3)


def test_eval_errors():
    A = make_chain(3)
    with pytest.raises(FormulaError):
        eval_formula(parse("p"), A, {})
    with pytest.raises(FormulaError):
        eval_formula(parse("D p"), A, {"p": 0})
    with pytest.raises(FormulaError):
        eval_formula(parse("F"), A, {})
    with pytest.raises(FormulaError):
        rational_eval(parse("p"), {"p": Fraction(3, 2)})


def test_match_and_substitute():
    schema = parse("a -> (b -> a)")
    inst = parse("(p -> q) -> (D r -> (p -> q))")
    got = match(schema, inst)
    assert got == {"a": parse("p -> q"), "b": parse("D r")}
    assert substitute(schema, got) == inst
    assert match(schema, parse("p -> (q -> r)")) is None


def test_variables_and_impk():
    f = imp_k(Var("x"), Var("y"), 3)
    assert variables(f) == {"x", "y"}
    assert f == parse("x ->[3] y")
