import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qcalculi.algebra import AlgebraElement, QMatrix, QuantumAffineAlgebra
from qcalculi.parsing import (
    NegativeGeneratorExponent,
    ParseError,
    UnknownIdentifier,
    parse_expression,
    parse_scalar,
)
from qcalculi.scalar import ParamSet, Scalar

P = ParamSet(("p", "q"))
p, q = P.gens()


def test_unit_scalar():
    assert parse_scalar("p^-1*q", P) == p ** -1 * q
    assert (parse_scalar("p^-1*q", P)).is_unit()


def test_generator_term():
    e = parse_expression("q*x2", P, 2)
    assert e == AlgebraElement.monomial(2, P, (0, 1), q)


def test_mixed_expression_renders_canonically():
    e = parse_expression("q*x2 - 3/2*x1^2*p", P, 2)
    assert str(e) == "-3/2*p*x1^2+q*x2"


def test_whitespace_and_leading_sign():
    assert parse_scalar(" - p + 2 ", P) == 2 - p


def test_negative_generator_exponent():
    with pytest.raises(NegativeGeneratorExponent):
        parse_expression("x1^-1", P, 2)


def test_unknown_identifier():
    with pytest.raises(UnknownIdentifier):
        parse_scalar("r*p", P)
    with pytest.raises(UnknownIdentifier):
        parse_expression("x3", P, 2)


@pytest.mark.parametrize("text", ["p*", "p^", "(p)", "p q", "3/0", ""])
def test_syntax_errors_carry_position(text):
    with pytest.raises(ParseError) as info:
        parse_scalar(text, P)
    assert info.value.position is not None


def test_out_of_order_generators_need_algebra():
    with pytest.raises(ParseError):
        parse_expression("x2*x1", P, 2)
    A = QuantumAffineAlgebra(QMatrix.uniform(2, q))
    assert parse_expression("x2*x1", P, 2, algebra=A) == A.monomial((1, 1), q ** -1)


terms = st.dictionaries(
    st.tuples(st.integers(0, 3), st.integers(0, 2)),
    st.tuples(st.fractions(min_value=-4, max_value=4, max_denominator=3),
              st.integers(-2, 2), st.integers(-2, 2)),
    max_size=4)


@given(terms)
@settings(max_examples=60, deadline=None)
def test_parse_render_round_trip(raw):
    elem = AlgebraElement(2, P, {a: Scalar.monomial(P, (i, j), c) for a, (c, i, j) in raw.items()})
    assert parse_expression(str(elem), P, 2) == elem
