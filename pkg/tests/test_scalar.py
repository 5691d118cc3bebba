from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from qcalculi.scalar import (
    EMPTY,
    DivisionByZero,
    NonExactDivision,
    NotAUnit,
    ParamSet,
    ParamSetMismatch,
    Scalar,
    ZeroAssignment,
)

P = ParamSet(("p", "q"))
p, q = P.gens()
sp, sq = sympy.symbols("p q")

exponents = st.tuples(st.integers(-3, 3), st.integers(-3, 3))
coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=4)
scalars = st.dictionaries(exponents, coeffs, max_size=4).map(lambda t: Scalar(P, t))


def to_sympy(s: Scalar):
    return sum((sympy.Rational(c.numerator, c.denominator) * sp ** e[0] * sq ** e[1]
                for e, c in s.terms.items()), sympy.Integer(0))


def test_examples():
    assert str((p - 1) * (p + 1)) == "p^2-1"
    assert str((p ** 3 - 1).exact_div(p - 1)) == "p^2+p+1"
    assert str((p ** -1 * q) ** -1) == "p*q^-1"
    assert str((p - 1) ** 2) == "p^2-2*p+1"
    assert (p * q ** -1).evaluate({"p": 3, "q": 2}) == Fraction(3, 2)


def test_zero_and_one_render():
    assert str(P.const(0)) == "0"
    assert str(P.const(1)) == "1"
    assert not P.const(0)


def test_non_exact_division():
    with pytest.raises(NonExactDivision):
        (p ** 2 + 1).exact_div(p - 1)


def test_division_by_zero():
    with pytest.raises(DivisionByZero):
        p.exact_div(P.const(0))
    with pytest.raises(ZeroDivisionError):
        p / 0


def test_negative_power_needs_unit():
    with pytest.raises(NotAUnit):
        (p + 1) ** -1
    assert (2 * p) ** -1 == Scalar.monomial(P, (-1, 0), Fraction(1, 2))


def test_evaluate_errors():
    with pytest.raises(ZeroAssignment):
        (p ** -1).evaluate({"p": 0, "q": 1})
    assert (p ** 2).evaluate({"p": 0, "q": 1}) == 0
    with pytest.raises(KeyError):
        p.evaluate({"q": 1})


def test_paramset_mismatch_and_promotion():
    other = ParamSet(("q", "p"))
    with pytest.raises(ParamSetMismatch):
        p + other.gen("p")
    promoted = Scalar.const(EMPTY, 3) + p
    assert promoted == p + 3


def test_constant_hash_matches_int():
    assert hash(P.const(2)) == hash(Scalar.const(EMPTY, 2))
    assert P.const(2) == 2


def test_paramset_validation():
    with pytest.raises(ValueError):
        ParamSet(("p", "p"))
    with pytest.raises(ValueError):
        ParamSet(("1p",))


@given(scalars, scalars, scalars)
@settings(max_examples=60, deadline=None)
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b * c) == (a * b) * c
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a
    assert a - a == 0


@given(scalars, scalars)
@settings(max_examples=60, deadline=None)
def test_product_matches_sympy(a, b):
    assert sympy.expand(to_sympy(a * b) - to_sympy(a) * to_sympy(b)) == 0


@given(scalars, scalars)
@settings(max_examples=60, deadline=None)
def test_exact_div_round_trip(a, b):
    if not b:
        return
    assert (a * b).exact_div(b) == a


@given(scalars)
@settings(max_examples=40, deadline=None)
def test_evaluation_matches_sympy(a):
    got = a.evaluate({"p": Fraction(3, 2), "q": -2})
    want = to_sympy(a).subs({sp: sympy.Rational(3, 2), sq: -2})
    assert sympy.Rational(got.numerator, got.denominator) == want
