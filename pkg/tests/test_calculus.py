import random

import pytest

from qcalculi.algebra import QMatrix, monomials
from qcalculi.calculus import (
    FAMILY_QCOMM,
    Form,
    basis_tuples,
    check_d_squared,
    check_extension_conditions,
    check_graded_leibniz,
    check_wedge_associativity,
    d,
    d_function,
    form_wedge,
    push_coefficient,
    wedge_sort,
)
from qcalculi.presets import manin, manin_params, quantum_affine

P = manin_params()
p, q = P.gens()
BOTH = [quantum_affine, manin]


def test_basis_tuples():
    assert basis_tuples(3, 2) == [(1, 2), (1, 3), (2, 3)]


def test_wedge_sort_manin():
    calc = manin(2)
    assert calc.wedge_sort((2, 1)) == (-p * q ** -1, (1, 2))
    assert calc.wedge_sort((1, 1)) is None
    assert calc.wedge_sort((1, 2)) == (P.const(1), (1, 2))


def test_wedge_sort_three_cycle():
    Qe = QMatrix.generic(3)
    c, I = wedge_sort((3, 1, 2), Qe)
    assert I == (1, 2, 3)
    # two swaps: w3 past w1, then w3 past w2
    assert c == Qe(3, 1) * Qe(3, 2)


def test_push_omega1_x2_manin():
    calc = manin(2)
    A = calc.algebra
    got = push_coefficient(A.gen(2), (1,), calc)
    want = Form(2, 1, P, {(1,): A.gen(2).scale(q), (2,): A.gen(1).scale(p - 1)})
    assert got == want


def test_d_x1x2_manin():
    calc = manin(2)
    A = calc.algebra
    got = d_function(A.monomial((1, 1)), calc)
    assert got == Form(2, 1, P, {(1,): A.gen(2).scale(q), (2,): A.gen(1).scale(p)})


def test_d_generators_are_basis():
    for build in BOTH:
        calc = build(3)
        for i in range(1, 4):
            assert d_function(calc.algebra.gen(i), calc) == calc.one_form(i)


def test_form_validation():
    calc = manin(2)
    with pytest.raises(ValueError):
        Form(2, 2, P, {(2, 1): calc.algebra.one()})


def test_zero_forms_compare_equal():
    assert Form.zero(2, 1, P) == Form.zero(2, 2, P)


def test_top_degree_wedge_vanishes():
    calc = manin(2)
    top = Form.basis(calc, (1, 2))
    assert not form_wedge(top, calc.one_form(1), calc)


@pytest.mark.parametrize("build", BOTH)
@pytest.mark.parametrize("n", [1, 2, 3])
def test_extension_conditions(build, n):
    assert check_extension_conditions(build(n), 4).passed


def test_extension_negative_control():
    calc = manin(2)
    bad = calc.with_qext(QMatrix.uniform(2, q))
    r = check_extension_conditions(bad, 2)
    assert not r.passed
    cx = r.counterexample
    assert cx["identity"] == FAMILY_QCOMM
    assert cx["indices"] == [1, 2]
    assert cx["alpha"] == [1, 1]


@pytest.mark.parametrize("build", BOTH)
@pytest.mark.parametrize("n", [1, 2, 3])
def test_d_squared(build, n):
    assert check_d_squared(build(n), 4).passed


@pytest.mark.parametrize("build", BOTH)
@pytest.mark.parametrize("n", [2, 3])
def test_graded_leibniz(build, n):
    r = check_graded_leibniz(build(n), 4, samples=200, seed=3)
    assert r.passed and r.cases == 200


@pytest.mark.parametrize("build", BOTH)
def test_wedge_associativity(build):
    assert check_wedge_associativity(build(3), 3, samples=60).passed


def test_d_squared_fails_for_wrong_twist():
    calc = manin(2).with_qext(QMatrix.uniform(2, q))
    assert not check_d_squared(calc, 3).passed


def test_d_is_linear():
    calc = manin(3)
    A = calc.algebra
    rng = random.Random(1)
    mons = monomials(3, 3)
    for _ in range(20):
        a, b = (A.monomial(rng.choice(mons), rng.randint(-3, 3)) for _ in range(2))
        assert d_function(a + b, calc) == d_function(a, calc) + d_function(b, calc)
        u = Form.basis(calc, (2,), a)
        v = Form.basis(calc, (2,), b)
        assert d(u + v, calc) == d(u, calc) + d(v, calc)
