import pytest
import sympy

from qcalculi.algebra import monomials
from qcalculi.presets import (
    MANIN,
    QUANTUM_AFFINE,
    SIGMA,
    ManinConstants,
    PresetDescriptor,
    build_preset,
    describe,
    manin,
    manin_expected,
    manin_params,
    qa_delta,
    qa_lambda,
    quantum_affine,
)
from qcalculi.scalar import ParamSet

P = manin_params()
p, q = P.gens()
sp, sq = sympy.symbols("p q")


def test_q_integer_matches_geometric_sum():
    C = ManinConstants(2, p, q)
    for k in range(0, 7):
        want = sympy.expand(sympy.cancel((sp ** k - 1) / (sp - 1)))
        got = sum((sp ** e[0] * sq ** e[1] * int(c) for e, c in C.q_integer(k).terms.items()),
                  sympy.Integer(0))
        assert sympy.expand(got - want) == 0


def test_eta_examples():
    C = ManinConstants(2, p, q)
    assert C.eta(1, 2, (0, 1)) == p - 1
    assert C.eta(1, 1, (0, 1)) == q
    assert C.eta(2, 2, (1, 0)) == p * q ** -1
    assert C.eta(1, 2, (0, 2)) == p ** 2 - 1
    assert C.eta(2, 1, (1, 1)) == 0


def test_manin_generator_relations():
    calc = manin(2)
    A = calc.algebra
    s = calc.tmd.s
    # w1 x2 = q x2 w1 + (p-1) x1 w2
    assert s(1, 1)(A.gen(2)) == A.gen(2).scale(q)
    assert s(1, 2)(A.gen(2)) == A.gen(1).scale(p - 1)
    assert s(1, 1)(A.gen(1)) == A.gen(1).scale(p)
    assert s(2, 2)(A.gen(1)) == A.gen(1).scale(p * q ** -1)


def test_manin_partial_values():
    calc = manin(3)
    A = calc.algebra
    d = calc.tmd.d
    assert d(1)(A.monomial((3, 0, 0))) == A.monomial((2, 0, 0), 1 + p + p ** 2)
    # partial_2(x1 x2 x3) = pi_2 lambda_2 [1]_p x1 x3 = p q x1 x3
    assert d(2)(A.monomial((1, 1, 1))) == A.monomial((1, 0, 1), p * q)


def test_manin_sigma_expected_matches_operator():
    calc = manin(3)
    for a in monomials(3, 4):
        for i in range(1, 4):
            for j in range(1, 4):
                assert calc.tmd.s(i, j).on_monomial(a) == manin_expected(SIGMA, (i, j), a, calc)


def test_quantum_affine_scalars():
    calc = quantum_affine(3)
    Q = calc.Q
    assert qa_lambda(Q, 1, (0, 1, 2)) == Q(1, 2) * Q(1, 3) ** 2
    assert qa_delta(Q, 2, (5, 1, 1)) == Q(2, 3)
    assert calc.params.names == ("q12", "q13", "q23")


def test_quantum_affine_partial():
    calc = quantum_affine(2)
    A = calc.algebra
    q12 = calc.params.gen("q12")
    # partial_1(x1^2 x2) = 2 q12 x1 x2
    assert calc.tmd.d(1)(A.monomial((2, 1))) == A.monomial((1, 1), 2 * q12)
    assert calc.qext == calc.Q


def test_manin_parameter_validation():
    with pytest.raises(ValueError):
        manin(2, p=P.const(1), q=q)
    with pytest.raises(ValueError):
        manin(2, p=p + 1, q=q)
    with pytest.raises(ValueError):
        manin(2, p=p)


def test_numeric_manin():
    E = ParamSet()
    calc = manin(2, p=E.const(2), q=E.const(3))
    assert calc.qext(1, 2) == E.const(3) / 2


def test_descriptor_and_builder():
    with pytest.raises(ValueError):
        PresetDescriptor("nope", 2, P)
    with pytest.raises(ValueError):
        PresetDescriptor(MANIN, 2, ParamSet(("q",)))
    with pytest.raises(ValueError):
        build_preset("nope", 2)
    assert build_preset(MANIN, 2).name == MANIN


def test_describe_texts():
    text = describe(MANIN, 2)
    assert "w_i*x_j = q*x_j*w_i + (p-1)*x_i*w_j" in text
    assert "w_i*x_i = p*x_i*w_i" in text
    assert "w_j*x_i = p*q^-1*x_i*w_j" in text
    assert "[pending]" in text
    assert "x1*x2 = q12*x2*x1" in describe(QUANTUM_AFFINE, 2)
