import random

import pytest

from qcalculi.algebra import QMatrix, TwistedMultiDerivation, monomials, zero_operator
from qcalculi.calculus import Form, basis_tuples, d
from qcalculi.integral import (
    DegreeMismatch,
    HomForm,
    NotFree,
    ShapeUnsupported,
    build_freeness,
    check_chain_map,
    check_diagonal_shortcut,
    check_flatness,
    check_freeness,
    check_hom_connection_law,
    check_left_right_roundtrip,
    check_poincare_condition,
    check_theta_right_linear,
    check_theta_roundtrip,
    check_xi_annihilated,
    contract,
    dual_basis,
    evaluate,
    hom_times,
    left_to_right,
    nabla,
    nabla0,
    random_homform,
    right_to_left,
    theta,
    theta_inverse,
    xi,
)
from qcalculi.presets import (
    BAR_SIGMA,
    HAT_SIGMA,
    PARTIAL_SIGMA,
    manin,
    manin_expected,
    manin_params,
    quantum_affine,
)

P = manin_params()
p, q = P.gens()
BOTH = [quantum_affine, manin]


def setup(build, n):
    calc = build(n)
    return calc, build_freeness(calc.tmd)


@pytest.mark.parametrize("build", BOTH)
@pytest.mark.parametrize("n", [1, 2, 3])
def test_freeness(build, n):
    calc, fd = setup(build, n)
    assert check_freeness(fd, 4).passed


def test_freeness_with_bar21_zeroed():
    calc, fd = setup(manin, 2)
    broken = fd.replace_bar(2, 1, zero_operator(2, P))
    r = check_freeness(broken, 3)
    cx = r.counterexample
    assert not r.passed
    assert cx["identity"] == "barsigma.sigmaT"
    assert cx["indices"] == [2, 1]
    assert cx["alpha"] == [0, 1]


def test_diagonal_freeness_is_diagonal():
    calc, fd = setup(quantum_affine, 3)
    for i in range(1, 4):
        for j in range(1, 4):
            if i != j:
                assert fd.b(i, j).is_zero and fd.h(i, j).is_zero
        for a in monomials(3, 3):
            assert fd.ds(i).on_monomial(a) == calc.tmd.d(i).on_monomial(a)


@pytest.mark.parametrize("n", [2, 3])
def test_manin_closed_forms(n):
    calc, fd = setup(manin, n)
    for a in monomials(n, 4):
        for i in range(1, n + 1):
            assert fd.ds(i).on_monomial(a) == manin_expected(PARTIAL_SIGMA, (i,), a, calc)
            for j in range(1, n + 1):
                assert fd.b(i, j).on_monomial(a) == manin_expected(BAR_SIGMA, (i, j), a, calc)
                assert fd.h(i, j).on_monomial(a) == manin_expected(HAT_SIGMA, (i, j), a, calc)


def test_bar21_on_x2():
    calc, fd = setup(manin, 2)
    A = calc.algebra
    assert fd.b(2, 1)(A.gen(2)) == A.gen(1).scale(p ** -1 - 1)


def test_not_free_and_unsupported_shape():
    calc = manin(2)
    tmd = calc.tmd
    sigma = [list(r) for r in tmd.sigma]
    s11 = tmd.s(1, 1)
    stripped = s11.compose(s11)
    stripped.inverse = None
    sigma[0][0] = stripped
    with pytest.raises(NotFree):
        build_freeness(TwistedMultiDerivation(calc.algebra, sigma, tmd.partial, shape="upper-triangular"))
    full = TwistedMultiDerivation(calc.algebra, tmd.sigma, tmd.partial, shape="full")
    with pytest.raises(ShapeUnsupported):
        build_freeness(full)


def test_left_to_right_example():
    calc, fd = setup(manin, 2)
    A = calc.algebra
    got = left_to_right(Form.basis(calc, (1,), A.gen(2)), fd, calc)
    assert got == {(1,): A.gen(2).scale(q ** -1), (2,): A.gen(1).scale(p ** -1 - 1)}


def test_left_to_right_top_form_uses_det_inverse():
    calc, fd = setup(manin, 3)
    A = calc.algebra
    for a in monomials(3, 3):
        x = A.monomial(a)
        got = left_to_right(Form.basis(calc, (1, 2, 3), x), fd, calc)
        assert got == {(1, 2, 3): fd.det.inverse(x)}


@pytest.mark.parametrize("build", BOTH)
def test_left_right_round_trip(build):
    calc, fd = setup(build, 3)
    assert check_left_right_roundtrip(fd, calc, 3).passed


def test_nabla0_examples():
    calc, fd = setup(quantum_affine, 2)
    A = calc.algebra
    f = HomForm(2, 1, calc.params, {(1,): A.gen(1), (2,): A.gen(2)})
    assert nabla0(f, fd) == A.const(2)
    assert not nabla0(HomForm.zero(2, 1, calc.params), fd)
    with pytest.raises(DegreeMismatch):
        nabla0(dual_basis(calc, (1, 2)), fd)


@pytest.mark.parametrize("build", BOTH)
@pytest.mark.parametrize("n", [1, 2, 3])
def test_xi_annihilated(build, n):
    calc, fd = setup(build, n)
    assert check_xi_annihilated(fd, calc).passed


def test_hom_connection_on_generator():
    calc, fd = setup(manin, 2)
    A = calc.algebra
    for i in (1, 2):
        for j in (1, 2):
            got = nabla0(hom_times(xi(calc, i), A.gen(j), fd, calc), fd)
            assert got == (A.one() if i == j else A.zero())


@pytest.mark.parametrize("build", BOTH)
@pytest.mark.parametrize("n", [1, 2, 3])
def test_hom_connection_law(build, n):
    calc, fd = setup(build, n)
    assert check_hom_connection_law(fd, calc, 4, samples=3, seed=1).passed


def test_contract_and_nabla1_beta12():
    calc, fd = setup(manin, 2)
    beta = dual_basis(calc, (1, 2))
    assert contract(beta, (1,), calc) == xi(calc, 2)
    assert nabla(beta, fd, calc) == HomForm.zero(2, 1, calc.params)


@pytest.mark.parametrize("build", BOTH)
@pytest.mark.parametrize("n", [1, 2, 3])
def test_flatness(build, n):
    calc, fd = setup(build, n)
    r = check_flatness(fd, calc, random_forms=20, seed=5)
    assert r.passed


def test_flatness_fails_for_wrong_twist():
    calc = manin(2).with_qext(QMatrix.uniform(2, q))
    fd = build_freeness(calc.tmd)
    assert not check_flatness(fd, calc, random_forms=20, seed=0).passed


@pytest.mark.parametrize("build", BOTH)
@pytest.mark.parametrize("n", [1, 2, 3])
def test_poincare_condition(build, n):
    calc, fd = setup(build, n)
    assert check_poincare_condition(fd, calc, 4).passed


def test_poincare_negative_control():
    calc = manin(2).with_qext(QMatrix.uniform(2, q))
    fd = build_freeness(calc.tmd)
    r = check_poincare_condition(fd, calc, 2)
    assert not r.passed
    assert sum(r.counterexample["alpha"]) <= 2


def test_diagonal_shortcut():
    calc, fd = setup(quantum_affine, 3)
    assert check_diagonal_shortcut(fd, calc, 4).passed
    calc, fd = setup(manin, 2)
    with pytest.raises(ShapeUnsupported):
        check_diagonal_shortcut(fd, calc, 2)


def test_theta_examples():
    calc, fd = setup(manin, 2)
    A = calc.algebra
    assert theta(Form.function(A.one()), fd, calc) == dual_basis(calc, (1, 2))
    assert theta(calc.one_form(1), fd, calc).value((2,)) == A.const(-1)
    x = A.monomial((1, 2))
    top = theta(Form.basis(calc, (1, 2), x), fd, calc)
    assert top.degree == 0 and top.value(()) == fd.det.inverse(x)
    pre = theta_inverse(xi(calc, 2), fd, calc)
    assert theta(pre, fd, calc) == xi(calc, 2)
    assert not theta_inverse(HomForm.zero(2, 1, calc.params), fd, calc)


@pytest.mark.parametrize("build", BOTH)
@pytest.mark.parametrize("n", [1, 2, 3])
def test_theta_round_trips(build, n):
    calc, fd = setup(build, n)
    assert check_theta_roundtrip(fd, calc, 3).passed
    assert check_theta_right_linear(fd, calc, 3).passed


@pytest.mark.parametrize("build", BOTH)
@pytest.mark.parametrize("n", [1, 2, 3])
def test_chain_map(build, n):
    calc, fd = setup(build, n)
    assert check_chain_map(fd, calc, 3).passed


def test_chain_map_disjoint_support_both_sides_zero():
    calc, fd = setup(manin, 3)
    A = calc.algebra
    for I in basis_tuples(3, 1):
        for alpha in monomials(3, 2):
            u = Form.basis(calc, I, A.monomial(alpha))
            left = theta(d(u, calc), fd, calc)
            right = nabla(theta(u, fd, calc), fd, calc)
            for J in basis_tuples(3, 1):
                if set(I) & set(J):
                    assert not left.value(J) and not right.value(J)


def test_evaluate_degree_mismatch():
    calc, fd = setup(manin, 2)
    with pytest.raises(DegreeMismatch):
        evaluate(xi(calc, 1), Form.basis(calc, (1, 2)), fd, calc)


def test_evaluate_is_right_linear():
    calc, fd = setup(manin, 2)
    A = calc.algebra
    rng = random.Random(2)
    for _ in range(15):
        f = random_homform(calc, 1, rng, 2)
        a = A.monomial(rng.choice(monomials(2, 2)))
        for J in basis_tuples(2, 1):
            v = right_to_left({J: a}, calc, 1)
            assert evaluate(f, v, fd, calc) == A.mul(f.value(J), a)


def test_homform_validation():
    with pytest.raises(ValueError):
        HomForm(2, 2, P, {(2, 1): None})
