"""Hom-connection, integral forms and the duality maps Theta.

Right-linear functionals ``f: Omega^m -> A`` (:class:`HomForm`) are stored by
their values on the basis ``w_I``.  Converting a left-coefficient form to
right coefficients uses ``a w_i = sum_j w_j barsigma_ji(a)``.
"""
from __future__ import annotations

import random
from typing import Dict, List, Sequence

from .algebra import (
    DIAGONAL,
    FULL,
    AlgebraElement,
    MonomialOperator,
    TwistedMultiDerivation,
    identity_operator,
    monomials,
    zero_operator,
)
from .calculus import (
    DifferentialCalculus,
    Form,
    Index,
    all_basis_tuples,
    basis_tuples,
    d,
    push_coefficient,
    render_index,
)
from .results import CheckResult, combine, verify_cases
from .scalar import Scalar


class NotFree(ValueError):
    pass


class ShapeUnsupported(ValueError):
    pass


class DegreeMismatch(ValueError):
    pass


class HomForm:
    """Right A-linear map Omega^m -> A given by its values on the basis."""

    __slots__ = ("n", "degree", "params", "values")

    def __init__(self, n: int, degree: int, params, values: Dict[Index, AlgebraElement] = None):
        self.n = n
        self.degree = degree
        self.params = params
        clean = {}
        for I, v in (values or {}).items():
            I = tuple(I)
            if len(I) != degree or any(I[k] >= I[k + 1] for k in range(len(I) - 1)):
                raise ValueError(f"{I} is not a strictly increasing index tuple of length {degree}")
            if v:
                clean[I] = v
        self.values = clean

    @classmethod
    def zero(cls, n, degree, params):
        return cls(n, degree, params, {})

    def value(self, I: Sequence[int]) -> AlgebraElement:
        v = self.values.get(tuple(I))
        return v if v is not None else AlgebraElement.zero(self.n, self.params)

    def __bool__(self):
        return bool(self.values)

    def __add__(self, other: "HomForm") -> "HomForm":
        if not other.values:
            return self
        if not self.values:
            return other
        out = dict(self.values)
        for I, v in other.values.items():
            out[I] = out[I] + v if I in out else v
        return HomForm(self.n, self.degree, self.params, out)

    def __neg__(self):
        return HomForm(self.n, self.degree, self.params, {I: -v for I, v in self.values.items()})

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        if not isinstance(other, HomForm):
            return NotImplemented
        if not self.values and not other.values:
            return True
        return self.degree == other.degree and self.values == other.values

    def __hash__(self):
        return hash((self.degree, frozenset(self.values.items())))

    def __str__(self):
        if not self.values:
            return "0"
        return ", ".join(f"{render_index(I)} -> {self.values[I]}" for I in sorted(self.values))

    def __repr__(self):
        return f"HomForm(deg={self.degree}, {{{self}}})"


def xi(calc: DifferentialCalculus, i: int) -> HomForm:
    """Dual basis functional of Omega^1: xi_i(w_j) = delta_ij."""
    return HomForm(calc.n, 1, calc.params, {(i,): calc.algebra.one()})


def dual_basis(calc: DifferentialCalculus, I: Sequence[int]) -> HomForm:
    """beta_I(w_J) = delta_IJ."""
    I = tuple(I)
    return HomForm(calc.n, len(I), calc.params, {I: calc.algebra.one()})


# -- freeness data ----------------------------------------------------------------

class FreenessData:
    """barsigma (lower triangular), hatsigma (upper triangular), partial^sigma, nu(sigma)."""

    def __init__(self, tmd: TwistedMultiDerivation, bar, hat, partial_sigma, det):
        self.tmd = tmd
        self.n = tmd.n
        self.bar = bar
        self.hat = hat
        self.partial_sigma = partial_sigma
        self.det = det

    def b(self, i, j) -> MonomialOperator:
        return self.bar[i - 1][j - 1]

    def h(self, i, j) -> MonomialOperator:
        return self.hat[i - 1][j - 1]

    def ds(self, i) -> MonomialOperator:
        return self.partial_sigma[i - 1]

    def replace_bar(self, i, j, op) -> "FreenessData":
        bar = [list(r) for r in self.bar]
        bar[i - 1][j - 1] = op
        return FreenessData(self.tmd, bar, self.hat, self.partial_sigma, self.det)


def _sum(ops: List[MonomialOperator], n, params) -> MonomialOperator:
    ops = [o for o in ops if not o.is_zero]
    if not ops:
        return zero_operator(n, params)
    total = ops[0]
    for o in ops[1:]:
        total = total + o
    return total


def build_freeness(tmd: TwistedMultiDerivation) -> FreenessData:
    """Solve barsigma . sigma^T = 1 and barsigma^T . hatsigma = 1 by triangular recursion.

    barsigma_ii = sigma_ii^-1,
    barsigma_ij = -sum_{k=j}^{i-1} sigma_ii^-1 sigma_ki barsigma_kj   (i > j),
    hatsigma_ii = sigma_ii,
    hatsigma_ij = -sum_{k=i+1}^{j} sigma_ii barsigma_ki hatsigma_kj   (i < j).
    """
    if tmd.shape == FULL:
        raise ShapeUnsupported("freeness data is only built for diagonal or upper-triangular sigma")
    n, P = tmd.n, tmd.params
    z = zero_operator(n, P)
    for i in range(1, n + 1):
        if tmd.s(i, i).inverse is None:
            raise NotFree(f"sigma_{i}{i} carries no inverse")
    inv = [tmd.s(i, i).inverse for i in range(1, n + 1)]

    bar = [[z] * n for _ in range(n)]
    for i in range(1, n + 1):
        bar[i - 1][i - 1] = inv[i - 1]
    for gap in range(1, n):
        for j in range(1, n - gap + 1):
            i = j + gap
            terms = [inv[i - 1].compose(tmd.s(k, i).compose(bar[k - 1][j - 1]))
                     for k in range(j, i)
                     if not tmd.s(k, i).is_zero and not bar[k - 1][j - 1].is_zero]
            op = -_sum(terms, n, P) if terms else z
            op.name = f"barsigma_{i}{j}"
            bar[i - 1][j - 1] = op

    hat = [[z] * n for _ in range(n)]
    for i in range(1, n + 1):
        hat[i - 1][i - 1] = tmd.s(i, i)
    for gap in range(1, n):
        for i in range(n - gap, 0, -1):
            j = i + gap
            terms = [tmd.s(i, i).compose(bar[k - 1][i - 1].compose(hat[k - 1][j - 1]))
                     for k in range(i + 1, j + 1)
                     if not bar[k - 1][i - 1].is_zero and not hat[k - 1][j - 1].is_zero]
            op = -_sum(terms, n, P) if terms else z
            op.name = f"hatsigma_{i}{j}"
            hat[i - 1][j - 1] = op

    partial_sigma = []
    for i in range(1, n + 1):
        terms = []
        for j in range(1, n + 1):
            for k in range(1, n + 1):
                b, h = bar[k - 1][j - 1], hat[k - 1][i - 1]
                if b.is_zero or h.is_zero:
                    continue
                terms.append(b.compose(tmd.d(j).compose(h)))
        op = _sum(terms, n, P)
        op.name = f"partial^sigma_{i}"
        partial_sigma.append(op)

    det = identity_operator(n, P)
    for i in range(1, n + 1):
        det = det.compose(tmd.s(i, i))
    det.name = "nu"
    return FreenessData(tmd, bar, hat, partial_sigma, det)


def check_freeness(fd: FreenessData, max_degree: int, name: str = "freeness") -> CheckResult:
    """barsigma.sigma^T = 1, sigma^T.barsigma = 1, hatsigma.barsigma^T = 1, barsigma^T.hatsigma = 1.

    The product in M_n(End A) composes entries: (X.Y)_ij = sum_k X_ik ∘ Y_kj.
    """
    tmd = fd.tmd
    n = fd.n
    s, b, h = tmd.s, fd.b, fd.h
    identities = [
        ("barsigma.sigmaT", lambda i, j, k: (b(i, k), s(j, k))),
        ("sigmaT.barsigma", lambda i, j, k: (s(k, i), b(k, j))),
        ("hatsigma.barsigmaT", lambda i, j, k: (h(i, k), b(j, k))),
        ("barsigmaT.hatsigma", lambda i, j, k: (b(k, i), h(k, j))),
    ]
    A = tmd.algebra
    mons = monomials(n, max_degree)

    def cases():
        for label, factors in identities:
            for i in range(1, n + 1):
                for j in range(1, n + 1):
                    for alpha in mons:
                        lhs = A.zero()
                        for k in range(1, n + 1):
                            f, g = factors(i, j, k)
                            if f.is_zero or g.is_zero:
                                continue
                            lhs = lhs + f(g.on_monomial(alpha))
                        rhs = A.monomial(alpha) if i == j else A.zero()
                        yield {"identity": label, "indices": [i, j], "alpha": alpha}, lhs, rhs

    return verify_cases(name, max_degree, cases())


# -- left/right coefficients ---------------------------------------------------------

def left_to_right(u: Form, fd: FreenessData, calc: DifferentialCalculus) -> Dict[Index, AlgebraElement]:
    """Rewrite ``sum a_I w_I`` as ``sum w_J c_J``; returns ``{J: c_J}``."""
    n = calc.n
    out: Dict[Index, AlgebraElement] = {}
    for I, a in u.coeffs.items():
        terms: Dict[Index, AlgebraElement] = {(): a}
        for idx in I:
            new: Dict[Index, AlgebraElement] = {}
            for prefix, c in terms.items():
                for j in range(1, n + 1):
                    op = fd.bar[j - 1][idx - 1]
                    if op.is_zero or j in prefix:
                        continue
                    v = op(c)
                    if not v:
                        continue
                    key = prefix + (j,)
                    new[key] = new[key] + v if key in new else v
            terms = new
        for word, c in terms.items():
            srt = calc.wedge_sort(word)
            if srt is None:
                continue
            sgn, J = srt
            c = c.scale(sgn)
            out[J] = out[J] + c if J in out else c
    return {J: c for J, c in out.items() if c}


def right_to_left(right: Dict[Index, AlgebraElement], calc: DifferentialCalculus,
                  degree: int) -> Form:
    """``sum w_J c_J`` back to left coefficients."""
    total = Form.zero(calc.n, degree, calc.params)
    for J, c in right.items():
        total = total + push_coefficient(c, J, calc)
    return total


def evaluate(f: HomForm, u: Form, fd: FreenessData, calc: DifferentialCalculus) -> AlgebraElement:
    """f(u) using right linearity: f(sum w_J c_J) = sum f(w_J) c_J."""
    if u.coeffs and u.degree != f.degree:
        raise DegreeMismatch(f"cannot evaluate a degree-{f.degree} functional on a "
                             f"degree-{u.degree} form")
    A = calc.algebra
    out = A.zero()
    for J, c in left_to_right(u, fd, calc).items():
        v = f.values.get(J)
        if v is not None:
            out = out + A.mul(v, c)
    return out


def hom_times(f: HomForm, a: AlgebraElement, fd: FreenessData, calc: DifferentialCalculus) -> HomForm:
    """Right action (f a)(w) = f(a w)."""
    vals = {}
    for I in basis_tuples(calc.n, f.degree):
        vals[I] = evaluate(f, Form.basis(calc, I, a), fd, calc)
    return HomForm(calc.n, f.degree, calc.params, vals)


def contract(f: HomForm, I: Sequence[int], calc: DifferentialCalculus) -> HomForm:
    """(f w_I)(v) = f(w_I ^ v), a functional of degree deg f - |I|."""
    I = tuple(I)
    m = f.degree - len(I)
    if m < 0:
        raise DegreeMismatch("contraction by a form of larger degree")
    vals = {}
    for J in basis_tuples(calc.n, m):
        srt = calc.wedge_sort(I + J)
        if srt is None:
            continue
        s, K = srt
        v = f.values.get(K)
        if v is not None:
            vals[J] = v.scale(s)
    return HomForm(calc.n, m, calc.params, vals)


# -- hom-connection -----------------------------------------------------------------

def nabla0(f: HomForm, fd: FreenessData) -> AlgebraElement:
    """sum_i partial^sigma_i(f(w_i))."""
    if f.degree != 1:
        raise DegreeMismatch(f"nabla0 takes a degree-1 functional, got degree {f.degree}")
    out = AlgebraElement.zero(f.n, f.params)
    for (i,), v in f.values.items():
        out = out + fd.ds(i)(v)
    return out


def nabla(f: HomForm, fd: FreenessData, calc: DifferentialCalculus) -> HomForm:
    """nabla_m: Hom(Omega^{m+1}, A) -> Hom(Omega^m, A), nabla_m(f)(w_I) = nabla0(f w_I).

    The f(dv) term vanishes on basis forms because d(w_I) = 0.
    """
    if f.degree < 1:
        raise DegreeMismatch("nabla needs a functional of degree at least 1")
    m = f.degree - 1
    vals = {}
    for I in basis_tuples(calc.n, m):
        vals[I] = nabla0(contract(f, I, calc), fd)
    return HomForm(calc.n, m, calc.params, vals)


def check_hom_connection_law(fd: FreenessData, calc: DifferentialCalculus, max_degree: int,
                             samples: int = 0, seed: int = 0,
                             name: str = "hom-connection-law") -> CheckResult:
    """nabla0(f a) = nabla0(f) a + f(d a) for dual-basis f (plus random f) and monomial a."""
    A = calc.algebra
    fs = [(f"xi_{i}", xi(calc, i)) for i in range(1, calc.n + 1)]
    rng = random.Random(seed)
    for t in range(samples):
        fs.append((f"random_{t}", random_homform(calc, 1, rng, max_degree)))

    def cases():
        for label, f in fs:
            for alpha in monomials(calc.n, max_degree):
                a = A.monomial(alpha)
                lhs = nabla0(hom_times(f, a, fd, calc), fd)
                rhs = A.mul(nabla0(f, fd), a) + evaluate(f, d(Form.function(a), calc), fd, calc)
                yield {"identity": "hom-connection", "f": label, "alpha": alpha}, lhs, rhs

    return verify_cases(name, max_degree, cases())


def check_xi_annihilated(fd: FreenessData, calc: DifferentialCalculus,
                         name: str = "nabla-xi-zero") -> CheckResult:
    A = calc.algebra
    return verify_cases(name, 0, (({"identity": "nabla(xi_i)=0", "indices": [i]},
                                   nabla0(xi(calc, i), fd), A.zero())
                                  for i in range(1, calc.n + 1)))


def random_homform(calc: DifferentialCalculus, degree: int, rng: random.Random,
                   max_degree: int) -> HomForm:
    """Functional with random small-integer multiples of monomials as values."""
    mons = monomials(calc.n, max_degree)
    vals = {}
    for I in basis_tuples(calc.n, degree):
        if rng.random() < 0.25:
            continue
        alpha = mons[rng.randrange(len(mons))]
        vals[I] = calc.algebra.monomial(alpha, rng.choice([1, 2, -1, 3]))
    return HomForm(calc.n, degree, calc.params, vals)


def check_flatness(fd: FreenessData, calc: DifferentialCalculus, random_forms: int = 20,
                   seed: int = 0, max_degree: int = 3, name: str = "flatness") -> CheckResult:
    """(a) partial^sigma_i(1) = 0 for every i; (b) nabla0(nabla_1(f)) = 0 for all
    beta_{s,t} and ``random_forms`` seeded random degree-2 functionals."""
    A = calc.algebra
    one = A.one()
    unit = verify_cases("partial-sigma-of-one", 0,
                        (({"identity": "partial^sigma(1)=0", "indices": [i]},
                          fd.ds(i)(one), A.zero()) for i in range(1, calc.n + 1)))
    if calc.n < 2:
        return combine(name, [unit], max_degree)
    rng = random.Random(seed)
    fs = [(f"beta_{s}{t}", dual_basis(calc, (s, t))) for s, t in basis_tuples(calc.n, 2)]
    fs += [(f"random_{k}", random_homform(calc, 2, rng, max_degree)) for k in range(random_forms)]

    def cases():
        for label, f in fs:
            yield ({"identity": "nabla0∘nabla1=0", "f": label},
                   nabla0(nabla(f, fd, calc), fd), A.zero())

    direct = verify_cases("nabla0-nabla1", max_degree, cases())
    return combine(name, [unit, direct], max_degree)


# -- Theta -----------------------------------------------------------------------------

def _sign(m: int, n: int) -> int:
    return -1 if (m * (n - 1)) % 2 else 1


def beta_left(c: AlgebraElement, fd: FreenessData) -> AlgebraElement:
    """beta(c wbar) for a left coefficient c: c wbar = wbar nu^-1(c)."""
    return fd.det.inverse(c)


def theta(v: Form, fd: FreenessData, calc: DifferentialCalculus) -> HomForm:
    """Theta_m(v)(w_J) = (-1)^{m(n-1)} beta(v ^ w_J)."""
    n, m = calc.n, v.degree
    sign = _sign(m, n)
    top = calc.top_index()
    vals = {}
    for J in basis_tuples(n, n - m):
        acc = AlgebraElement.zero(n, calc.params)
        for I, a in v.coeffs.items():
            srt = calc.wedge_sort(I + J)
            if srt is None:
                continue
            s, K = srt
            assert K == top
            acc = acc + a.scale(s)
        if acc:
            vals[J] = beta_left(acc, fd).scale(sign)
    return HomForm(n, n - m, calc.params, vals)


def complement(J: Sequence[int], n: int) -> Index:
    return tuple(i for i in range(1, n + 1) if i not in set(J))


def theta_inverse(f: HomForm, fd: FreenessData, calc: DifferentialCalculus) -> Form:
    """Preimage under Theta: for each basis w of degree n-m, the complement w'
    with w' ^ w = C wbar gets coefficient (-1)^{m(n-1)} C^-1 nu(f(w))."""
    n = calc.n
    m = n - f.degree
    sign = _sign(m, n)
    coeffs = {}
    for J, val in f.values.items():
        comp = complement(J, n)
        C, K = calc.wedge_sort(comp + J)
        coeffs[comp] = fd.det(val).scale(C ** -1 * sign)
    return Form(n, m, calc.params, coeffs)


def check_theta_roundtrip(fd: FreenessData, calc: DifferentialCalculus, max_degree: int,
                          name: str = "theta-roundtrip") -> CheckResult:
    """theta_inverse∘theta = id on a x^alpha w_I; theta∘theta_inverse = id on x^alpha beta_J."""
    A = calc.algebra
    n = calc.n

    def cases():
        for I in all_basis_tuples(n):
            for alpha in monomials(n, max_degree):
                v = Form.basis(calc, I, A.monomial(alpha))
                yield ({"identity": "theta_inverse∘theta", "indices": list(I), "alpha": alpha},
                       theta_inverse(theta(v, fd, calc), fd, calc), v)
        for J in all_basis_tuples(n):
            for alpha in monomials(n, max_degree):
                f = HomForm(n, len(J), calc.params, {J: A.monomial(alpha)})
                yield ({"identity": "theta∘theta_inverse", "indices": list(J), "alpha": alpha},
                       theta(theta_inverse(f, fd, calc), fd, calc), f)

    return verify_cases(name, max_degree, cases())


def check_theta_right_linear(fd: FreenessData, calc: DifferentialCalculus, max_degree: int,
                             name: str = "theta-right-linear") -> CheckResult:
    """Theta_m(w_I a) = Theta_m(w_I) a, the right action being (f a)(w) = f(a w)."""
    A = calc.algebra
    n = calc.n

    def cases():
        for I in all_basis_tuples(n):
            base = theta(Form.basis(calc, I), fd, calc)
            for alpha in monomials(n, max_degree):
                a = A.monomial(alpha)
                va = push_coefficient(a, I, calc)
                rhs = hom_times(base, a, fd, calc)
                yield ({"identity": "theta(va)=theta(v)a", "indices": list(I), "alpha": alpha},
                       theta(va, fd, calc), rhs)

    return verify_cases(name, max_degree, cases())


def check_left_right_roundtrip(fd: FreenessData, calc: DifferentialCalculus, max_degree: int,
                               name: str = "left-right-roundtrip") -> CheckResult:
    A = calc.algebra

    def cases():
        for I in all_basis_tuples(calc.n):
            for alpha in monomials(calc.n, max_degree):
                u = Form.basis(calc, I, A.monomial(alpha))
                back = right_to_left(left_to_right(u, fd, calc), calc, len(I))
                yield {"identity": "left→right→left", "indices": list(I), "alpha": alpha}, back, u

    return verify_cases(name, max_degree, cases())


def check_poincare_condition(fd: FreenessData, calc: DifferentialCalculus, max_degree: int,
                             name: str = "poincare-condition") -> CheckResult:
    """partial^sigma_i = (prod_j q'_ij) nu^-1 partial_i nu on monomials."""
    n = calc.n
    tmd = calc.tmd
    nu, nu_inv = fd.det, fd.det.inverse

    def cases():
        for i in range(1, n + 1):
            factor = Scalar.const(calc.params, 1)
            for j in range(1, n + 1):
                factor = factor * calc.qext(i, j)
            for alpha in monomials(n, max_degree):
                lhs = fd.ds(i).on_monomial(alpha)
                rhs = nu_inv(tmd.d(i)(nu.on_monomial(alpha))).scale(factor)
                yield {"identity": "poincare", "indices": [i], "alpha": alpha}, lhs, rhs

    return verify_cases(name, max_degree, cases())


def check_diagonal_shortcut(fd: FreenessData, calc: DifferentialCalculus, max_degree: int,
                            name: str = "diagonal-shortcut") -> CheckResult:
    """Diagonal sigma: partial^sigma_i = partial_i and partial_i nu = (prod_j q'_ji) nu partial_i."""
    if calc.tmd.shape != DIAGONAL:
        raise ShapeUnsupported("the diagonal shortcut applies only to diagonal sigma")
    n = calc.n
    tmd = calc.tmd
    nu = fd.det

    def cases():
        for i in range(1, n + 1):
            for alpha in monomials(n, max_degree):
                yield ({"identity": "partial^sigma=partial", "indices": [i], "alpha": alpha},
                       fd.ds(i).on_monomial(alpha), tmd.d(i).on_monomial(alpha))
        for i in range(1, n + 1):
            factor = Scalar.const(calc.params, 1)
            for j in range(1, n + 1):
                factor = factor * calc.qext(j, i)
            for alpha in monomials(n, max_degree):
                yield ({"identity": "partial nu = (prod q'_ji) nu partial", "indices": [i],
                        "alpha": alpha},
                       tmd.d(i)(nu.on_monomial(alpha)),
                       nu(tmd.d(i).on_monomial(alpha)).scale(factor))

    return verify_cases(name, max_degree, cases())


def check_chain_map(fd: FreenessData, calc: DifferentialCalculus, max_degree: int,
                    name: str = "chain-map") -> CheckResult:
    """Theta_{m+1}(d(a w))(v) = nabla_{n-m-1}(Theta_m(a w))(v) for every basis w of
    Omega^m, every basis v of Omega^{n-m-1}, and a = x^alpha."""
    A = calc.algebra
    n = calc.n

    def cases():
        for m in range(n):
            for I in basis_tuples(n, m):
                for alpha in monomials(n, max_degree):
                    u = Form.basis(calc, I, A.monomial(alpha))
                    left = theta(d(u, calc), fd, calc)
                    right = nabla(theta(u, fd, calc), fd, calc)
                    for J in basis_tuples(n, n - m - 1):
                        yield ({"identity": "Theta∘d = nabla∘Theta", "m": m,
                                "indices": [list(I), list(J)], "alpha": alpha},
                               left.value(J), right.value(J))

    return verify_cases(name, max_degree, cases())
