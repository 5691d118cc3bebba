"""Quantum exterior algebra over O_Q(K^n) and its differential.

Forms are stored with left coefficients, ``u = sum_I a_I w_I`` over strictly
increasing index tuples ``I``.  Coefficients move right-to-left through a
generator by the bimodule rule ``w_i a = sum_j sigma_ij(a) w_j``, and basis
words are normalised with ``w_j ^ w_i = -q'_ji w_i ^ w_j``, ``w_i ^ w_i = 0``.
"""
from __future__ import annotations

import random
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import (
    AlgebraElement,
    QMatrix,
    QuantumAffineAlgebra,
    TwistedMultiDerivation,
    monomials,
)
from .results import CheckResult, verify_cases
from .scalar import Scalar

Index = Tuple[int, ...]


def basis_tuples(n: int, m: int) -> List[Index]:
    return list(combinations(range(1, n + 1), m))


def all_basis_tuples(n: int) -> List[Index]:
    return [I for m in range(n + 1) for I in basis_tuples(n, m)]


def render_index(I: Index) -> str:
    return "∧".join(f"w{i}" for i in I) if I else "1"


class Form:
    """Homogeneous element ``sum_I a_I w_I`` of degree ``degree``."""

    __slots__ = ("n", "degree", "params", "coeffs")

    def __init__(self, n: int, degree: int, params, coeffs: Dict[Index, AlgebraElement] = None):
        self.n = n
        self.degree = degree
        self.params = params
        clean = {}
        for I, a in (coeffs or {}).items():
            I = tuple(I)
            if len(I) != degree or any(I[k] >= I[k + 1] for k in range(len(I) - 1)):
                raise ValueError(f"{I} is not a strictly increasing index tuple of length {degree}")
            if any(not 1 <= i <= n for i in I):
                raise ValueError(f"index out of range in {I}")
            if a:
                clean[I] = a
        self.coeffs = clean

    @classmethod
    def zero(cls, n, degree, params) -> "Form":
        return cls(n, degree, params, {})

    @classmethod
    def basis(cls, calc: "DifferentialCalculus", I: Sequence[int],
              coeff: Optional[AlgebraElement] = None) -> "Form":
        I = tuple(I)
        if coeff is None:
            coeff = calc.algebra.one()
        return cls(calc.n, len(I), calc.params, {I: coeff})

    @classmethod
    def function(cls, a: AlgebraElement) -> "Form":
        return cls(a.n, 0, a.params, {(): a})

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __add__(self, other: "Form") -> "Form":
        if not isinstance(other, Form):
            return NotImplemented
        if not other.coeffs:
            return self
        if not self.coeffs:
            return other
        if other.degree != self.degree:
            raise ValueError(f"cannot add forms of degree {self.degree} and {other.degree}")
        out = dict(self.coeffs)
        for I, a in other.coeffs.items():
            s = out[I] + a if I in out else a
            if s:
                out[I] = s
            else:
                out.pop(I, None)
        return Form(self.n, self.degree, self.params, out)

    def __neg__(self):
        return Form(self.n, self.degree, self.params, {I: -a for I, a in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "Form":
        return Form(self.n, self.degree, self.params,
                    {I: a.scale(c) for I, a in self.coeffs.items()})

    def __eq__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        if not self.coeffs and not other.coeffs:
            return True
        return self.degree == other.degree and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.degree, frozenset(self.coeffs.items())))

    def support(self):
        return set().union(*(set(I) for I in self.coeffs)) if self.coeffs else set()

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for I in sorted(self.coeffs):
            body = str(self.coeffs[I])
            parts.append(f"({body})*{render_index(I)}" if I else f"({body})")
        return " + ".join(parts)

    def __repr__(self):
        return f"Form(deg={self.degree}, {self})"


class DifferentialCalculus:
    """The data (A, Q', (partial, sigma)) with caches for repeated normalisation."""

    def __init__(self, algebra: QuantumAffineAlgebra, qext: QMatrix, tmd: TwistedMultiDerivation,
                 degree_bound: int = 4, name: str = "custom"):
        if qext.n != algebra.n or tmd.n != algebra.n:
            raise ValueError("ranks of the algebra, Q' and the twisted multi-derivation differ")
        if qext.params != algebra.params:
            raise ValueError("Q' must be defined over the algebra's parameters")
        problem = qext.antisymmetry_defect()
        if problem:
            raise ValueError(f"Q' is not multiplicatively antisymmetric: {problem}")
        self.algebra = algebra
        self.n = algebra.n
        self.params = algebra.params
        self.Q = algebra.Q
        self.qext = qext
        self.tmd = tmd
        self.degree_bound = degree_bound
        self.name = name
        self._sort_cache: Dict[Index, Optional[Tuple[Scalar, Index]]] = {}
        self._push_cache: Dict[Tuple[Tuple, Index], Dict[Index, AlgebraElement]] = {}

    def with_qext(self, qext: QMatrix) -> "DifferentialCalculus":
        return DifferentialCalculus(self.algebra, qext, self.tmd, self.degree_bound, self.name)

    def with_tmd(self, tmd: TwistedMultiDerivation) -> "DifferentialCalculus":
        return DifferentialCalculus(self.algebra, self.qext, tmd, self.degree_bound, self.name)

    def wedge_sort(self, indices: Sequence[int]):
        key = tuple(indices)
        if key not in self._sort_cache:
            self._sort_cache[key] = wedge_sort(key, self.qext)
        return self._sort_cache[key]

    def one_form(self, i: int, coeff: Optional[AlgebraElement] = None) -> Form:
        return Form.basis(self, (i,), coeff)

    def top_index(self) -> Index:
        return tuple(range(1, self.n + 1))


def wedge_sort(indices: Sequence[int], qext: QMatrix):
    """Reorder ``w_{i1} ^ ... ^ w_{ik}`` into ascending order.

    Returns ``(coefficient, sorted tuple)``, or ``None`` when an index
    repeats (the product vanishes).  Each adjacent swap of ``w_a w_b`` with
    ``a > b`` contributes ``-q'_ab``.
    """
    idx = list(indices)
    if len(set(idx)) != len(idx):
        return None
    coeff = Scalar.const(qext.params, 1)
    k = len(idx)
    for end in range(k - 1, 0, -1):
        for t in range(end):
            a, b = idx[t], idx[t + 1]
            if a > b:
                coeff = coeff * (-qext(a, b))
                idx[t], idx[t + 1] = b, a
    return coeff, tuple(idx)


def _push_raw(a: AlgebraElement, I: Index, calc: DifferentialCalculus) -> Dict[Index, AlgebraElement]:
    """w_I a as a sum over unsorted index words of left coefficients."""
    sigma = calc.tmd.sigma
    n = calc.n
    terms: Dict[Index, AlgebraElement] = {(): a}
    for idx in reversed(I):
        row = sigma[idx - 1]
        new: Dict[Index, AlgebraElement] = {}
        for suffix, c in terms.items():
            for j in range(1, n + 1):
                op = row[j - 1]
                if op.is_zero or j in suffix:
                    continue
                s = op(c)
                if not s:
                    continue
                key = (j,) + suffix
                if key in new:
                    s = new[key] + s
                    if not s:
                        del new[key]
                        continue
                new[key] = s
        terms = new
    return terms


def push_coefficient(a: AlgebraElement, I: Sequence[int], calc: DifferentialCalculus) -> Form:
    """Express ``w_I a`` with left coefficients."""
    I = tuple(I)
    if len(a.terms) == 1 and I:
        ((alpha, c),) = a.terms.items()
        key = (alpha, I)
        hit = calc._push_cache.get(key)
        if hit is None:
            hit = _push_sorted(AlgebraElement.monomial(calc.n, calc.params, alpha), I, calc)
            calc._push_cache[key] = hit
        return Form(calc.n, len(I), calc.params, {J: v.scale(c) for J, v in hit.items()})
    return Form(calc.n, len(I), calc.params, _push_sorted(a, I, calc))


def _push_sorted(a, I, calc):
    out: Dict[Index, AlgebraElement] = {}
    for word, c in _push_raw(a, I, calc).items():
        sorted_ = calc.wedge_sort(word)
        if sorted_ is None:
            continue
        s, J = sorted_
        c = c.scale(s)
        if J in out:
            c = out[J] + c
            if not c:
                del out[J]
                continue
        out[J] = c
    return out


def form_wedge(u: Form, v: Form, calc: DifferentialCalculus) -> Form:
    """(a w_I) ^ (b w_J) = a (w_I b) ^ w_J, extended bilinearly."""
    deg = u.degree + v.degree
    if deg > calc.n:
        return Form.zero(calc.n, deg, calc.params)
    A = calc.algebra
    acc: Dict[Index, AlgebraElement] = {}
    for I, a in u.coeffs.items():
        for J, b in v.coeffs.items():
            # no support shortcut here: pushing b through w_I can change indices
            pushed = push_coefficient(b, I, calc)
            for K, c in pushed.coeffs.items():
                sorted_ = calc.wedge_sort(K + J)
                if sorted_ is None:
                    continue
                s, L = sorted_
                term = A.mul(a, c).scale(s)
                acc[L] = acc[L] + term if L in acc else term
    return Form(calc.n, deg, calc.params, acc)


def d(u: Form, calc: DifferentialCalculus) -> Form:
    """d(a w_I) = sum_i partial_i(a) w_i ^ w_I."""
    deg = u.degree + 1
    acc: Dict[Index, AlgebraElement] = {}
    for I, a in u.coeffs.items():
        for i in range(1, calc.n + 1):
            if i in I:
                continue
            da = calc.tmd.partial[i - 1](a)
            if not da:
                continue
            s, J = calc.wedge_sort((i,) + I)
            term = da.scale(s)
            if J in acc:
                term = acc[J] + term
                if not term:
                    del acc[J]
                    continue
            acc[J] = term
    return Form(calc.n, deg, calc.params, acc)


def d_function(a: AlgebraElement, calc: DifferentialCalculus) -> Form:
    return d(Form.function(a), calc)


# -- checks --------------------------------------------------------------------

FAMILY_QCOMM = "partial-partial"
FAMILY_MIXED = "partial-sigma"


def check_extension_conditions(calc: DifferentialCalculus, max_degree: int,
                               name: str = "extension-conditions") -> CheckResult:
    """For i < j and all k:
        partial_i partial_j = q'_ji partial_j partial_i,
        partial_i sigma_kj - q'_ji partial_j sigma_ki = q'_ji sigma_kj partial_i - sigma_ki partial_j.
    """
    n = calc.n
    tmd = calc.tmd
    A = calc.algebra
    mons = monomials(n, max_degree)
    pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]

    def cases():
        for alpha in mons:
            for i, j in pairs:
                q = calc.qext(j, i)
                lhs = tmd.d(i)(tmd.d(j).on_monomial(alpha))
                rhs = tmd.d(j)(tmd.d(i).on_monomial(alpha)).scale(q)
                yield {"identity": FAMILY_QCOMM, "indices": [i, j], "alpha": alpha}, lhs, rhs
        for alpha in mons:
            x = A.monomial(alpha)
            for i, j in pairs:
                q = calc.qext(j, i)
                for k in range(1, n + 1):
                    skj, ski = tmd.s(k, j), tmd.s(k, i)
                    lhs = tmd.d(i)(skj(x)) - tmd.d(j)(ski(x)).scale(q)
                    rhs = skj(tmd.d(i)(x)).scale(q) - ski(tmd.d(j)(x))
                    yield ({"identity": FAMILY_MIXED, "indices": [i, j, k], "alpha": alpha},
                           lhs, rhs)

    return verify_cases(name, max_degree, cases())


def check_d_squared(calc: DifferentialCalculus, max_degree: int,
                    name: str = "d-squared") -> CheckResult:
    A = calc.algebra

    def cases():
        for I in all_basis_tuples(calc.n):
            for alpha in monomials(calc.n, max_degree):
                u = Form.basis(calc, I, A.monomial(alpha))
                yield ({"identity": "d∘d", "indices": list(I), "alpha": alpha},
                       d(d(u, calc), calc), Form.zero(calc.n, len(I) + 2, calc.params))

    return verify_cases(name, max_degree, cases())


def random_basis_form(calc: DifferentialCalculus, rng: random.Random, max_degree: int,
                      degree: Optional[int] = None) -> Form:
    """``c x^alpha w_I`` with a random small integer ``c``."""
    n = calc.n
    m = rng.randint(0, n) if degree is None else degree
    I = tuple(sorted(rng.sample(range(1, n + 1), m)))
    mons = monomials(n, max_degree)
    alpha = mons[rng.randrange(len(mons))]
    c = rng.choice([1, 1, 2, -1, 3])
    return Form.basis(calc, I, calc.algebra.monomial(alpha, c))


def check_graded_leibniz(calc: DifferentialCalculus, max_degree: int, samples: int = 200,
                         seed: int = 0, name: str = "graded-leibniz") -> CheckResult:
    """d(u ^ v) = d(u) ^ v + (-1)^|u| u ^ d(v) on seeded random pairs."""
    rng = random.Random(seed)
    half = max(max_degree // 2, 0)

    def cases():
        for t in range(samples):
            u = random_basis_form(calc, rng, half)
            v = random_basis_form(calc, rng, max_degree - half)
            lhs = d(form_wedge(u, v, calc), calc)
            sign = -1 if u.degree % 2 else 1
            rhs = form_wedge(d(u, calc), v, calc) + form_wedge(u, d(v, calc), calc).scale(sign)
            yield ({"identity": "graded-leibniz", "sample": t, "u": str(u), "v": str(v)},
                   lhs, rhs)

    return verify_cases(name, max_degree, cases())


def check_wedge_associativity(calc: DifferentialCalculus, max_degree: int, samples: int = 50,
                              seed: int = 0, name: str = "wedge-associativity") -> CheckResult:
    rng = random.Random(seed)

    def cases():
        for t in range(samples):
            u, v, w = (random_basis_form(calc, rng, max_degree) for _ in range(3))
            lhs = form_wedge(form_wedge(u, v, calc), w, calc)
            rhs = form_wedge(u, form_wedge(v, w, calc), calc)
            yield {"identity": "wedge-associativity", "sample": t}, lhs, rhs

    return verify_cases(name, max_degree, cases())
