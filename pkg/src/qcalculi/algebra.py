"""Quantum affine space O_Q(K^n) and linear operators on it.

Elements are finite sums of ordered monomials ``x^alpha = x_1^a1 ... x_n^an``
with :class:`~qcalculi.scalar.Scalar` coefficients, multiplied through

    x^alpha x^beta = mu(alpha, beta) x^(alpha+beta),
    mu(alpha, beta) = prod_{j<i} q_ij^(alpha_i beta_j).

Operators (:class:`MonomialOperator`) are extensional: a rule giving the
image of each monomial, extended linearly and memoised.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .results import CheckResult, verify_cases
from .scalar import ParamSet, Scalar

Monomial = Tuple[int, ...]


class RelationViolation(ValueError):
    def __init__(self, i, j, message=""):
        super().__init__(message or f"generator images violate the relation for (i, j) = ({i}, {j})")
        self.i = i
        self.j = j


class QMatrixError(ValueError):
    pass


def unit_vector(n: int, i: int) -> Monomial:
    """epsilon^i, 1-based."""
    return tuple(1 if k == i - 1 else 0 for k in range(n))


def monomials_of_degree(n: int, d: int) -> List[Monomial]:
    """All alpha with |alpha| = d, in descending lexicographic order."""
    if n == 0:
        return [()] if d == 0 else []
    out = []
    for first in range(d, -1, -1):
        for rest in monomials_of_degree(n - 1, d - first):
            out.append((first,) + rest)
    return out


def monomials(n: int, max_degree: int) -> List[Monomial]:
    """Graded enumeration: by total degree, then descending lex (x_1 > x_2 > ...)."""
    out = []
    for d in range(max_degree + 1):
        out.extend(monomials_of_degree(n, d))
    return out


def render_monomial(alpha: Monomial) -> str:
    parts = [f"x{i + 1}" if a == 1 else f"x{i + 1}^{a}" for i, a in enumerate(alpha) if a]
    return "*".join(parts) if parts else "1"


class AlgebraElement:
    """Finite sum of Scalar-weighted ordered monomials."""

    __slots__ = ("n", "params", "terms")

    def __init__(self, n: int, params: ParamSet, terms: Dict[Monomial, Scalar] = None,
                 _trusted: bool = False):
        self.n = n
        self.params = params
        if _trusted:
            self.terms = terms
            return
        clean: Dict[Monomial, Scalar] = {}
        for alpha, c in (terms or {}).items():
            alpha = tuple(alpha)
            if len(alpha) != n:
                raise ValueError(f"monomial {alpha} has wrong rank (expected {n})")
            if any(a < 0 for a in alpha):
                continue  # x^alpha = 0 when some exponent is negative
            if not isinstance(c, Scalar):
                c = Scalar.const(params, c)
            if c:
                prev = clean.get(alpha)
                c = c if prev is None else prev + c
                if c:
                    clean[alpha] = c
                else:
                    del clean[alpha]
        self.terms = clean

    # -- construction ------------------------------------------------------

    @classmethod
    def zero(cls, n: int, params: ParamSet) -> "AlgebraElement":
        return cls(n, params, {}, _trusted=True)

    @classmethod
    def const(cls, n: int, c: Scalar) -> "AlgebraElement":
        if not c:
            return cls(n, c.params, {}, _trusted=True)
        return cls(n, c.params, {(0,) * n: c}, _trusted=True)

    @classmethod
    def monomial(cls, n: int, params: ParamSet, alpha: Sequence[int], c=None) -> "AlgebraElement":
        alpha = tuple(alpha)
        if any(a < 0 for a in alpha):
            return cls.zero(n, params)
        if c is None:
            c = Scalar.const(params, 1)
        elif not isinstance(c, Scalar):
            c = Scalar.const(params, c)
        if not c:
            return cls.zero(n, params)
        return cls(n, params, {alpha: c}, _trusted=True)

    # -- arithmetic --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for alpha, c in other.terms.items():
            prev = out.get(alpha)
            if prev is None:
                out[alpha] = c
            else:
                s = prev + c
                if s:
                    out[alpha] = s
                else:
                    del out[alpha]
        return AlgebraElement(self.n, self.params, out, _trusted=True)

    def __neg__(self):
        return AlgebraElement(self.n, self.params, {a: -c for a, c in self.terms.items()},
                              _trusted=True)

    def __sub__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "AlgebraElement":
        if isinstance(c, (int, Fraction)):
            if c == 1:
                return self
            c = Scalar.const(self.params, c)
        if not c:
            return AlgebraElement.zero(self.n, self.params)
        if c.is_constant() and c.constant_value() == 1:
            return self
        out = {}
        for alpha, v in self.terms.items():
            w = v * c
            if w:
                out[alpha] = w
        return AlgebraElement(self.n, self.params, out, _trusted=True)

    def coefficient(self, alpha: Sequence[int]) -> Scalar:
        return self.terms.get(tuple(alpha), Scalar.const(self.params, 0))

    def degree(self) -> int:
        return max((sum(a) for a in self.terms), default=-1)

    # -- comparison / rendering ----------------------------------------------

    def __eq__(self, other):
        if isinstance(other, AlgebraElement):
            return self.n == other.n and self.terms == other.terms
        if isinstance(other, (int, Fraction)) and other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: (-sum(t[0]), tuple(-a for a in t[0])))

    def __str__(self):
        from .parsing import render_terms

        flat = []
        for alpha, c in self.sorted_terms():
            gens = [(f"x{i + 1}", a) for i, a in enumerate(alpha) if a]
            for e, v in c.sorted_terms():
                pars = [(name, k) for name, k in zip(self.params.names, e) if k]
                flat.append((v, pars + gens))
        return render_terms(flat)

    def __repr__(self):
        return f"AlgebraElement({self})"


class QMatrix:
    """Multiplicatively antisymmetric n x n matrix of unit Scalars (1-based)."""

    def __init__(self, entries: Sequence[Sequence[Scalar]], validate: bool = True):
        rows = [list(r) for r in entries]
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise QMatrixError("Q must be a nonempty square matrix")
        params = rows[0][0].params
        for i in range(n):
            for j in range(n):
                c = rows[i][j]
                if not isinstance(c, Scalar):
                    c = Scalar.const(params, c)
                rows[i][j] = c
        self.n = n
        self.params = params
        self.entries = tuple(tuple(r) for r in rows)
        if validate:
            problem = self.antisymmetry_defect()
            if problem:
                raise QMatrixError(problem)
        # entries are single-term units: cache (coefficient, exponent)
        self._unit = [[next(iter(c.terms.items()), None) for c in r] for r in self.entries]
        self._mu_cache: Dict[Tuple[Monomial, Monomial], Scalar] = {}

    def antisymmetry_defect(self) -> Optional[str]:
        one = Scalar.const(self.params, 1)
        for i in range(self.n):
            if self.entries[i][i] != one:
                return f"q_{i + 1}{i + 1} = {self.entries[i][i]} is not 1"
            for j in range(self.n):
                c = self.entries[i][j]
                if not c.is_unit():
                    return f"q_{i + 1}{j + 1} = {c} is not a unit"
                if c * self.entries[j][i] != one:
                    return f"q_{i + 1}{j + 1} q_{j + 1}{i + 1} != 1"
        return None

    def __call__(self, i: int, j: int) -> Scalar:
        return self.entries[i - 1][j - 1]

    def __eq__(self, other):
        return isinstance(other, QMatrix) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return "QMatrix([" + ", ".join("[" + ", ".join(str(c) for c in r) + "]"
                                       for r in self.entries) + "])"

    @classmethod
    def from_upper(cls, n: int, params: ParamSet, upper: Callable[[int, int], Scalar]):
        """Build Q from its entries q_ij, i < j; the rest follows by antisymmetry."""
        one = Scalar.const(params, 1)
        rows = [[one] * n for _ in range(n)]
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                c = upper(i, j)
                if not isinstance(c, Scalar):
                    c = Scalar.const(params, c)
                rows[i - 1][j - 1] = c
                rows[j - 1][i - 1] = c ** -1
        return cls(rows)

    @classmethod
    def uniform(cls, n: int, value: Scalar) -> "QMatrix":
        return cls.from_upper(n, value.params, lambda i, j: value)

    @classmethod
    def generic(cls, n: int, params: Optional[ParamSet] = None) -> "QMatrix":
        """One independent parameter ``q<i><j>`` per entry above the diagonal."""
        names = [generic_name(i, j, n) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
        if params is None:
            params = ParamSet(names)
        return cls.from_upper(n, params, lambda i, j: params.gen(generic_name(i, j, n)))

    def mu(self, alpha: Monomial, beta: Monomial) -> Scalar:
        key = (alpha, beta)
        hit = self._mu_cache.get(key)
        if hit is not None:
            return hit
        coeff = Fraction(1)
        exp = [0] * len(self.params)
        n = self.n
        for i in range(n):
            ai = alpha[i]
            if not ai:
                continue
            for j in range(i):
                k = ai * beta[j]
                if not k:
                    continue
                e, c = self._unit[i][j]
                coeff *= c ** k
                for v, ev in enumerate(e):
                    exp[v] += ev * k
        out = Scalar(self.params, {tuple(exp): coeff}, _trusted=True)
        self._mu_cache[key] = out
        return out


def generic_name(i: int, j: int, n: int) -> str:
    return f"q{i}{j}" if n < 10 else f"q{i}_{j}"


def mu(Q: QMatrix, alpha: Monomial, beta: Monomial) -> Scalar:
    return Q.mu(tuple(alpha), tuple(beta))


class QuantumAffineAlgebra:
    """O_Q(K^n): generators x_1..x_n with x_i x_j = q_ij x_j x_i."""

    def __init__(self, Q: QMatrix):
        self.Q = Q
        self.n = Q.n
        self.params = Q.params

    def zero(self) -> AlgebraElement:
        return AlgebraElement.zero(self.n, self.params)

    def one(self) -> AlgebraElement:
        return AlgebraElement.const(self.n, Scalar.const(self.params, 1))

    def const(self, c) -> AlgebraElement:
        if not isinstance(c, Scalar):
            c = Scalar.const(self.params, c)
        return AlgebraElement.const(self.n, c)

    def gen(self, i: int) -> AlgebraElement:
        return self.monomial(unit_vector(self.n, i))

    def monomial(self, alpha: Sequence[int], c=None) -> AlgebraElement:
        return AlgebraElement.monomial(self.n, self.params, alpha, c)

    def scalar(self, c) -> Scalar:
        return c if isinstance(c, Scalar) else Scalar.const(self.params, c)

    def mul(self, x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
        if not x.terms or not y.terms:
            return self.zero()
        out: Dict[Monomial, Scalar] = {}
        Q = self.Q
        for a, ca in x.terms.items():
            for b, cb in y.terms.items():
                c = ca * cb * Q.mu(a, b)
                ab = tuple(u + v for u, v in zip(a, b))
                prev = out.get(ab)
                if prev is not None:
                    c = prev + c
                    if not c:
                        del out[ab]
                        continue
                out[ab] = c
        return AlgebraElement(self.n, self.params, out, _trusted=True)

    def power(self, x: AlgebraElement, k: int) -> AlgebraElement:
        result = self.one()
        for _ in range(k):
            result = self.mul(result, x)
        return result

    def __eq__(self, other):
        return isinstance(other, QuantumAffineAlgebra) and self.Q == other.Q

    def __hash__(self):
        return hash(self.Q)


def elem_mul(Q: QMatrix, x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    return QuantumAffineAlgebra(Q).mul(x, y)


# -- operators ---------------------------------------------------------------

HOM = "algebra-hom"
DERIVATION = "twisted-derivation"
COMPOSITE = "composite"
ZERO = "zero"


class MonomialOperator:
    """A K-linear map on the algebra, fixed by its values on monomials."""

    def __init__(self, n: int, params: ParamSet, rule: Callable[[Monomial], AlgebraElement],
                 kind: str = COMPOSITE, inverse: Optional["MonomialOperator"] = None,
                 name: str = ""):
        self.n = n
        self.params = params
        self._rule = rule
        self.kind = kind
        self.inverse = inverse
        self.name = name
        self._memo: Dict[Monomial, AlgebraElement] = {}

    def __repr__(self):
        return f"MonomialOperator({self.name or self.kind})"

    @property
    def is_zero(self) -> bool:
        return self.kind == ZERO

    def on_monomial(self, alpha: Monomial) -> AlgebraElement:
        hit = self._memo.get(alpha)
        if hit is None:
            hit = self._rule(alpha)
            self._memo[alpha] = hit
        return hit

    def __call__(self, elem: AlgebraElement) -> AlgebraElement:
        if self.kind == ZERO or not elem.terms:
            return AlgebraElement.zero(self.n, self.params)
        if len(elem.terms) == 1:
            ((alpha, c),) = elem.terms.items()
            return self.on_monomial(alpha).scale(c)
        out: Dict[Monomial, Scalar] = {}
        for alpha, c in elem.terms.items():
            for beta, v in self.on_monomial(alpha).terms.items():
                w = v * c
                prev = out.get(beta)
                if prev is not None:
                    w = prev + w
                    if not w:
                        del out[beta]
                        continue
                out[beta] = w
        return AlgebraElement(self.n, self.params, out, _trusted=True)

    def apply_monomial(self, alpha: Sequence[int]) -> AlgebraElement:
        alpha = tuple(alpha)
        if any(a < 0 for a in alpha):
            return AlgebraElement.zero(self.n, self.params)
        return self.on_monomial(alpha)

    def compose(self, other: "MonomialOperator") -> "MonomialOperator":
        """``self ∘ other``."""
        if self.kind == ZERO or other.kind == ZERO:
            return zero_operator(self.n, self.params)
        inv = None
        if self.inverse is not None and other.inverse is not None:
            inv = MonomialOperator(self.n, self.params,
                                   lambda a, f=other.inverse, g=self.inverse: f(g.on_monomial(a)),
                                   name=f"({self.name}∘{other.name})^-1")
        kind = HOM if self.kind == HOM and other.kind == HOM else COMPOSITE
        op = MonomialOperator(self.n, self.params, lambda a: self(other.on_monomial(a)),
                              kind=kind, inverse=inv, name=f"{self.name}∘{other.name}")
        if inv is not None:
            inv.inverse = op
        return op

    def __matmul__(self, other):
        return self.compose(other)

    def __add__(self, other: "MonomialOperator") -> "MonomialOperator":
        if other.kind == ZERO:
            return self
        if self.kind == ZERO:
            return other
        return MonomialOperator(self.n, self.params,
                                lambda a: self.on_monomial(a) + other.on_monomial(a),
                                name=f"({self.name}+{other.name})")

    def __neg__(self):
        if self.kind == ZERO:
            return self
        return MonomialOperator(self.n, self.params, lambda a: -self.on_monomial(a),
                                name=f"-{self.name}")

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "MonomialOperator":
        if self.kind == ZERO:
            return self
        if not isinstance(c, Scalar):
            c = Scalar.const(self.params, c)
        if not c:
            return zero_operator(self.n, self.params)
        op = MonomialOperator(self.n, self.params, lambda a: self.on_monomial(a).scale(c),
                              kind=self.kind if self.kind != HOM else COMPOSITE,
                              name=f"{c}*{self.name}")
        if self.inverse is not None and c.is_unit():
            # (c f)^-1 = c^-1 f^-1; built directly since f and f^-1 refer to each other
            ci, finv = c ** -1, self.inverse
            op.inverse = MonomialOperator(self.n, self.params,
                                          lambda a: finv.on_monomial(a).scale(ci),
                                          kind=op.kind, inverse=op, name=f"({op.name})^-1")
        return op


def zero_operator(n: int, params: ParamSet) -> MonomialOperator:
    z = AlgebraElement.zero(n, params)
    return MonomialOperator(n, params, lambda a: z, kind=ZERO, name="0")


def identity_operator(n: int, params: ParamSet) -> MonomialOperator:
    one = Scalar.const(params, 1)
    op = MonomialOperator(n, params,
                          lambda a: AlgebraElement(n, params, {a: one}, _trusted=True),
                          kind=HOM, name="id")
    op.inverse = op
    return op


def scaling_operator(n: int, params: ParamSet, factor: Callable[[Monomial], Scalar],
                     name: str = "", kind: str = HOM) -> MonomialOperator:
    """x^alpha -> factor(alpha) x^alpha, with inverse x^alpha -> factor(alpha)^-1 x^alpha."""
    op = MonomialOperator(n, params,
                          lambda a: AlgebraElement.monomial(n, params, a, factor(a)),
                          kind=kind, name=name)
    inv = MonomialOperator(n, params,
                           lambda a: AlgebraElement.monomial(n, params, a, factor(a) ** -1),
                           kind=kind, name=f"{name}^-1", inverse=op)
    op.inverse = inv
    return op


def operators_agree(f: MonomialOperator, g: MonomialOperator, max_degree: int,
                    name: str = "operator-equality") -> CheckResult:
    return verify_cases(name, max_degree,
                        (({"alpha": a}, f.on_monomial(a), g.on_monomial(a))
                         for a in monomials(f.n, max_degree)))


def hom_from_generator_images(algebra: QuantumAffineAlgebra, images: Sequence[AlgebraElement],
                              name: str = "hom",
                              inverse_images: Optional[Sequence[AlgebraElement]] = None
                              ) -> MonomialOperator:
    """The algebra endomorphism sending x_i to ``images[i-1]``.

    Raises :class:`RelationViolation` if the images do not satisfy
    ``y_i y_j = q_ij y_j y_i`` for i < j.
    """
    n = algebra.n
    if len(images) != n:
        raise ValueError(f"need {n} generator images, got {len(images)}")
    Q = algebra.Q
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            yi, yj = images[i - 1], images[j - 1]
            if algebra.mul(yi, yj) != algebra.mul(yj, yi).scale(Q(i, j)):
                raise RelationViolation(i, j)

    powers: Dict[Tuple[int, int], AlgebraElement] = {}

    def power(i, k):
        if (i, k) not in powers:
            powers[(i, k)] = (algebra.one() if k == 0
                              else algebra.mul(power(i, k - 1), images[i - 1]))
        return powers[(i, k)]

    def rule(alpha):
        out = algebra.one()
        for i, a in enumerate(alpha, start=1):
            if a:
                out = algebra.mul(out, power(i, a))
        return out

    op = MonomialOperator(n, algebra.params, rule, kind=HOM, name=name)
    if inverse_images is not None:
        inv = hom_from_generator_images(algebra, inverse_images, name=f"{name}^-1")
        inv.inverse = op
        op.inverse = inv
    return op


def derivation_from_generator_images(algebra: QuantumAffineAlgebra,
                                     images: Sequence[AlgebraElement],
                                     twist: MonomialOperator,
                                     name: str = "partial") -> MonomialOperator:
    """Right ``twist``-derivation with prescribed values on generators.

    Built by peeling the leftmost generator:
    D(x_i w) = D(x_i) twist(w) + x_i D(w), D(1) = 0.
    """
    if twist.kind != HOM:
        raise ValueError("the twist of a derivation must be an algebra homomorphism")
    n = algebra.n
    if len(images) != n:
        raise ValueError(f"need {n} generator images, got {len(images)}")
    op: MonomialOperator

    def rule(alpha):
        if not any(alpha):
            return algebra.zero()
        i = next(k for k, a in enumerate(alpha) if a)
        rest = list(alpha)
        rest[i] -= 1
        rest = tuple(rest)
        # x^alpha = x_i * x^rest exactly, since x_i is the leftmost letter
        head = algebra.mul(images[i], twist.on_monomial(rest))
        tail = algebra.mul(algebra.gen(i + 1), op.on_monomial(rest))
        return head + tail

    op = MonomialOperator(n, algebra.params, rule, kind=DERIVATION, name=name)
    return op


# -- twisted multi-derivations --------------------------------------------------

DIAGONAL = "diagonal"
UPPER = "upper-triangular"
FULL = "full"


class TwistedMultiDerivation:
    """A pair (partial, sigma): sigma an n x n matrix of operators, partial a vector."""

    def __init__(self, algebra: QuantumAffineAlgebra, sigma: Sequence[Sequence[MonomialOperator]],
                 partial: Sequence[MonomialOperator], shape: str = FULL):
        n = algebra.n
        if len(sigma) != n or any(len(r) != n for r in sigma) or len(partial) != n:
            raise ValueError("sigma must be n x n and partial of length n")
        for i in range(n):
            for j in range(n):
                must_vanish = (shape == UPPER and i > j) or (shape == DIAGONAL and i != j)
                if must_vanish and not sigma[i][j].is_zero:
                    raise ValueError(f"sigma_{i + 1}{j + 1} must be the zero operator for "
                                     f"shape {shape}")
        self.algebra = algebra
        self.n = n
        self.params = algebra.params
        self.sigma = [list(r) for r in sigma]
        self.partial = list(partial)
        self.shape = shape

    @classmethod
    def diagonal(cls, algebra: QuantumAffineAlgebra, sigmas: Sequence[MonomialOperator],
                 partial: Sequence[MonomialOperator]) -> "TwistedMultiDerivation":
        n = algebra.n
        z = zero_operator(n, algebra.params)
        sigma = [[sigmas[i] if i == j else z for j in range(n)] for i in range(n)]
        return cls(algebra, sigma, partial, shape=DIAGONAL)

    def s(self, i: int, j: int) -> MonomialOperator:
        """sigma_ij, 1-based."""
        return self.sigma[i - 1][j - 1]

    def d(self, i: int) -> MonomialOperator:
        """partial_i, 1-based."""
        return self.partial[i - 1]

    def replace(self, sigma=None, partial=None, shape=None) -> "TwistedMultiDerivation":
        return TwistedMultiDerivation(self.algebra, sigma or self.sigma, partial or self.partial,
                                      shape or self.shape)


def check_twisted_multiderivation(tmd: TwistedMultiDerivation, max_degree: int,
                                  name: str = "twisted-multiderivation") -> CheckResult:
    """partial_i(ab) = sum_j partial_j(a) sigma_ji(b) + a partial_i(b) on monomial pairs."""
    A = tmd.algebra
    n = tmd.n
    mons = monomials(n, max_degree)

    def cases():
        for alpha in mons:
            xa = A.monomial(alpha)
            for beta in mons:
                if sum(alpha) + sum(beta) > max_degree:
                    continue
                xb = A.monomial(beta)
                prod_ab = A.mul(xa, xb)
                for i in range(1, n + 1):
                    lhs = tmd.d(i)(prod_ab)
                    rhs = A.mul(xa, tmd.d(i).on_monomial(beta))
                    for j in range(1, n + 1):
                        s = tmd.s(j, i)
                        if s.is_zero:
                            continue
                        rhs = rhs + A.mul(tmd.d(j).on_monomial(alpha), s.on_monomial(beta))
                    yield {"identity": "twisted-leibniz", "indices": [i], "alpha": alpha,
                           "beta": beta}, lhs, rhs

    return verify_cases(name, max_degree, cases())


def check_homomorphism(algebra: QuantumAffineAlgebra, h: MonomialOperator, max_degree: int,
                       name: str = "homomorphism") -> CheckResult:
    mons = monomials(algebra.n, max_degree)

    def cases():
        for a in mons:
            for b in mons:
                if sum(a) + sum(b) > max_degree:
                    continue
                lhs = h(algebra.mul(algebra.monomial(a), algebra.monomial(b)))
                rhs = algebra.mul(h.on_monomial(a), h.on_monomial(b))
                yield {"identity": "multiplicative", "alpha": a, "beta": b}, lhs, rhs

    return verify_cases(name, max_degree, cases())


def check_inverse(op: MonomialOperator, max_degree: int, name: str = "inverse") -> CheckResult:
    if op.inverse is None:
        raise ValueError(f"{op!r} carries no inverse")
    inv = op.inverse

    def cases():
        for a in monomials(op.n, max_degree):
            x = AlgebraElement.monomial(op.n, op.params, a)
            yield {"identity": "op∘inverse", "alpha": a}, op(inv.on_monomial(a)), x
            yield {"identity": "inverse∘op", "alpha": a}, inv(op.on_monomial(a)), x

    return verify_cases(name, max_degree, cases())
