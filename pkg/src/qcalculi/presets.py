"""Ready-made calculi: quantum affine space with its diagonal calculus, and
Manin's quantum n-space with the two-parameter upper-triangular calculus.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .algebra import (
    UPPER,
    AlgebraElement,
    MonomialOperator,
    QMatrix,
    QuantumAffineAlgebra,
    TwistedMultiDerivation,
    scaling_operator,
    zero_operator,
)
from .calculus import DifferentialCalculus
from .scalar import ParamSet, Scalar

QUANTUM_AFFINE = "quantum-affine"
MANIN = "manin"
PRESETS = (QUANTUM_AFFINE, MANIN)


@dataclass(frozen=True)
class PresetDescriptor:
    kind: str
    n: int
    params: ParamSet

    def __post_init__(self):
        if self.kind not in PRESETS:
            raise ValueError(f"unknown preset {self.kind!r}; choose from {', '.join(PRESETS)}")
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if self.kind == MANIN and not {"p", "q"} <= set(self.params.names):
            raise ValueError("the manin preset needs parameters p and q")


def _shift(alpha, plus=None, minus=None):
    out = list(alpha)
    if plus is not None:
        out[plus - 1] += 1
    if minus is not None:
        out[minus - 1] -= 1
    return tuple(out)


# -- quantum affine space -----------------------------------------------------

def qa_lambda(Q: QMatrix, i: int, alpha) -> Scalar:
    """prod_j q_ij^alpha_j"""
    out = Scalar.const(Q.params, 1)
    for j, a in enumerate(alpha, start=1):
        if a:
            out = out * Q(i, j) ** a
    return out


def qa_delta(Q: QMatrix, i: int, alpha) -> Scalar:
    """prod_{j>i} q_ij^alpha_j"""
    out = Scalar.const(Q.params, 1)
    for j in range(i + 1, Q.n + 1):
        a = alpha[j - 1]
        if a:
            out = out * Q(i, j) ** a
    return out


def quantum_affine(n: int, Q: Optional[QMatrix] = None, degree_bound: int = 4) -> DifferentialCalculus:
    """O_Q(K^n) with sigma_i(x^a) = lambda_i(a) x^a and
    partial_i(x^a) = a_i delta_i(a) x^(a - e_i); the exterior algebra uses Q itself.

    Without ``Q`` a generic matrix with one parameter per entry above the
    diagonal is used.
    """
    if Q is None:
        Q = QMatrix.generic(n)
    if Q.n != n:
        raise ValueError(f"Q has rank {Q.n}, expected {n}")
    A = QuantumAffineAlgebra(Q)
    P = Q.params
    sigmas = [scaling_operator(n, P, lambda a, i=i: qa_lambda(Q, i, a), name=f"sigma_{i}")
              for i in range(1, n + 1)]

    def partial_rule(i):
        def rule(alpha):
            ai = alpha[i - 1]
            if not ai:
                return A.zero()
            return A.monomial(_shift(alpha, minus=i), qa_delta(Q, i, alpha) * ai)
        return rule

    partials = [MonomialOperator(n, P, partial_rule(i), kind="twisted-derivation",
                                 name=f"partial_{i}") for i in range(1, n + 1)]
    tmd = TwistedMultiDerivation.diagonal(A, sigmas, partials)
    return DifferentialCalculus(A, Q, tmd, degree_bound, name=QUANTUM_AFFINE)


# -- Manin quantum n-space ------------------------------------------------------

class ManinConstants:
    """The scalar families pi_i, lambda_i, lambdabar_i, eta_ij, delta_i."""

    def __init__(self, n: int, p: Scalar, q: Scalar):
        self.n = n
        self.p = p
        self.q = q
        self.params = p.params
        self.one = Scalar.const(self.params, 1)

    def pi(self, i, alpha) -> Scalar:
        return self.p ** sum(alpha[: i - 1])

    def lam(self, i, alpha) -> Scalar:
        return self.q ** sum(alpha[i:])

    def lambar(self, i, alpha) -> Scalar:
        return self.q ** -sum(alpha[: i - 1])

    def eta(self, i, j, alpha) -> Scalar:
        if i < j:
            return (self.pi(j, alpha) * self.lambar(i, alpha) * self.lam(j, alpha)
                    * (self.p ** alpha[j - 1] - 1))
        if i == j:
            return (self.pi(i, alpha) * self.lambar(i, alpha) * self.lam(i, alpha)
                    * self.p ** alpha[i - 1])
        return Scalar.const(self.params, 0)

    def q_integer(self, k: int) -> Scalar:
        """(p^k - 1)/(p - 1), by exact division."""
        return (self.p ** k - 1).exact_div(self.p - 1)

    def delta(self, i, alpha) -> Scalar:
        return self.pi(i, alpha) * self.lam(i, alpha) * self.q_integer(alpha[i - 1])


def manin_params() -> ParamSet:
    return ParamSet(("p", "q"))


def manin(n: int, p: Optional[Scalar] = None, q: Optional[Scalar] = None,
          degree_bound: int = 4) -> DifferentialCalculus:
    """Manin's quantum n-space K_q[x_1..x_n] with the calculus
        w_i x_j = q x_j w_i + (p-1) x_i w_j  (i<j),
        w_i x_i = p x_i w_i,
        w_j x_i = p q^-1 x_i w_j            (i<j),
    exterior algebra twisted by q'_ij = p^-1 q for i < j.
    """
    if (p is None) != (q is None):
        raise ValueError("give both p and q, or neither")
    if p is None:
        P = manin_params()
        p, q = P.gens()
    if p.params != q.params:
        raise ValueError("p and q must share a ParamSet")
    if p == 1:
        raise ValueError("p = 1 is not allowed: the derivatives divide by p - 1")
    if not p.is_unit() or not q.is_unit():
        raise ValueError("p and q must be units")
    P = p.params
    C = ManinConstants(n, p, q)
    Q = QMatrix.uniform(n, q)
    Qext = QMatrix.uniform(n, p ** -1 * q)
    A = QuantumAffineAlgebra(Q)
    z = zero_operator(n, P)

    def sigma_rule(i, j):
        def rule(alpha):
            return A.monomial(_shift(alpha, plus=i, minus=j), C.eta(i, j, alpha))
        return rule

    sigma = [[z] * n for _ in range(n)]
    for i in range(1, n + 1):
        sigma[i - 1][i - 1] = scaling_operator(n, P, lambda a, i=i: C.eta(i, i, a),
                                               name=f"sigma_{i}{i}")
        for j in range(i + 1, n + 1):
            sigma[i - 1][j - 1] = MonomialOperator(n, P, sigma_rule(i, j), kind="composite",
                                                   name=f"sigma_{i}{j}")

    def partial_rule(i):
        def rule(alpha):
            if not alpha[i - 1]:
                return A.zero()
            return A.monomial(_shift(alpha, minus=i), C.delta(i, alpha))
        return rule

    partials = [MonomialOperator(n, P, partial_rule(i), kind="twisted-derivation",
                                 name=f"partial_{i}") for i in range(1, n + 1)]
    tmd = TwistedMultiDerivation(A, sigma, partials, shape=UPPER)
    calc = DifferentialCalculus(A, Qext, tmd, degree_bound, name=MANIN)
    calc.manin_constants = C
    return calc


SIGMA = "sigma"
BAR_SIGMA = "barSigma"
HAT_SIGMA = "hatSigma"
PARTIAL_SIGMA = "partialSigma"


def manin_expected(kind: str, indices: Sequence[int], alpha, calc: DifferentialCalculus
                   ) -> AlgebraElement:
    """Closed-form images on x^alpha for the Manin calculus.

    sigma_ij = eta_ij(a) x^(a+e_i-e_j); barSigma_ij (i > j) =
    q pi_i^-1 lambdabar_j^-1 lambda_i^-1 (p^-a_i - 1) q^(a_j - a_i) x^(a+e_j-e_i);
    hatSigma_ij = p^(j-i) sigma_ij; partialSigma_i = p^i partial_i.
    """
    C: ManinConstants = calc.manin_constants
    A = calc.algebra
    alpha = tuple(alpha)
    p, q = C.p, C.q
    if kind == SIGMA:
        i, j = indices
        if i > j:
            return A.zero()
        return A.monomial(_shift(alpha, plus=i, minus=j), C.eta(i, j, alpha))
    if kind == HAT_SIGMA:
        i, j = indices
        if i > j:
            return A.zero()
        return manin_expected(SIGMA, (i, j), alpha, calc).scale(p ** (j - i))
    if kind == BAR_SIGMA:
        i, j = indices
        if i < j:
            return A.zero()
        if i == j:
            return A.monomial(alpha, C.eta(i, i, alpha) ** -1)
        coeff = (q * C.pi(i, alpha) ** -1 * C.lambar(j, alpha) ** -1 * C.lam(i, alpha) ** -1
                 * (p ** -alpha[i - 1] - 1) * q ** (alpha[j - 1] - alpha[i - 1]))
        return A.monomial(_shift(alpha, plus=j, minus=i), coeff)
    if kind == PARTIAL_SIGMA:
        (i,) = indices
        return calc.tmd.d(i).on_monomial(alpha).scale(p ** i)
    raise ValueError(f"unknown closed-form kind {kind!r}")


def build_preset(kind: str, n: int, degree_bound: int = 4) -> DifferentialCalculus:
    if kind == QUANTUM_AFFINE:
        return quantum_affine(n, degree_bound=degree_bound)
    if kind == MANIN:
        return manin(n, degree_bound=degree_bound)
    raise ValueError(f"unknown preset {kind!r}; choose from {', '.join(PRESETS)}")


def describe(kind: str, n: int) -> str:
    """Human-readable summary of a preset."""
    calc = build_preset(kind, n)
    Q, Qe = calc.Q, calc.qext
    lines = [f"preset: {kind}", f"rank n = {n}", f"parameters: {', '.join(calc.params.names)}",
             "generators: " + ", ".join(f"x{i}" for i in range(1, n + 1)) + "; "
             + ", ".join(f"w{i}" for i in range(1, n + 1)),
             "algebra relations:"]
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            lines.append(f"  x{i}*x{j} = {Q(i, j)}*x{j}*x{i}")
    lines.append("bimodule relations:")
    if kind == QUANTUM_AFFINE:
        lines.append("  w_i*x^a = lambda_i(a)*x^a*w_i,  lambda_i(a) = prod_j q_ij^a_j")
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                lines.append(f"  w{i}*x{j} = {Q(i, j)}*x{j}*w{i}")
        lines.append("derivatives: partial_i(x^a) = a_i*delta_i(a)*x^(a-e_i),  "
                     "delta_i(a) = prod_{j>i} q_ij^a_j")
    else:
        lines.append("  w_i*x_j = q*x_j*w_i + (p-1)*x_i*w_j   (i<j)")
        lines.append("  w_i*x_i = p*x_i*w_i")
        lines.append("  w_j*x_i = p*q^-1*x_i*w_j            (i<j)")
        lines.append("  sigma_ij(x^a) = eta_ij(a)*x^(a+e_i-e_j), upper triangular")
        lines.append("derivatives: partial_i(x^a) = pi_i(a)*lambda_i(a)*[a_i]_p*x^(a-e_i),  "
                     "[k]_p = (p^k-1)/(p-1)")
    lines.append("exterior algebra twist Q':")
    for i in range(1, n + 1):
        lines.append("  [" + ", ".join(str(Qe(i, j)) for j in range(1, n + 1)) + "]")
    lines.append("duality checklist:")
    lines.append("  (1) sigma_ii automorphisms ............ [pending]")
    lines.append("  (2) partial_i partial_j = q'_ji partial_j partial_i, i<j ... [pending]")
    lines.append("  (3) mixed partial/sigma relations ..... [pending]")
    lines.append("  (4) partial^sigma_i = (prod_j q'_ij) nu^-1 partial_i nu ... [pending]")
    return "\n".join(lines)
