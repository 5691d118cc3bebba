"""Normal forms by rewriting in the free algebra on x_1..x_n, w_1..w_n.

This is a second, independent route to sigma-matrix entries and to ``d``:
words are rewritten letter pair by letter pair until every x sits left of
every w, the x's ascend and the w's strictly ascend.  Nothing here goes
through :class:`MonomialOperator`.
"""
from __future__ import annotations

import random
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import AlgebraElement, QMatrix, monomials, unit_vector
from .calculus import DifferentialCalculus, d_function
from .results import CheckResult, verify_cases
from .scalar import ParamSet, Scalar

X, W = 0, 1
Letter = Tuple[int, int]          # (X, i) or (W, i), 1-based i
Word = Tuple[Letter, ...]
# right-hand side of a rule: list of (coefficient, replacement letters)
Expansion = List[Tuple[Scalar, Word]]

LEFTMOST = "leftmost"
RANDOM = "random"
STEP_BUDGET = 10 ** 6


class NonTermination(RuntimeError):
    pass


def x(i: int) -> Letter:
    return (X, i)


def w(i: int) -> Letter:
    return (W, i)


def x_word(alpha: Sequence[int]) -> Word:
    """x_1^a1 x_2^a2 ... as letters."""
    out = []
    for i, a in enumerate(alpha, start=1):
        out.extend([(X, i)] * a)
    return tuple(out)


def render_word(word: Word) -> str:
    return "*".join(("x" if k == X else "w") + str(i) for k, i in word) or "1"


class RewriteSystem:
    """Pair rules over the alphabet {x_i, w_i}.

    ``omega_x[(i, j)]`` rewrites ``w_i x_j`` as a sum of ``c * x-word * w_k``;
    x-pairs and w-pairs use Q and Q' directly.
    """

    def __init__(self, n: int, Q: QMatrix, qext: QMatrix,
                 omega_x: Dict[Tuple[int, int], List[Tuple[Scalar, Word, int]]],
                 dx: Dict[int, List[Tuple[Scalar, Word, int]]], name: str = "custom"):
        self.n = n
        self.params: ParamSet = Q.params
        self.Q = Q
        self.qext = qext
        self.name = name
        self.dx = dx
        one = Scalar.const(self.params, 1)
        rules: Dict[Tuple[Letter, Letter], Expansion] = {}
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                if i > j:
                    rules[(x(i), x(j))] = [(Q(i, j), (x(j), x(i)))]
                    rules[(w(i), w(j))] = [(-qext(i, j), (w(j), w(i)))]
                rules[(w(i), x(j))] = [(c, tuple(xs) + (w(k),)) for c, xs, k in omega_x[(i, j)]]
            rules[(w(i), w(i))] = []
        self.rules = rules
        self._one = one

    # -- constructors ------------------------------------------------------

    @classmethod
    def quantum_affine(cls, Q: QMatrix, qext: Optional[QMatrix] = None) -> "RewriteSystem":
        """w_i x_j = q_ij x_j w_i, d x_j = w_j."""
        n = Q.n
        omega_x = {(i, j): [(Q(i, j), (x(j),), i)] for i in range(1, n + 1) for j in range(1, n + 1)}
        one = Scalar.const(Q.params, 1)
        dx = {j: [(one, (), j)] for j in range(1, n + 1)}
        return cls(n, Q, qext or Q, omega_x, dx, name="quantum-affine")

    @classmethod
    def manin(cls, n: int, p: Scalar, q: Scalar) -> "RewriteSystem":
        """The three families
            w_i x_j = q x_j w_i + (p-1) x_i w_j   (i<j)
            w_i x_i = p x_i w_i
            w_j x_i = p q^-1 x_i w_j             (i<j)
        with x_i x_j = q x_j x_i and w_j w_i = -(p^-1 q)^-1 w_i w_j for i<j."""
        Q = QMatrix.uniform(n, q)
        qext = QMatrix.uniform(n, p ** -1 * q)
        omega_x = {}
        for i in range(1, n + 1):
            omega_x[(i, i)] = [(p, (x(i),), i)]
            for j in range(i + 1, n + 1):
                omega_x[(i, j)] = [(q, (x(j),), i), (p - 1, (x(i),), j)]
                omega_x[(j, i)] = [(p * q ** -1, (x(i),), j)]
        one = Scalar.const(p.params, 1)
        dx = {j: [(one, (), j)] for j in range(1, n + 1)}
        return cls(n, Q, qext, omega_x, dx, name="manin")

    @classmethod
    def from_generator_data(cls, Q: QMatrix, qext: QMatrix,
                            sigma_images: Sequence[Sequence[Sequence[AlgebraElement]]],
                            partial_images: Sequence[Sequence[AlgebraElement]],
                            name: str = "custom") -> "RewriteSystem":
        """``sigma_images[i][k][j]`` = sigma_ik(x_j); ``partial_images[i][j]`` = partial_i(x_j)
        (0-based lists).  Only the defining generator data is read."""
        n = Q.n
        omega_x = {}
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                rhs = []
                for k in range(1, n + 1):
                    for alpha, c in sigma_images[i - 1][k - 1][j - 1].sorted_terms():
                        rhs.append((c, x_word(alpha), k))
                omega_x[(i, j)] = rhs
        dx = {}
        for j in range(1, n + 1):
            dx[j] = [(c, x_word(alpha), i)
                     for i in range(1, n + 1)
                     for alpha, c in partial_images[i - 1][j - 1].sorted_terms()]
        return cls(n, Q, qext, omega_x, dx, name=name)

    # -- rewriting -----------------------------------------------------------

    def redexes(self, word: Word) -> List[int]:
        return [t for t in range(len(word) - 1) if (word[t], word[t + 1]) in self.rules]

    def normalize(self, combo: Dict[Word, Scalar], strategy: str = LEFTMOST,
                  rng: Optional[random.Random] = None, budget: int = STEP_BUDGET
                  ) -> Dict[Word, Scalar]:
        """Rewrite to the normal form; returns {normal word: coefficient}."""
        if strategy == RANDOM and rng is None:
            rng = random.Random(0)
        pending: Dict[Word, Scalar] = dict(combo)
        done: Dict[Word, Scalar] = {}
        steps = 0
        while pending:
            word, c = pending.popitem()
            if not c:
                continue
            if strategy == LEFTMOST:
                pos = None
                for t in range(len(word) - 1):
                    if (word[t], word[t + 1]) in self.rules:
                        pos = t
                        break
            else:
                found = self.redexes(word)
                pos = rng.choice(found) if found else None
            if pos is None:
                v = done.get(word)
                done[word] = c if v is None else v + c
                continue
            steps += 1
            if steps > budget:
                raise NonTermination(f"step budget of {budget} exceeded at {render_word(word)}")
            head, tail = word[:pos], word[pos + 2:]
            for k, repl in self.rules[(word[pos], word[pos + 1])]:
                new = head + repl + tail
                v = pending.get(new)
                pending[new] = c * k if v is None else v + c * k
        return {wd: c for wd, c in done.items() if c}

    def normal_form(self, word: Word, **kw) -> Dict[Word, Scalar]:
        return self.normalize({tuple(word): self._one}, **kw)

    # -- reading normal forms -------------------------------------------------

    def split(self, word: Word) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
        """Normal word -> (alpha, I)."""
        alpha = [0] * self.n
        I = []
        for k, i in word:
            if k == X:
                alpha[i - 1] += 1
            else:
                I.append(i)
        return tuple(alpha), tuple(I)

    def to_form_coeffs(self, nf: Dict[Word, Scalar]) -> Dict[Tuple[int, ...], AlgebraElement]:
        grouped: Dict[Tuple[int, ...], Dict] = {}
        for word, c in nf.items():
            alpha, I = self.split(word)
            terms = grouped.setdefault(I, {})
            terms[alpha] = terms[alpha] + c if alpha in terms else c
        return {I: AlgebraElement(self.n, self.params, t) for I, t in grouped.items()}


def is_normal(word: Word, rs: RewriteSystem) -> bool:
    return not rs.redexes(word)


def oracle_sigma(i: int, alpha: Sequence[int], rs: RewriteSystem) -> Dict[int, AlgebraElement]:
    """w_i x^alpha normalised and grouped by the trailing w: {j: sigma_ij(x^alpha)}."""
    nf = rs.normal_form((w(i),) + x_word(alpha))
    return {I[0]: a for I, a in rs.to_form_coeffs(nf).items() if a}


def oracle_d(alpha: Sequence[int], rs: RewriteSystem) -> Dict[int, AlgebraElement]:
    """d(x^alpha) by the Leibniz rule on words, normalised: {i: partial_i(x^alpha)}."""
    letters = x_word(alpha)
    combo: Dict[Word, Scalar] = {}
    for t, (_, k) in enumerate(letters):
        for c, xs, i in rs.dx[k]:
            word = letters[:t] + xs + (w(i),) + letters[t + 1:]
            combo[word] = combo[word] + c if word in combo else c
    nf = rs.normalize(combo)
    return {I[0]: a for I, a in rs.to_form_coeffs(nf).items() if a}


def oracle_product(alpha: Sequence[int], beta: Sequence[int], rs: RewriteSystem) -> AlgebraElement:
    nf = rs.normal_form(x_word(alpha) + x_word(beta))
    return rs.to_form_coeffs(nf).get((), AlgebraElement.zero(rs.n, rs.params))


def rewrite_system_for(calc: DifferentialCalculus) -> RewriteSystem:
    """Presets get their relations written out directly; custom calculi read
    the generator images sigma_ik(x_j), partial_i(x_j) off the input data."""
    if calc.name == "manin":
        C = calc.manin_constants
        return RewriteSystem.manin(calc.n, C.p, C.q)
    if calc.name == "quantum-affine":
        return RewriteSystem.quantum_affine(calc.Q, calc.qext)
    n = calc.n
    tmd = calc.tmd
    sig = [[[tmd.s(i, k).apply_monomial(unit_vector(n, j)) for j in range(1, n + 1)]
            for k in range(1, n + 1)] for i in range(1, n + 1)]
    par = [[tmd.d(i).apply_monomial(unit_vector(n, j)) for j in range(1, n + 1)]
           for i in range(1, n + 1)]
    return RewriteSystem.from_generator_data(calc.Q, calc.qext, sig, par, name=calc.name)


# -- checks ------------------------------------------------------------------------

def _row(calc: DifferentialCalculus, i: int, alpha) -> Dict[int, AlgebraElement]:
    out = {}
    for j in range(1, calc.n + 1):
        v = calc.tmd.s(i, j).on_monomial(alpha)
        if v:
            out[j] = v
    return out


def _show(row: Dict[int, AlgebraElement]) -> str:
    return "{" + ", ".join(f"{j}: {row[j]}" for j in sorted(row)) + "}"


class _Row:
    """Dict wrapper whose str is stable for counterexample records."""

    def __init__(self, row):
        self.row = row

    def __eq__(self, other):
        return self.row == other.row

    def __str__(self):
        return _show(self.row)


def check_oracle_sigma(calc: DifferentialCalculus, rs: RewriteSystem, max_degree: int,
                       name: str = "oracle-sigma") -> CheckResult:
    """Rewriting row of w_i x^alpha equals the tmd's sigma row."""
    def cases():
        for alpha in monomials(calc.n, max_degree):
            for i in range(1, calc.n + 1):
                yield ({"identity": "w_i x^alpha", "indices": [i], "alpha": alpha},
                       _Row(_row(calc, i, alpha)), _Row(oracle_sigma(i, alpha, rs)))

    return verify_cases(name, max_degree, cases())


def check_sigma_closed_form(calc: DifferentialCalculus, rs: RewriteSystem, max_degree: int,
                            expected, name: str = "sigma-closed-form-vs-oracle") -> CheckResult:
    """``expected(i, j, alpha)`` (a closed form) against the rewriting expansion."""
    def cases():
        for alpha in monomials(calc.n, max_degree):
            for i in range(1, calc.n + 1):
                row = {}
                for j in range(1, calc.n + 1):
                    v = expected(i, j, alpha)
                    if v:
                        row[j] = v
                yield ({"identity": "sigma closed form", "indices": [i], "alpha": alpha},
                       _Row(row), _Row(oracle_sigma(i, alpha, rs)))

    return verify_cases(name, max_degree, cases())


def check_oracle_d(calc: DifferentialCalculus, rs: RewriteSystem, max_degree: int,
                   name: str = "oracle-d") -> CheckResult:
    def cases():
        for alpha in monomials(calc.n, max_degree):
            u = d_function(calc.algebra.monomial(alpha), calc)
            ours = {I[0]: c for I, c in u.coeffs.items()}
            yield ({"identity": "d(x^alpha)", "alpha": alpha},
                   _Row(ours), _Row(oracle_d(alpha, rs)))

    return verify_cases(name, max_degree, cases())


def check_oracle_product(calc: DifferentialCalculus, rs: RewriteSystem, max_degree: int,
                         name: str = "oracle-product") -> CheckResult:
    A = calc.algebra

    def cases():
        for alpha in monomials(calc.n, max_degree):
            for beta in monomials(calc.n, max_degree - sum(alpha)):
                yield ({"identity": "x^alpha x^beta", "alpha": alpha, "beta": beta},
                       A.mul(A.monomial(alpha), A.monomial(beta)), oracle_product(alpha, beta, rs))

    return verify_cases(name, max_degree, cases())


def random_word(rs: RewriteSystem, rng: random.Random, max_len: int = 8) -> Word:
    length = rng.randint(1, max_len)
    return tuple((rng.choice((X, W)), rng.randint(1, rs.n)) for _ in range(length))


def check_confluence(rs: RewriteSystem, samples: int = 100, seed: int = 0, max_len: int = 8,
                     name: str = "oracle-confluence") -> CheckResult:
    """Leftmost and randomised rule orders reach the same normal form."""
    rng = random.Random(seed)
    order_rng = random.Random(seed + 1)

    def cases():
        for _ in range(samples):
            word = random_word(rs, rng, max_len)
            a = rs.normal_form(word)
            b = rs.normal_form(word, strategy=RANDOM, rng=order_rng)
            yield ({"identity": "joinability", "word": render_word(word)},
                   _NF(a), _NF(b))

    return verify_cases(name, None, cases())


class _NF:
    def __init__(self, nf):
        self.nf = nf

    def __eq__(self, other):
        return self.nf == other.nf

    def __str__(self):
        return " + ".join(f"({c})*{render_word(wd)}" for wd, c in sorted(self.nf.items())) or "0"
