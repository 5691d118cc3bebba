"""Sparse multivariate Laurent polynomials over the rationals.

Every structure constant of a calculus (the q_ij, p, signs, q-integers)
lives in a :class:`Scalar`.  A Scalar is a mapping from integer exponent
vectors to nonzero :class:`fractions.Fraction` coefficients, laid out
according to an ordered :class:`ParamSet`.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Mapping, Tuple, Union

Exponent = Tuple[int, ...]
Rational = Union[int, Fraction]


class ScalarError(ArithmeticError):
    pass


class ParamSetMismatch(ScalarError):
    pass


class NotAUnit(ScalarError):
    pass


class NonExactDivision(ScalarError):
    pass


class DivisionByZero(ScalarError, ZeroDivisionError):
    pass


class ZeroAssignment(ScalarError):
    pass


class ParamSet:
    """Ordered parameter names; the order fixes the exponent layout."""

    __slots__ = ("names", "_index")

    def __init__(self, names: Iterable[str] = ()):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate parameter names in {names}")
        for name in names:
            if not name or not (name[0].isalpha() or name[0] == "_"):
                raise ValueError(f"invalid parameter name {name!r}")
        self.names = names
        self._index = {name: k for k, name in enumerate(names)}

    def __len__(self):
        return len(self.names)

    def __eq__(self, other):
        return isinstance(other, ParamSet) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return f"ParamSet({list(self.names)!r})"

    def index(self, name: str) -> int:
        return self._index[name]

    def __contains__(self, name):
        return name in self._index

    @property
    def zero_exponent(self) -> Exponent:
        return (0,) * len(self.names)

    def gen(self, name: str) -> "Scalar":
        """The Scalar equal to the parameter ``name``."""
        e = [0] * len(self.names)
        e[self._index[name]] = 1
        return Scalar(self, {tuple(e): Fraction(1)})

    def gens(self):
        return tuple(self.gen(name) for name in self.names)

    def const(self, c: Rational) -> "Scalar":
        return Scalar.const(self, c)


EMPTY = ParamSet()


class Scalar:
    """Immutable Laurent polynomial in the parameters of ``params``."""

    __slots__ = ("params", "terms", "_hash")

    def __init__(self, params: ParamSet, terms: Mapping[Exponent, Rational] = None,
                 _trusted: bool = False):
        self.params = params
        if _trusted:
            self.terms = terms
        else:
            width = len(params)
            clean: Dict[Exponent, Fraction] = {}
            for e, c in (terms or {}).items():
                e = tuple(int(v) for v in e)
                if len(e) != width:
                    raise ValueError(f"exponent {e} does not match {params!r}")
                c = Fraction(c)
                if c:
                    clean[e] = clean.get(e, 0) + c
                    if not clean[e]:
                        del clean[e]
            self.terms = clean
        self._hash = None

    # -- construction ------------------------------------------------------

    @classmethod
    def const(cls, params: ParamSet, c: Rational) -> "Scalar":
        c = Fraction(c)
        if not c:
            return cls(params, {}, _trusted=True)
        return cls(params, {params.zero_exponent: c}, _trusted=True)

    @classmethod
    def monomial(cls, params: ParamSet, exponent: Exponent, c: Rational = 1) -> "Scalar":
        return cls(params, {tuple(exponent): c})

    def zero(self) -> "Scalar":
        return Scalar(self.params, {}, _trusted=True)

    def one(self) -> "Scalar":
        return Scalar.const(self.params, 1)

    # -- coercion ----------------------------------------------------------

    def _coerce(self, other) -> "Scalar":
        if isinstance(other, Scalar):
            if other.params == self.params:
                return other
            # bare rationals (empty ParamSet) promote freely
            if not other.params.names:
                return Scalar.const(self.params, other.terms.get((), Fraction(0)))
            raise ParamSetMismatch(f"{self.params!r} vs {other.params!r}")
        if isinstance(other, (int, Fraction)):
            return Scalar.const(self.params, other)
        return NotImplemented

    def _align(self, other):
        """Return (a, b) over a common ParamSet."""
        if isinstance(other, Scalar) and not self.params.names and other.params.names:
            return other._coerce(self), other
        o = self._coerce(other)
        if o is NotImplemented:
            return None
        return self, o

    # -- predicates --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_unit(self) -> bool:
        return len(self.terms) == 1

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.params.zero_exponent in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return self.terms.get(self.params.zero_exponent, Fraction(0))

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        pair = self._align(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        if not b.terms:
            return a
        if not a.terms:
            return b
        out = dict(a.terms)
        for e, c in b.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                del out[e]
        return Scalar(a.params, out, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return Scalar(self.params, {e: -c for e, c in self.terms.items()}, _trusted=True)

    def __sub__(self, other):
        pair = self._align(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a + (-b)

    def __rsub__(self, other):
        pair = self._align(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return b + (-a)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return self.zero()
            if other == 1:
                return self
            return Scalar(self.params, {e: c * other for e, c in self.terms.items()},
                          _trusted=True)
        pair = self._align(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        if not a.terms or not b.terms:
            return Scalar(a.params, {}, _trusted=True)
        out: Dict[Exponent, Fraction] = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    del out[e]
        return Scalar(a.params, out, _trusted=True)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            if len(self.terms) != 1:
                raise NotAUnit(f"cannot invert {self}")
            ((e, c),) = self.terms.items()
            return Scalar(self.params, {tuple(v * k for v in e): c ** k}, _trusted=True)
        if len(self.terms) == 1:
            ((e, c),) = self.terms.items()
            return Scalar(self.params, {tuple(v * k for v in e): c ** k}, _trusted=True)
        result = self.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def inverse(self) -> "Scalar":
        return self ** -1

    def exact_div(self, other) -> "Scalar":
        """Return ``c`` with ``other * c == self``; raise if no Laurent ``c`` exists."""
        pair = self._align(other)
        if pair is None:
            raise TypeError(f"cannot divide by {other!r}")
        a, b = pair
        if not b.terms:
            raise DivisionByZero("division by the zero Scalar")
        if not a.terms:
            return a
        if len(b.terms) == 1:
            return a * b.inverse()
        width = len(a.params)
        # exponents of the quotient are confined to a box fixed by the
        # per-variable extreme degrees of a and b
        lo = [min(e[v] for e in a.terms) - min(e[v] for e in b.terms) for v in range(width)]
        hi = [max(e[v] for e in a.terms) - max(e[v] for e in b.terms) for v in range(width)]
        if any(l > h for l, h in zip(lo, hi)):
            raise NonExactDivision(f"({a}) / ({b})")
        lead_b = max(b.terms)
        lead_c = b.terms[lead_b]
        rem = dict(a.terms)
        quot: Dict[Exponent, Fraction] = {}
        while rem:
            lead_r = max(rem)
            e = tuple(x - y for x, y in zip(lead_r, lead_b))
            if any(v < l or v > h for v, l, h in zip(e, lo, hi)):
                raise NonExactDivision(f"({a}) / ({b})")
            c = rem[lead_r] / lead_c
            quot[e] = c
            for eb, cb in b.terms.items():
                t = tuple(x + y for x, y in zip(e, eb))
                s = rem.get(t, 0) - c * cb
                if s:
                    rem[t] = s
                else:
                    rem.pop(t, None)
        return Scalar(a.params, quot, _trusted=True)

    def __truediv__(self, other):
        return self.exact_div(other)

    def evaluate(self, assignment: Mapping[str, Rational]) -> Fraction:
        """Specialise every parameter to a rational value."""
        values = []
        for name in self.params.names:
            if name not in assignment:
                raise KeyError(f"no value assigned to parameter {name!r}")
            values.append(Fraction(assignment[name]))
        total = Fraction(0)
        for e, c in self.terms.items():
            t = c
            for v, k in zip(values, e):
                if k < 0 and v == 0:
                    raise ZeroAssignment(f"negative power of a parameter assigned 0 in {self}")
                t *= v ** k
            total += t
        return total

    # -- comparison / hashing ---------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Scalar):
            if self.params != other.params:
                pair = self._align(other)
                if pair is None:
                    return False
                return pair[0].terms == pair[1].terms
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == Scalar.const(self.params, other).terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.constant_value())
            else:
                self._hash = hash((self.params, frozenset(self.terms.items())))
        return self._hash

    # -- rendering ---------------------------------------------------------

    def sorted_terms(self):
        """Terms in descending lexicographic order of exponent vector."""
        return sorted(self.terms.items(), reverse=True)

    def __str__(self):
        from .parsing import render_terms
        return render_terms(
            (c, [(name, k) for name, k in zip(self.params.names, e) if k])
            for e, c in self.sorted_terms()
        )

    def __repr__(self):
        return f"Scalar({self})"


def scalar_arith(a: Scalar, b: Scalar, op: str) -> Scalar:
    if not isinstance(a, Scalar) or not isinstance(b, Scalar) or a.params != b.params:
        raise ParamSetMismatch("operands must share a ParamSet")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def scalar_pow(a: Scalar, k: int) -> Scalar:
    return a ** k


def scalar_exact_div(a: Scalar, b: Scalar) -> Scalar:
    return a.exact_div(b)


def scalar_eval(a: Scalar, assignment: Mapping[str, Rational]) -> Fraction:
    return a.evaluate(assignment)
