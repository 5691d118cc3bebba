"""Text grammar for Scalars and algebra elements.

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := atom ('*' atom)*
    atom   := INT ['/' INT] | IDENT ['^' ['-'] INT]

Identifiers are declared parameters or generators ``x1`` .. ``xn``.
Whitespace is ignored.  Rendering produces the same grammar, with
generators in ascending order and one flat term per (monomial, parameter
monomial) pair, so ``parse(render(e)) == e``.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .scalar import ParamSet, Scalar

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")
_GENERATOR = re.compile(r"x([1-9][0-9]*)$")


class ParseError(ValueError):
    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class ExpressionSyntaxError(ParseError):
    pass


class UnknownIdentifier(ParseError):
    pass


class NegativeGeneratorExponent(ParseError):
    pass


def is_generator_name(name: str) -> bool:
    return bool(_GENERATOR.match(name))


def _format_rational(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def render_terms(terms: Iterable[Tuple[Fraction, Sequence[Tuple[str, int]]]]) -> str:
    """Render ``(coefficient, [(name, exponent), ...])`` pairs as a sum."""
    parts: List[str] = []
    for c, factors in terms:
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        pieces = [name if k == 1 else f"{name}^{k}" for name, k in factors]
        if mag != 1 or not pieces:
            pieces.insert(0, _format_rational(mag))
        body = "*".join(pieces)
        if not parts:
            parts.append(body if sign == "+" else "-" + body)
        else:
            parts.append(sign + body)
    return "".join(parts) if parts else "0"


def _tokenize(text: str):
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            tokens.append(("int", int(m.group(1)), start))
        elif m.group(2) is not None:
            tokens.append(("ident", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "+-*/^":
                raise ExpressionSyntaxError(f"unexpected character {ch!r}", start)
            tokens.append((ch, ch, start))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text, params: ParamSet, n: Optional[int]):
        self.tokens = _tokenize(text)
        self.k = 0
        self.params = params
        self.n = n

    def peek(self):
        return self.tokens[self.k]

    def take(self, kind=None):
        tok = self.tokens[self.k]
        if kind is not None and tok[0] != kind:
            what = "end of input" if tok[0] == "end" else repr(tok[1])
            raise ExpressionSyntaxError(f"expected {kind}, found {what}", tok[2])
        self.k += 1
        return tok

    def parse(self):
        """Return a list of (coefficient, param exponent, generator word)."""
        terms = []
        sign = 1
        if self.peek()[0] in ("+", "-"):
            sign = -1 if self.take()[0] == "-" else 1
        terms.append(self.term(sign))
        while self.peek()[0] in ("+", "-"):
            sign = -1 if self.take()[0] == "-" else 1
            terms.append(self.term(sign))
        self.take("end")
        return terms

    def term(self, sign):
        coeff_box = [Fraction(sign)]
        pexp = [0] * len(self.params)
        word: List[Tuple[int, int]] = []
        self.atom(coeff_box, pexp, word)
        while self.peek()[0] == "*":
            self.take()
            self.atom(coeff_box, pexp, word)
        return coeff_box[0], tuple(pexp), word

    def atom(self, coeff_box, pexp, word):
        tok = self.peek()
        if tok[0] == "int":
            self.take()
            value = Fraction(tok[1])
            if self.peek()[0] == "/":
                self.take()
                den = self.take("int")
                if den[1] == 0:
                    raise ExpressionSyntaxError("zero denominator", den[2])
                value /= den[1]
            coeff_box[0] *= value
            return
        if tok[0] != "ident":
            what = "end of input" if tok[0] == "end" else repr(tok[1])
            raise ExpressionSyntaxError(f"expected a number or identifier, found {what}", tok[2])
        self.take()
        name = tok[1]
        exponent = 1
        if self.peek()[0] == "^":
            self.take()
            neg = False
            if self.peek()[0] == "-":
                self.take()
                neg = True
            exponent = self.take("int")[1]
            if neg:
                exponent = -exponent
        if name in self.params:
            pexp[self.params.index(name)] += exponent
            return
        m = _GENERATOR.match(name)
        if m and self.n is not None and int(m.group(1)) <= self.n:
            if exponent < 0:
                raise NegativeGeneratorExponent(
                    f"generator {name} raised to negative power {exponent}", tok[2])
            if exponent:
                word.append((int(m.group(1)), exponent))
            return
        raise UnknownIdentifier(f"unknown identifier {name!r}", tok[2])


def parse_scalar(text: str, params: ParamSet) -> Scalar:
    terms = _Parser(text, params, None).parse()
    out: Dict[Tuple[int, ...], Fraction] = {}
    for c, pexp, _ in terms:
        out[pexp] = out.get(pexp, 0) + c
    return Scalar(params, out)


def parse_expression(text: str, params: ParamSet, n: Optional[int] = None, algebra=None):
    """Parse ``text`` into a Scalar (``n is None``) or an AlgebraElement.

    Generators within a term must appear in ascending order unless an
    ``algebra`` is supplied to reorder them with its commutation rules.
    """
    if n is None:
        return parse_scalar(text, params)
    from .algebra import AlgebraElement

    terms = _Parser(text, params, n).parse()
    total = AlgebraElement.zero(n, params)
    for c, pexp, word in terms:
        coeff = Scalar(params, {pexp: c})
        ordered = all(word[t][0] <= word[t + 1][0] for t in range(len(word) - 1))
        if ordered:
            alpha = [0] * n
            for i, k in word:
                alpha[i - 1] += k
            total = total + AlgebraElement(n, params, {tuple(alpha): coeff})
            continue
        if algebra is None:
            raise ParseError(f"generators out of order in {text!r}; an algebra is needed")
        elem = AlgebraElement.const(n, coeff)
        for i, k in word:
            for _ in range(k):
                elem = algebra.mul(elem, algebra.gen(i))
        total = total + elem
    return total
