"""Arithmetic expressions over exact rationals with sqrt, abs, min, max.

Grammar (whitespace between tokens is ignored, operators are
left-associative):

    expr    := term (('+' | '-') term)*
    term    := factor (('*' | '/') factor)*
    factor  := NUMBER | '(' expr ')' | '-' factor
             | FUNC '(' expr (',' expr)? ')'
    NUMBER  := digits | digits '/' digits | digits '.' digits
    FUNC    := 'sqrt' | 'abs' | 'min' | 'max'

A '/' directly between digits forms a single rational literal ("1/2"); with
whitespace around it ("1 / 2") it is the division operator.  The two parse
differently but denote the same value.  Decimal literals are exact powers of
ten ("2.71828" is 271828/100000), never binary floats.

Syntax errors carry the byte offset of the offending position and the set of
tokens that would have been acceptable there.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Tuple, Union

from .errors import NegativeRadicand, ParseError
from .extension import RationalDomain, UCFunction, close_to_witness, extend
from .lub import (DEFAULT_DESCENT_BUDGET, DEFAULT_STEP_LIMIT, lub_bisection,
                  sqrt_oracle)
from .rational import Rational
from .real import Real, Verdict, ZERO, divide, from_rational, maximum, minimum, separate

__all__ = [
    "Expr",
    "RationalLit", "Neg", "Add", "Sub", "Mul", "Div",
    "Sqrt", "Abs", "Min", "Max",
    "parse",
    "EvalConfig",
    "evaluate",
    "sqrt_real",
]


# -- AST ----------------------------------------------------------------------


@dataclass(frozen=True)
class RationalLit:
    value: Rational


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


@dataclass(frozen=True)
class Abs:
    operand: "Expr"


@dataclass(frozen=True)
class Sqrt:
    operand: "Expr"


@dataclass(frozen=True)
class Add:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Sub:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Mul:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Div:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Min:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Max:
    left: "Expr"
    right: "Expr"


Expr = Union[RationalLit, Neg, Abs, Sqrt, Add, Sub, Mul, Div, Min, Max]

_FUNCTIONS = {"sqrt": Sqrt, "abs": Abs, "min": Min, "max": Max}
_UNARY = {"sqrt", "abs"}


# -- tokenizer ----------------------------------------------------------------


@dataclass(frozen=True)
class _Token:
    kind: str  # "number", "name", one of "+-*/(),", "end"
    text: str
    offset: int


def _tokenize(src):
    tokens = []
    i = 0
    n = len(src)
    while i < n:
        c = src[i]
        if c.isspace():
            i += 1
            continue
        start = i
        if c.isdigit():
            while i < n and src[i].isdigit():
                i += 1
            if i + 1 < n and src[i] == "." and src[i + 1].isdigit():
                i += 1
                while i < n and src[i].isdigit():
                    i += 1
            elif i + 1 < n and src[i] == "/" and src[i + 1].isdigit():
                i += 1
                while i < n and src[i].isdigit():
                    i += 1
            tokens.append(_Token("number", src[start:i], start))
        elif c.isalpha():
            while i < n and src[i].isalpha():
                i += 1
            tokens.append(_Token("name", src[start:i], start))
        elif c in "+-*/(),":
            tokens.append(_Token(c, c, start))
            i += 1
        else:
            raise ParseError(f"unexpected character {c!r}", offset=i)
    tokens.append(_Token("end", "", n))
    return tokens


def _literal_value(token):
    text = token.text
    if "/" in text:
        num, den = text.split("/")
        if int(den) == 0:
            raise ParseError("zero denominator in rational literal",
                             offset=token.offset)
        return Rational(int(num), int(den))
    if "." in text:
        whole, frac = text.split(".")
        return Rational(int(whole + frac), 10 ** len(frac))
    return Rational(int(text))


# -- parser -------------------------------------------------------------------

_FACTOR_EXPECTED = ("number", "'('", "'-'", "function name")


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def expect(self, kind, expected):
        token = self.peek()
        if token.kind != kind:
            got = repr(token.text) if token.kind != "end" else "end of input"
            raise ParseError(f"expected {' or '.join(expected)}, got {got}",
                             offset=token.offset, expected=expected)
        return self.advance()

    def parse_expr(self):
        node = self.parse_term()
        while self.peek().kind in ("+", "-"):
            op = self.advance().kind
            right = self.parse_term()
            node = Add(node, right) if op == "+" else Sub(node, right)
        return node

    def parse_term(self):
        node = self.parse_factor()
        while self.peek().kind in ("*", "/"):
            op = self.advance().kind
            right = self.parse_factor()
            node = Mul(node, right) if op == "*" else Div(node, right)
        return node

    def parse_factor(self):
        token = self.peek()
        if token.kind == "number":
            self.advance()
            return RationalLit(_literal_value(token))
        if token.kind == "(":
            self.advance()
            node = self.parse_expr()
            self.expect(")", ("')'",))
            return node
        if token.kind == "-":
            self.advance()
            return Neg(self.parse_factor())
        if token.kind == "name":
            return self.parse_call()
        got = repr(token.text) if token.kind != "end" else "end of input"
        raise ParseError(f"expected {' or '.join(_FACTOR_EXPECTED)}, got {got}",
                         offset=token.offset, expected=_FACTOR_EXPECTED)

    def parse_call(self):
        name_token = self.advance()
        name = name_token.text
        if name not in _FUNCTIONS:
            raise ParseError(f"unknown function {name!r}",
                             offset=name_token.offset,
                             expected=tuple(sorted(_FUNCTIONS)))
        self.expect("(", ("'('",))
        first = self.parse_expr()
        if name in _UNARY:
            self.expect(")", ("')'",))
            return _FUNCTIONS[name](first)
        self.expect(",", ("','",))
        second = self.parse_expr()
        self.expect(")", ("')'",))
        return _FUNCTIONS[name](first, second)


def parse(src: str) -> Expr:
    """Parse a source string into an Expr, or raise a positioned ParseError."""
    parser = _Parser(_tokenize(src))
    node = parser.parse_expr()
    trailing = parser.peek()
    if trailing.kind != "end":
        raise ParseError(f"unexpected trailing input {trailing.text!r}",
                         offset=trailing.offset,
                         expected=("'+'", "'-'", "'*'", "'/'", "end of input"))
    return node


# -- evaluation ---------------------------------------------------------------


@dataclass(frozen=True)
class EvalConfig:
    """Budgets for the operations that search rather than compute.

    sep_budget bounds the denominator separation in Div (and the sign
    certification of Sqrt radicands); descent_budget and lub_steps bound the
    least-upper-bound machinery behind Sqrt.
    """

    sep_budget: int = 2 ** 20
    lub_steps: int = DEFAULT_STEP_LIMIT
    descent_budget: int = DEFAULT_DESCENT_BUDGET


DEFAULT_CONFIG = EvalConfig()


def _sqrt_of_rational(c: Rational, cfg: EvalConfig) -> Real:
    if c < 0:
        raise NegativeRadicand(f"radicand {c} is negative")
    root_num = math.isqrt(c.numerator)
    root_den = math.isqrt(c.denominator)
    if root_num * root_num == c.numerator and root_den * root_den == c.denominator:
        return from_rational(Rational(root_num, root_den))
    upper = max(1, math.ceil(c))
    return lub_bisection(sqrt_oracle(c), upper, cfg.descent_budget)


def sqrt_real(x: Real, cfg: EvalConfig = DEFAULT_CONFIG) -> Real:
    """Square root of a nonnegative real.

    An exactly-rational radicand goes through the decidable square oracle
    (perfect squares short-circuit to their exact roots).  Otherwise the
    radicand's sign is certified at precision cfg.sep_budget, and the root is
    the uniformly continuous extension of the rational square root along the
    radicand's approximations, with modulus k^2 (square roots of arguments
    within 1/k^2 differ by at most 1/k).
    """
    exact = x.exact_value()
    if exact is not None:
        return _sqrt_of_rational(exact, cfg)
    if separate(x, ZERO, cfg.sep_budget) is Verdict.LESS:
        raise NegativeRadicand(
            f"radicand certified negative at precision {cfg.sep_budget}")
    domain = RationalDomain(Rational(0), Rational(x.bound()))
    f = UCFunction(domain,
                   fn=lambda q: _sqrt_of_rational(q, cfg),
                   modulus=lambda k: k * k)
    witness = close_to_witness(domain, x)
    return extend(f, witness)


def evaluate(expr: "Expr | str", cfg: EvalConfig = DEFAULT_CONFIG) -> Real:
    """Evaluate an Expr (or source string) to a Real.

    Division separates the denominator from zero within cfg.sep_budget and
    raises DivisionNotSeparated when it cannot; a certified-negative sqrt
    radicand raises NegativeRadicand; exhausted search budgets raise
    BudgetExceeded.
    """
    if isinstance(expr, str):
        expr = parse(expr)
    return _eval(expr, cfg)


def _eval(node, cfg):
    if isinstance(node, RationalLit):
        return from_rational(node.value)
    if isinstance(node, Neg):
        return -_eval(node.operand, cfg)
    if isinstance(node, Abs):
        return abs(_eval(node.operand, cfg))
    if isinstance(node, Sqrt):
        return sqrt_real(_eval(node.operand, cfg), cfg)
    if isinstance(node, Add):
        return _eval(node.left, cfg) + _eval(node.right, cfg)
    if isinstance(node, Sub):
        return _eval(node.left, cfg) - _eval(node.right, cfg)
    if isinstance(node, Mul):
        return _eval(node.left, cfg) * _eval(node.right, cfg)
    if isinstance(node, Div):
        return divide(_eval(node.left, cfg), _eval(node.right, cfg),
                      cfg.sep_budget)
    if isinstance(node, Min):
        return minimum(_eval(node.left, cfg), _eval(node.right, cfg))
    if isinstance(node, Max):
        return maximum(_eval(node.left, cfg), _eval(node.right, cfg))
    raise TypeError(f"not an expression node: {node!r}")
