"""Tiny expression language for weights g(k) and sequences f(k).

Grammar::

    expr  := term (('+' | '-') term)*
    term  := unary (('*' | '/') unary)*
    unary := '-' unary | power
    power := atom ('^' unary)?
    atom  := number | 'k' | 'pi' | 'e' | ident '(' expr ')' | '(' expr ')'

so '^' is right-associative and "-1^k" means -(1^k); write "(-1)^k".
Functions: sin, cos, tan, log, exp, abs, floor.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass
from typing import Union

from .errors import EvaluationError, LexError, NotPeriodicError, ParseError, UnknownFunctionError
from .periodic import PeriodicWeight


class Kind(enum.Enum):
    NUMBER = "number"
    IDENT = "ident"
    PLUS = "+"
    MINUS = "-"
    STAR = "*"
    SLASH = "/"
    CARET = "^"
    LPAREN = "("
    RPAREN = ")"
    COMMA = ","


@dataclass(frozen=True)
class Token:
    kind: Kind
    lexeme: str
    position: int


_PUNCT = {k.value: k for k in Kind if len(k.value) == 1}


def tokenize(src: str) -> list:
    tokens = []
    i, n = 0, len(src)
    while i < n:
        ch = src[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            start = i
            while i < n and src[i].isdigit():
                i += 1
            if i < n and src[i] == ".":
                i += 1
                if i >= n or not src[i].isdigit():
                    raise LexError("malformed number", i)
                while i < n and src[i].isdigit():
                    i += 1
            tokens.append(Token(Kind.NUMBER, src[start:i], start))
        elif "a" <= ch <= "z":
            start = i
            while i < n and "a" <= src[i] <= "z":
                i += 1
            tokens.append(Token(Kind.IDENT, src[start:i], start))
        elif ch in _PUNCT:
            tokens.append(Token(_PUNCT[ch], ch, i))
            i += 1
        else:
            raise LexError(f"unexpected character {ch!r}", i)
    return tokens


# -- AST ---------------------------------------------------------------------

@dataclass(frozen=True)
class Constant:
    value: Union[int, float]
    name: str = None  # 'pi' or 'e' when written symbolically


@dataclass(frozen=True)
class Variable:
    name: str = "k"


@dataclass(frozen=True)
class Unary:
    op: str
    operand: "Expr"


@dataclass(frozen=True)
class Binary:
    op: str
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Call:
    name: str
    arg: "Expr"


Expr = Union[Constant, Variable, Unary, Binary, Call]


def _floor(x):
    if isinstance(x, complex):
        if x.imag != 0:
            raise EvaluationError("floor of a complex value")
        x = x.real
    return math.floor(x)


def _log(x):
    if x == 0:
        raise EvaluationError("log of zero")
    if isinstance(x, complex) or x < 0:
        return cmath.log(x)
    return math.log(x)


def _trig(real_fn, complex_fn):
    def fn(x):
        return complex_fn(x) if isinstance(x, complex) else real_fn(x)

    return fn


def _tan(x):
    c = cmath.cos(x) if isinstance(x, complex) else math.cos(x)
    if c == 0:
        raise EvaluationError("tan at a pole")
    return cmath.tan(x) if isinstance(x, complex) else math.tan(x)


FUNCTIONS = {
    "sin": _trig(math.sin, cmath.sin),
    "cos": _trig(math.cos, cmath.cos),
    "tan": _tan,
    "log": _log,
    "exp": _trig(math.exp, cmath.exp),
    "abs": abs,
    "floor": _floor,
}
CONSTANTS = {"pi": math.pi, "e": math.e}


# -- parser ------------------------------------------------------------------

class _Parser:
    def __init__(self, tokens, length):
        self.tokens = tokens
        self.i = 0
        self.end = length

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def position(self):
        tok = self.peek()
        return tok.position if tok else self.end

    def accept(self, *kinds):
        tok = self.peek()
        if tok is not None and tok.kind in kinds:
            self.i += 1
            return tok
        return None

    def expect(self, kind):
        tok = self.accept(kind)
        if tok is None:
            found = self.peek()
            what = repr(found.lexeme) if found else "end of input"
            raise ParseError(f"expected {kind.value!r}, found {what}", self.position())
        return tok

    def expr(self):
        node = self.term()
        while (tok := self.accept(Kind.PLUS, Kind.MINUS)) is not None:
            node = Binary(tok.lexeme, node, self.term())
        return node

    def term(self):
        node = self.unary()
        while (tok := self.accept(Kind.STAR, Kind.SLASH)) is not None:
            node = Binary(tok.lexeme, node, self.unary())
        return node

    def unary(self):
        if self.accept(Kind.MINUS):
            return Unary("-", self.unary())
        return self.power()

    def power(self):
        base = self.atom()
        if self.accept(Kind.CARET):
            return Binary("^", base, self.unary())
        return base

    def atom(self):
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input", self.end)
        if tok.kind is Kind.NUMBER:
            self.i += 1
            text = tok.lexeme
            return Constant(float(text) if "." in text else int(text))
        if tok.kind is Kind.LPAREN:
            self.i += 1
            node = self.expr()
            self.expect(Kind.RPAREN)
            return node
        if tok.kind is Kind.IDENT:
            self.i += 1
            name = tok.lexeme
            nxt = self.peek()
            if nxt is not None and nxt.kind is Kind.LPAREN:
                if name not in FUNCTIONS:
                    raise UnknownFunctionError(f"unknown function {name!r}", tok.position)
                self.i += 1
                arg = self.expr()
                self.expect(Kind.RPAREN)
                return Call(name, arg)
            if name == "k":
                return Variable()
            if name in CONSTANTS:
                return Constant(CONSTANTS[name], name)
            raise ParseError(f"unknown identifier {name!r}", tok.position)
        raise ParseError(f"unexpected token {tok.lexeme!r}", tok.position)


def parse(tokens, source_length: int = None) -> Expr:
    if isinstance(tokens, str):
        source_length = len(tokens)
        tokens = tokenize(tokens)
    if source_length is None:
        source_length = tokens[-1].position + len(tokens[-1].lexeme) if tokens else 0
    parser = _Parser(tokens, source_length)
    node = parser.expr()
    if parser.peek() is not None:
        tok = parser.peek()
        raise ParseError(f"unexpected token {tok.lexeme!r}", tok.position)
    return node


def compile_expression(src: str):
    """Parse ``src`` and return a callable k -> value."""
    tree = parse(src)
    return lambda k: evaluate(tree, k)


# -- evaluation --------------------------------------------------------------

def _as_int(x):
    if isinstance(x, int):
        return x
    if isinstance(x, float) and x.is_integer():
        return int(x)
    return None


def _power(base, exponent):
    if isinstance(base, complex) or isinstance(exponent, complex):
        if base == 0 and (exponent.real if isinstance(exponent, complex) else exponent) < 0:
            raise EvaluationError("division by zero in power")
        return complex(base) ** complex(exponent)
    n = _as_int(exponent)
    if base < 0:
        if n is None:
            raise EvaluationError("negative base with non-integer exponent")
        # parity decides the sign exactly
        mag = (-base) ** n if n >= 0 else 1 / (-base) ** (-n)
        return mag if n % 2 == 0 else -mag
    if base == 0 and exponent < 0:
        raise EvaluationError("division by zero in power")
    if n is not None and isinstance(base, int):
        return base**n if n >= 0 else 1 / base ** (-n)
    return float(base) ** exponent


def evaluate(e: Expr, k: int):
    if isinstance(e, Constant):
        return e.value
    if isinstance(e, Variable):
        return k
    if isinstance(e, Unary):
        return -evaluate(e.operand, k)
    if isinstance(e, Call):
        return FUNCTIONS[e.name](evaluate(e.arg, k))
    a = evaluate(e.left, k)
    b = evaluate(e.right, k)
    if e.op == "+":
        return a + b
    if e.op == "-":
        return a - b
    if e.op == "*":
        return a * b
    if e.op == "/":
        if b == 0:
            raise EvaluationError("division by zero")
        return a / b
    return _power(a, b)


# -- printing ----------------------------------------------------------------

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2, "neg": 3, "^": 4}


def _prec(e):
    if isinstance(e, Binary):
        return _PREC[e.op]
    if isinstance(e, Unary):
        return _PREC["neg"]
    return 5


def to_source(e: Expr) -> str:
    """Print an expression with only the parentheses the grammar needs."""

    def wrap(node, min_prec):
        s = to_source(node)
        return f"({s})" if _prec(node) < min_prec else s

    if isinstance(e, Constant):
        return e.name or repr(e.value)
    if isinstance(e, Variable):
        return "k"
    if isinstance(e, Call):
        return f"{e.name}({to_source(e.arg)})"
    if isinstance(e, Unary):
        return "-" + wrap(e.operand, 3)
    if e.op == "^":
        return f"{wrap(e.left, 5)}^{wrap(e.right, 3)}"
    p = _PREC[e.op]
    return f"{wrap(e.left, p)}{e.op}{wrap(e.right, p + 1)}"


# -- periods -----------------------------------------------------------------

DEFAULT_PERIOD_TOL = 1e-9


def detect_period(e, q_max: int = 24, tol: float = DEFAULT_PERIOD_TOL) -> int:
    """Smallest period of k -> e(k) sampled on k = 0..4*q_max.

    Constant expressions report 1; callers that need q >= 2 must lift.
    """
    if q_max < 2:
        raise ValueError(f"q_max must be >= 2, got {q_max}")
    if isinstance(e, str):
        e = parse(e)
    window = 4 * q_max
    samples = [evaluate(e, k) for k in range(window + q_max + 1)]
    for q in range(1, q_max + 1):
        if all(abs(samples[k + q] - samples[k]) <= tol for k in range(window + 1)):
            return q
    raise NotPeriodicError(f"no period <= {q_max} found")


def _snap(v, tol=1e-12):
    if isinstance(v, complex):
        if abs(v.imag) > tol:
            return v
        v = v.real
    r = round(v)
    return int(r) if abs(v - r) <= tol else v


def weight_from_expression(e, q_max: int = 24, tol: float = DEFAULT_PERIOD_TOL) -> PeriodicWeight:
    """Sample one period of a periodic expression.

    Values within 1e-12 of an integer are snapped to it so that e.g.
    sin(k pi/2) gives the exact period (0, 1, 0, -1).
    """
    if isinstance(e, str):
        e = parse(e)
    q = detect_period(e, q_max, tol)
    values = [_snap(evaluate(e, k)) for k in range(q)]
    if q == 1:
        values = values * 2
    return PeriodicWeight(values)
