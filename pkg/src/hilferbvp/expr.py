"""Small expression language for the coefficient q(t) and nonlinearity f(u).

Grammar (lowest to highest precedence)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := atom ('^' unary)?          # right-associative
    atom   := NUMBER | NAME | NAME '(' expr ')' | '(' expr ')'

Unary minus binds looser than ``^``, so ``-t^2`` is ``-(t^2)``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

import numpy as np

__all__ = [
    "Expr",
    "Num",
    "Var",
    "Neg",
    "BinOp",
    "Call",
    "ExprError",
    "ExprSyntaxError",
    "UnknownIdentifierError",
    "WrongVariableError",
    "DomainError",
    "FUNCTIONS",
    "parse",
    "evaluate",
]

VARIABLES = ("t", "u")


class ExprError(ValueError):
    """Base class for expression parse and evaluation failures."""


class ExprSyntaxError(ExprError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at offset {position}")
        self.position = position


class UnknownIdentifierError(ExprError):
    def __init__(self, name: str, position: int):
        super().__init__(f"unknown identifier {name!r} at offset {position}")
        self.name = name
        self.position = position


class WrongVariableError(ExprError):
    def __init__(self, name: str, expected: str, position: int):
        super().__init__(
            f"variable {name!r} at offset {position} not allowed here (expected {expected!r})"
        )
        self.name = name
        self.position = position


class DomainError(ExprError, ArithmeticError):
    """Raised when an expression is evaluated outside its domain."""


# -- tree ---------------------------------------------------------------------


class Expr:
    """Immutable expression tree node.

    Calling a node evaluates it at a scalar or at every entry of an array.
    """

    __slots__ = ()

    def __call__(self, x):
        return evaluate(self, x)

    def variables(self) -> set[str]:
        raise NotImplementedError


@dataclass(frozen=True, slots=True)
class Num(Expr):
    value: float

    def __str__(self) -> str:
        return repr(float(self.value))

    def variables(self) -> set[str]:
        return set()


@dataclass(frozen=True, slots=True)
class Var(Expr):
    name: str

    def __str__(self) -> str:
        return self.name

    def variables(self) -> set[str]:
        return {self.name}


@dataclass(frozen=True, slots=True)
class Neg(Expr):
    operand: Expr

    def __str__(self) -> str:
        return f"(-{self.operand})"

    def variables(self) -> set[str]:
        return self.operand.variables()


@dataclass(frozen=True, slots=True)
class BinOp(Expr):
    op: str
    left: Expr
    right: Expr

    def __str__(self) -> str:
        return f"({self.left} {self.op} {self.right})"

    def variables(self) -> set[str]:
        return self.left.variables() | self.right.variables()


@dataclass(frozen=True, slots=True)
class Call(Expr):
    func: str
    arg: Expr

    def __str__(self) -> str:
        return f"{self.func}({self.arg})"

    def variables(self) -> set[str]:
        return self.arg.variables()


# -- evaluation ---------------------------------------------------------------


def _check_sqrt(x):
    if np.any(x < 0):
        raise DomainError("sqrt of negative argument")
    return np.sqrt(x)


def _check_log(x):
    if np.any(x <= 0):
        raise DomainError("log of non-positive argument")
    return np.log(x)


FUNCTIONS = {
    "exp": np.exp,
    "cosh": np.cosh,
    "sinh": np.sinh,
    "sqrt": _check_sqrt,
    "log": _check_log,
    "abs": np.abs,
}


def _power(base, expo):
    base = np.asarray(base, dtype=float)
    expo = np.asarray(expo, dtype=float)
    if np.any((base == 0) & (expo < 0)):
        raise DomainError("division by zero (zero to a negative power)")
    if np.any((base < 0) & (expo != np.round(expo))):
        raise DomainError("negative base to a non-integer power")
    return np.power(base, expo)


def _eval(node: Expr, x):
    if isinstance(node, Num):
        return node.value
    if isinstance(node, Var):
        return x
    if isinstance(node, Neg):
        return -_eval(node.operand, x)
    if isinstance(node, Call):
        return FUNCTIONS[node.func](_eval(node.arg, x))
    if isinstance(node, BinOp):
        left = _eval(node.left, x)
        right = _eval(node.right, x)
        if node.op == "+":
            return left + right
        if node.op == "-":
            return left - right
        if node.op == "*":
            return left * right
        if node.op == "/":
            if np.any(np.asarray(right) == 0):
                raise DomainError("division by zero")
            return np.divide(left, right)
        if node.op == "^":
            return _power(left, right)
    raise TypeError(f"not an expression node: {node!r}")


def evaluate(e: Expr, x):
    """Evaluate ``e`` at ``x`` (float or array). Non-finite results raise DomainError."""
    scalar = np.ndim(x) == 0
    xv = float(x) if scalar else np.asarray(x, dtype=float)
    with np.errstate(all="ignore"):
        out = _eval(e, xv)
    out = np.asarray(out, dtype=float)
    if not np.all(np.isfinite(out)):
        raise DomainError(f"non-finite value while evaluating {e}")
    if scalar:
        return float(out)
    return np.broadcast_to(out, np.shape(xv)).copy()


# -- parsing ------------------------------------------------------------------

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/^()])
    """,
    re.VERBOSE,
)


def _tokenize(source: str):
    pos = 0
    tokens = []
    while pos < len(source):
        m = _TOKEN.match(source, pos)
        if m is None:
            raise ExprSyntaxError(f"unexpected character {source[pos]!r}", pos)
        kind = m.lastgroup
        if kind != "ws":
            tokens.append((kind, m.group(), pos))
        pos = m.end()
    tokens.append(("end", "", len(source)))
    return tokens


class _Parser:
    def __init__(self, source: str, variable: str):
        self.tokens = _tokenize(source)
        self.i = 0
        self.variable = variable

    @property
    def tok(self):
        return self.tokens[self.i]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, text: str):
        kind, value, pos = self.tok
        if value != text or kind != "op":
            found = "end of input" if kind == "end" else repr(value)
            raise ExprSyntaxError(f"expected {text!r}, found {found}", pos)
        self.advance()

    def parse(self) -> Expr:
        node = self.expr()
        kind, value, pos = self.tok
        if kind != "end":
            raise ExprSyntaxError(f"unexpected {value!r}", pos)
        return node

    def expr(self) -> Expr:
        node = self.term()
        while self.tok[1] in ("+", "-") and self.tok[0] == "op":
            op = self.advance()[1]
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Expr:
        node = self.unary()
        while self.tok[1] in ("*", "/") and self.tok[0] == "op":
            op = self.advance()[1]
            node = BinOp(op, node, self.unary())
        return node

    def unary(self) -> Expr:
        if self.tok[0] == "op" and self.tok[1] == "-":
            self.advance()
            return Neg(self.unary())
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        if self.tok[0] == "op" and self.tok[1] == "^":
            self.advance()
            return BinOp("^", base, self.unary())
        return base

    def atom(self) -> Expr:
        kind, value, pos = self.tok
        if kind == "num":
            self.advance()
            return Num(float(value))
        if kind == "name":
            self.advance()
            if value in FUNCTIONS:
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return Call(value, arg)
            if value in VARIABLES:
                if value != self.variable:
                    raise WrongVariableError(value, self.variable, pos)
                return Var(value)
            raise UnknownIdentifierError(value, pos)
        if kind == "op" and value == "(":
            self.advance()
            node = self.expr()
            self.expect(")")
            return node
        found = "end of input" if kind == "end" else repr(value)
        raise ExprSyntaxError(f"unexpected {found}", pos)


def parse(source: str, variable: str = "t") -> Expr:
    """Parse ``source`` as an expression in the single free ``variable``.

    >>> parse("t^2", "t")(3.0)
    9.0
    """
    if variable not in VARIABLES:
        raise ValueError(f"variable must be one of {VARIABLES}, got {variable!r}")
    if not source or not source.strip():
        raise ExprSyntaxError("empty expression", 0)
    return _Parser(source, variable).parse()


def is_identity(e: Expr) -> bool:
    """True when ``e`` is the bare variable (the linear case f(u) = u)."""
    return isinstance(e, Var)
