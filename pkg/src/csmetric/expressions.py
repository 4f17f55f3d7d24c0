"""A tiny closed-form expression grammar for composing functions.

Grammar (whitespace ignored)::

    expr   := term ('+' term)*
    term   := factor ('*' factor)*
    factor := atom ('^' number)?
    atom   := number | 't' | 'sqrt' '(' expr ')' | 'exp' '(' expr ')' | '(' expr ')'

Only nonnegative numeric literals are allowed, so every expression maps
[0, inf) into [0, inf) by construction.  Expressions compile to plain
Python closures; ``exp`` saturates to ``math.inf`` instead of overflowing
so that inequality checks involving huge right-hand sides stay well defined.
"""

from __future__ import annotations

import math
from typing import Callable

from .errors import ConfigurationError

__all__ = ["compile_expression"]

_TOKEN_CHARS = set("+*^()")


def _tokenize(src: str) -> list[str]:
    tokens: list[str] = []
    i, n = 0, len(src)
    while i < n:
        c = src[i]
        if c.isspace():
            i += 1
        elif c in _TOKEN_CHARS:
            tokens.append(c)
            i += 1
        elif c.isdigit() or c == ".":
            j = i
            while j < n and (src[j].isdigit() or src[j] in ".eE" or
                             (src[j] in "+-" and src[j - 1] in "eE")):
                j += 1
            tokens.append(src[i:j])
            i = j
        elif c.isalpha():
            j = i
            while j < n and src[j].isalpha():
                j += 1
            tokens.append(src[i:j])
            i = j
        else:
            raise ConfigurationError(f"unexpected character {c!r} in expression {src!r}")
    return tokens


def _safe_exp(x: float) -> float:
    try:
        return math.exp(x)
    except OverflowError:
        return math.inf


class _Parser:
    def __init__(self, src: str):
        self.src = src
        self.tokens = _tokenize(src)
        self.pos = 0

    def peek(self) -> str | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self, expected: str | None = None) -> str:
        tok = self.peek()
        if tok is None:
            raise ConfigurationError(f"unexpected end of expression {self.src!r}")
        if expected is not None and tok != expected:
            raise ConfigurationError(
                f"expected {expected!r} but found {tok!r} in expression {self.src!r}")
        self.pos += 1
        return tok

    def parse(self) -> Callable[[float], float]:
        fn = self.expr()
        if self.peek() is not None:
            raise ConfigurationError(
                f"trailing input {self.peek()!r} in expression {self.src!r}")
        return fn

    def expr(self) -> Callable[[float], float]:
        fn = self.term()
        while self.peek() == "+":
            self.take("+")
            rhs = self.term()
            fn = (lambda f, g: lambda t: f(t) + g(t))(fn, rhs)
        return fn

    def term(self) -> Callable[[float], float]:
        fn = self.factor()
        while self.peek() == "*":
            self.take("*")
            rhs = self.factor()
            fn = (lambda f, g: lambda t: f(t) * g(t))(fn, rhs)
        return fn

    def factor(self) -> Callable[[float], float]:
        fn = self.atom()
        if self.peek() == "^":
            self.take("^")
            exponent = self.number(self.take())
            fn = (lambda f, p: lambda t: f(t) ** p)(fn, exponent)
        return fn

    def number(self, tok: str) -> float:
        try:
            value = float(tok)
        except ValueError:
            raise ConfigurationError(
                f"expected a number but found {tok!r} in expression {self.src!r}") from None
        if value < 0 or not math.isfinite(value):
            raise ConfigurationError(f"numeric literals must be finite and nonnegative: {tok!r}")
        return value

    def atom(self) -> Callable[[float], float]:
        tok = self.take()
        if tok == "t":
            return lambda t: t
        if tok == "sqrt":
            self.take("(")
            inner = self.expr()
            self.take(")")
            return (lambda f: lambda t: math.sqrt(f(t)))(inner)
        if tok == "exp":
            self.take("(")
            inner = self.expr()
            self.take(")")
            return (lambda f: lambda t: _safe_exp(f(t)))(inner)
        if tok == "(":
            inner = self.expr()
            self.take(")")
            return inner
        value = self.number(tok)
        return lambda t: value


def compile_expression(src: str) -> Callable[[float], float]:
    """Compile an expression in the variable ``t`` into a float -> float closure."""
    if not isinstance(src, str) or not src.strip():
        raise ConfigurationError("expression must be a non-empty string")
    return _Parser(src).parse()
