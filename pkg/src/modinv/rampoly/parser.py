"""Recursive-descent parser for polynomials in ``x`` and ``t``.

Grammar (implicit multiplication allowed between factors)::

    expr   := sign? term (("+" | "-") term)*
    term   := factor (("*" | "/")? factor)*
    factor := atom (("^" | "**") integer)?
    atom   := number | "x" | "t" | "(" expr ")"

Division is only by nonzero constants.  A bare number may not follow another
factor implicitly (``x 2`` is rejected; write ``2x`` or ``x*2``).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .poly import BiPoly, T, X

VARIABLES = {"x": X, "t": T}


class PolySyntaxError(ValueError):
    def __init__(self, message: str, text: str, pos: int) -> None:
        self.message = message
        self.text = text
        self.pos = pos
        super().__init__(f"{message} at position {pos}")

    def __str__(self) -> str:
        return f"{self.message} at position {self.pos}\n  {self.text}\n  {' ' * self.pos}^"


@dataclass(frozen=True)
class _Tok:
    kind: str  # "num", "op", "var", "end"
    value: str
    pos: int


def _tokenize(text: str) -> list[_Tok]:
    toks: list[_Tok] = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        ch = text[pos]
        if ch.isdigit():
            end = pos
            while end < len(text) and text[end].isdigit():
                end += 1
            toks.append(_Tok("num", text[pos:end], pos))
            pos = end
        elif text.startswith("**", pos):
            toks.append(_Tok("op", "^", pos))
            pos += 2
        elif ch in "+-*/^()":
            toks.append(_Tok("op", ch, pos))
            pos += 1
        elif ch.isalpha():
            # single-letter variables, so "xt" means x*t
            if ch not in VARIABLES:
                raise PolySyntaxError(f"unknown variable {ch!r} (only x and t are allowed)", text, pos)
            toks.append(_Tok("var", ch, pos))
            pos += 1
        else:
            raise PolySyntaxError(f"unexpected character {ch!r}", text, pos)
    toks.append(_Tok("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str) -> None:
        self.text = text
        self.toks = _tokenize(text)
        self.k = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.k]

    def error(self, msg: str, tok: _Tok | None = None) -> PolySyntaxError:
        return PolySyntaxError(msg, self.text, (tok or self.tok).pos)

    def take(self) -> _Tok:
        t = self.tok
        self.k += 1
        return t

    def is_op(self, *ops: str) -> bool:
        return self.tok.kind == "op" and self.tok.value in ops

    def parse(self) -> BiPoly:
        if self.tok.kind == "end":
            raise self.error("empty expression")
        out = self.expr()
        if self.tok.kind != "end":
            raise self.error(f"unexpected {self.tok.value!r}")
        return out

    def expr(self) -> BiPoly:
        sign = 1
        if self.is_op("+", "-"):
            sign = -1 if self.take().value == "-" else 1
        acc = self.term().scale(sign)
        while self.is_op("+", "-"):
            op = self.take().value
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def _starts_factor(self) -> bool:
        return self.tok.kind in ("num", "var") or self.is_op("(")

    def term(self) -> BiPoly:
        acc = self.factor()
        while True:
            if self.is_op("*"):
                self.take()
                acc = acc * self.factor()
            elif self.is_op("/"):
                op = self.take()
                rhs = self.factor()
                if rhs.is_zero():
                    raise self.error("division by zero", op)
                if set(rhs.terms) != {(0, 0)}:
                    raise self.error("division is only allowed by constants", op)
                acc = acc.scale(1 / rhs.terms[(0, 0)])
            elif self._starts_factor():
                if self.tok.kind == "num":
                    raise self.error("a number cannot follow a factor without '*'")
                acc = acc * self.factor()
            else:
                return acc

    def factor(self) -> BiPoly:
        base = self.atom()
        if self.is_op("^"):
            self.take()
            tok = self.tok
            if tok.kind != "num":
                raise self.error("exponent must be a non-negative integer")
            self.take()
            base = base ** int(tok.value)
            if self.is_op("^"):
                raise self.error("chained exponents are ambiguous; use parentheses")
        return base

    def atom(self) -> BiPoly:
        tok = self.tok
        if tok.kind == "num":
            self.take()
            return BiPoly.const(Fraction(int(tok.value)))
        if tok.kind == "var":
            self.take()
            return VARIABLES[tok.value]
        if self.is_op("("):
            self.take()
            inner = self.expr()
            if not self.is_op(")"):
                raise self.error("expected ')'")
            self.take()
            return inner
        if tok.kind == "end":
            raise self.error("unexpected end of expression")
        raise self.error(f"unexpected {tok.value!r}")


def parse_poly(text: str) -> BiPoly:
    """Parse a rational-coefficient polynomial in ``x`` and ``t``."""
    return _Parser(text).parse()
