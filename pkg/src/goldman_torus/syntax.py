"""Surface syntax for elements and bracket queries.

Grammar (whitespace is insignificant)::

    expr    := term (('+' | '-') term)*
    term    := factor (('*' | '/') factor)*
    factor  := ('+' | '-') factor | atom
    atom    := NUMBER | word | '[' expr ',' expr ']' | '(' expr ')'
    word    := letter ('^' ['-'|'+'] NUMBER)? (letter ('^' ['-'|'+'] NUMBER)?)*
    letter  := 'a' | 'b'

A bare number ``c`` stands for ``c`` times the trivial loop, so ``1`` is the
contractible class.  Words are read in the abelian fundamental group of the
torus: ``aab``, ``a^2b`` and ``ba^2`` all name ``a^2b^1``.  Products of two
loop classes and division by anything but a scalar are rejected.

:func:`format_element` prints the canonical form: terms in lexicographic
``(i, j)`` order, every exponent explicit (``a^1b^1``), coefficients as
``p/q`` with ``q`` omitted when it is 1.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import NamedTuple, Union

from .expr import Bracket, BracketExpr, Leaf, Scale, Sum, evaluate
from .lattice import Element, ModeError

__all__ = [
    "ParseError",
    "MAX_EXPONENT_BITS",
    "parse",
    "parse_element",
    "format_element",
    "format_class",
    "format_coefficient",
]

MAX_EXPONENT_BITS = 63


class ParseError(ValueError):
    """Syntax error carrying a 1-based line and column."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


class _Tok(NamedTuple):
    kind: str
    text: str
    line: int
    col: int


_TOKEN_RE = re.compile(r"\s+|(?P<num>\d+)|(?P<letter>[ab])|(?P<op>[\^+\-*/\[\](),])")


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    line, line_start = 1, 0
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        col = pos - line_start + 1
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        chunk = m.group(0)
        if m.lastgroup is not None:
            toks.append(_Tok(m.lastgroup, chunk, line, col))
        else:
            nl = chunk.count("\n")
            if nl:
                line += nl
                line_start = pos + chunk.rindex("\n") + 1
        pos = m.end()
    col = len(text) - line_start + 1
    toks.append(_Tok("end", "", line, col))
    return toks


_Value = Union[Fraction, Element, BracketExpr]


def _is_tree(v) -> bool:
    return isinstance(v, (Leaf, Bracket, Scale, Sum))


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.k = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.k]

    def fail(self, message: str, tok: _Tok | None = None):
        tok = tok or self.tok
        raise ParseError(message, tok.line, tok.col)

    def accept(self, text: str) -> bool:
        if self.tok.kind == "op" and self.tok.text == text:
            self.k += 1
            return True
        return False

    def expect(self, text: str) -> None:
        if not self.accept(text):
            found = self.tok.text or "end of input"
            self.fail(f"expected {text!r}, found {found!r}")

    def run(self) -> _Value:
        if self.tok.kind == "end":
            self.fail("empty expression")
        value = self.expr()
        if self.tok.kind != "end":
            self.fail(f"unexpected {self.tok.text!r}")
        return value

    def expr(self) -> _Value:
        value = self.term()
        while self.tok.kind == "op" and self.tok.text in "+-":
            sign = self.tok.text
            self.k += 1
            rhs = self.term()
            value = _add(value, _mul(Fraction(-1), rhs) if sign == "-" else rhs)
        return value

    def term(self) -> _Value:
        value = self.factor()
        while self.tok.kind == "op" and self.tok.text in "*/":
            op = self.tok
            self.k += 1
            rhs = self.factor()
            if op.text == "*":
                if not isinstance(value, Fraction) and not isinstance(rhs, Fraction):
                    self.fail("product of two loop expressions; use the bracket [x, y] or a single word", op)
                value = _mul(value, rhs)
            else:
                if not isinstance(rhs, Fraction):
                    self.fail("can only divide by a number", op)
                if rhs == 0:
                    self.fail("division by zero", op)
                value = _mul(1 / rhs, value)
        return value

    def factor(self) -> _Value:
        if self.tok.kind == "op" and self.tok.text in "+-":
            sign = self.tok.text
            self.k += 1
            inner = self.factor()
            return _mul(Fraction(-1), inner) if sign == "-" else inner
        return self.atom()

    def atom(self) -> _Value:
        tok = self.tok
        if tok.kind == "num":
            self.k += 1
            return Fraction(int(tok.text))
        if tok.kind == "letter":
            return self.word()
        if self.accept("["):
            left = self.expr()
            self.expect(",")
            right = self.expr()
            self.expect("]")
            return Bracket(_tree(left), _tree(right))
        if self.accept("("):
            inner = self.expr()
            self.expect(")")
            return inner
        if tok.kind == "end":
            self.fail("unexpected end of input")
        self.fail(f"unexpected {tok.text!r}")

    def word(self) -> Element:
        i = j = 0
        while self.tok.kind == "letter":
            letter = self.tok.text
            self.k += 1
            e = 1
            if self.accept("^"):
                sign = 1
                if self.tok.kind == "op" and self.tok.text in "+-":
                    sign = -1 if self.tok.text == "-" else 1
                    self.k += 1
                if self.tok.kind != "num":
                    self.fail("expected an integer exponent after '^'")
                e = sign * int(self.tok.text)
                if abs(e) >= 1 << MAX_EXPONENT_BITS:
                    self.fail(f"exponent overflow: |{e}| does not fit in {MAX_EXPONENT_BITS + 1}-bit signed integers")
                self.k += 1
            if letter == "a":
                i += e
            else:
                j += e
        if self.tok.kind == "num":
            self.fail("number directly after a word; write exponents as a^n and scalars as c*x")
        return Element.basis(i, j)


def _tree(v: _Value) -> BracketExpr:
    if _is_tree(v):
        return v
    if isinstance(v, Fraction):
        return Leaf(Element.basis(0, 0, v))
    return Leaf(v)


def _mul(c, v: _Value) -> _Value:
    if isinstance(v, Fraction) and isinstance(c, Fraction):
        return c * v
    if not isinstance(c, Fraction):
        c, v = v, c
    if _is_tree(v):
        return Scale(c, v)
    return v * c


def _add(x: _Value, y: _Value) -> _Value:
    if isinstance(x, Fraction) and isinstance(y, Fraction):
        return x + y
    if _is_tree(x) or _is_tree(y):
        kids = list(x.children) if isinstance(x, Sum) else [_tree(x)]
        return Sum(tuple(kids + [_tree(y)]))
    if isinstance(x, Fraction):
        x = Element.basis(0, 0, x)
    if isinstance(y, Fraction):
        y = Element.basis(0, 0, y)
    return x + y


def parse(text: str, *, integral: bool = False) -> Union[Element, BracketExpr]:
    """Parse ``text`` into an element, or into a bracket expression tree when
    the input contains ``[x, y]`` forms.

    With ``integral=True`` the result is an integer-mode element; any
    non-integer coefficient raises :class:`ParseError`.
    """
    value = _Parser(text).run()
    if isinstance(value, Fraction):
        value = Element.basis(0, 0, value)
    if isinstance(value, Element):
        return _with_mode(value, integral)
    return value


def parse_element(text: str, *, integral: bool = False) -> Element:
    """Parse and evaluate ``text`` to a canonical element."""
    value = parse(text, integral=integral)
    if isinstance(value, Element):
        return value
    return _with_mode(evaluate(value), integral)


def _with_mode(x: Element, integral: bool) -> Element:
    if not integral:
        return x
    try:
        return x.with_mode(True)
    except ModeError as exc:
        raise ParseError(str(exc), 1, 1) from None


def format_coefficient(c) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_class(c) -> str:
    i, j = c
    if i == 0 and j == 0:
        return "1"
    return (f"a^{i}" if i else "") + (f"b^{j}" if j else "")


def format_element(x: Element) -> str:
    if not x:
        return "0"
    parts = []
    for cls, c in x.items():
        mag = abs(c)
        if cls == (0, 0):
            body = format_coefficient(mag)
        elif mag == 1:
            body = format_class(cls)
        else:
            body = f"{format_coefficient(mag)}*{format_class(cls)}"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts)
