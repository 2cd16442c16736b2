"""Textual polynomial expressions over Gaussian rationals.

Grammar (whitespace insignificant, no implicit multiplication)::

    expr     := '-'? term (('+'|'-') term)*
    term     := factor ('*' factor)*
    factor   := base ('^' uint)?
    base     := rational | 'i' | var | '(' expr ')'
    rational := uint ('/' uint)?

Inputs are parsed into a small AST and then evaluated into a
``TruncSeries`` over a declared variable list at a given order.
``render_series`` produces canonical text that parses back to the same
series (the round-trip property).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .errors import ExprSyntaxError
from .rational import GaussRat
from .series import TruncSeries

MAX_EXPONENT = 9999

_TOKEN = re.compile(r"(\d+)|([A-Za-z_][A-Za-z_0-9]*)|([()+\-*/^])")


# -- AST ---------------------------------------------------------------------
# One node kind per grammar construct; 'paren' is kept so the tree mirrors
# the source text.

@dataclass(frozen=True)
class Number:
    value: Fraction


@dataclass(frozen=True)
class ImaginaryUnit:
    pass


@dataclass(frozen=True)
class Variable:
    name: str


@dataclass(frozen=True)
class Add:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Sub:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Neg:
    child: "Node"


@dataclass(frozen=True)
class Mul:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exponent: int


@dataclass(frozen=True)
class Paren:
    child: "Node"


Node = Union[Number, ImaginaryUnit, Variable, Add, Sub, Neg, Mul, Pow, Paren]


class _Tokens:
    def __init__(self, text: str):
        self.text = text
        self.items = []  # (kind, value, pos)
        pos = 0
        while pos < len(text):
            if text[pos].isspace():
                pos += 1
                continue
            m = _TOKEN.match(text, pos)
            if m is None:
                raise ExprSyntaxError(f"unexpected character {text[pos]!r}", pos)
            if m.group(1) is not None:
                self.items.append(("int", m.group(1), pos))
            elif m.group(2) is not None:
                self.items.append(("name", m.group(2), pos))
            else:
                self.items.append(("op", m.group(3), pos))
            pos = m.end()
        self.i = 0

    def peek(self):
        if self.i < len(self.items):
            return self.items[self.i]
        return ("eof", "", len(self.text))

    def next(self):
        tok = self.peek()
        self.i += 1
        return tok


def parse_expr(text: str) -> Node:
    """Parse expression text into an AST; raises ExprSyntaxError with position."""
    toks = _Tokens(text)
    node = _expr(toks)
    kind, value, pos = toks.peek()
    if kind != "eof":
        raise ExprSyntaxError(f"unexpected {value!r}", pos)
    return node


def _expr(toks: _Tokens) -> Node:
    kind, value, _ = toks.peek()
    if kind == "op" and value == "-":
        toks.next()
        node: Node = Neg(_term(toks))
    else:
        node = _term(toks)
    while True:
        kind, value, _ = toks.peek()
        if kind == "op" and value in "+-":
            toks.next()
            rhs = _term(toks)
            node = Add(node, rhs) if value == "+" else Sub(node, rhs)
        else:
            return node


def _term(toks: _Tokens) -> Node:
    node = _factor(toks)
    while True:
        kind, value, _ = toks.peek()
        if kind == "op" and value == "*":
            toks.next()
            node = Mul(node, _factor(toks))
        else:
            return node


def _factor(toks: _Tokens) -> Node:
    node = _base(toks)
    kind, value, pos = toks.peek()
    if kind == "op" and value == "^":
        toks.next()
        kind, value, pos = toks.next()
        if kind != "int":
            raise ExprSyntaxError("exponent must be an unsigned integer", pos)
        exponent = int(value)
        if exponent > MAX_EXPONENT:
            raise ExprSyntaxError(f"exponent {exponent} exceeds {MAX_EXPONENT}", pos)
        return Pow(node, exponent)
    return node


def _base(toks: _Tokens) -> Node:
    kind, value, pos = toks.next()
    if kind == "int":
        num = int(value)
        kind2, value2, _ = toks.peek()
        if kind2 == "op" and value2 == "/":
            toks.next()
            kind3, value3, pos3 = toks.next()
            if kind3 != "int" or int(value3) == 0:
                raise ExprSyntaxError("denominator must be a positive integer", pos3)
            return Number(Fraction(num, int(value3)))
        return Number(Fraction(num))
    if kind == "name":
        if value == "i":
            return ImaginaryUnit()
        return Variable(value)
    if kind == "op" and value == "(":
        node = _expr(toks)
        kind2, value2, pos2 = toks.next()
        if not (kind2 == "op" and value2 == ")"):
            raise ExprSyntaxError("expected ')'", pos2)
        return Paren(node)
    raise ExprSyntaxError("expected a number, variable, 'i' or '('", pos)


# -- evaluation -----------------------------------------------------------------


def eval_ast(node: Node, vars: Sequence[str], order: int) -> TruncSeries:
    vars = tuple(vars)
    if isinstance(node, Number):
        return TruncSeries.constant(GaussRat.of(node.value), vars, order)
    if isinstance(node, ImaginaryUnit):
        return TruncSeries.constant(GaussRat.i(), vars, order)
    if isinstance(node, Variable):
        if node.name not in vars:
            raise ExprSyntaxError(f"undeclared variable {node.name!r}", 0)
        return TruncSeries.variable(node.name, vars, order)
    if isinstance(node, Add):
        return eval_ast(node.left, vars, order) + eval_ast(node.right, vars, order)
    if isinstance(node, Sub):
        return eval_ast(node.left, vars, order) - eval_ast(node.right, vars, order)
    if isinstance(node, Neg):
        return -eval_ast(node.child, vars, order)
    if isinstance(node, Mul):
        return eval_ast(node.left, vars, order) * eval_ast(node.right, vars, order)
    if isinstance(node, Pow):
        return eval_ast(node.base, vars, order).pow(node.exponent)
    if isinstance(node, Paren):
        return eval_ast(node.child, vars, order)
    raise TypeError(f"unknown AST node {node!r}")


def parse_series(text: str, vars: Sequence[str], order: int) -> TruncSeries:
    """Parse expression text into an exact series truncated at ``order``.

    Intermediate products may be known beyond ``order`` (multiplication
    gains valuation), so the result is normalized back to ``order``.
    """
    return eval_ast(parse_expr(text), vars, order).truncate(order)


# -- rendering ------------------------------------------------------------------


def _render_frac(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def _render_mono(mono, vars) -> str:
    parts = []
    for v, e in zip(vars, mono):
        if e == 0:
            continue
        parts.append(v if e == 1 else f"{v}^{e}")
    return "*".join(parts)


def _render_coeff(c: GaussRat) -> Optional[str]:
    """Coefficient text without sign handling, or None for a plain 1."""
    if c.im == 0:
        if c.re == 1:
            return None
        return _render_frac(c.re)
    if c.re == 0:
        if c.im == 1:
            return "i"
        return f"{_render_frac(c.im)}*i"
    # mixed coefficient: parenthesized inner expression
    im = c.im
    sign = "+" if im > 0 else "-"
    im_abs = -im if im < 0 else im
    im_txt = "i" if im_abs == 1 else f"{_render_frac(im_abs)}*i"
    return f"({_render_frac(c.re)} {sign} {im_txt})"


def render_series(f: TruncSeries) -> str:
    """Canonical text form: graded-lex term order, explicit '*', re-parseable."""
    if f.is_zero():
        return "0"
    chunks = []
    for mono, coeff in f.sorted_terms():
        negate = coeff.im == 0 and coeff.re < 0 or coeff.re == 0 and coeff.im < 0
        c = -coeff if negate else coeff
        mono_txt = _render_mono(mono, f.vars)
        coeff_txt = _render_coeff(c)
        if coeff_txt is None:
            body = mono_txt if mono_txt else "1"
        elif mono_txt:
            body = f"{coeff_txt}*{mono_txt}"
        else:
            body = coeff_txt
        chunks.append(("-" if negate else "+", body))
    sign, body = chunks[0]
    text = f"-{body}" if sign == "-" else body
    for sign, body in chunks[1:]:
        text += f" {sign} {body}"
    return text
