"""Line-oriented expression language for entering and printing values.

Grammar (precedence low to high):

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := atom ('^' NUMBER)?
    atom   := NUMBER | symbol | '(' expr ')'
            | 'D' '(' expr ')'
            | 'I' '(' expr ';' expr ')' | 'Lie' '(' expr ';' expr ')'
            | 'Bracket' '(' expr ';' expr ')'
            | 'Transform' '(' expr ';' 'rho' '=' NAME ')'
            | 'Split' '(' expr ';' 'conn' '=' NAME ')'

Symbols are resolved against the chart: a base coordinate name, a fiber
generator name, d<name> for the basis covectors, and d/d<name> for the
basis derivations.  '*' means the graded product or the wedge according
to the operand kinds; '/' and '^' apply to scalar-valued operands only.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .errors import (DslSyntaxError, NotDegreeOne, TypeMismatch, UnknownSymbol)
from .fields import SupervectorField, bracket, transform_field
from .forms import (Superform, exterior_differential, interior, lie_derivative,
                    transform_form, wedge)
from .geometry import split_field, split_form, transform_superfunction
from .grassmann import Chart, Superfunction
from .scalars import ScalarFn


# --- abstract syntax ---------------------------------------------------------

@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Sym:
    kind: str  # coord | gen | dz | dc | ddz | ddc
    index: int


@dataclass(frozen=True)
class Unary:
    operand: object


@dataclass(frozen=True)
class BinOp:
    op: str
    left: object
    right: object


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: int


@dataclass(frozen=True)
class Call:
    func: str  # D | I | Lie | Bracket
    args: tuple


@dataclass(frozen=True)
class Reframe:
    operand: object
    name: str


@dataclass(frozen=True)
class SplitBy:
    operand: object
    name: str


class SplitPair(NamedTuple):
    """Result of a connection splitting: output-only, not re-parseable."""

    horizontal: object
    vertical: object


FUNCTIONS = ("D", "I", "Lie", "Bracket", "Transform", "Split")


# --- tokenizer ------------------------------------------------------------------

_TOKEN_RE = re.compile(r"""
    (?P<deriv>d/d[A-Za-z_][A-Za-z0-9_]*)
  | (?P<number>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>[-+*/^();,=])
  | (?P<ws>\s+)
""", re.VERBOSE)


class _Token(NamedTuple):
    kind: str
    text: str
    line: int
    column: int


def _tokenize(source: str):
    tokens = []
    line, col = 1, 1
    pos = 0
    while pos < len(source):
        match = _TOKEN_RE.match(source, pos)
        if match is None:
            raise DslSyntaxError("unexpected character %r" % source[pos], line, col)
        text = match.group(0)
        kind = match.lastgroup
        if kind != "ws":
            tokens.append(_Token(kind, text, line, col))
        newlines = text.count("\n")
        if newlines:
            line += newlines
            col = len(text) - text.rfind("\n")
        else:
            col += len(text)
        pos = match.end()
    tokens.append(_Token("eof", "", line, col))
    return tokens


# --- parser --------------------------------------------------------------------

class _Parser:
    def __init__(self, tokens, chart: Chart):
        self.tokens = tokens
        self.pos = 0
        self.chart = chart

    @property
    def current(self) -> _Token:
        return self.tokens[self.pos]

    def _advance(self) -> _Token:
        token = self.current
        self.pos += 1
        return token

    def _expect_op(self, text):
        token = self.current
        if token.kind == "op" and token.text == text:
            return self._advance()
        raise DslSyntaxError("unexpected %s" % (repr(token.text) if token.text else "end of input"),
                             token.line, token.column, expected=("'%s'" % text,))

    def _at_op(self, *texts) -> bool:
        return self.current.kind == "op" and self.current.text in texts

    def parse(self):
        expr = self.expr()
        token = self.current
        if token.kind != "eof":
            raise DslSyntaxError("unexpected %r after expression" % token.text,
                                 token.line, token.column, expected=("end of input",))
        return expr

    def expr(self):
        node = self.term()
        while self._at_op("+", "-"):
            op = self._advance().text
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self._at_op("*", "/"):
            op = self._advance().text
            node = BinOp(op, node, self.unary())
        return node

    def unary(self):
        if self._at_op("-"):
            self._advance()
            return Unary(self.unary())
        return self.power()

    def power(self):
        node = self.atom()
        if self._at_op("^"):
            self._advance()
            token = self.current
            if token.kind != "number":
                raise DslSyntaxError("exponent must be an integer literal",
                                     token.line, token.column, expected=("NUMBER",))
            self._advance()
            return Pow(node, int(token.text))
        return node

    def atom(self):
        token = self.current
        if token.kind == "number":
            self._advance()
            return Num(int(token.text))
        if token.kind == "deriv":
            self._advance()
            return self._resolve_derivation(token)
        if token.kind == "ident":
            if token.text in FUNCTIONS:
                return self.call()
            self._advance()
            return self._resolve_symbol(token)
        if self._at_op("("):
            self._advance()
            node = self.expr()
            self._expect_op(")")
            return node
        raise DslSyntaxError("unexpected %s" % (repr(token.text) if token.text else "end of input"),
                             token.line, token.column,
                             expected=("NUMBER", "symbol", "'('"))

    def call(self):
        name_token = self._advance()
        name = name_token.text
        self._expect_op("(")
        first = self.expr()
        if name == "D":
            self._expect_op(")")
            return Call("D", (first,))
        self._expect_op(";")
        if name in ("I", "Lie", "Bracket"):
            second = self.expr()
            self._expect_op(")")
            return Call(name, (first, second))
        keyword = "rho" if name == "Transform" else "conn"
        token = self.current
        if token.kind != "ident" or token.text != keyword:
            raise DslSyntaxError("expected '%s=NAME' in %s(...)" % (keyword, name),
                                 token.line, token.column, expected=(keyword,))
        self._advance()
        self._expect_op("=")
        ref = self.current
        if ref.kind != "ident":
            raise DslSyntaxError("expected a name after '%s='" % keyword,
                                 ref.line, ref.column, expected=("NAME",))
        self._advance()
        self._expect_op(")")
        if name == "Transform":
            return Reframe(first, ref.text)
        return SplitBy(first, ref.text)

    def _resolve_symbol(self, token: _Token):
        text = token.text
        chart = self.chart
        if text in chart.base_names:
            return Sym("coord", chart.base_names.index(text) + 1)
        if text in chart.fiber_names:
            return Sym("gen", chart.fiber_names.index(text) + 1)
        if text.startswith("d"):
            rest = text[1:]
            if rest in chart.base_names:
                return Sym("dz", chart.base_names.index(rest) + 1)
            if rest in chart.fiber_names:
                return Sym("dc", chart.fiber_names.index(rest) + 1)
        raise UnknownSymbol(text)

    def _resolve_derivation(self, token: _Token):
        rest = token.text[3:]
        chart = self.chart
        if rest in chart.base_names:
            return Sym("ddz", chart.base_names.index(rest) + 1)
        if rest in chart.fiber_names:
            return Sym("ddc", chart.fiber_names.index(rest) + 1)
        raise UnknownSymbol(token.text)


def parse(source: str, chart: Chart):
    """Parse expression text against a chart; raises DslSyntaxError or UnknownSymbol."""
    return _Parser(_tokenize(source), chart).parse()


# --- evaluation ---------------------------------------------------------------------

def _kind(value) -> str:
    if isinstance(value, Superfunction):
        return "superfunction"
    if isinstance(value, SupervectorField):
        return "field"
    if isinstance(value, Superform):
        return "form"
    if isinstance(value, SplitPair):
        return "pair"
    raise TypeMismatch("unsupported value of type %s" % type(value).__name__)


def _as_form(value) -> Superform:
    if isinstance(value, Superfunction):
        return Superform.from_superfunction(value)
    return value


def _scalar_of(value, what: str) -> ScalarFn:
    if isinstance(value, Superfunction) and value.is_scalar:
        return value.body()
    raise TypeMismatch("%s must be scalar-valued" % what)


def evaluate(node, chart: Chart, env=None):
    """Evaluate an AST to a Superfunction, SupervectorField, Superform or pair.

    env supplies named transitions/connections (a ChartConfig works);
    Transform and Split need it.
    """
    transitions = getattr(env, "transitions", {}) if env is not None else {}
    connections = getattr(env, "connections", {}) if env is not None else {}

    def ev(node):
        if isinstance(node, Num):
            return Superfunction.from_scalar(chart, node.value)
        if isinstance(node, Sym):
            return _symbol_value(node, chart)
        if isinstance(node, Unary):
            value = ev(node.operand)
            if isinstance(value, SplitPair):
                raise TypeMismatch("cannot negate a split pair")
            return -value
        if isinstance(node, Pow):
            base = _scalar_of(ev(node.base), "power base")
            return Superfunction.from_scalar(chart, base ** node.exponent)
        if isinstance(node, BinOp):
            return _binop(node.op, ev(node.left), ev(node.right))
        if isinstance(node, Call):
            return _call(node)
        if isinstance(node, Reframe):
            rho = transitions.get(node.name)
            if rho is None:
                raise UnknownSymbol(node.name)
            value = ev(node.operand)
            kind = _kind(value)
            if kind == "superfunction":
                return transform_superfunction(value, rho)
            if kind == "field":
                return transform_field(value, rho)
            if kind == "form":
                return transform_form(value, rho)
            raise TypeMismatch("Transform expects a superfunction, field or form")
        if isinstance(node, SplitBy):
            conn = connections.get(node.name)
            if conn is None:
                raise UnknownSymbol(node.name)
            value = ev(node.operand)
            kind = _kind(value)
            if kind == "field":
                return SplitPair(*split_field(value, conn))
            if kind == "form":
                return SplitPair(*split_form(value, conn))
            raise TypeMismatch("Split expects a field or a 1-form")
        raise TypeMismatch("cannot evaluate %r" % (node,))

    def _call(node):
        if node.func == "D":
            value = ev(node.args[0])
            if _kind(value) in ("superfunction", "form"):
                return exterior_differential(value)
            raise TypeMismatch("D expects a superfunction or form")
        if node.func == "Bracket":
            u, v = ev(node.args[0]), ev(node.args[1])
            if _kind(u) != "field" or _kind(v) != "field":
                raise TypeMismatch("Bracket expects two fields")
            return bracket(u, v)
        u, phi = ev(node.args[0]), ev(node.args[1])
        if _kind(u) != "field":
            raise TypeMismatch("%s expects a field first" % node.func)
        if _kind(phi) not in ("superfunction", "form"):
            raise TypeMismatch("%s expects a superfunction or form second" % node.func)
        if node.func == "I":
            return interior(u, _as_form(phi))
        return lie_derivative(u, _as_form(phi))

    return ev(node)


def _symbol_value(node: Sym, chart: Chart):
    if node.kind == "coord":
        return Superfunction.coordinate(chart, node.index)
    if node.kind == "gen":
        return Superfunction.generator(chart, node.index)
    if node.kind == "dz":
        return Superform.dz(chart, node.index)
    if node.kind == "dc":
        return Superform.dc(chart, node.index)
    if node.kind == "ddz":
        return SupervectorField.d_dz(chart, node.index)
    return SupervectorField.d_dc(chart, node.index)


def _binop(op: str, left, right):
    lk, rk = _kind(left), _kind(right)
    if "pair" in (lk, rk):
        raise TypeMismatch("split pairs do not support arithmetic")
    if op in ("+", "-"):
        if lk == rk == "superfunction" or lk == rk == "field":
            return left + right if op == "+" else left - right
        if "field" in (lk, rk):
            raise TypeMismatch("cannot add a field and a %s" % (rk if lk == "field" else lk))
        left, right = _as_form(left), _as_form(right)
        return left + right if op == "+" else left - right
    if op == "*":
        if lk == rk == "superfunction":
            return left * right
        if rk == "field":
            if lk == "superfunction":
                return left * right  # left module action
            raise TypeMismatch("a field multiplies only by a superfunction on the left")
        if lk == "field":
            raise TypeMismatch("a field cannot be a left factor")
        return wedge(_as_form(left), _as_form(right))
    # division by a scalar-valued superfunction
    scalar = _scalar_of(right, "denominator")
    inverse = ScalarFn.one(scalar.n) / scalar
    if lk == "field":
        return inverse * left
    if lk == "form":
        return wedge(Superform.from_superfunction(
            Superfunction.from_scalar(left.chart, inverse)), left)
    return inverse * left


# --- canonical printing -----------------------------------------------------------------

def _scalar_factor(scalar: ScalarFn, names, in_product: bool):
    """(sign, text) for a scalar used as a sum term or a '*'-factor.

    Single monomials carry their sign out front; fractions and multi-term
    polynomials are parenthesized only inside products, where the extra
    grouping keeps coefficient and basis visually apart.
    """
    num_terms, den_terms = scalar.fraction_terms()
    trivial_den = den_terms == [((0,) * scalar.n, Fraction(1))]
    if trivial_den and len(num_terms) == 1:
        mono, coeff = num_terms[0]
        sign = 1 if coeff > 0 else -1
        body = _mono_text(mono, names)
        mag = abs(coeff)
        if not body:
            return sign, _frac_text(mag)
        if mag == 1:
            return sign, body
        return sign, "%s*%s" % (_frac_text(mag), body)
    if not trivial_den:
        sign = 1 if num_terms[0][1] > 0 else -1
        positive = scalar if sign > 0 else -scalar
        text = positive.render(names)
        return sign, "(%s)" % text if in_product else text
    text = scalar.render(names)
    return 1, "(%s)" % text if in_product else text


def _mono_text(exponents, names):
    factors = []
    for name, e in zip(names, exponents):
        if e == 1:
            factors.append(name)
        elif e > 1:
            factors.append("%s^%d" % (name, e))
    return "*".join(factors)


def _frac_text(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return "%d/%d" % (value.numerator, value.denominator)


def _superfunction_pieces(f: Superfunction, base_names, fiber_names,
                          in_product: bool = False):
    """Ordered (sign, text) pieces, one per Grassmann term."""
    pieces = []
    for mono in sorted(f.terms, key=lambda mon: (len(mon), mon)):
        scalar = f.terms[mono]
        c_text = "*".join(fiber_names[a - 1] for a in mono)
        sign, text = _scalar_factor(scalar, base_names, in_product or bool(c_text))
        if not c_text:
            pieces.append((sign, text))
        elif text == "1":
            pieces.append((sign, c_text))
        else:
            pieces.append((sign, "%s*%s" % (text, c_text)))
    return pieces


def _join_pieces(pieces) -> str:
    if not pieces:
        return "0"
    out = []
    for sign, text in pieces:
        if not out:
            out.append(text if sign > 0 else "-" + text)
        else:
            out.append((" + " if sign > 0 else " - ") + text)
    return "".join(out)


def _superfunction_factor(f: Superfunction, base_names, fiber_names):
    """(sign, text or None) for embedding a superfunction in a product.

    None means the factor is 1 and can be dropped.
    """
    pieces = _superfunction_pieces(f, base_names, fiber_names)
    if len(pieces) == 1:
        sign, text = pieces[0]
        return sign, None if text == "1" else text
    return 1, "(%s)" % _join_pieces(pieces)


def print_canonical(value, chart: Chart, primed: bool = False) -> str:
    """Deterministic canonical text; parse + evaluate recovers the value."""
    base_names = chart.base_names
    fiber_names = chart.primed_fiber_names() if primed else chart.fiber_names
    if isinstance(value, SplitPair):
        return "(%s; %s)" % (print_canonical(value.horizontal, chart, primed),
                             print_canonical(value.vertical, chart, primed))
    if isinstance(value, Superfunction):
        return _join_pieces(_superfunction_pieces(value, base_names, fiber_names))
    if isinstance(value, SupervectorField):
        pieces = []
        for index, comp in enumerate(value.base, start=1):
            if comp:
                pieces.append(_attach(comp, "d/d" + base_names[index - 1],
                                      base_names, fiber_names))
        for index, comp in enumerate(value.fiber, start=1):
            if comp:
                pieces.append(_attach(comp, "d/d" + fiber_names[index - 1],
                                      base_names, fiber_names))
        return _join_pieces(pieces)
    if isinstance(value, Superform):
        pieces = []
        for key in sorted(value.terms, key=lambda k: (len(k[0]) + len(k[1]), k)):
            dz_part, dc_part = key
            basis = [("d" + base_names[A - 1]) for A in dz_part]
            basis += [("d" + fiber_names[a - 1]) for a in dc_part]
            coeff = value.terms[key]
            if not basis:
                pieces.extend(_superfunction_pieces(coeff, base_names, fiber_names))
            else:
                pieces.append(_attach(coeff, "*".join(basis), base_names, fiber_names))
        return _join_pieces(pieces)
    raise TypeMismatch("cannot print %s" % type(value).__name__)


def _attach(coeff: Superfunction, basis_text: str, base_names, fiber_names):
    sign, text = _superfunction_factor(coeff, base_names, fiber_names)
    if text is None:
        return sign, basis_text
    return sign, "%s*%s" % (text, basis_text)
