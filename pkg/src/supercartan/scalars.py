"""Exact rational-function arithmetic in the base coordinates.

ScalarFn is the coefficient field for everything else in the package: a
multivariate rational function of z1..zn with exact rational coefficients,
kept in canonical (reduced) form so that structural equality is value
equality.  The heavy lifting (gcd cancellation, canonical ordering) is done
by sympy's sparse polynomial fields; nothing of sympy leaks through this
module's interface.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from sympy.polys.domains import QQ
from sympy.polys.fields import FracField
from sympy.polys.orderings import grlex

from .errors import DivisionByZero, IndexOutOfRange, ShapeMismatch, SingularMatrix


@lru_cache(maxsize=None)
def _field(n: int) -> FracField:
    # one shared fraction field per coordinate count; names are internal only
    return FracField(["z%d" % i for i in range(1, n + 1)], QQ, grlex)


@lru_cache(maxsize=None)
def _poly_one(n: int):
    return _field(n).ring.one


class ScalarFn:
    """A rational function of the base coordinates z1..zn, canonical form.

    Values are immutable; all arithmetic is exact and returns reduced
    fractions, so ``a == b`` iff a and b are the same function.
    """

    __slots__ = ("n", "_fr")

    def __init__(self, n, _fr=None):
        self.n = n
        self._fr = _field(n).zero if _fr is None else _fr

    # --- constructors -------------------------------------------------

    @classmethod
    def zero(cls, n: int) -> "ScalarFn":
        return cls(n, _field(n).zero)

    @classmethod
    def one(cls, n: int) -> "ScalarFn":
        return cls(n, _field(n).one)

    @classmethod
    def const(cls, n: int, value) -> "ScalarFn":
        value = Fraction(value)
        return cls(n, _field(n).ground_new(QQ(value.numerator, value.denominator)))

    @classmethod
    def coordinate(cls, n: int, index: int) -> "ScalarFn":
        """The coordinate function z^index, 1-based."""
        if not 1 <= index <= n:
            raise IndexOutOfRange("coordinate index %d outside 1..%d" % (index, n))
        return cls(n, _field(n).gens[index - 1])

    # --- ring/field structure ------------------------------------------

    def _coerce(self, other):
        if isinstance(other, ScalarFn):
            if other.n != self.n:
                raise ShapeMismatch("scalars over different coordinate counts")
            return other
        if isinstance(other, (int, Fraction)):
            return ScalarFn.const(self.n, other)
        return None

    def _is_poly(self) -> bool:
        # fraction-cancel is the hot path; pure polynomials skip it
        return self._fr.denom == _poly_one(self.n)

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self._is_poly() and other._is_poly():
            return ScalarFn(self.n, _field(self.n).raw_new(
                self._fr.numer + other._fr.numer, _poly_one(self.n)))
        return ScalarFn(self.n, self._fr + other._fr)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self._is_poly() and other._is_poly():
            return ScalarFn(self.n, _field(self.n).raw_new(
                self._fr.numer - other._fr.numer, _poly_one(self.n)))
        return ScalarFn(self.n, self._fr - other._fr)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self._is_poly() and other._is_poly():
            return ScalarFn(self.n, _field(self.n).raw_new(
                self._fr.numer * other._fr.numer, _poly_one(self.n)))
        return ScalarFn(self.n, self._fr * other._fr)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not other._fr:
            raise DivisionByZero("division by the zero function")
        return ScalarFn(self.n, self._fr / other._fr)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not self._fr:
            raise DivisionByZero("division by the zero function")
        return ScalarFn(self.n, other._fr / self._fr)

    def __neg__(self):
        return ScalarFn(self.n, -self._fr)

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0 and not self._fr:
            raise DivisionByZero("negative power of the zero function")
        return ScalarFn(self.n, self._fr ** exponent)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ScalarFn.const(self.n, other)
        if not isinstance(other, ScalarFn):
            return NotImplemented
        return self.n == other.n and self._fr == other._fr

    def __hash__(self):
        return hash((self.n, self._fr))

    def __bool__(self):
        return bool(self._fr)

    # --- calculus -------------------------------------------------------

    def diff(self, index: int) -> "ScalarFn":
        """Partial derivative with respect to z^index (quotient rule)."""
        if not 1 <= index <= self.n:
            raise IndexOutOfRange("coordinate index %d outside 1..%d" % (index, self.n))
        return ScalarFn(self.n, self._fr.diff(_field(self.n).gens[index - 1]))

    # --- inspection / rendering -----------------------------------------

    @property
    def is_constant(self) -> bool:
        return self._fr.denom == 1 and self._fr.numer.is_ground

    def constant_value(self) -> Fraction:
        """The value as a Fraction; only valid when is_constant."""
        if not self.is_constant:
            raise ValueError("not a constant scalar")
        c = self._fr.numer.LC if self._fr.numer else QQ(0)
        return Fraction(int(QQ.numer(c)), int(QQ.denom(c)))

    def fraction_terms(self):
        """The canonical (numerator, denominator) term lists.

        Each list holds (exponent_tuple, Fraction) pairs in descending
        graded-lex order; the denominator is monic (leading coefficient 1).
        """
        num, den = self._fr.numer, self._fr.denom
        if den != 1:
            lc = den.LC
            num = num.quo_ground(lc)
            den = den.quo_ground(lc)
        to_frac = lambda c: Fraction(int(QQ.numer(c)), int(QQ.denom(c)))
        num_terms = [(tuple(mon), to_frac(c)) for mon, c in num.terms()]
        den_terms = [(tuple(mon), to_frac(c)) for mon, c in den.terms()]
        return num_terms, den_terms

    def render(self, names=None) -> str:
        """Deterministic text form in the expression grammar (z1^2*z2 etc.)."""
        names = tuple(names) if names is not None else tuple(
            "z%d" % i for i in range(1, self.n + 1))
        num_terms, den_terms = self.fraction_terms()
        num_text = _render_poly(num_terms, names)
        if den_terms == [((0,) * self.n, Fraction(1))]:
            return num_text
        den_text = _render_poly(den_terms, names)
        if len(num_terms) > 1:
            num_text = "(%s)" % num_text
        # the denominator is monic; a lone power of one variable needs no parens
        single_factor = (len(den_terms) == 1
                         and sum(1 for e in den_terms[0][0] if e) == 1)
        if not single_factor:
            den_text = "(%s)" % den_text
        return "%s/%s" % (num_text, den_text)

    def render_terms(self, names=None):
        """(text, is_single_monomial) for embedding in products."""
        text = self.render(names)
        num_terms, den_terms = self.fraction_terms()
        single = (len(num_terms) <= 1
                  and den_terms == [((0,) * self.n, Fraction(1))]
                  and (not num_terms or num_terms[0][1] > 0))
        return text, single

    def __repr__(self):
        return "ScalarFn(%s)" % self.render()


def _render_monomial(exponents, names):
    factors = []
    for name, e in zip(names, exponents):
        if e == 1:
            factors.append(name)
        elif e > 1:
            factors.append("%s^%d" % (name, e))
    return "*".join(factors)


def _render_coeff(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return "%d/%d" % (value.numerator, value.denominator)


def _render_poly(terms, names) -> str:
    if not terms:
        return "0"
    pieces = []
    for mon, coeff in terms:
        body = _render_monomial(mon, names)
        mag = abs(coeff)
        if not body:
            text = _render_coeff(mag)
        elif mag == 1:
            text = body
        else:
            text = "%s*%s" % (_render_coeff(mag), body)
        if not pieces:
            pieces.append(text if coeff > 0 else "-" + text)
        else:
            pieces.append((" + " if coeff > 0 else " - ") + text)
    return "".join(pieces)


def scalar_arith(a: ScalarFn, b: ScalarFn, op: str) -> ScalarFn:
    """Field arithmetic by name: op in {add, sub, mul, div}."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError("unknown op %r" % op)


def partial_base(f: ScalarFn, index: int) -> ScalarFn:
    """Partial derivative of f with respect to the base coordinate z^index."""
    return f.diff(index)


class ScalarMatrix:
    """A rectangular grid of ScalarFn entries."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries):
        entries = tuple(tuple(row) for row in entries)
        if not entries or not entries[0]:
            raise ShapeMismatch("matrix must have at least one row and column")
        cols = len(entries[0])
        for row in entries:
            if len(row) != cols:
                raise ShapeMismatch("ragged matrix rows")
            for e in row:
                if not isinstance(e, ScalarFn):
                    raise TypeError("matrix entries must be ScalarFn")
        self.rows = len(entries)
        self.cols = cols
        self.entries = entries

    @classmethod
    def identity(cls, size: int, n: int) -> "ScalarMatrix":
        return cls([[ScalarFn.one(n) if i == j else ScalarFn.zero(n)
                     for j in range(size)] for i in range(size)])

    def __getitem__(self, key):
        i, j = key
        return self.entries[i][j]

    def __eq__(self, other):
        if not isinstance(other, ScalarMatrix):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __matmul__(self, other: "ScalarMatrix") -> "ScalarMatrix":
        if self.cols != other.rows:
            raise ShapeMismatch("matrix product %dx%d @ %dx%d"
                                % (self.rows, self.cols, other.rows, other.cols))
        n = self.entries[0][0].n
        return ScalarMatrix(
            [[sum((self[i, k] * other[k, j] for k in range(self.cols)),
                  ScalarFn.zero(n))
              for j in range(other.cols)] for i in range(self.rows)])

    def determinant(self) -> ScalarFn:
        if self.rows != self.cols:
            raise ShapeMismatch("determinant of a non-square matrix")
        return _det(self.entries)

    def inverse(self) -> "ScalarMatrix":
        """Inverse via adjugate/determinant; exact."""
        if self.rows != self.cols:
            raise ShapeMismatch("inverse of a non-square matrix")
        det = self.determinant()
        if not det:
            raise SingularMatrix("determinant is identically zero")
        size = self.rows
        if size == 1:
            return ScalarMatrix([[ScalarFn.one(det.n) / self[0, 0]]])
        adj = [[_cofactor(self.entries, j, i) / det for j in range(size)]
               for i in range(size)]
        return ScalarMatrix(adj)

    def __repr__(self):
        return "ScalarMatrix(%s)" % ("; ".join(
            ", ".join(e.render() for e in row) for row in self.entries))


def _det(entries) -> ScalarFn:
    size = len(entries)
    if size == 1:
        return entries[0][0]
    n = entries[0][0].n
    total = ScalarFn.zero(n)
    for j in range(size):
        if not entries[0][j]:
            continue
        term = entries[0][j] * _minor_det(entries, 0, j)
        total = total + term if j % 2 == 0 else total - term
    return total


def _minor_det(entries, drop_row, drop_col) -> ScalarFn:
    minor = [[e for j, e in enumerate(row) if j != drop_col]
             for i, row in enumerate(entries) if i != drop_row]
    return _det(minor)


def _cofactor(entries, i, j) -> ScalarFn:
    det = _minor_det(entries, i, j)
    return det if (i + j) % 2 == 0 else -det


def matrix_inverse(matrix: ScalarMatrix) -> ScalarMatrix:
    """Exact inverse of a square ScalarMatrix (adjugate over determinant)."""
    return matrix.inverse()
