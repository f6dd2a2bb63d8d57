"""The Z2-graded ring of superfunctions over a coordinate chart.

A superfunction is a finite Grassmann polynomial: a sparse map from
canonical generator monomials (strictly increasing index tuples) to
ScalarFn coefficients.  Odd derivatives follow the left convention:
d_a(c^S) = (-1)^p c^{S \\ a} with p the number of indices of S below a.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ChartMismatch, IndexOutOfRange, ShapeMismatch
from .scalars import ScalarFn, ScalarMatrix


@dataclass(frozen=True)
class Chart:
    """A fixed base chart: n base coordinates z^A and m odd generators c^a."""

    n: int
    m: int
    base_names: tuple = ()
    fiber_names: tuple = ()

    def __post_init__(self):
        if self.n < 0 or self.m < 0:
            raise ValueError("coordinate counts must be non-negative")
        object.__setattr__(self, "base_names", tuple(self.base_names))
        object.__setattr__(self, "fiber_names", tuple(self.fiber_names))
        if not self.base_names:
            object.__setattr__(self, "base_names",
                               tuple("z%d" % i for i in range(1, self.n + 1)))
        if not self.fiber_names:
            object.__setattr__(self, "fiber_names",
                               tuple("c%d" % i for i in range(1, self.m + 1)))
        if len(self.base_names) != self.n or len(self.fiber_names) != self.m:
            raise ValueError("name counts must match (n, m)")
        names = self.base_names + self.fiber_names
        if len(set(names)) != len(names):
            raise ValueError("chart names must be distinct")

    def primed_fiber_names(self) -> tuple:
        return tuple(name + "'" for name in self.fiber_names)

    def check_base_index(self, index: int):
        if not 1 <= index <= self.n:
            raise IndexOutOfRange("base index %d outside 1..%d" % (index, self.n))

    def check_fiber_index(self, index: int):
        if not 1 <= index <= self.m:
            raise IndexOutOfRange("generator index %d outside 1..%d" % (index, self.m))


def merge_monomials(left: tuple, right: tuple):
    """Product of canonical generator monomials.

    Returns (sign, merged) or None when an index repeats (nilpotency).
    The sign counts the transpositions needed to sort left || right.
    """
    if set(left) & set(right):
        return None
    inversions = 0
    for s in left:
        for t in right:
            if s > t:
                inversions += 1
    merged = tuple(sorted(left + right))
    return (-1) ** inversions, merged


class Superfunction:
    """Element of the Grassmann algebra on a chart, with ScalarFn coefficients."""

    __slots__ = ("chart", "terms")

    def __init__(self, chart: Chart, terms=None):
        self.chart = chart
        clean = {}
        for mono, coeff in (terms or {}).items():
            if coeff:
                clean[mono] = coeff
        self.terms = clean

    # --- constructors ----------------------------------------------------

    @classmethod
    def zero(cls, chart: Chart) -> "Superfunction":
        return cls(chart, {})

    @classmethod
    def one(cls, chart: Chart) -> "Superfunction":
        return cls(chart, {(): ScalarFn.one(chart.n)})

    @classmethod
    def from_scalar(cls, chart: Chart, value) -> "Superfunction":
        if isinstance(value, (int, Fraction)):
            value = ScalarFn.const(chart.n, value)
        return cls(chart, {(): value})

    @classmethod
    def coordinate(cls, chart: Chart, index: int) -> "Superfunction":
        """The base coordinate z^index as a superfunction."""
        chart.check_base_index(index)
        return cls(chart, {(): ScalarFn.coordinate(chart.n, index)})

    @classmethod
    def generator(cls, chart: Chart, index: int) -> "Superfunction":
        """The odd generator c^index."""
        chart.check_fiber_index(index)
        return cls(chart, {(index,): ScalarFn.one(chart.n)})

    @classmethod
    def monomial(cls, chart: Chart, indices, coeff=None) -> "Superfunction":
        indices = tuple(indices)
        if list(indices) != sorted(set(indices)):
            raise ValueError("monomial indices must be strictly increasing")
        for a in indices:
            chart.check_fiber_index(a)
        if coeff is None:
            coeff = ScalarFn.one(chart.n)
        return cls(chart, {indices: coeff})

    # --- helpers ----------------------------------------------------------

    def _require_same_chart(self, other: "Superfunction"):
        if self.chart != other.chart:
            raise ChartMismatch("superfunctions over different charts")

    def _coerce(self, other):
        if isinstance(other, Superfunction):
            self._require_same_chart(other)
            return other
        if isinstance(other, (int, Fraction, ScalarFn)):
            return Superfunction.from_scalar(self.chart, other)
        return None

    # --- ring structure -----------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        for mono, coeff in other.terms.items():
            acc = terms.get(mono)
            terms[mono] = coeff if acc is None else acc + coeff
        return Superfunction(self.chart, terms)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __neg__(self):
        return Superfunction(self.chart, {m: -c for m, c in self.terms.items()})

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = {}
        for s, cs in self.terms.items():
            for t, ct in other.terms.items():
                merged = merge_monomials(s, t)
                if merged is None:
                    continue
                sign, mono = merged
                piece = cs * ct if sign > 0 else -(cs * ct)
                acc = terms.get(mono)
                terms[mono] = piece if acc is None else acc + piece
        return Superfunction(self.chart, terms)

    def __rmul__(self, other):
        # scalars commute, so only coercible-left cases reach here
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, ScalarFn)):
            other = Superfunction.from_scalar(self.chart, other)
        if not isinstance(other, Superfunction):
            return NotImplemented
        return self.chart == other.chart and self.terms == other.terms

    def __hash__(self):
        return hash((self.chart, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    # --- derivatives ---------------------------------------------------------

    def base_derivative(self, index: int) -> "Superfunction":
        """d/dz^index, applied coefficient-wise."""
        self.chart.check_base_index(index)
        return Superfunction(self.chart,
                             {m: c.diff(index) for m, c in self.terms.items()})

    def odd_derivative(self, index: int) -> "Superfunction":
        """Left derivative d/dc^index."""
        self.chart.check_fiber_index(index)
        terms = {}
        for mono, coeff in self.terms.items():
            if index not in mono:
                continue
            below = sum(1 for a in mono if a < index)
            reduced = tuple(a for a in mono if a != index)
            piece = coeff if below % 2 == 0 else -coeff
            acc = terms.get(reduced)
            terms[reduced] = piece if acc is None else acc + piece
        return Superfunction(self.chart, terms)

    # --- grading ---------------------------------------------------------------

    def parity_split(self):
        """(even part, odd part) by Grassmann-monomial length mod 2."""
        even = {m: c for m, c in self.terms.items() if len(m) % 2 == 0}
        odd = {m: c for m, c in self.terms.items() if len(m) % 2 == 1}
        return Superfunction(self.chart, even), Superfunction(self.chart, odd)

    def parity(self):
        """0, 1, or None for inhomogeneous; the zero function counts as even."""
        even, odd = self.parity_split()
        if not odd:
            return 0
        if not even:
            return 1
        return None

    @property
    def is_homogeneous(self) -> bool:
        return self.parity() is not None

    def degree_part(self, k: int) -> "Superfunction":
        """The part with Grassmann-monomial length exactly k."""
        return Superfunction(self.chart,
                             {m: c for m, c in self.terms.items() if len(m) == k})

    def degrees(self):
        return sorted({len(m) for m in self.terms})

    def body(self) -> ScalarFn:
        """The k = 0 coefficient."""
        return self.terms.get((), ScalarFn.zero(self.chart.n))

    @property
    def is_scalar(self) -> bool:
        return all(m == () for m in self.terms)

    # --- substitution -------------------------------------------------------------

    def substitute_generators(self, images: ScalarMatrix) -> "Superfunction":
        """Replace c^b by sum_a images[b][a] * c^a and expand.

        images is m x m; row b expands the old generator b in the new frame.
        A ring homomorphism (the images are odd, so order inside each
        monomial is preserved).
        """
        m = self.chart.m
        if images.rows != m or images.cols != m:
            raise ShapeMismatch("substitution matrix must be %d x %d" % (m, m))
        image_of = [
            Superfunction(self.chart,
                          {(a + 1,): images[b, a] for a in range(m) if images[b, a]})
            for b in range(m)
        ]
        total = Superfunction.zero(self.chart)
        for mono, coeff in self.terms.items():
            piece = Superfunction.from_scalar(self.chart, coeff)
            for b in mono:
                piece = piece * image_of[b - 1]
            total = total + piece
        return total

    def __repr__(self):
        if not self.terms:
            return "Superfunction(0)"
        bits = []
        for mono in sorted(self.terms, key=lambda m: (len(m), m)):
            body = "*".join(self.chart.fiber_names[a - 1] for a in mono)
            coeff = self.terms[mono].render(self.chart.base_names)
            bits.append("(%s)%s" % (coeff, "*" + body if body else ""))
        return "Superfunction(%s)" % " + ".join(bits)


def gr_mul(f: Superfunction, g: Superfunction) -> Superfunction:
    """Graded product of superfunctions (bilinear over the sign rule)."""
    return f * g


def odd_derivative(f: Superfunction, index: int) -> Superfunction:
    return f.odd_derivative(index)


def base_derivative(f: Superfunction, index: int) -> Superfunction:
    return f.base_derivative(index)


def parity_split(f: Superfunction):
    return f.parity_split()
