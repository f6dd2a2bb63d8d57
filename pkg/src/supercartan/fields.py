"""Supervector fields: graded derivations of the superfunction ring.

A field u = u^A d_A + u^a d_a is stored by its component superfunctions.
Applying u to a superfunction puts the component on the left of the
derivative, so that homogeneous fields obey the graded Leibniz rule.
The bracket is extracted by evaluating the operator combination on the
coordinate superfunctions z^A and c^a.
"""

from __future__ import annotations

from fractions import Fraction
from typing import TYPE_CHECKING

from .errors import ChartMismatch
from .grassmann import Chart, Superfunction
from .scalars import ScalarFn

if TYPE_CHECKING:
    from .geometry import Transition


class SupervectorField:
    """u = sum_A u^A d/dz^A + sum_a u^a d/dc^a with superfunction components."""

    __slots__ = ("chart", "base", "fiber")

    def __init__(self, chart: Chart, base=None, fiber=None):
        zero = Superfunction.zero(chart)
        base = tuple(base) if base is not None else (zero,) * chart.n
        fiber = tuple(fiber) if fiber is not None else (zero,) * chart.m
        if len(base) != chart.n or len(fiber) != chart.m:
            raise ChartMismatch("component counts must match the chart")
        for comp in base + fiber:
            if comp.chart != chart:
                raise ChartMismatch("components over a different chart")
        self.chart = chart
        self.base = base
        self.fiber = fiber

    # --- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, chart: Chart) -> "SupervectorField":
        return cls(chart)

    @classmethod
    def d_dz(cls, chart: Chart, index: int) -> "SupervectorField":
        chart.check_base_index(index)
        base = [Superfunction.one(chart) if a == index - 1 else Superfunction.zero(chart)
                for a in range(chart.n)]
        return cls(chart, base=base)

    @classmethod
    def d_dc(cls, chart: Chart, index: int) -> "SupervectorField":
        chart.check_fiber_index(index)
        fiber = [Superfunction.one(chart) if a == index - 1 else Superfunction.zero(chart)
                 for a in range(chart.m)]
        return cls(chart, fiber=fiber)

    # --- module structure ----------------------------------------------------

    def _require_same_chart(self, other: "SupervectorField"):
        if self.chart != other.chart:
            raise ChartMismatch("fields over different charts")

    def __add__(self, other):
        if not isinstance(other, SupervectorField):
            return NotImplemented
        self._require_same_chart(other)
        return SupervectorField(
            self.chart,
            base=[a + b for a, b in zip(self.base, other.base)],
            fiber=[a + b for a, b in zip(self.fiber, other.fiber)])

    def __sub__(self, other):
        if not isinstance(other, SupervectorField):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return SupervectorField(self.chart,
                                base=[-a for a in self.base],
                                fiber=[-a for a in self.fiber])

    def __rmul__(self, factor):
        """Left module action f * u, components gr_mul(f, u^X)."""
        if isinstance(factor, (int, Fraction, ScalarFn)):
            factor = Superfunction.from_scalar(self.chart, factor)
        if not isinstance(factor, Superfunction):
            return NotImplemented
        return SupervectorField(self.chart,
                                base=[factor * a for a in self.base],
                                fiber=[factor * a for a in self.fiber])

    def __eq__(self, other):
        if not isinstance(other, SupervectorField):
            return NotImplemented
        return (self.chart == other.chart and self.base == other.base
                and self.fiber == other.fiber)

    def __hash__(self):
        return hash((self.chart, self.base, self.fiber))

    def __bool__(self):
        return any(self.base) or any(self.fiber)

    # --- derivation action ------------------------------------------------------

    def apply(self, f: Superfunction) -> Superfunction:
        """u(f) = sum_A u^A * d_A f + sum_a u^a * d_a f."""
        if f.chart != self.chart:
            raise ChartMismatch("field and superfunction over different charts")
        out = Superfunction.zero(self.chart)
        for index, comp in enumerate(self.base, start=1):
            if comp:
                out = out + comp * f.base_derivative(index)
        for index, comp in enumerate(self.fiber, start=1):
            if comp:
                out = out + comp * f.odd_derivative(index)
        return out

    __call__ = apply

    # --- grading -------------------------------------------------------------------

    def parity_split(self):
        """(even field, odd field); even means u^A even and u^a odd."""
        even_base, odd_base, even_fiber, odd_fiber = [], [], [], []
        for comp in self.base:
            e, o = comp.parity_split()
            even_base.append(e)
            odd_base.append(o)
        for comp in self.fiber:
            e, o = comp.parity_split()
            even_fiber.append(o)
            odd_fiber.append(e)
        return (SupervectorField(self.chart, even_base, even_fiber),
                SupervectorField(self.chart, odd_base, odd_fiber))

    def parity(self):
        """0, 1, or None; the zero field counts as even."""
        even, odd = self.parity_split()
        if not odd:
            return 0
        if not even:
            return 1
        return None

    @property
    def is_homogeneous(self) -> bool:
        return self.parity() is not None

    def degree_part(self, k: int) -> "SupervectorField":
        """Keep only Grassmann-degree-k terms of every component."""
        return SupervectorField(self.chart,
                                base=[c.degree_part(k) for c in self.base],
                                fiber=[c.degree_part(k) for c in self.fiber])

    def __repr__(self):
        bits = []
        for index, comp in enumerate(self.base, start=1):
            if comp:
                bits.append("(%r)*d/d%s" % (comp, self.chart.base_names[index - 1]))
        for index, comp in enumerate(self.fiber, start=1):
            if comp:
                bits.append("(%r)*d/d%s" % (comp, self.chart.fiber_names[index - 1]))
        return "SupervectorField(%s)" % (" + ".join(bits) or "0")


def apply(u: SupervectorField, f: Superfunction) -> Superfunction:
    return u.apply(f)


def field_parity(u: SupervectorField):
    """The parity of u: 0 (even), 1 (odd), or None (inhomogeneous)."""
    return u.parity()


def _homogeneous_bracket(u: SupervectorField, v: SupervectorField,
                         pu: int, pv: int) -> SupervectorField:
    chart = u.chart
    sign = (-1) ** (pu * pv + 1)

    def combined(x: Superfunction) -> Superfunction:
        first = u.apply(v.apply(x))
        second = v.apply(u.apply(x))
        return first + second if sign > 0 else first - second

    base = [combined(Superfunction.coordinate(chart, A)) for A in range(1, chart.n + 1)]
    fiber = [combined(Superfunction.generator(chart, a)) for a in range(1, chart.m + 1)]
    return SupervectorField(chart, base, fiber)


def bracket(u: SupervectorField, v: SupervectorField) -> SupervectorField:
    """Lie superbracket [u, v] = u v + (-1)^{|u||v|+1} v u.

    Components come from evaluating the operator combination on z^A and
    c^a; inhomogeneous arguments are handled by bilinear extension over
    the parity split.
    """
    u._require_same_chart(v)
    out = SupervectorField.zero(u.chart)
    for pu, upart in enumerate(u.parity_split()):
        if not upart:
            continue
        for pv, vpart in enumerate(v.parity_split()):
            if not vpart:
                continue
            out = out + _homogeneous_bracket(upart, vpart, pu, pv)
    return out


def transform_field(u: SupervectorField, rho: "Transition") -> SupervectorField:
    """Components of u with respect to the primed frame c'^a = rho^a_b c^b.

    u'^A = T(u^A) and u'^a = rho^a_b T(u^b) + T(u^A) d_A(rho^a_b) T(c^b),
    where T re-expresses superfunctions in the primed generators via
    c^b = rho^{-1}{}^b_a c'^a.  Satisfies apply(u', T(f)) = T(apply(u, f)).
    """
    chart = u.chart
    if rho.size != chart.m:
        raise ChartMismatch("transition size does not match the chart")
    inv = rho.inverse

    def reframe(f: Superfunction) -> Superfunction:
        return f.substitute_generators(inv)

    new_base = [reframe(comp) for comp in u.base]
    old_gen_in_primed = [
        Superfunction(chart, {(j + 1,): inv[b, j] for j in range(chart.m) if inv[b, j]})
        for b in range(chart.m)
    ]
    new_fiber = []
    for a in range(chart.m):
        acc = Superfunction.zero(chart)
        for b in range(chart.m):
            if u.fiber[b]:
                acc = acc + rho.matrix[a, b] * reframe(u.fiber[b])
        for A in range(1, chart.n + 1):
            if not u.base[A - 1]:
                continue
            lifted = reframe(u.base[A - 1])
            for b in range(chart.m):
                d_rho = rho.matrix[a, b].diff(A)
                if d_rho:
                    acc = acc + lifted * (d_rho * old_gen_in_primed[b])
        new_fiber.append(acc)
    return SupervectorField(chart, new_base, new_fiber)
