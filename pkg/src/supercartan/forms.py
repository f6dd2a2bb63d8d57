"""Exterior superforms: the (Z, Z2)-bi-graded ring over superfunctions.

Generator relations (with c^a the odd coordinates):

    dz^A dz^B = -dz^B dz^A        dc^a dc^b = +dc^b dc^a
    dz^A dc^a = -dc^a dz^A        c^a dz^B  = +dz^B c^a
    c^a dc^b  = -dc^b c^a         scalars commute with everything

so dz factors are antisymmetric, dc factors symmetric (repetitions
survive), and the Grassmann parities are [dz] = 0, [dc] = 1, [c] = 1.
A form is a canonical sum coeff * dz... * dc... keyed by the pair
(strictly increasing dz indices, weakly increasing dc indices).
"""

from __future__ import annotations

from fractions import Fraction
from typing import TYPE_CHECKING, NamedTuple

from .errors import ChartMismatch, NotDegreeOne
from .fields import SupervectorField
from .grassmann import Chart, Superfunction, merge_monomials
from .scalars import ScalarFn

if TYPE_CHECKING:
    from .geometry import Transition


class Superform:
    """Canonical sum of (superfunction coefficient) * dz^T * dc^U terms."""

    __slots__ = ("chart", "terms")

    def __init__(self, chart: Chart, terms=None):
        self.chart = chart
        clean = {}
        for key, coeff in (terms or {}).items():
            if coeff:
                clean[key] = coeff
        self.terms = clean

    # --- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, chart: Chart) -> "Superform":
        return cls(chart, {})

    @classmethod
    def from_superfunction(cls, f: Superfunction) -> "Superform":
        return cls(f.chart, {((), ()): f})

    @classmethod
    def dz(cls, chart: Chart, index: int) -> "Superform":
        chart.check_base_index(index)
        return cls(chart, {((index,), ()): Superfunction.one(chart)})

    @classmethod
    def dc(cls, chart: Chart, index: int) -> "Superform":
        chart.check_fiber_index(index)
        return cls(chart, {((), (index,)): Superfunction.one(chart)})

    @classmethod
    def term(cls, coeff: Superfunction, dz_part, dc_part) -> "Superform":
        dz_part, dc_part = tuple(dz_part), tuple(dc_part)
        if list(dz_part) != sorted(set(dz_part)):
            raise ValueError("dz indices must be strictly increasing")
        if list(dc_part) != sorted(dc_part):
            raise ValueError("dc indices must be sorted")
        for A in dz_part:
            coeff.chart.check_base_index(A)
        for a in dc_part:
            coeff.chart.check_fiber_index(a)
        return cls(coeff.chart, {(dz_part, dc_part): coeff})

    # --- additive structure ---------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Superform):
            if other.chart != self.chart:
                raise ChartMismatch("forms over different charts")
            return other
        if isinstance(other, (int, Fraction, ScalarFn)):
            other = Superfunction.from_scalar(self.chart, other)
        if isinstance(other, Superfunction):
            if other.chart != self.chart:
                raise ChartMismatch("forms over different charts")
            return Superform.from_superfunction(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        for key, coeff in other.terms.items():
            acc = terms.get(key)
            terms[key] = coeff if acc is None else acc + coeff
        return Superform(self.chart, terms)

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
        return Superform(self.chart, {k: -c for k, c in self.terms.items()})

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return wedge(self, other)

    def __rmul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return wedge(other, self)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, ScalarFn, Superfunction)):
            other = self._coerce(other)
        if not isinstance(other, Superform):
            return NotImplemented
        return self.chart == other.chart and self.terms == other.terms

    def __hash__(self):
        return hash((self.chart, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    # --- grading -----------------------------------------------------------------

    def degrees(self):
        return sorted({len(t) + len(u) for t, u in self.terms})

    def degree_part(self, k: int) -> "Superform":
        return Superform(self.chart, {key: c for key, c in self.terms.items()
                                      if len(key[0]) + len(key[1]) == k})

    def is_pure_degree(self, k: int) -> bool:
        return all(len(t) + len(u) == k for t, u in self.terms)

    def parity_split(self):
        """(even, odd) by the total parity (coeff parity + #dc) mod 2."""
        even, odd = {}, {}
        for (t, u), coeff in self.terms.items():
            ce, co = coeff.parity_split()
            if len(u) % 2:
                ce, co = co, ce
            if ce:
                even[(t, u)] = ce
            if co:
                odd[(t, u)] = co
        return Superform(self.chart, even), Superform(self.chart, odd)

    def parity(self):
        even, odd = self.parity_split()
        if not odd:
            return 0
        if not even:
            return 1
        return None

    def component(self, index: int) -> Superfunction:
        """phi_A of a 1-form: the coefficient of dz^index."""
        return self.terms.get(((index,), ()), Superfunction.zero(self.chart))

    def fiber_component(self, index: int) -> Superfunction:
        """phi_a of a 1-form: the coefficient of dc^index."""
        return self.terms.get(((), (index,)), Superfunction.zero(self.chart))

    def __repr__(self):
        if not self.terms:
            return "Superform(0)"
        bits = []
        for (t, u) in sorted(self.terms, key=_term_order):
            factors = ["d" + self.chart.base_names[A - 1] for A in t]
            factors += ["d" + self.chart.fiber_names[a - 1] for a in u]
            bits.append("(%r)*%s" % (self.terms[(t, u)], "*".join(factors) or "1"))
        return "Superform(%s)" % " + ".join(bits)


def _term_order(key):
    t, u = key
    return (len(t) + len(u), t, u)


class FormGrading(NamedTuple):
    """Degree and parity spectra of a form, with homogeneity flags."""

    degrees: tuple
    parities: tuple
    degree_homogeneous: bool
    parity_homogeneous: bool
    bihomogeneous: bool


def form_parity(phi: Superform) -> FormGrading:
    degrees = tuple(phi.degrees())
    even, odd = phi.parity_split()
    parities = tuple([p for p, part in ((0, even), (1, odd)) if part])
    if not phi.terms:
        degrees, parities = (0,), (0,)
    deg_h = len(degrees) == 1
    par_h = len(parities) == 1
    return FormGrading(degrees, parities, deg_h, par_h, deg_h and par_h)


# --- wedge -------------------------------------------------------------------

def _atomic_terms(phi: Superform):
    """Split into (scalar, c_monomial, dz_part, dc_part) pieces."""
    for (t, u), coeff in phi.terms.items():
        for mono, scalar in coeff.terms.items():
            yield scalar, mono, t, u


def wedge(phi: Superform, sigma: Superform) -> Superform:
    """Graded exterior product under the generator relations above."""
    if phi.chart != sigma.chart:
        raise ChartMismatch("forms over different charts")
    chart = phi.chart
    acc = {}
    right = list(_atomic_terms(sigma))
    for s1, c1, t1, u1 in _atomic_terms(phi):
        for s2, c2, t2, u2 in right:
            merged_c = merge_monomials(c1, c2)
            if merged_c is None:
                continue
            merged_t = merge_monomials(t1, t2)
            if merged_t is None:
                continue
            sign_c, mono = merged_c
            sign_t, dz_part = merged_t
            # c^{S2} crosses dc^{U1}; dz^{T2} crosses dc^{U1}
            sign = sign_c * sign_t * (-1) ** (len(u1) * (len(c2) + len(t2)))
            dc_part = tuple(sorted(u1 + u2))
            scalar = s1 * s2 if sign > 0 else -(s1 * s2)
            slot = acc.setdefault((dz_part, dc_part), {})
            prev = slot.get(mono)
            slot[mono] = scalar if prev is None else prev + scalar
    return Superform(chart, {key: Superfunction(chart, monos)
                             for key, monos in acc.items()})


# --- exterior differential --------------------------------------------------------

def exterior_differential(phi) -> Superform:
    """d phi = sum_A dz^A ^ d_A(phi) + sum_a dc^a ^ d_a(phi).

    The left derivatives act on the coefficient of every canonical term;
    the leading basis covector is then normalized into position by the
    wedge sign rules.  Accepts a superfunction as a 0-form.
    """
    if isinstance(phi, Superfunction):
        phi = Superform.from_superfunction(phi)
    chart = phi.chart
    out = Superform.zero(chart)
    for (t, u), coeff in phi.terms.items():
        for A in range(1, chart.n + 1):
            d_coeff = coeff.base_derivative(A)
            if d_coeff:
                out = out + wedge(Superform.dz(chart, A),
                                  Superform(chart, {(t, u): d_coeff}))
        for a in range(1, chart.m + 1):
            d_coeff = coeff.odd_derivative(a)
            if d_coeff:
                out = out + wedge(Superform.dc(chart, a),
                                  Superform(chart, {(t, u): d_coeff}))
    return out


# --- interior product -----------------------------------------------------------------

def _interior_homogeneous(u: SupervectorField, parity: int, phi: Superform) -> Superform:
    """Contraction with a parity-homogeneous field, by the extension rule

        u | (w ^ R) = (u | w) ^ R + (-1)^{|w| + [w][u]} w ^ (u | R)

    applied along the factorization coeff ^ dz... ^ dc... of each term.
    """
    chart = phi.chart
    out = Superform.zero(chart)
    for scalar, mono, t, u_part in _atomic_terms(phi):
        factors = [("c", mono, scalar)]
        factors += [("dz", A) for A in t]
        factors += [("dc", a) for a in u_part]
        # suffix[i] = the untouched tail wedge of factors[i:]
        suffix = [None] * (len(factors) + 1)
        suffix[len(factors)] = Superform.from_superfunction(Superfunction.one(chart))
        for i in range(len(factors) - 1, -1, -1):
            suffix[i] = wedge(_factor_form(chart, factors[i]), suffix[i + 1])
        contracted = Superform.zero(chart)
        for i in range(len(factors) - 1, -1, -1):
            kind = factors[i][0]
            if kind == "c":
                q = len(factors[i][1]) % 2
                head = _factor_form(chart, factors[i])
                contracted = wedge(head, contracted)
                if q * parity % 2:
                    contracted = -contracted
            elif kind == "dz":
                A = factors[i][1]
                hit = wedge(Superform.from_superfunction(u.base[A - 1]), suffix[i + 1])
                contracted = hit - wedge(Superform.dz(chart, A), contracted)
            else:
                a = factors[i][1]
                hit = wedge(Superform.from_superfunction(u.fiber[a - 1]), suffix[i + 1])
                tail = wedge(Superform.dc(chart, a), contracted)
                contracted = hit + tail if (1 + parity) % 2 == 0 else hit - tail
        out = out + contracted
    return out


def _factor_form(chart: Chart, factor) -> Superform:
    kind = factor[0]
    if kind == "c":
        mono, scalar = factor[1], factor[2]
        return Superform.from_superfunction(
            Superfunction(chart, {mono: scalar}))
    if kind == "dz":
        return Superform.dz(chart, factor[1])
    return Superform.dc(chart, factor[1])


def interior(u: SupervectorField, phi) -> Superform:
    """u | phi; on 1-forms u | phi = u^A phi_A + (-1)^{[phi_a]} u^a phi_a.

    Degree-lowering; 0-forms contract to 0.  Inhomogeneous fields act by
    their parity parts.
    """
    if isinstance(phi, Superfunction):
        phi = Superform.from_superfunction(phi)
    if u.chart != phi.chart:
        raise ChartMismatch("field and form over different charts")
    even, odd = u.parity_split()
    out = Superform.zero(phi.chart)
    if even:
        out = out + _interior_homogeneous(even, 0, phi)
    if odd:
        out = out + _interior_homogeneous(odd, 1, phi)
    return out


def lie_derivative(u: SupervectorField, phi) -> Superform:
    """L_u phi = u | d(phi) + d(u | phi); equals u(f) on 0-forms."""
    if isinstance(phi, Superfunction):
        phi = Superform.from_superfunction(phi)
    return interior(u, exterior_differential(phi)) + exterior_differential(interior(u, phi))


# --- frame transitions -----------------------------------------------------------------

def transform_form(phi: Superform, rho: "Transition") -> Superform:
    """Re-express a form in the primed frame by generator substitution.

    Coefficients go through c^b = rho^{-1}{}^b_a c'^a and every dc^b is
    replaced by d(rho^{-1}{}^b_a c'^a) = d_A(rho^{-1}{}^b_a) c'^a dz^A
    + rho^{-1}{}^b_a dc'^a; a ring homomorphism commuting with d.  On
    1-forms the components obey the transition law of the dual frame
    bundle, with pairings against transformed fields left invariant.
    """
    chart = phi.chart
    if rho.size != chart.m:
        raise ChartMismatch("transition size does not match the chart")
    inv = rho.inverse
    dc_image = []
    for b in range(chart.m):
        terms = {}
        for a in range(chart.m):
            if inv[b, a]:
                terms[((), (a + 1,))] = Superfunction.from_scalar(chart, inv[b, a])
        for A in range(1, chart.n + 1):
            coeff_terms = {}
            for a in range(chart.m):
                d_inv = inv[b, a].diff(A)
                if d_inv:
                    coeff_terms[(a + 1,)] = d_inv
            if coeff_terms:
                terms[((A,), ())] = Superfunction(chart, coeff_terms)
        dc_image.append(Superform(chart, terms))
    out = Superform.zero(chart)
    for (t, u), coeff in phi.terms.items():
        piece = Superform.from_superfunction(coeff.substitute_generators(inv))
        for A in t:
            piece = wedge(piece, Superform.dz(chart, A))
        for b in u:
            piece = wedge(piece, dc_image[b - 1])
        out = out + piece
    return out
