"""Randomized verification suites for the calculus identities.

Each suite is a list of named identities; an identity takes a seeded rng
and returns None on success or a counterexample rendered in the
expression grammar.  Reports are deterministic for a fixed seed: every
case derives its generator from a stable string, and cases are indexed.
The differential suite accepts an injectable differential so tests can
prove the suite catches a broken implementation.
"""

from __future__ import annotations

from dataclasses import dataclass

from .dsl import print_canonical
from .fields import SupervectorField, bracket, transform_field
from .forms import (Superform, exterior_differential, interior,
                    lie_derivative, transform_form, wedge)
from .geometry import (coefficient_transition_field, coefficient_transition_form,
                       compose_transitions, horizontal_lift, split_field,
                       split_form, transform_superfunction, vertical_coframe)
from .grassmann import Chart, Superfunction
from .randgen import (DEFAULT_BOUNDS, GenBounds, case_rng,
                      random_bihomogeneous_form, random_field, random_form,
                      random_one_form, random_connection, random_superfunction,
                      random_transition)


@dataclass
class IdentityResult:
    suite: str
    identity: str
    passed: bool
    counterexample: str = ""

    def line(self) -> str:
        if self.passed:
            return "%s/%s: PASS" % (self.suite, self.identity)
        return "%s/%s: FAIL [%s]" % (self.suite, self.identity, self.counterexample)


class _Context:
    def __init__(self, chart, bounds, differential):
        self.chart = chart
        self.bounds = bounds
        self.d = differential


def _sgn(k: int, value):
    return value if k % 2 == 0 else -value


def _fmt(chart, **values) -> str:
    bits = []
    for name, value in values.items():
        if hasattr(value, "matrix"):  # Transition
            bits.append("%s = %s" % (name, _matrix_text(value.matrix)))
        elif hasattr(value, "gamma"):  # LinearConnection
            bits.append("%s = %s" % (name, "; ".join(
                _matrix_text(mat) for mat in value.gamma)))
        else:
            bits.append("%s = %s" % (name, print_canonical(value, chart)))
    return "; ".join(bits)


def _matrix_text(matrix) -> str:
    return "[%s]" % "; ".join(
        ", ".join(e.render() for e in row) for row in matrix.entries)


# --- derivation ----------------------------------------------------------------

def _leibniz(rng, ctx):
    chart, bounds = ctx.chart, ctx.bounds
    pu, pf = rng.randint(0, 1), rng.randint(0, 1)
    u = random_field(rng, chart, bounds, parity=pu)
    f = random_superfunction(rng, chart, bounds, parity=pf)
    g = random_superfunction(rng, chart, bounds)
    lhs = u.apply(f * g)
    rhs = u.apply(f) * g + _sgn(pu * pf, f * u.apply(g))
    if lhs != rhs:
        return _fmt(chart, u=u, f=f, g=g)
    return None


def _derivative_commutators(rng, ctx):
    chart, bounds = ctx.chart, ctx.bounds
    f = random_superfunction(rng, chart, bounds)
    if chart.m:
        a = rng.randint(1, chart.m)
        b = rng.randint(1, chart.m)
        lhs = f.odd_derivative(a).odd_derivative(b)
        rhs = f.odd_derivative(b).odd_derivative(a)
        if lhs + rhs != Superfunction.zero(chart):
            return _fmt(chart, f=f)
    if chart.n and chart.m:
        A = rng.randint(1, chart.n)
        a = rng.randint(1, chart.m)
        if f.base_derivative(A).odd_derivative(a) != f.odd_derivative(a).base_derivative(A):
            return _fmt(chart, f=f)
    return None


# --- bracket ----------------------------------------------------------------------

def _bracket_pair(rng, ctx):
    chart, bounds = ctx.chart, ctx.bounds
    pu, pv = rng.randint(0, 1), rng.randint(0, 1)
    u = random_field(rng, chart, bounds, parity=pu)
    v = random_field(rng, chart, bounds, parity=pv)
    return u, v, pu, pv


def _antisymmetry(rng, ctx):
    u, v, pu, pv = _bracket_pair(rng, ctx)
    if bracket(u, v) != _sgn(pu * pv + 1, bracket(v, u)):
        return _fmt(ctx.chart, u=u, v=v)
    return None


def _jacobi(rng, ctx):
    chart, bounds = ctx.chart, ctx.bounds
    pu, pv, pw = (rng.randint(0, 1) for _ in range(3))
    u = random_field(rng, chart, bounds, parity=pu)
    v = random_field(rng, chart, bounds, parity=pv)
    w = random_field(rng, chart, bounds, parity=pw)
    total = (_sgn(pu * pw, bracket(u, bracket(v, w)))
             + _sgn(pv * pu, bracket(v, bracket(w, u)))
             + _sgn(pw * pv, bracket(w, bracket(u, v))))
    if total != SupervectorField.zero(chart):
        return _fmt(chart, u=u, v=v, w=w)
    return None


def _first_order(rng, ctx):
    u, v, pu, pv = _bracket_pair(rng, ctx)
    f = random_superfunction(rng, ctx.chart, ctx.bounds)
    lhs = bracket(u, v).apply(f)
    rhs = u.apply(v.apply(f)) + _sgn(pu * pv + 1, v.apply(u.apply(f)))
    if lhs != rhs:
        return _fmt(ctx.chart, u=u, v=v, f=f)
    return None


def _bracket_parity(rng, ctx):
    u, v, pu, pv = _bracket_pair(rng, ctx)
    w = bracket(u, v)
    if w and w.parity() != (pu + pv) % 2:
        return _fmt(ctx.chart, u=u, v=v)
    return None


# --- wedge -------------------------------------------------------------------------

def _wedge_sign_rule(rng, ctx):
    chart, bounds = ctx.chart, ctx.bounds
    phi, dp, pp = random_bihomogeneous_form(rng, chart, bounds)
    sig, ds, ps = random_bihomogeneous_form(rng, chart, bounds)
    if wedge(phi, sig) != _sgn(dp * ds + pp * ps, wedge(sig, phi)):
        return _fmt(chart, phi=phi, sigma=sig)
    return None


def _wedge_associativity(rng, ctx):
    chart, bounds = ctx.chart, ctx.bounds
    phi = random_form(rng, chart, bounds)
    sig = random_form(rng, chart, bounds)
    tau = random_form(rng, chart, bounds)
    if wedge(wedge(phi, sig), tau) != wedge(phi, wedge(sig, tau)):
        return _fmt(chart, phi=phi, sigma=sig, tau=tau)
    return None


def _wedge_unit(rng, ctx):
    chart, bounds = ctx.chart, ctx.bounds
    phi = random_form(rng, chart, bounds)
    unit = Superform.from_superfunction(Superfunction.one(chart))
    if wedge(unit, phi) != phi or wedge(phi, unit) != phi:
        return _fmt(chart, phi=phi)
    return None


# --- differential -------------------------------------------------------------------

def _dd_zero(rng, ctx):
    chart, bounds = ctx.chart, ctx.bounds
    phi = random_form(rng, chart, bounds)
    if ctx.d(ctx.d(phi)) != Superform.zero(chart):
        return _fmt(chart, phi=phi)
    return None


def _d_leibniz(rng, ctx):
    chart, bounds = ctx.chart, ctx.bounds
    phi, dp, _ = random_bihomogeneous_form(rng, chart, bounds)
    sig = random_form(rng, chart, bounds)
    lhs = ctx.d(wedge(phi, sig))
    rhs = wedge(ctx.d(phi), sig) + _sgn(dp, wedge(phi, ctx.d(sig)))
    if lhs != rhs:
        return _fmt(chart, phi=phi, sigma=sig)
    return None


def _d_pairing(rng, ctx):
    chart, bounds = ctx.chart, ctx.bounds
    u = random_field(rng, chart, bounds)
    f = random_superfunction(rng, chart, bounds)
    if interior(u, ctx.d(Superform.from_superfunction(f))) != Superform.from_superfunction(u.apply(f)):
        return _fmt(chart, u=u, f=f)
    return None


# --- interior -------------------------------------------------------------------------

def _interior_base_case(rng, ctx):
    chart, bounds = ctx.chart, ctx.bounds
    u = random_field(rng, chart, bounds)
    phi = random_one_form(rng, chart, bounds)
    acc = Superfunction.zero(chart)
    for A in range(1, chart.n + 1):
        acc = acc + u.base[A - 1] * phi.component(A)
    for a in range(1, chart.m + 1):
        even, odd = phi.fiber_component(a).parity_split()
        acc = acc + u.fiber[a - 1] * (even - odd)
    if interior(u, phi) != Superform.from_superfunction(acc):
        return _fmt(chart, u=u, phi=phi)
    return None


def _interior_extension(rng, ctx):
    chart, bounds = ctx.chart, ctx.bounds
    p = rng.randint(0, 1)
    u = random_field(rng, chart, bounds, parity=p)
    phi, dp, pp = random_bihomogeneous_form(rng, chart, bounds)
    sig = random_form(rng, chart, bounds)
    lhs = interior(u, wedge(phi, sig))
    rhs = wedge(interior(u, phi), sig) + _sgn(dp + pp * p, wedge(phi, interior(u, sig)))
    if lhs != rhs:
        return _fmt(chart, u=u, phi=phi, sigma=sig)
    return None


def _double_interior(rng, ctx):
    chart, bounds = ctx.chart, ctx.bounds
    pu, pv = rng.randint(0, 1), rng.randint(0, 1)
    u = random_field(rng, chart, bounds, parity=pu)
    v = random_field(rng, chart, bounds, parity=pv)
    phi = random_form(rng, chart, bounds).degree_part(2)
    lhs = interior(u, interior(v, phi))
    rhs = interior(v, interior(u, phi))
    if lhs + _sgn(pu * pv, rhs) != Superform.zero(chart):
        return _fmt(chart, u=u, v=v, phi=phi)
    return None


def _even_base_nilpotence(rng, ctx):
    chart, bounds = ctx.chart, ctx.bounds
    u = SupervectorField(chart, base=[random_superfunction(rng, chart, bounds, parity=0)
                                      for _ in range(chart.n)])
    phi = random_form(rng, chart, bounds)
    if interior(u, interior(u, phi)) != Superform.zero(chart):
        return _fmt(chart, u=u, phi=phi)
    return None


def _degree_lowering(rng, ctx):
    chart, bounds = ctx.chart, ctx.bounds
    u = random_field(rng, chart, bounds)
    phi = random_form(rng, chart, bounds)
    got = interior(u, phi)
    allowed = {k - 1 for k in phi.degrees() if k >= 1}
    if not set(got.degrees()) <= allowed:
        return _fmt(chart, u=u, phi=phi)
    if interior(u, Superform.from_superfunction(
            random_superfunction(rng, chart, bounds))) != Superform.zero(chart):
        return _fmt(chart, u=u)
    return None


# --- lie -------------------------------------------------------------------------------

def _lie_on_functions(rng, ctx):
    chart, bounds = ctx.chart, ctx.bounds
    u = random_field(rng, chart, bounds)
    f = random_superfunction(rng, chart, bounds)
    if lie_derivative(u, f) != Superform.from_superfunction(u.apply(f)):
        return _fmt(chart, u=u, f=f)
    return None


def _lie_commutes_with_d(rng, ctx):
    chart, bounds = ctx.chart, ctx.bounds
    u = random_field(rng, chart, bounds)
    phi = random_form(rng, chart, bounds)
    if lie_derivative(u, exterior_differential(phi)) != exterior_differential(lie_derivative(u, phi)):
        return _fmt(chart, u=u, phi=phi)
    return None


def _lie_wedge_leibniz(rng, ctx):
    chart, bounds = ctx.chart, ctx.bounds
    p = rng.randint(0, 1)
    u = random_field(rng, chart, bounds, parity=p)
    phi, _, pp = random_bihomogeneous_form(rng, chart, bounds)
    sig = random_form(rng, chart, bounds)
    lhs = lie_derivative(u, wedge(phi, sig))
    rhs = wedge(lie_derivative(u, phi), sig) + _sgn(p * pp, wedge(phi, lie_derivative(u, sig)))
    if lhs != rhs:
        return _fmt(chart, u=u, phi=phi, sigma=sig)
    return None


# --- transition -----------------------------------------------------------------------

def _pairing_invariance(rng, ctx):
    chart, bounds = ctx.chart, ctx.bounds
    rho = random_transition(rng, chart, bounds)
    u = random_field(rng, chart, bounds)
    phi = random_one_form(rng, chart, bounds)
    paired = interior(u, phi).terms.get(((), ()), Superfunction.zero(chart))
    lhs = Superform.from_superfunction(transform_superfunction(paired, rho))
    rhs = interior(transform_field(u, rho), transform_form(phi, rho))
    if lhs != rhs:
        return _fmt(chart, u=u, phi=phi, rho=rho)
    return None


def _d_naturality(rng, ctx):
    chart, bounds = ctx.chart, ctx.bounds
    rho = random_transition(rng, chart, bounds)
    f = random_superfunction(rng, chart, bounds)
    lhs = transform_form(exterior_differential(f), rho)
    rhs = exterior_differential(transform_superfunction(f, rho))
    if lhs != rhs:
        return _fmt(chart, f=f, rho=rho)
    return None


def _ring_homomorphism(rng, ctx):
    chart, bounds = ctx.chart, ctx.bounds
    rho = random_transition(rng, chart, bounds)
    f = random_superfunction(rng, chart, bounds)
    g = random_superfunction(rng, chart, bounds)
    if transform_superfunction(f * g, rho) != transform_superfunction(f, rho) * transform_superfunction(g, rho):
        return _fmt(chart, f=f, g=g, rho=rho)
    even, odd = f.parity_split()
    if transform_superfunction(even, rho).parity() != 0:
        return _fmt(chart, f=f, rho=rho)
    if odd and transform_superfunction(odd, rho).parity() != 1:
        return _fmt(chart, f=f, rho=rho)
    return None


def _field_invariance(rng, ctx):
    chart, bounds = ctx.chart, ctx.bounds
    rho = random_transition(rng, chart, bounds)
    u = random_field(rng, chart, bounds)
    f = random_superfunction(rng, chart, bounds)
    lhs = transform_superfunction(u.apply(f), rho)
    rhs = transform_field(u, rho).apply(transform_superfunction(f, rho))
    if lhs != rhs:
        return _fmt(chart, u=u, f=f, rho=rho)
    return None


# --- cocycle -------------------------------------------------------------------------

def _cocycle_superfunction(rng, ctx):
    chart, bounds = ctx.chart, ctx.bounds
    r21 = random_transition(rng, chart, bounds)
    r32 = random_transition(rng, chart, bounds)
    f = random_superfunction(rng, chart, bounds)
    composite = compose_transitions(r21, r32)
    if transform_superfunction(transform_superfunction(f, r21), r32) != transform_superfunction(f, composite):
        return _fmt(chart, f=f, rho21=r21, rho32=r32)
    return None


def _cocycle_field(rng, ctx):
    chart, bounds = ctx.chart, ctx.bounds
    r21 = random_transition(rng, chart, bounds)
    r32 = random_transition(rng, chart, bounds)
    u = random_field(rng, chart, bounds)
    composite = compose_transitions(r21, r32)
    if transform_field(transform_field(u, r21), r32) != transform_field(u, composite):
        return _fmt(chart, u=u, rho21=r21, rho32=r32)
    return None


def _cocycle_one_form(rng, ctx):
    chart, bounds = ctx.chart, ctx.bounds
    r21 = random_transition(rng, chart, bounds)
    r32 = random_transition(rng, chart, bounds)
    phi = random_one_form(rng, chart, bounds)
    composite = compose_transitions(r21, r32)
    if transform_form(transform_form(phi, r21), r32) != transform_form(phi, composite):
        return _fmt(chart, phi=phi, rho21=r21, rho32=r32)
    return None


# --- coefficient formulas ----------------------------------------------------------------

def _coefficient_field_agreement(rng, ctx):
    chart, bounds = ctx.chart, ctx.bounds
    rho = random_transition(rng, chart, bounds)
    k = rng.randint(0, chart.m)
    u = random_field(rng, chart, bounds, degree=k)
    if coefficient_transition_field(u, k, rho) != transform_field(u, rho):
        return _fmt(chart, u=u, rho=rho) + "; degree = %d" % k
    return None


def _coefficient_form_agreement(rng, ctx):
    chart, bounds = ctx.chart, ctx.bounds
    rho = random_transition(rng, chart, bounds)
    k = rng.randint(0, chart.m)
    phi = random_one_form(rng, chart, bounds, degree=k)
    if coefficient_transition_form(phi, k, rho) != transform_form(phi, rho):
        return _fmt(chart, phi=phi, rho=rho) + "; degree = %d" % k
    return None


# --- splitting -------------------------------------------------------------------------

def _split_recompose_field(rng, ctx):
    chart, bounds = ctx.chart, ctx.bounds
    conn = random_connection(rng, chart, bounds)
    u = random_field(rng, chart, bounds)
    hor, ver = split_field(u, conn)
    if hor + ver != u or any(ver.base):
        return _fmt(chart, u=u, gamma=conn)
    return None


def _split_recompose_form(rng, ctx):
    chart, bounds = ctx.chart, ctx.bounds
    conn = random_connection(rng, chart, bounds)
    phi = random_one_form(rng, chart, bounds)
    hor, ver = split_form(phi, conn)
    if hor + ver != phi:
        return _fmt(chart, phi=phi, gamma=conn)
    return None


def _split_annihilation(rng, ctx):
    chart, bounds = ctx.chart, ctx.bounds
    conn = random_connection(rng, chart, bounds)
    x = SupervectorField(chart, base=[random_superfunction(rng, chart, bounds)
                                      for _ in range(chart.n)])
    lift = horizontal_lift(x, conn)
    for theta in vertical_coframe(conn):
        if interior(lift, theta) != Superform.zero(chart):
            return _fmt(chart, x=x, gamma=conn)
    phi = random_one_form(rng, chart, bounds)
    _, ver = split_form(phi, conn)
    if interior(lift, ver) != Superform.zero(chart):
        return _fmt(chart, x=x, phi=phi, gamma=conn)
    return None


def _split_section_property(rng, ctx):
    chart, bounds = ctx.chart, ctx.bounds
    conn = random_connection(rng, chart, bounds)
    u = random_field(rng, chart, bounds)
    hor, ver = split_field(u, conn)
    if hor.base != u.base:
        return _fmt(chart, u=u, gamma=conn)
    x = SupervectorField(chart, base=u.base)
    if horizontal_lift(x, conn).base != x.base:
        return _fmt(chart, u=u, gamma=conn)
    return None


SUITES = {
    "derivation": (("leibniz", _leibniz),
                   ("derivative-commutators", _derivative_commutators)),
    "bracket": (("antisymmetry", _antisymmetry),
                ("jacobi", _jacobi),
                ("first-order", _first_order),
                ("parity", _bracket_parity)),
    "wedge": (("sign-rule", _wedge_sign_rule),
              ("associativity", _wedge_associativity),
              ("unit", _wedge_unit)),
    "differential": (("dd-zero", _dd_zero),
                     ("leibniz", _d_leibniz),
                     ("pairing", _d_pairing)),
    "interior": (("one-form-base-case", _interior_base_case),
                 ("extension-rule", _interior_extension),
                 ("double-interior", _double_interior),
                 ("even-base-nilpotence", _even_base_nilpotence),
                 ("degree-lowering", _degree_lowering)),
    "lie": (("on-functions", _lie_on_functions),
            ("commutes-with-d", _lie_commutes_with_d),
            ("wedge-leibniz", _lie_wedge_leibniz)),
    "transition": (("pairing-invariance", _pairing_invariance),
                   ("d-naturality", _d_naturality),
                   ("ring-homomorphism", _ring_homomorphism),
                   ("field-invariance", _field_invariance),
                   ("coefficient-field-formula", _coefficient_field_agreement),
                   ("coefficient-form-formula", _coefficient_form_agreement)),
    "cocycle": (("superfunction", _cocycle_superfunction),
                ("field", _cocycle_field),
                ("one-form", _cocycle_one_form)),
    "splitting": (("recompose-field", _split_recompose_field),
                  ("recompose-form", _split_recompose_form),
                  ("annihilation", _split_annihilation),
                  ("section-property", _split_section_property)),
}


def available_suites():
    return tuple(SUITES) + ("all",)


def run_suite(name: str, chart: Chart, seed: int = 0, cases: int = 20,
              bounds: GenBounds = DEFAULT_BOUNDS, differential=None):
    """Run one suite (or 'all'); returns IdentityResult per identity."""
    if name == "all":
        results = []
        for suite in SUITES:
            results.extend(run_suite(suite, chart, seed, cases, bounds, differential))
        return results
    if name not in SUITES:
        raise ValueError("unknown suite %r (choose from %s)"
                         % (name, ", ".join(available_suites())))
    ctx = _Context(chart, bounds, differential or exterior_differential)
    results = []
    for identity, fn in SUITES[name]:
        failure = ""
        passed = True
        for case in range(cases):
            rng = case_rng(seed, name, identity, case)
            counterexample = fn(rng, ctx)
            if counterexample is not None:
                passed = False
                failure = "case %d: %s" % (case, counterexample)
                break
        results.append(IdentityResult(name, identity, passed, failure))
    return results
