"""Seeded random objects for the identity suites and property tests.

Everything here is driven by an explicit random.Random so that reports are
reproducible; the check command derives per-case generators from stable
seed strings.  Default bounds keep exact arithmetic fast: polynomial degree
<= 2, integer coefficients in -3..3, dc multiplicity <= 2.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations

from .forms import Superform
from .fields import SupervectorField
from .geometry import LinearConnection, Transition
from .grassmann import Chart, Superfunction
from .scalars import ScalarFn, ScalarMatrix


@dataclass(frozen=True)
class GenBounds:
    poly_degree: int = 2
    coeff_bound: int = 3
    dc_multiplicity: int = 2
    max_form_degree: int | None = None  # defaults to chart.n + 2
    terms: int = 3


DEFAULT_BOUNDS = GenBounds()


def case_rng(seed: int, *labels) -> random.Random:
    """A generator seeded from a stable string; independent of hash()."""
    return random.Random("%d:%s" % (seed, ":".join(str(x) for x in labels)))


def random_scalar(rng: random.Random, n: int,
                  bounds: GenBounds = DEFAULT_BOUNDS, nonzero: bool = False) -> ScalarFn:
    while True:
        f = ScalarFn.zero(n)
        for _ in range(bounds.terms):
            coeff = rng.randint(-bounds.coeff_bound, bounds.coeff_bound)
            if coeff == 0:
                continue
            mono = ScalarFn.const(n, coeff)
            if n:
                for _ in range(rng.randint(0, bounds.poly_degree)):
                    mono = mono * ScalarFn.coordinate(n, rng.randint(1, n))
            f = f + mono
        if f or not nonzero:
            return f


def _monomials(chart: Chart, parity=None, degree=None):
    monos = [mono for k in range(chart.m + 1)
             for mono in combinations(range(1, chart.m + 1), k)]
    if parity is not None:
        monos = [mono for mono in monos if len(mono) % 2 == parity]
    if degree is not None:
        monos = [mono for mono in monos if len(mono) == degree]
    return monos


def random_superfunction(rng: random.Random, chart: Chart,
                         bounds: GenBounds = DEFAULT_BOUNDS,
                         parity=None, degree=None, nonzero: bool = False) -> Superfunction:
    monos = _monomials(chart, parity, degree)
    while True:
        terms = {}
        for _ in range(bounds.terms):
            if not monos:
                break
            terms[rng.choice(monos)] = random_scalar(rng, chart.n, bounds)
        f = Superfunction(chart, terms)
        if f or not nonzero or not monos:
            return f


def random_field(rng: random.Random, chart: Chart,
                 bounds: GenBounds = DEFAULT_BOUNDS,
                 parity=None, degree=None, nonzero: bool = False) -> SupervectorField:
    """parity constrains |u^A| = parity and |u^a| = parity + 1 (homogeneous field)."""
    while True:
        if parity is None:
            base = [random_superfunction(rng, chart, bounds, degree=degree)
                    for _ in range(chart.n)]
            fiber = [random_superfunction(rng, chart, bounds, degree=degree)
                     for _ in range(chart.m)]
        else:
            base = [random_superfunction(rng, chart, bounds, parity=parity)
                    for _ in range(chart.n)]
            fiber = [random_superfunction(rng, chart, bounds, parity=(parity + 1) % 2)
                     for _ in range(chart.m)]
        u = SupervectorField(chart, base, fiber)
        if u or not nonzero:
            return u


def random_form(rng: random.Random, chart: Chart,
                bounds: GenBounds = DEFAULT_BOUNDS, nonzero: bool = False) -> Superform:
    max_degree = bounds.max_form_degree
    if max_degree is None:
        max_degree = chart.n + 2
    while True:
        terms = {}
        for _ in range(bounds.terms):
            dz_len = rng.randint(0, chart.n)
            dz_part = tuple(sorted(rng.sample(range(1, chart.n + 1), dz_len)))
            dc_cap = min(max(max_degree - dz_len, 0), bounds.dc_multiplicity * chart.m)
            dc_len = rng.randint(0, dc_cap) if chart.m else 0
            dc_part = tuple(sorted(_bounded_choices(rng, chart.m, dc_len,
                                                    bounds.dc_multiplicity)))
            coeff = random_superfunction(rng, chart, bounds)
            key = (dz_part, dc_part)
            terms[key] = terms.get(key, Superfunction.zero(chart)) + coeff
        phi = Superform(chart, terms)
        if phi or not nonzero:
            return phi


def _bounded_choices(rng, m, count, multiplicity):
    picked = []
    budget = {a: multiplicity for a in range(1, m + 1)}
    for _ in range(count):
        open_slots = [a for a, left in budget.items() if left > 0]
        if not open_slots:
            break
        a = rng.choice(open_slots)
        budget[a] -= 1
        picked.append(a)
    return picked


def random_bihomogeneous_form(rng: random.Random, chart: Chart,
                              bounds: GenBounds = DEFAULT_BOUNDS):
    """A single-key form with definite (form degree, Grassmann parity).

    Returns (form, degree, parity); the form may be zero when the chart
    cannot host the requested coefficient parity.
    """
    max_degree = bounds.max_form_degree
    if max_degree is None:
        max_degree = chart.n + 2
    dz_len = rng.randint(0, chart.n)
    dc_cap = min(max(max_degree - dz_len, 0), bounds.dc_multiplicity * chart.m)
    dc_len = rng.randint(0, dc_cap) if chart.m else 0
    dz_part = tuple(sorted(rng.sample(range(1, chart.n + 1), dz_len)))
    dc_part = tuple(sorted(_bounded_choices(rng, chart.m, dc_len,
                                            bounds.dc_multiplicity)))
    parity = rng.randint(0, 1)
    coeff = random_superfunction(rng, chart, bounds,
                                 parity=(parity + len(dc_part)) % 2)
    form = Superform(chart, {(dz_part, dc_part): coeff})
    return form, dz_len + len(dc_part), parity


def random_one_form(rng: random.Random, chart: Chart,
                    bounds: GenBounds = DEFAULT_BOUNDS, degree=None) -> Superform:
    terms = {}
    for A in range(1, chart.n + 1):
        terms[((A,), ())] = random_superfunction(rng, chart, bounds, degree=degree)
    for a in range(1, chart.m + 1):
        terms[((), (a,))] = random_superfunction(rng, chart, bounds, degree=degree)
    return Superform(chart, terms)


def random_transition(rng: random.Random, chart: Chart,
                      bounds: GenBounds = DEFAULT_BOUNDS) -> Transition:
    """Rejection-sampled invertible matrix of low-degree polynomials."""
    shallow = GenBounds(poly_degree=min(bounds.poly_degree, 1),
                        coeff_bound=bounds.coeff_bound,
                        terms=2)
    while True:
        matrix = ScalarMatrix(
            [[random_scalar(rng, chart.n, shallow) for _ in range(chart.m)]
             for _ in range(chart.m)])
        if matrix.determinant():
            return Transition(matrix)


def random_connection(rng: random.Random, chart: Chart,
                      bounds: GenBounds = DEFAULT_BOUNDS) -> LinearConnection:
    shallow = GenBounds(poly_degree=min(bounds.poly_degree, 1),
                        coeff_bound=bounds.coeff_bound,
                        terms=2)
    return LinearConnection(
        chart,
        [ScalarMatrix([[random_scalar(rng, chart.n, shallow) for _ in range(chart.m)]
                       for _ in range(chart.m)])
         for _ in range(chart.n)])
