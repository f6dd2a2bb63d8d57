import random

import pytest

from supercartan.errors import ChartMismatch
from supercartan.fields import SupervectorField, apply, bracket, field_parity, transform_field
from supercartan.geometry import Transition, compose_transitions, transform_superfunction
from supercartan.grassmann import Chart, Superfunction
from supercartan.randgen import GenBounds, random_field, random_superfunction, random_transition
from supercartan.scalars import ScalarFn, ScalarMatrix

CHART = Chart(2, 2)
BOUNDS = GenBounds()
C1 = Superfunction.generator(CHART, 1)
C2 = Superfunction.generator(CHART, 2)
Z1 = Superfunction.coordinate(CHART, 1)
D_Z1 = SupervectorField.d_dz(CHART, 1)
D_C1 = SupervectorField.d_dc(CHART, 1)
D_C2 = SupervectorField.d_dc(CHART, 2)


def sgn(k, value):
    return value if k % 2 == 0 else -value


def test_apply_examples():
    assert apply(D_Z1, Z1 * C1) == C1
    assert apply(C1 * D_C2, C2) == C1
    assert apply(D_C1, C1 * C2 + Z1) == C2


def test_apply_chart_mismatch():
    other = Superfunction.one(Chart(1, 1))
    with pytest.raises(ChartMismatch):
        D_Z1.apply(other)


def test_field_parity_examples():
    assert field_parity(D_Z1) == 0
    assert field_parity(D_C1) == 1
    mixed = D_Z1 + D_C1
    assert field_parity(mixed) is None
    even, odd = mixed.parity_split()
    assert even == D_Z1 and odd == D_C1
    assert even + odd == mixed


def test_bracket_trivial_and_derived_examples():
    assert bracket(D_C1, D_C2) == SupervectorField.zero(CHART)

    # frozen by hand: [d/dz1, z1 d/dc1](c1) = 1, all other components 0
    assert bracket(D_Z1, Z1 * D_C1) == D_C1

    # frozen by operator composition on generators (worked by hand):
    # u = c2 d/dc1, v = c1 d/dc2 are even; [u,v](c1) = -c1, [u,v](c2) = c2
    u = C2 * D_C1
    v = C1 * D_C2
    assert bracket(u, v) == (-C1) * D_C1 + C2 * D_C2


def test_bracket_acts_as_operator_combination():
    rng = random.Random(41)
    for _ in range(40):
        pu, pv = rng.randint(0, 1), rng.randint(0, 1)
        u = random_field(rng, CHART, BOUNDS, parity=pu)
        v = random_field(rng, CHART, BOUNDS, parity=pv)
        f = random_superfunction(rng, CHART, BOUNDS)
        lhs = bracket(u, v).apply(f)
        rhs = u.apply(v.apply(f)) + sgn(pu * pv + 1, v.apply(u.apply(f)))
        assert lhs == rhs


def test_bracket_antisymmetry_and_jacobi():
    rng = random.Random(42)
    for _ in range(25):
        pu, pv, pw = (rng.randint(0, 1) for _ in range(3))
        u = random_field(rng, CHART, BOUNDS, parity=pu)
        v = random_field(rng, CHART, BOUNDS, parity=pv)
        w = random_field(rng, CHART, BOUNDS, parity=pw)
        assert bracket(u, v) == sgn(pu * pv + 1, bracket(v, u))
        total = (sgn(pu * pw, bracket(u, bracket(v, w)))
                 + sgn(pv * pu, bracket(v, bracket(w, u)))
                 + sgn(pw * pv, bracket(w, bracket(u, v))))
        assert total == SupervectorField.zero(CHART)


def test_bracket_parity_bookkeeping():
    rng = random.Random(43)
    for _ in range(25):
        pu, pv = rng.randint(0, 1), rng.randint(0, 1)
        u = random_field(rng, CHART, BOUNDS, parity=pu)
        v = random_field(rng, CHART, BOUNDS, parity=pv)
        w = bracket(u, v)
        if w:
            assert w.parity() == (pu + pv) % 2


def test_graded_leibniz_for_apply():
    rng = random.Random(44)
    for _ in range(40):
        pu, pf = rng.randint(0, 1), rng.randint(0, 1)
        u = random_field(rng, CHART, BOUNDS, parity=pu)
        f = random_superfunction(rng, CHART, BOUNDS, parity=pf)
        g = random_superfunction(rng, CHART, BOUNDS)
        assert u.apply(f * g) == u.apply(f) * g + sgn(pu * pf, f * u.apply(g))


def test_transform_field_identity():
    ident = Transition.identity(2, 2)
    u = C1 * D_C2 + Z1 * D_Z1
    assert transform_field(u, ident) == u


def test_transform_field_m1_examples():
    chart = Chart(1, 1)
    z1 = ScalarFn.coordinate(1, 1)
    rho = Transition(ScalarMatrix([[z1]]))
    c1 = Superfunction.generator(chart, 1)

    moved = transform_field(SupervectorField.d_dc(chart, 1), rho)
    assert moved == Superfunction.from_scalar(chart, z1) * SupervectorField.d_dc(chart, 1)

    moved = transform_field(SupervectorField.d_dz(chart, 1), rho)
    assert moved.base[0] == Superfunction.one(chart)
    assert moved.fiber[0] == (1 / z1) * c1


def test_transform_field_invariance_contract():
    rng = random.Random(45)
    for _ in range(20):
        rho = random_transition(rng, CHART, BOUNDS)
        u = random_field(rng, CHART, BOUNDS)
        f = random_superfunction(rng, CHART, BOUNDS)
        lhs = transform_superfunction(u.apply(f), rho)
        rhs = transform_field(u, rho).apply(transform_superfunction(f, rho))
        assert lhs == rhs


def test_transform_field_functoriality():
    rng = random.Random(46)
    for _ in range(12):
        r21 = random_transition(rng, CHART, BOUNDS)
        r32 = random_transition(rng, CHART, BOUNDS)
        u = random_field(rng, CHART, BOUNDS)
        twice = transform_field(transform_field(u, r21), r32)
        assert twice == transform_field(u, compose_transitions(r21, r32))


def test_module_action_and_linearity():
    rng = random.Random(47)
    for _ in range(20):
        u = random_field(rng, CHART, BOUNDS)
        v = random_field(rng, CHART, BOUNDS)
        f = random_superfunction(rng, CHART, BOUNDS)
        g = random_superfunction(rng, CHART, BOUNDS)
        assert (u + v).apply(f) == u.apply(f) + v.apply(f)
        assert (g * u).apply(f) == g * u.apply(f)
