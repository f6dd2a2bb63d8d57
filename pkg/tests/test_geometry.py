import random

import pytest

from supercartan.errors import (ChartMismatch, NotBasic, NotDegreeOne,
                                ShapeMismatch, SingularMatrix)
from supercartan.fields import SupervectorField, transform_field
from supercartan.forms import Superform, interior, transform_form, wedge
from supercartan.geometry import (LinearConnection, Transition,
                                  coefficient_transition_field,
                                  coefficient_transition_form, compose_transitions,
                                  horizontal_lift, split_field, split_form,
                                  transform_superfunction, vertical_coframe)
from supercartan.grassmann import Chart, Superfunction
from supercartan.randgen import (GenBounds, random_connection, random_field,
                                 random_one_form, random_scalar, random_superfunction,
                                 random_transition)
from supercartan.scalars import ScalarFn, ScalarMatrix

CHART = Chart(2, 2)
BOUNDS = GenBounds()
C1 = Superfunction.generator(CHART, 1)
C2 = Superfunction.generator(CHART, 2)


def scalar(value, n=2):
    return ScalarFn.const(n, value)


def test_transition_requires_invertible():
    z1 = ScalarFn.coordinate(2, 1)
    with pytest.raises(SingularMatrix):
        Transition(ScalarMatrix([[z1, z1], [z1, z1]]))
    with pytest.raises(ShapeMismatch):
        Transition(ScalarMatrix([[z1, z1]]))
    rho = Transition(ScalarMatrix([[z1, scalar(0)], [scalar(0), scalar(1)]]))
    assert rho.matrix @ rho.inverse == ScalarMatrix.identity(2, 2)


def test_transform_superfunction_examples():
    ident = Transition.identity(2, 2)
    f = C1 * C2 + Superfunction.coordinate(CHART, 1)
    assert transform_superfunction(f, ident) == f

    chart1 = Chart(1, 1)
    z1 = ScalarFn.coordinate(1, 1)
    rho = Transition(ScalarMatrix([[z1]]))
    c1 = Superfunction.generator(chart1, 1)
    assert transform_superfunction(c1, rho) == (1 / z1) * c1

    # oracle: c1 = c'2, c2 = c'1, one transposition
    swap = Transition(ScalarMatrix([[scalar(0), scalar(1)], [scalar(1), scalar(0)]]))
    assert transform_superfunction(C1 * C2, swap) == -(C1 * C2)


def test_compose_transitions_examples():
    rng = random.Random(61)
    rho = random_transition(rng, CHART, BOUNDS)
    ident = Transition.identity(2, 2)
    assert compose_transitions(ident, rho) == rho
    assert compose_transitions(rho, Transition(rho.inverse)) == ident

    # oracle: independent matrix multiplication, explicit loops
    r21 = random_transition(rng, CHART, BOUNDS)
    r32 = random_transition(rng, CHART, BOUNDS)
    explicit = [[sum((r32.matrix[i, k] * r21.matrix[k, j] for k in range(2)),
                     ScalarFn.zero(2)) for j in range(2)] for i in range(2)]
    assert compose_transitions(r21, r32).matrix == ScalarMatrix(explicit)


def test_cocycle_relation_randomized():
    rng = random.Random(62)
    for _ in range(8):
        r21 = random_transition(rng, CHART, BOUNDS)
        r32 = random_transition(rng, CHART, BOUNDS)
        comp = compose_transitions(r21, r32)
        f = random_superfunction(rng, CHART, BOUNDS)
        assert transform_superfunction(transform_superfunction(f, r21), r32) == \
            transform_superfunction(f, comp)
        u = random_field(rng, CHART, BOUNDS)
        assert transform_field(transform_field(u, r21), r32) == transform_field(u, comp)
        phi = random_one_form(rng, CHART, BOUNDS)
        assert transform_form(transform_form(phi, r21), r32) == transform_form(phi, comp)


def test_coefficient_transition_field_trivial_examples():
    rng = random.Random(63)
    # rho = identity leaves any degree-k slice unchanged
    ident = Transition.identity(2, 2)
    for k in (0, 1, 2):
        u = random_field(rng, CHART, BOUNDS, degree=k)
        assert coefficient_transition_field(u, k, ident) == u

    # k = 0 with constant rho: base unchanged, fiber rotated, no correction
    rho = Transition(ScalarMatrix([[scalar(2), scalar(1)], [scalar(0), scalar(1)]]))
    u = random_field(rng, CHART, BOUNDS, degree=0)
    got = coefficient_transition_field(u, 0, rho)
    assert got.base == u.base
    for i in range(2):
        expected = sum((rho.matrix[i, j] * u.fiber[j] for j in range(2)),
                       Superfunction.zero(CHART))
        assert got.fiber[i] == expected


def test_coefficient_transition_field_m1_example():
    # the derivative correction lands one Grassmann degree up, scaled by 1/z1
    chart = Chart(1, 1)
    z1 = ScalarFn.coordinate(1, 1)
    rho = Transition(ScalarMatrix([[z1]]))
    u = SupervectorField.d_dz(chart, 1)
    got = coefficient_transition_field(u, 0, rho)
    assert got == transform_field(u, rho)
    c1 = Superfunction.generator(chart, 1)
    assert got.fiber[0] == (z1.diff(1) / z1) * c1


def test_coefficient_transition_field_agrees_with_transform():
    rng = random.Random(64)
    for k in (0, 1, 2):
        for _ in range(6):
            rho = random_transition(rng, CHART, BOUNDS)
            u = random_field(rng, CHART, BOUNDS, degree=k)
            assert coefficient_transition_field(u, k, rho) == transform_field(u, rho)


def test_coefficient_transition_field_rejects_mixed_degree():
    u = SupervectorField(CHART, base=[C1 + Superfunction.one(CHART),
                                      Superfunction.zero(CHART)])
    rho = Transition.identity(2, 2)
    with pytest.raises(ShapeMismatch):
        coefficient_transition_field(u, 1, rho)


def test_coefficient_transition_form_examples():
    rng = random.Random(65)
    ident = Transition.identity(2, 2)
    for k in (0, 1, 2):
        phi = random_one_form(rng, CHART, BOUNDS, degree=k)
        assert coefficient_transition_form(phi, k, ident) == phi

    # k = 0, m = 1: fiber component scales by 1/z1, dz picks up the c' correction
    chart = Chart(1, 1)
    z1 = ScalarFn.coordinate(1, 1)
    rho = Transition(ScalarMatrix([[z1]]))
    phi = Superform.dc(chart, 1)
    got = coefficient_transition_form(phi, 0, rho)
    assert got == transform_form(phi, rho)
    assert got.fiber_component(1) == Superfunction.from_scalar(chart, 1 / z1)

    # constant rho: pure contraction, zero correction
    const = Transition(ScalarMatrix([[scalar(1), scalar(3)], [scalar(0), scalar(1)]]))
    phi = Superform.dc(CHART, 1)
    got = coefficient_transition_form(phi, 0, const)
    assert all(key[0] == () for key in got.terms)
    assert got == transform_form(phi, const)


def test_coefficient_transition_form_agrees_with_transform():
    rng = random.Random(66)
    for k in (0, 1, 2):
        for _ in range(6):
            rho = random_transition(rng, CHART, BOUNDS)
            phi = random_one_form(rng, CHART, BOUNDS, degree=k)
            assert coefficient_transition_form(phi, k, rho) == transform_form(phi, rho)


def test_coefficient_transition_form_requires_one_form():
    rho = Transition.identity(2, 2)
    two_form = wedge(Superform.dz(CHART, 1), Superform.dz(CHART, 2))
    with pytest.raises(NotDegreeOne):
        coefficient_transition_form(two_form, 0, rho)


def connection_from(entries, chart=CHART):
    return LinearConnection(chart, [ScalarMatrix(block) for block in entries])


def test_connection_validation():
    with pytest.raises(ShapeMismatch):
        LinearConnection(CHART, [ScalarMatrix([[scalar(1)]])])
    with pytest.raises(TypeError):
        LinearConnection(CHART, [[[1, 0], [0, 1]], [[0, 0], [0, 0]]])


def test_horizontal_lift_examples():
    chart = Chart(1, 1)
    z1 = ScalarFn.coordinate(1, 1)
    one = ScalarFn.one(1)
    d_z1 = SupervectorField.d_dz(chart, 1)
    c1 = Superfunction.generator(chart, 1)

    flat = LinearConnection.flat(chart)
    assert horizontal_lift(d_z1, flat) == d_z1

    conn = LinearConnection(chart, [ScalarMatrix([[one]])])
    assert horizontal_lift(d_z1, conn) == SupervectorField(
        chart, [Superfunction.one(chart)], [c1])

    conn_z = LinearConnection(chart, [ScalarMatrix([[z1]])])
    x = Superfunction.coordinate(chart, 1) * d_z1
    lift = horizontal_lift(x, conn_z)
    assert lift.base[0] == Superfunction.coordinate(chart, 1)
    assert lift.fiber[0] == (z1 * z1) * c1

    with pytest.raises(NotBasic):
        horizontal_lift(SupervectorField.d_dc(chart, 1), conn)
    with pytest.raises(ChartMismatch):
        horizontal_lift(SupervectorField.d_dz(CHART, 1), conn)


def test_split_field_examples():
    chart = Chart(1, 1)
    one = ScalarFn.one(1)
    conn = LinearConnection(chart, [ScalarMatrix([[one]])])
    c1 = Superfunction.generator(chart, 1)
    d_z1 = SupervectorField.d_dz(chart, 1)

    flat = LinearConnection.flat(chart)
    u = d_z1 + c1 * SupervectorField.d_dc(chart, 1)
    hor, ver = split_field(u, flat)
    assert hor == d_z1 and ver == c1 * SupervectorField.d_dc(chart, 1)

    vertical_only = c1 * SupervectorField.d_dc(chart, 1)
    hor, ver = split_field(vertical_only, flat)
    assert not hor and ver == vertical_only

    hor, ver = split_field(d_z1, conn)
    assert hor == SupervectorField(chart, [Superfunction.one(chart)], [c1])
    assert ver == SupervectorField(chart, fiber=[-c1])
    assert hor + ver == d_z1


def test_split_form_examples():
    chart = Chart(1, 1)
    one = ScalarFn.one(1)
    conn = LinearConnection(chart, [ScalarMatrix([[one]])])
    c1 = Superfunction.generator(chart, 1)
    phi = Superform.dc(chart, 1)

    flat = LinearConnection.flat(chart)
    mixed = Superform.dz(chart, 1) + phi
    hor, ver = split_form(mixed, flat)
    assert hor == Superform.dz(chart, 1) and ver == phi

    hor, ver = split_form(phi, conn)
    assert hor == Superform(chart, {((1,), ()): c1})
    assert ver == Superform(chart, {((), (1,)): Superfunction.one(chart),
                                    ((1,), ()): -c1})

    # theta^1 paired with the lift d/dz1 + c1 d/dc1 gives zero
    lift = SupervectorField(chart, [Superfunction.one(chart)], [c1])
    theta = vertical_coframe(conn)[0]
    assert interior(lift, theta) == Superform.zero(chart)

    with pytest.raises(NotDegreeOne):
        split_form(wedge(Superform.dz(chart, 1), phi), conn)


def test_split_properties_randomized():
    rng = random.Random(67)
    for _ in range(10):
        conn = random_connection(rng, CHART, BOUNDS)
        u = random_field(rng, CHART, BOUNDS)
        hor, ver = split_field(u, conn)
        assert hor + ver == u
        assert not any(ver.base)          # vertical part forgets to zero
        assert hor.base == u.base         # section property of the lift

        phi = random_one_form(rng, CHART, BOUNDS)
        fhor, fver = split_form(phi, conn)
        assert fhor + fver == phi
        assert all(key == ((), ()) or key[0] for key in fhor.terms)

        x = SupervectorField(CHART, base=[random_superfunction(rng, CHART, BOUNDS)
                                          for _ in range(2)])
        lift = horizontal_lift(x, conn)
        for theta in vertical_coframe(conn):
            assert interior(lift, theta) == Superform.zero(CHART)
        assert interior(lift, fver) == Superform.zero(CHART)
