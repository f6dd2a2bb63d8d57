import random

import pytest

from supercartan.errors import ChartMismatch, IndexOutOfRange
from supercartan.grassmann import (Chart, Superfunction, base_derivative, gr_mul,
                                   merge_monomials, odd_derivative, parity_split)
from supercartan.randgen import GenBounds, random_superfunction
from supercartan.scalars import ScalarFn

CHART = Chart(2, 2)
C1 = Superfunction.generator(CHART, 1)
C2 = Superfunction.generator(CHART, 2)
Z1 = Superfunction.coordinate(CHART, 1)
Z2 = Superfunction.coordinate(CHART, 2)
ONE = Superfunction.one(CHART)
ZERO = Superfunction.zero(CHART)


def test_chart_validation():
    with pytest.raises(ValueError):
        Chart(-1, 0)
    with pytest.raises(ValueError):
        Chart(1, 1, base_names=("x",), fiber_names=("x",))
    assert Chart(2, 2).primed_fiber_names() == ("c1'", "c2'")


def test_gr_mul_examples():
    assert gr_mul(C1, C1) == ZERO
    assert gr_mul(C2, C1) == -gr_mul(C1, C2)

    # oracle: expand (1 + c1c2)(1 + c1c2) through all four sign-rule products
    c12 = gr_mul(C1, C2)
    pieces = [ONE * ONE, ONE * c12, c12 * ONE, c12 * c12]
    assert pieces[3] == ZERO  # nilpotency of the degree-2 monomial
    expected = pieces[0] + pieces[1] + pieces[2]
    f = ONE + c12
    assert f * f == expected
    assert expected == Superfunction(
        CHART, {(): ScalarFn.one(2), (1, 2): ScalarFn.const(2, 2)})


def test_merge_monomials_sign():
    assert merge_monomials((1,), (1,)) is None
    assert merge_monomials((2,), (1,)) == (-1, (1, 2))
    assert merge_monomials((), (1, 2)) == (1, (1, 2))


def test_odd_derivative_examples():
    assert odd_derivative(C1, 1) == ONE
    assert odd_derivative(C1 * C2, 2) == -C1
    chart3 = Chart(3, 3)
    c = [Superfunction.generator(chart3, a) for a in (1, 2, 3)]
    assert odd_derivative(c[0] * c[1] * c[2], 1) == c[1] * c[2]


def test_base_derivative_examples():
    assert base_derivative(Z1 * C1 * C2, 1) == C1 * C2
    assert base_derivative(C1, 1) == ZERO
    # oracle: coefficient-wise differentiation
    f = Z1 * Z2 + Z2 * Z2 * C1
    z1 = ScalarFn.coordinate(2, 1)
    z2 = ScalarFn.coordinate(2, 2)
    expected = Superfunction(CHART, {(): (z1 * z2).diff(2), (1,): (z2 * z2).diff(2)})
    assert base_derivative(f, 2) == expected
    assert expected == Z1 + 2 * Z2 * C1


def test_parity_split_examples():
    assert parity_split(C1 * C2) == (C1 * C2, ZERO)
    assert parity_split(ONE + C1) == (ONE, C1)
    f = Z1 + C1 + C1 * C2
    even, odd = parity_split(f)
    assert even == Z1 + C1 * C2 and odd == C1
    assert even + odd == f
    assert f.parity() is None and C1.parity() == 1 and ZERO.parity() == 0


def test_index_and_chart_errors():
    with pytest.raises(IndexOutOfRange):
        odd_derivative(C1, 3)
    with pytest.raises(IndexOutOfRange):
        base_derivative(C1, 0)
    with pytest.raises(IndexOutOfRange):
        Superfunction.generator(CHART, 9)
    other = Superfunction.one(Chart(1, 1))
    with pytest.raises(ChartMismatch):
        gr_mul(C1, other)


def test_ring_properties_randomized():
    rng = random.Random(31)
    bounds = GenBounds()
    for _ in range(50):
        f = random_superfunction(rng, CHART, bounds)
        g = random_superfunction(rng, CHART, bounds)
        h = random_superfunction(rng, CHART, bounds)
        assert (f * g) * h == f * (g * h)
        assert f * ONE == f and ONE * f == f
        assert f * (g + h) == f * g + f * h


def test_graded_commutativity_randomized():
    rng = random.Random(32)
    bounds = GenBounds()
    for _ in range(50):
        pf, pg = rng.randint(0, 1), rng.randint(0, 1)
        f = random_superfunction(rng, CHART, bounds, parity=pf)
        g = random_superfunction(rng, CHART, bounds, parity=pg)
        flipped = g * f
        assert f * g == (flipped if (pf * pg) % 2 == 0 else -flipped)


def test_odd_derivative_is_graded_derivation():
    rng = random.Random(33)
    bounds = GenBounds()
    for _ in range(50):
        pf = rng.randint(0, 1)
        f = random_superfunction(rng, CHART, bounds, parity=pf)
        g = random_superfunction(rng, CHART, bounds)
        a = rng.randint(1, 2)
        lhs = (f * g).odd_derivative(a)
        rhs = f.odd_derivative(a) * g
        rhs = rhs + (f * g.odd_derivative(a) if pf % 2 == 0 else -(f * g.odd_derivative(a)))
        assert lhs == rhs


def test_derivatives_anticommute_and_commute():
    rng = random.Random(34)
    bounds = GenBounds()
    for _ in range(40):
        f = random_superfunction(rng, CHART, bounds)
        a, b = rng.randint(1, 2), rng.randint(1, 2)
        assert f.odd_derivative(a).odd_derivative(b) + f.odd_derivative(b).odd_derivative(a) == ZERO
        A = rng.randint(1, 2)
        assert f.base_derivative(A).odd_derivative(a) == f.odd_derivative(a).base_derivative(A)


def test_nilpotency_ceiling():
    # any product with more than m generator factors collapses to zero
    assert C1 * C2 * C1 == ZERO
    chart1 = Chart(1, 1)
    c = Superfunction.generator(chart1, 1)
    assert c * c == Superfunction.zero(chart1)
    with pytest.raises(ValueError):
        Superfunction.monomial(CHART, (2, 1))


def test_substitute_generators_is_ring_homomorphism():
    rng = random.Random(35)
    bounds = GenBounds()
    from supercartan.randgen import random_transition
    for _ in range(20):
        rho = random_transition(rng, CHART, bounds)
        f = random_superfunction(rng, CHART, bounds)
        g = random_superfunction(rng, CHART, bounds)
        sub = lambda x: x.substitute_generators(rho.inverse)
        assert sub(f * g) == sub(f) * sub(g)
        assert sub(f + g) == sub(f) + sub(g)
