"""Frame transitions, their coefficient-level formulas, and connection splittings.

A Transition is an invertible matrix rho over the base functions giving the
fiber frame change c'^a = rho^a_b(z) c^b.  Superfunctions, fields and forms
transform by generator substitution; this module also implements the
explicit per-degree coefficient transition formulas of the frame bundles
(the derivative correction raises the Grassmann degree by one, with the
combinatorial factor equal to the target degree and the free lower indices
antisymmetrized), whose agreement with the substitution route is checked by
the test suites.
"""

from __future__ import annotations

from itertools import combinations

from .errors import ChartMismatch, NotBasic, NotDegreeOne, ShapeMismatch
from .fields import SupervectorField
from .forms import Superform, wedge
from .grassmann import Chart, Superfunction
from .scalars import ScalarFn, ScalarMatrix


class Transition:
    """An invertible fiber frame change rho^a_b; the inverse is cached."""

    __slots__ = ("matrix", "inverse")

    def __init__(self, matrix: ScalarMatrix):
        if matrix.rows != matrix.cols:
            raise ShapeMismatch("transition matrix must be square")
        self.matrix = matrix
        self.inverse = matrix.inverse()  # raises SingularMatrix if det == 0

    @classmethod
    def identity(cls, m: int, n: int) -> "Transition":
        return cls(ScalarMatrix.identity(m, n))

    @property
    def size(self) -> int:
        return self.matrix.rows

    def __eq__(self, other):
        if not isinstance(other, Transition):
            return NotImplemented
        return self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def __repr__(self):
        return "Transition(%r)" % (self.matrix,)


def compose_transitions(rho21: Transition, rho32: Transition) -> Transition:
    """The composite frame change: matrix product rho32 * rho21.

    Transforming by the composite equals transforming by rho21 then rho32,
    for superfunctions, fields and forms (the cocycle property).
    """
    if rho21.size != rho32.size:
        raise ShapeMismatch("transition sizes differ")
    return Transition(rho32.matrix @ rho21.matrix)


def transform_superfunction(f: Superfunction, rho: Transition) -> Superfunction:
    """Substitute c^b = rho^{-1}{}^b_a c'^a and expand; a ring homomorphism."""
    if rho.size != f.chart.m:
        raise ChartMismatch("transition size does not match the chart")
    return f.substitute_generators(rho.inverse)


class LinearConnection:
    """Connection coefficients Gamma_A{}^a{}_b on the fiber bundle, z-only.

    gamma[A-1] is the m x m ScalarMatrix (Gamma_A)^a{}_b; superfunction
    entries are rejected, matching a linear connection on the underlying
    vector bundle.
    """

    __slots__ = ("chart", "gamma")

    def __init__(self, chart: Chart, gamma):
        gamma = tuple(gamma)
        if len(gamma) != chart.n:
            raise ShapeMismatch("expected %d coefficient matrices" % chart.n)
        for mat in gamma:
            if not isinstance(mat, ScalarMatrix):
                raise TypeError("connection coefficients must be ScalarFn matrices")
            if mat.rows != chart.m or mat.cols != chart.m:
                raise ShapeMismatch("coefficient matrices must be %d x %d" % (chart.m, chart.m))
        self.chart = chart
        self.gamma = gamma

    @classmethod
    def flat(cls, chart: Chart) -> "LinearConnection":
        zero = ScalarFn.zero(chart.n)
        return cls(chart, [ScalarMatrix([[zero] * chart.m for _ in range(chart.m)])
                           for _ in range(chart.n)])

    def __eq__(self, other):
        if not isinstance(other, LinearConnection):
            return NotImplemented
        return self.chart == other.chart and self.gamma == other.gamma

    def __repr__(self):
        return "LinearConnection(%r)" % (self.gamma,)


def horizontal_lift(x: SupervectorField, conn: LinearConnection) -> SupervectorField:
    """Gamma_S: u^A d_A  |->  u^A (d_A + Gamma_A{}^a{}_b c^b d_a)."""
    if x.chart != conn.chart:
        raise ChartMismatch("field and connection over different charts")
    if any(x.fiber):
        raise NotBasic("horizontal lift expects base components only")
    chart = x.chart
    fiber = []
    for a in range(chart.m):
        acc = Superfunction.zero(chart)
        for A in range(1, chart.n + 1):
            if not x.base[A - 1]:
                continue
            gamma_row = Superfunction(
                chart,
                {(b + 1,): conn.gamma[A - 1][a, b]
                 for b in range(chart.m) if conn.gamma[A - 1][a, b]})
            if gamma_row:
                acc = acc + x.base[A - 1] * gamma_row
        fiber.append(acc)
    return SupervectorField(chart, base=x.base, fiber=fiber)


def split_field(u: SupervectorField, conn: LinearConnection):
    """(horizontal, vertical) with horizontal + vertical = u exactly."""
    base_part = SupervectorField(u.chart, base=u.base)
    horizontal = horizontal_lift(base_part, conn)
    vertical = u - horizontal
    return horizontal, vertical


def vertical_coframe(conn: LinearConnection) -> list:
    """theta^a = dc^a - Gamma_A{}^a{}_b c^b dz^A; annihilates horizontal lifts."""
    chart = conn.chart
    thetas = []
    for a in range(1, chart.m + 1):
        theta = Superform.dc(chart, a)
        for A in range(1, chart.n + 1):
            coeff = Superfunction(
                chart,
                {(b + 1,): -conn.gamma[A - 1][a - 1, b]
                 for b in range(chart.m) if conn.gamma[A - 1][a - 1, b]})
            if coeff:
                theta = theta + Superform(chart, {((A,), ()): coeff})
        thetas.append(theta)
    return thetas


def split_form(phi: Superform, conn: LinearConnection):
    """(horizontal, vertical) parts of a 1-form for the dual splitting.

    vertical = phi_a theta^a uses the coframe above; horizontal carries
    only dz components and pairs to zero with vertical lifts of the
    annihilated directions.
    """
    if phi.chart != conn.chart:
        raise ChartMismatch("form and connection over different charts")
    if not phi.is_pure_degree(1):
        raise NotDegreeOne("splitting expects a pure 1-form")
    chart = phi.chart
    thetas = vertical_coframe(conn)
    vertical = Superform.zero(chart)
    for a in range(1, chart.m + 1):
        comp = phi.fiber_component(a)
        if comp:
            vertical = vertical + wedge(Superform.from_superfunction(comp),
                                        thetas[a - 1])
    horizontal = phi - vertical
    return horizontal, vertical


# --- coefficient-level transition formulas -------------------------------------

def _tensor_from(comp: Superfunction, k: int):
    """Antisymmetric degree-k tensor as {increasing index tuple: ScalarFn}."""
    return {mono: coeff for mono, coeff in comp.terms.items() if len(mono) == k}


def _submatrix_det(matrix: ScalarMatrix, rows, cols, n: int) -> ScalarFn:
    if not rows:
        return ScalarFn.one(n)
    total = ScalarFn.zero(n)
    if len(rows) == 1:
        return matrix[rows[0] - 1, cols[0] - 1]
    for perm_cols, sign in _signed_permutations(cols):
        term = matrix[rows[0] - 1, perm_cols[0] - 1]
        for r, c in zip(rows[1:], perm_cols[1:]):
            term = term * matrix[r - 1, c - 1]
        total = total + term if sign > 0 else total - term
    return total


def _signed_permutations(items):
    items = tuple(items)
    if len(items) == 1:
        yield items, 1
        return
    for i, head in enumerate(items):
        rest = items[:i] + items[i + 1:]
        for tail, sign in _signed_permutations(rest):
            yield (head,) + tail, sign * (-1) ** i


def _contract(tensor: dict, matrix: ScalarMatrix, k: int, m: int, n: int) -> dict:
    """out_J = sum_S tensor_S det(matrix[s, j]) for increasing J, |J| = k."""
    out = {}
    for target in combinations(range(1, m + 1), k):
        acc = ScalarFn.zero(n)
        for source, value in tensor.items():
            acc = acc + value * _submatrix_det(matrix, source, target, n)
        if acc:
            out[target] = acc
    return out


def _append_index(base_tensor: dict, vector, k: int, m: int, n: int) -> dict:
    """Multiply sum_J' T_J' c^J' by sum_j vector[j] c^j; antisymmetrized.

    Result at increasing J of length k+1:
    sum_t (-1)^{k+1-t} T_{J minus t-th} vector[J_t].
    """
    out = {}
    for target in combinations(range(1, m + 1), k + 1):
        acc = ScalarFn.zero(n)
        for t in range(k + 1):
            rest = target[:t] + target[t + 1:]
            base = base_tensor.get(rest)
            vec = vector[target[t] - 1]
            if base and vec:
                piece = base * vec
                acc = acc + piece if (k - t) % 2 == 0 else acc - piece
        if acc:
            out[target] = acc
    return out


def _pure_degree_tensors(comps, k: int):
    tensors = []
    for comp in comps:
        if any(len(mono) != k for mono in comp.terms):
            raise ShapeMismatch("components are not pure Grassmann degree %d" % k)
        tensors.append(_tensor_from(comp, k))
    return tensors


def coefficient_transition_field(u: SupervectorField, k: int,
                                 rho: Transition) -> SupervectorField:
    """The frame-bundle coordinate transition law applied at degree k.

    Input components must be pure Grassmann degree k.  The base
    coefficients transform by plain inverse contraction; the fiber
    coefficients pick up, at degree k+1, the antisymmetrized derivative
    correction with scalar factor k+1.  Agrees with transform_field.
    """
    chart = u.chart
    if rho.size != chart.m:
        raise ChartMismatch("transition size does not match the chart")
    m, n = chart.m, chart.n
    inv = rho.inverse
    z_tensors = _pure_degree_tensors(u.base, k)
    v_tensors = _pure_degree_tensors(u.fiber, k)

    z_out = [_contract(t, inv, k, m, n) for t in z_tensors]

    new_base = [Superfunction(chart, dict(t)) for t in z_out]
    new_fiber = []
    for i in range(m):
        rotated = {}
        for j in range(m):
            if not rho.matrix[i, j]:
                continue
            for mono, value in v_tensors[j].items():
                piece = rho.matrix[i, j] * value
                acc = rotated.get(mono)
                rotated[mono] = piece if acc is None else acc + piece
        level_k = _contract(rotated, inv, k, m, n)
        terms = dict(level_k)
        if k + 1 <= m:
            for A in range(1, n + 1):
                q_vector = []
                for j in range(m):
                    acc = ScalarFn.zero(n)
                    for b in range(m):
                        d_rho = rho.matrix[i, b].diff(A)
                        if d_rho and inv[b, j]:
                            acc = acc + d_rho * inv[b, j]
                    q_vector.append(acc)
                corr = _append_index(z_out[A - 1], q_vector, k, m, n)
                for mono, value in corr.items():
                    acc = terms.get(mono)
                    terms[mono] = value if acc is None else acc + value
        new_fiber.append(Superfunction(chart, terms))
    return SupervectorField(chart, new_base, new_fiber)


def coefficient_transition_form(phi: Superform, k: int,
                                rho: Transition) -> Superform:
    """The dual-bundle coordinate transition law applied at degree k.

    Input must be a 1-form whose components are pure Grassmann degree k.
    The dc coefficients transform by inverse contraction on all indices
    including the form index; the dz coefficients pick up, at degree k+1,
    the antisymmetrized correction through the derivative of the inverse.
    Agrees with transform_form.
    """
    chart = phi.chart
    if rho.size != chart.m:
        raise ChartMismatch("transition size does not match the chart")
    if not phi.is_pure_degree(1):
        raise NotDegreeOne("coefficient transitions expect a pure 1-form")
    m, n = chart.m, chart.n
    inv = rho.inverse
    z_tensors = _pure_degree_tensors(
        [phi.component(A) for A in range(1, n + 1)], k)
    v_tensors = _pure_degree_tensors(
        [phi.fiber_component(b) for b in range(1, m + 1)], k)

    d_out = [_contract(t, inv, k, m, n) for t in v_tensors]

    terms = {}
    for a in range(m):
        rotated = {}
        for b in range(m):
            if not inv[b, a]:
                continue
            for mono, value in v_tensors[b].items():
                piece = inv[b, a] * value
                acc = rotated.get(mono)
                rotated[mono] = piece if acc is None else acc + piece
        coeff = Superfunction(chart, _contract(rotated, inv, k, m, n))
        if coeff:
            terms[((), (a + 1,))] = coeff
    for A in range(1, n + 1):
        level_k = _contract(z_tensors[A - 1], inv, k, m, n)
        data = dict(level_k)
        if k + 1 <= m:
            for b in range(m):
                q_vector = [inv[b, a].diff(A) for a in range(m)]
                corr = _append_index(d_out[b], q_vector, k, m, n)
                for mono, value in corr.items():
                    acc = data.get(mono)
                    data[mono] = value if acc is None else acc + value
        coeff = Superfunction(chart, data)
        if coeff:
            terms[((A,), ())] = coeff
    return Superform(chart, terms)
