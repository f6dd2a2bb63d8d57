"""Exact symbolic Cartan calculus on simple graded coordinate charts.

Superfunctions (Grassmann polynomials with rational-function
coefficients), supervector fields, and exterior superforms over a fixed
base chart, with the graded product, derivation action, Lie superbracket,
wedge, interior product, exterior differential, Lie derivative, fiber
frame transitions with their cocycle property, and linear-connection
splittings.  All arithmetic is exact; every identity is decidable
equality of canonical forms.
"""

from .errors import (ChartMismatch, ConfigError, DivisionByZero, DslSyntaxError,
                     IndexOutOfRange, NotBasic, NotDegreeOne, ShapeMismatch,
                     SingularMatrix, SupercartanError, TypeMismatch, UnknownSymbol)
from .scalars import ScalarFn, ScalarMatrix, matrix_inverse, partial_base, scalar_arith
from .grassmann import (Chart, Superfunction, base_derivative, gr_mul,
                        odd_derivative, parity_split)
from .fields import SupervectorField, apply, bracket, field_parity, transform_field
from .forms import (FormGrading, Superform, exterior_differential, form_parity,
                    interior, lie_derivative, transform_form, wedge)
from .geometry import (LinearConnection, Transition, coefficient_transition_field,
                       coefficient_transition_form, compose_transitions,
                       horizontal_lift, split_field, split_form,
                       transform_superfunction, vertical_coframe)
from .dsl import SplitPair, evaluate, parse, print_canonical
from .config import ChartConfig

__version__ = "0.1.0"

__all__ = [
    "Chart", "ChartConfig", "FormGrading", "LinearConnection", "ScalarFn",
    "ScalarMatrix", "SplitPair", "Superform", "Superfunction",
    "SupervectorField", "Transition",
    "apply", "base_derivative", "bracket", "coefficient_transition_field",
    "coefficient_transition_form", "compose_transitions",
    "exterior_differential", "evaluate", "field_parity", "form_parity",
    "gr_mul", "horizontal_lift", "interior", "lie_derivative",
    "matrix_inverse", "odd_derivative", "parity_split", "parse",
    "partial_base", "print_canonical", "scalar_arith", "split_field",
    "split_form", "transform_field", "transform_form",
    "transform_superfunction", "vertical_coframe", "wedge",
    "ChartMismatch", "ConfigError", "DivisionByZero", "DslSyntaxError",
    "IndexOutOfRange", "NotBasic", "NotDegreeOne", "ShapeMismatch",
    "SingularMatrix", "SupercartanError", "TypeMismatch", "UnknownSymbol",
]
