"""Exception types shared across the package."""


class SupercartanError(Exception):
    """Base class for all errors raised by this package."""


class DivisionByZero(SupercartanError):
    """Division by the zero rational function."""


class IndexOutOfRange(SupercartanError):
    """A coordinate or generator index outside the chart bounds."""


class ShapeMismatch(SupercartanError):
    """Matrix or component arrays with incompatible shapes."""


class SingularMatrix(SupercartanError):
    """A matrix whose determinant is identically zero."""


class ChartMismatch(SupercartanError):
    """Operands built over different charts."""


class NotBasic(SupercartanError):
    """A field expected to have base components only."""


class NotDegreeOne(SupercartanError):
    """A form expected to have pure form degree 1."""


class DslSyntaxError(SupercartanError):
    """Malformed expression text; carries position and expected tokens."""

    def __init__(self, message, line, column, expected=()):
        super().__init__(message)
        self.line = line
        self.column = column
        self.expected = tuple(expected)

    def __str__(self):
        base = super().__str__()
        if self.expected:
            base += " (expected %s)" % ", ".join(self.expected)
        return "line %d col %d: %s" % (self.line, self.column, base)


class UnknownSymbol(SupercartanError):
    """An identifier that names no chart symbol or configured object."""


class TypeMismatch(SupercartanError):
    """An operation applied to values of the wrong kind."""


class ConfigError(SupercartanError):
    """A chart configuration file that cannot be loaded."""
