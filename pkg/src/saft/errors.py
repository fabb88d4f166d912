"""Exception hierarchy.

Validation problems (bad parameters, malformed input) derive from
:class:`ValidationError`; failures of a numerical precondition discovered
while computing derive from :class:`NumericError`. The CLI maps the two
families to exit codes 2 and 3.
"""


class SaftError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(SaftError, ValueError):
    pass


class NumericError(SaftError, ArithmeticError):
    pass


class DeterminantViolation(ValidationError):
    def __init__(self, residual, tol):
        self.residual = residual
        self.tol = tol
        super().__init__(
            f"|ad - bc - 1| = {residual:.3e} exceeds tolerance {tol:.1e}")


class ZeroB(ValidationError):
    pass


class NonFiniteParameter(ValidationError):
    pass


class UnknownPreset(ValidationError):
    pass


class ComplexParameterUnsupported(ValidationError):
    pass


class NegativeB(ValidationError):
    pass


class GridMismatch(ValidationError):
    pass


class EmptyGrid(ValidationError):
    pass


class GridTooNarrow(ValidationError):
    pass


class MalformedCsv(ValidationError):
    pass


class NonUniformGrid(ValidationError):
    pass


class DelayOutOfRange(ValidationError):
    pass


class ZeroReference(ValidationError):
    pass


class DivisionByZeroNorm(NumericError):
    pass


class DegenerateGenerator(NumericError):
    pass


class NonInvertibleSymbol(NumericError):
    pass
