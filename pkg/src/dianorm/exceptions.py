"""Exception types raised by the toolkit."""


class DianormError(Exception):
    """Base class for all errors raised by dianorm."""


class DimensionError(DianormError, ValueError):
    """Operands have incompatible or invalid shapes."""


class NotPSDError(DianormError, ValueError):
    """A matrix expected to be positive semidefinite has a negative eigenvalue."""


class DegenerateInputError(DianormError, ValueError):
    """The input is (numerically) zero where a nonzero operator is required."""


class NumericalFailure(DianormError, ArithmeticError):
    """An iterative decomposition did not converge."""
