"""Exception types raised across the package."""


class QuantumInputError(ValueError):
    """Base class for rejected inputs."""


class NotHermitian(QuantumInputError):
    pass


class DimensionMismatch(QuantumInputError):
    pass


class DomainError(QuantumInputError):
    pass


class IndexOutOfRange(QuantumInputError):
    pass


class ValidationFailure(QuantumInputError):
    """A matrix failed the density-matrix invariants."""


class NotUnital(QuantumInputError):
    pass


class CovarianceViolation(QuantumInputError):
    """Output entropy depends on the local encoding beyond tolerance."""


class NoConvergence(ArithmeticError):
    pass
