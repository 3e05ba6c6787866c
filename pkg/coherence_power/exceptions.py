"""Exceptions raised by the coherence-power package."""

from __future__ import annotations


class CoherencePowerError(Exception):
    """Base class for all package errors."""


class DimensionMismatchError(CoherencePowerError, ValueError):
    """Operands have incompatible dimensions."""


class NotHermitianError(CoherencePowerError, ValueError):
    """A matrix that must be Hermitian is not."""

    def __init__(self, asymmetry: float) -> None:
        """Store the measured asymmetry max|A - A^dagger|."""
        self.asymmetry = asymmetry
        msg = f"Matrix is not Hermitian: max|A - A^dagger| = {asymmetry:.3e}"
        super().__init__(msg)


class NotPSDError(CoherencePowerError, ValueError):
    """A matrix that must be positive semidefinite is not."""

    def __init__(self, eigenvalue: float) -> None:
        """Store the most negative eigenvalue."""
        self.eigenvalue = eigenvalue
        super().__init__(
            f"Matrix is not positive semidefinite: eigenvalue {eigenvalue:.3e}"
        )


class InvalidStateError(CoherencePowerError, ValueError):
    """A state violates its invariants."""


class InvalidChannelError(CoherencePowerError, ValueError):
    """A channel violates its invariants."""


class ConvergenceError(CoherencePowerError, ArithmeticError):
    """An iterative method did not converge."""


class SearchDimensionError(CoherencePowerError, ValueError):
    """A search space exceeds the supported dimension."""


class SpecError(CoherencePowerError, ValueError):
    """A state, observable or channel spec is malformed."""

    def __init__(self, field: str, reason: str) -> None:
        """Store the offending field name."""
        self.field = field
        super().__init__(f"Invalid spec field '{field}': {reason}")


class UnsupportedError(CoherencePowerError, NotImplementedError):
    """The requested measure/dimension combination is not implemented."""
