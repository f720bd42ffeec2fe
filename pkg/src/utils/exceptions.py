"""
Custom exceptions for gatesmith.

This module defines the exception hierarchy shared by the simulator, the
completeness checks, the synthesis pipeline and the CLI, so callers can tell a
bad input (precondition family) from an internal failure.
"""

from typing import Optional


class GatesmithError(Exception):
    """Base exception class for gatesmith errors."""

    def __init__(self, message: str, context: Optional[dict] = None):
        """
        Initialize the GatesmithError.

        Args:
            message: Error message
            context: Additional context information (offending values, shapes, ...)
        """
        super().__init__(message)
        self.message = message
        self.context = context or {}


class QubitIndexError(GatesmithError):
    """Qubit index out of range, or repeated within one gate application."""
    pass


class ArityMismatchError(GatesmithError):
    """Number of qubits given does not match the gate's arity."""
    pass


class DimensionMismatchError(GatesmithError):
    """Operand dimensions are incompatible."""
    pass


class DimensionCapError(GatesmithError):
    """A dense simulation would exceed the configured qubit cap."""
    pass


class NonOrthogonalError(GatesmithError):
    """An operator expected to be orthogonal is not."""
    pass


class NonFiniteInputError(GatesmithError):
    """A numeric input is NaN or infinite."""
    pass


class PreconditionError(GatesmithError):
    """An operation was called outside its domain."""
    pass


class AngleDegeneracyError(PreconditionError):
    """
    Angle lies within tolerance of an excluded set (multiples of pi/2 or pi/4).

    Raised separately from PreconditionError so that callers can report the
    basis-changing condition explicitly.
    """

    def __init__(
        self,
        message: str,
        angle: Optional[float] = None,
        excluded_step: Optional[str] = None,
        context: Optional[dict] = None
    ):
        """
        Initialize the AngleDegeneracyError.

        Args:
            message: Error message
            angle: The offending angle in radians
            excluded_step: The excluded lattice, e.g. "pi/2" or "pi/4"
            context: Additional context information
        """
        super().__init__(message, context=context)
        self.angle = angle
        self.excluded_step = excluded_step


class ExactnessError(GatesmithError):
    """An exact-arithmetic construction was handed a non-exact value."""
    pass


class EigenDegeneracyError(GatesmithError):
    """An eigenspace does not have the dimension needed to identify a unique span."""
    pass


class LoweringError(GatesmithError):
    """A gate kind cannot be lowered to the target basis."""
    pass


class AncillaBudgetError(GatesmithError):
    """Not enough work or ancilla qubits were provided for a lowering rule."""
    pass


class BudgetInfeasibleError(PreconditionError):
    """The requested precision cannot be met by the chosen parameters."""
    pass


def exit_code_for(error: BaseException) -> int:
    """
    Map an exception to the CLI exit code.

    Args:
        error: The exception raised by a command

    Returns:
        2 for precondition failures, 3 for I/O failures, 1 for everything else
    """
    if isinstance(error, PreconditionError):
        return 2
    if isinstance(error, OSError):
        return 3
    return 1
