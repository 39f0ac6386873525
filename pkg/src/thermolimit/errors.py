"""Exception types shared across the package.

Every failure mode that a caller may want to branch on gets its own class;
all of them derive from :class:`SimulationError` so batch drivers can catch
numerical failures in one place without swallowing programming errors.
"""


class SimulationError(Exception):
    """Base class for all recoverable numerical/model errors."""


class DimensionTooLarge(SimulationError):
    """A requested dense object would exceed the configured dimension cap."""


class DimensionMismatch(SimulationError):
    """Operator/state dimensions are inconsistent."""


class NotHermitian(SimulationError):
    """A matrix required to be Hermitian fails the tolerance check."""


class ZeroMeanEnergy(SimulationError):
    """Relative fluctuation is undefined because the mean energy vanishes."""


class InsufficientPoints(SimulationError):
    """Too few distinct points for the requested fit."""


class InvalidSector(SimulationError):
    """Collective-spin eigenvalue outside the allowed ladder."""


class TruncationLeakage(SimulationError):
    """Probability mass reached the top of the truncated Fock space."""


class QuadratureUnderResolved(SimulationError):
    """Quadrature grid too coarse for the integrand's fastest oscillation."""


class QuadratureError(SimulationError):
    """Adaptive quadrature failed to converge."""


class InvalidWindow(SimulationError):
    """Non-positive averaging window."""


class InvalidEpsilon(SimulationError):
    """Non-positive damping parameter for a regularized integral."""
