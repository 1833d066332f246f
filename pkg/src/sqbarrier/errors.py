"""Exception hierarchy used across the package."""


class SquareBarrierError(Exception):
    """Base class for all errors raised by this package."""


class ConfigError(SquareBarrierError):
    """Invalid barrier configuration (bad geometry, non-finite numbers, bad JSON)."""


class UnsupportedOrderError(SquareBarrierError):
    """Angular momentum above the supported closed-form cap."""


class DomainError(SquareBarrierError):
    """Argument outside the mathematical domain of the requested quantity."""


class DegenerateWavenumberError(SquareBarrierError):
    """k = 0 or Q = 0, where the matching formulas divide by zero."""


class RootDivergenceError(SquareBarrierError):
    """Newton iteration failed to converge; carries the last iterate."""

    def __init__(self, message, last_iterate=None, residual=None):
        super().__init__(message)
        self.last_iterate = last_iterate
        self.residual = residual


class UnreliableContourError(SquareBarrierError):
    """Boundary of an argument-principle contour passes too close to a zero."""


class PoleEvaluationError(SquareBarrierError):
    """Quantity with an F2 denominator evaluated at (or too near) a pole."""


class IncompleteSearchError(SquareBarrierError):
    """Seeded root search found fewer/more zeros than the argument principle."""

    def __init__(self, message, found=None, expected=None):
        super().__init__(message)
        self.found = found
        self.expected = expected


class CertificationError(SquareBarrierError):
    """A located pole failed an independent residual certification."""


class SymmetryViolationError(SquareBarrierError):
    """Mirror pole -conj(k) is not a zero; indicates a coefficient bug."""


class SuspiciousPoleError(SquareBarrierError):
    """Analytic residue disagrees with the contour oracle (non-simple zero?)."""


class MethodDisagreementError(SquareBarrierError):
    """The three pole-location methods disagree beyond tolerance."""
