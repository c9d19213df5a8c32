"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class SectorError(Exception):
    """Base class for all errors raised by :mod:`sector_jh`."""


class DomainError(SectorError, ValueError):
    """An input lies outside the domain of the requested operation."""


class OrderingError(DomainError):
    """Roots violate ``e3 <= e2 <= e1`` or the sign conditions on them."""


class DegenerateError(DomainError):
    """The requested integral is not defined for this root configuration."""


class InvalidFlowTypeError(DomainError):
    """A (m_plus, m_minus) pair that does not name an admissible flow type."""


class IncompatibleTypeError(DomainError):
    """The root triple cannot carry the requested flow type."""


class NoSolutionError(SectorError):
    """A level set or flux equation has no solution in the searched range."""


class UnsupportedRegionError(SectorError):
    """The (2,1) classification is only available below the critical angle."""


class QuadratureError(SectorError, ArithmeticError):
    """Double-exponential quadrature failed to converge at the finest level."""


class ArcAssemblyError(SectorError):
    """The arc angles of a reconstructed profile do not add up to 2*alpha."""


class TracingError(SectorError):
    """Level-curve continuation lost the curve.

    ``last_point`` holds the last accepted ``(e1, e2)`` pair.
    """

    def __init__(self, message: str, last_point: tuple[float, float] | None = None):
        super().__init__(message)
        self.last_point = last_point
