"""Exception types raised across the toolkit."""


class QMError(Exception):
    """Base class for every error raised by qmkit."""


class DomainError(QMError, ValueError):
    """An argument lies outside the domain where the formula applies."""


class ShapeError(QMError, ValueError):
    """Grids or arrays do not line up."""


class ZeroNormError(DomainError):
    """A state with zero norm was passed where a physical state is needed."""


class BelowThreshold(DomainError):
    """Photon energy too small to free an electron.

    The threshold frequency is kept on the exception so callers can report it.
    """

    def __init__(self, threshold_frequency, message=None):
        self.threshold_frequency = threshold_frequency
        super().__init__(
            message
            or f"photon energy below work function; threshold frequency {threshold_frequency:.6e} Hz"
        )


class QuantumNumberError(DomainError):
    """Quantum numbers violate 1 <= n, 0 <= l < n, |m| <= l."""


class NoChannelError(DomainError):
    """An asymptotic region has no propagating wave at this energy."""


class GapEnergyError(DomainError):
    """The energy lies inside a band gap, so no Bloch wavenumber exists."""


class ResolutionError(DomainError):
    """Sampling is too coarse for the requested quantity."""


class SolverError(QMError, RuntimeError):
    """A numerical solver failed or produced an unacceptable residual."""

    def __init__(self, message, residual=None):
        self.residual = residual
        super().__init__(message)


class ConsistencyError(QMError, RuntimeError):
    """An internal identity (e.g. non-negative variance) was violated."""
