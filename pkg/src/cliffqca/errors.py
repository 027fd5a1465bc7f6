"""Exception hierarchy shared by every module of the package."""


class CliffQCAError(Exception):
    """Base class for all errors raised by cliffqca."""


class RingMismatchError(CliffQCAError, ValueError):
    """Operands live over different coefficient fields or variable sets."""


class ShapeError(CliffQCAError, ValueError):
    """Matrix dimensions are incompatible with the requested operation."""


class DomainError(CliffQCAError, ValueError):
    """A scalar parameter lies outside the supported domain (p = 2, f = 0, ...)."""


class NotSymplecticError(CliffQCAError, ValueError):
    """A matrix failed the exact test Q^dagger lambda Q == lambda."""


class NotAntihermitianError(CliffQCAError, ValueError):
    """A matrix is not an invertible antihermitian form with zero constant diagonal."""


class NormalizationError(CliffQCAError, ValueError):
    """The split variable appears with an exponent other than 0 or 1."""


class QuillenSuslinError(CliffQCAError, RuntimeError):
    """The restricted free-basis extraction could not certify a basis."""


class ResourceCapError(CliffQCAError, RuntimeError):
    """A configured degree or size cap was exceeded."""


class InconsistencyError(CliffQCAError, AssertionError):
    """An internal identity that must hold did not; indicates a bug or bad input data."""


class PreconditionError(CliffQCAError, ValueError):
    """An input violates a mathematical precondition (e.g. a determinantal ideal is not unit)."""
