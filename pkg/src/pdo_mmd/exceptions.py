"""Exception hierarchy for PDO-MMD.

Every numerical failure raised by the library derives from PdoMmdError so
callers (and the CLI exit-code mapping) can catch one type.
"""


class PdoMmdError(Exception):
    """Base exception for all library errors."""

    pass


# -----------------------------------------------------------------------------
# Grids
# -----------------------------------------------------------------------------
class InvalidGrid(PdoMmdError):
    """Raised when grid parameters violate the lattice preconditions."""

    pass


class GridMismatch(PdoMmdError):
    """Raised when two grid-backed objects live on different lattices."""

    pass


class OutOfDomain(PdoMmdError):
    """Raised when a point falls outside the half-open grid box."""

    pass


# -----------------------------------------------------------------------------
# Symbols
# -----------------------------------------------------------------------------
class InvalidSymbol(PdoMmdError):
    """Raised when a symbol construction precondition does not hold."""

    pass


class NotPositiveDefinite(PdoMmdError):
    """Raised when a kernel profile has a transform with negative lobes."""

    pass


class NotPSD(PdoMmdError):
    """Raised when a discretized operator has a significantly negative eigenvalue.

    Usually signals that the grid is too coarse for the requested construction.
    """

    pass


class DegenerateTerm(PdoMmdError):
    """Raised when a symbol term has no usable Fourier transform."""

    pass


class TransformUnavailable(PdoMmdError):
    """Raised when neither a closed form nor a grid path exists for a transform."""

    pass


# -----------------------------------------------------------------------------
# Spectral
# -----------------------------------------------------------------------------
class ConvergenceError(PdoMmdError):
    """Raised when a dense decomposition fails to converge."""

    pass


class RankOutOfRange(PdoMmdError):
    """Raised when a requested rank exceeds what the decomposition provides."""

    pass


# -----------------------------------------------------------------------------
# MMD
# -----------------------------------------------------------------------------
class NotADensity(PdoMmdError):
    """Raised when a grid function is negative or does not integrate to one."""

    pass


class DegenerateWitness(PdoMmdError):
    """Raised when the two distributions are indistinguishable under the symbol."""

    pass


class UnsupportedPoint(PdoMmdError):
    """Raised when a local moment is requested outside the effective support."""

    def __init__(self, message: str, denominator: float | None = None) -> None:
        super().__init__(message)
        self.denominator = denominator


# -----------------------------------------------------------------------------
# Harness & Fit
# -----------------------------------------------------------------------------
class SpecError(PdoMmdError):
    """Raised when an instance specification is invalid."""

    pass


class HarnessError(PdoMmdError):
    """Raised for unknown checks or empty report collections."""

    pass


class NoiseExhausted(PdoMmdError):
    """Raised when more model samples are requested than base noise exists."""

    pass


class BudgetExhausted(PdoMmdError):
    """Raised by the evaluation counter once the objective budget is spent.

    fit_mmd catches this and returns the best point seen so far.
    """

    def __init__(self, message: str, evaluations: int) -> None:
        super().__init__(message)
        self.evaluations = evaluations
