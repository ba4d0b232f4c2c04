"""Exception hierarchy shared across the package."""


class PthRootError(Exception):
    """Base class for all errors raised by this package."""


class DimensionMismatchError(PthRootError):
    """Operands have incompatible matrix dimensions."""


class SingularMatrixError(PthRootError):
    """The matrix (or the shifted matrix being rooted) is singular."""


class AnnihilatorError(PthRootError):
    """A supplied polynomial does not annihilate the matrix."""


class RootFindingError(PthRootError):
    """The simultaneous root iteration failed to converge.

    Carries the best per-root residuals seen, for diagnostics.
    """

    def __init__(self, message, residuals=None):
        super().__init__(message)
        self.residuals = residuals


class ConvergenceDomainError(PthRootError):
    """An eigenvalue falls outside the domain the closed forms require.

    ``spectral_radius`` and ``offending`` (the eigenvalue that broke the
    condition) are attached when known.
    """

    def __init__(self, message, spectral_radius=None, offending=None):
        super().__init__(message)
        self.spectral_radius = spectral_radius
        self.offending = offending


class BranchCutError(PthRootError):
    """A principal fractional power was requested on the closed negative real axis."""


class OracleUnavailableError(PthRootError):
    """A verification oracle's own precondition failed; not a method failure."""


class MatrixParseError(PthRootError):
    """An input file could not be parsed into a matrix, polynomial, or block form."""
