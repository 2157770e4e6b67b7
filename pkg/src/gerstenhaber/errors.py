"""Exception hierarchy shared by every module."""


class GerstenhaberError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(GerstenhaberError, ValueError):
    pass


class ModelMismatchError(GerstenhaberError, ValueError):
    """Operands live over different generator frames."""


class ValidationError(GerstenhaberError, ValueError):
    """An ingested Lie algebra or complex structure violates an invariant."""


class JacobiError(ValidationError):
    def __init__(self, triple, residual):
        self.triple = tuple(triple)
        self.residual = residual
        super().__init__(
            "Jacobi identity fails on basis triple (%s, %s, %s)" % self.triple
        )


class ComplexStructureError(ValidationError):
    """J does not square to minus the identity."""


class NonAbelianError(ValidationError):
    def __init__(self, pair):
        self.pair = tuple(pair)
        super().__init__(
            "complex structure is not abelian: [JA, JB] != [A, B] for (%s, %s)" % self.pair
        )


class NotNilpotentError(ValidationError):
    pass


class SingularParameterError(GerstenhaberError, ValueError):
    """gamma = 1 is a pole of the closed-form solution."""


class NotInImageError(GerstenhaberError, ValueError):
    def __init__(self, message, harmonic_part=None):
        super().__init__(message)
        self.harmonic_part = harmonic_part


class BidegreeError(GerstenhaberError, ValueError):
    pass


class InconsistentResidualError(GerstenhaberError, RuntimeError):
    """A Kuranishi residual failed to be dbar-closed with no prior obstruction.

    This can only happen through a sign or table bug; it is never patched over.
    """


class ObstructedSeriesError(GerstenhaberError, RuntimeError):
    """The residual stopped being closed after a nonzero Chen vector appeared."""

    def __init__(self, message, series=None):
        super().__init__(message)
        self.series = series


class NonKodairaModelError(GerstenhaberError, ValueError):
    pass


class PreconditionError(GerstenhaberError, ValueError):
    pass
