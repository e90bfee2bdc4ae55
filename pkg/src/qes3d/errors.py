"""Exception types shared across the package."""


class QesError(Exception):
    """Base class for all package errors."""


class DivisionByZero(QesError):
    pass


class DegenerateMetric(QesError):
    pass


class UnsupportedCoefficients(QesError):
    """Raised when an operation requires exponential-free coefficients."""


class DimensionMismatch(QesError):
    pass


class InternalInconsistency(QesError):
    """Impossible for valid inputs; guards implementation bugs."""


class NotClosed(QesError):
    """A Lie bracket left the span of the presentation basis."""

    def __init__(self, pair, residue):
        self.pair = pair
        self.residue = residue
        super().__init__(f"bracket of pair {pair} leaves the span; residue {residue}")


class NotInvariant(QesError):
    """An operator image left the module span."""

    def __init__(self, op_index, basis_function, residue):
        self.op_index = op_index
        self.basis_function = basis_function
        self.residue = residue
        super().__init__(
            f"operator #{op_index} maps {basis_function} outside the module; residue {residue}"
        )


class UnknownEntry(QesError):
    pass


class InvalidParameters(QesError):
    pass


class NumericFailure(QesError):
    pass


class MatchingAmbiguity(QesError):
    """Eigenvalue branches collided at a sample point."""


class EmptyLocusWarning(UserWarning):
    """No sign change found on the sampling grid."""
