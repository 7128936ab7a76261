"""Exception hierarchy shared by every module of the package."""

import numpy as np


class BiframeError(Exception):
    """Base class for all errors raised by this package."""


class DimensionMismatch(BiframeError, ValueError):
    pass


class IndexMismatch(BiframeError, ValueError):
    pass


class NonSquare(BiframeError, ValueError):
    pass


class AllColumnsNegligible(BiframeError, np.linalg.LinAlgError):
    """Every column of the input lies below the numerical rank threshold."""


class RangeNotContained(BiframeError, np.linalg.LinAlgError):
    """range(U) is not contained in range(V), so no factor W with U = VW exists."""

    def __init__(self, message, residual):
        super().__init__(message)
        self.residual = residual


class NotAFrame(BiframeError):
    """The family does not certify as a frame at the requested tolerance."""


class NonHermitianOperator(BiframeError):
    pass


class NotBoundedBelow(BiframeError, np.linalg.LinAlgError):
    pass


class SingularOperator(BiframeError, np.linalg.LinAlgError):
    pass


class SingularController(SingularOperator):
    pass


class SingularFactor(SingularOperator):
    pass


class ZeroGenerator(BiframeError, ValueError):
    pass


class InvalidSpec(BiframeError, ValueError):
    pass


class ParseError(BiframeError, ValueError):
    """A document could not be turned into a pair.

    ``location`` names the offending line or JSON field when known.
    """

    def __init__(self, message, location=None):
        if location is not None:
            message = f"{location}: {message}"
        super().__init__(message)
        self.location = location


class SchemaVersionMismatch(ParseError):
    pass


class SchemaValidation(ParseError):
    pass
