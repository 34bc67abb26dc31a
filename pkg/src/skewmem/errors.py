"""Exception types used across the toolkit."""


class SkewmemError(Exception):
    """Base class for all skewmem errors."""


class DimensionMismatch(SkewmemError, ValueError):
    """Operands have incompatible matrix dimensions."""


class NotHermitian(SkewmemError, ValueError):
    """Matrix fails the Hermiticity tolerance."""


class NotPSD(SkewmemError, ValueError):
    """Matrix has an eigenvalue below the PSD tolerance."""


class NonRealExpectation(SkewmemError, ValueError):
    """Tr(rho H) has a non-negligible imaginary part."""


class NotProjector(SkewmemError, ValueError):
    """Matrix is not a rank-one orthogonal projector."""


class BadParamLength(SkewmemError, ValueError):
    """Parameter vector has the wrong length for the requested chart."""


class BadProbabilities(SkewmemError, ValueError):
    """Probability vector is negative or not normalized."""


class OutOfRange(SkewmemError, ValueError):
    """Scalar argument outside its documented range."""


class ParseError(SkewmemError, ValueError):
    """State file could not be parsed; message carries diagnostics."""


class ValidationError(SkewmemError, ValueError):
    """A constructed object violates one of its invariants."""


class ConvergenceFailure(SkewmemError, RuntimeError):
    """An iterative numerical routine failed to converge."""
