"""Domain errors raised by the library.

Every error carries a short machine-readable name (the class name) and an
optional integer index pointing at the offending position.  The CLI turns
these into ``{"error": name, "index": i}`` on stderr.
"""


class DarbouxError(ValueError):
    def __init__(self, message="", index=None):
        super().__init__(message or type(self).__name__)
        self.index = index

    @property
    def name(self):
        return type(self).__name__

    def to_dict(self):
        out = {"error": self.name}
        if self.index is not None:
            out["index"] = int(self.index)
        msg = str(self)
        if msg and msg != self.name:
            out["message"] = msg
        return out


class AllZeroPrefix(DarbouxError):
    """Every known coefficient of a series is zero."""


class InsufficientMoments(DarbouxError):
    """Not enough moments to carry out the requested computation."""


class InsufficientDepth(DarbouxError):
    """The matrix has fewer rows/blocks than the computation needs."""


class FloatAmbiguous(DarbouxError):
    """A floating point quantity is too close to zero to be classified."""


class SingularHankel(DarbouxError):
    """A Hankel determinant that must be nonzero vanishes."""


class GapExceedsTwo(DarbouxError):
    """Consecutive normal indices differ by more than two."""


class RationalTermination(DarbouxError):
    """The continued fraction terminates: the function is rational.

    ``partial`` holds whatever was built before termination.
    """

    def __init__(self, message="", index=None, partial=None):
        super().__init__(message, index)
        self.partial = partial


class ZeroDenominator(DarbouxError):
    """A division by a vanishing quantity was required."""


class ZeroParameter(DarbouxError):
    """A transform parameter that must be nonzero is zero."""


class ShapeMismatch(DarbouxError):
    """Inconsistent lengths or block sizes."""


class NonPositiveC(DarbouxError):
    """An off-diagonal coefficient of a Jacobi matrix is not positive."""


class DegenerateDenominator(DarbouxError):
    """A denominator polynomial vanishes identically."""


class PoleCollision(DarbouxError):
    """An evaluation point coincides with a pole."""
