"""Exception types shared across the package."""


class ShiftspecError(Exception):
    """Base class for all package-specific errors."""


class IntegrityError(ShiftspecError):
    """A declared analytic fact (e.g. a norm) is contradicted by materialized data."""


class QuadratureError(ShiftspecError):
    """Adaptive quadrature failed to reach the requested accuracy."""

    def __init__(self, message, achieved_error=None):
        super().__init__(message)
        self.achieved_error = achieved_error


class SliceUndefinedError(ShiftspecError):
    """A weighted slice measure has zero normalizer and is undefined."""


class NegativeMassError(ShiftspecError):
    """A measure decomposition produced a negative atom mass."""


class LeftSpectrumAtResolutionError(ShiftspecError):
    """The finite section of W - lambda is numerically singular.

    Raised when sigma_min falls below the resolution floor, meaning lambda is
    in the (approximate) left spectrum at the requested section size.
    """

    def __init__(self, lam, n, sigma_min):
        super().__init__(
            f"lambda={lam} in (approximate) left spectrum at resolution N={n} "
            f"(sigma_min={sigma_min:.3e})"
        )
        self.lam = lam
        self.n = n
        self.sigma_min = sigma_min


class NormGapError(ShiftspecError):
    """A closed-form spectral picture was requested but its norm-gap hypothesis fails."""


class FamilyMismatchError(ShiftspecError):
    """An operation was applied to a diagram of the wrong family."""


class ConvergenceError(ShiftspecError):
    """An iterative solver did not converge within its sweep budget."""
