"""Exception types raised across the package."""


class DampedQHOError(Exception):
    """Base class for all library errors."""


class DimensionMismatch(DampedQHOError, ValueError):
    pass


class NonFiniteInput(DampedQHOError, ValueError):
    pass


class NotHermitian(DampedQHOError, ValueError):
    pass


class NotUnitaryDiagonal(DampedQHOError, ValueError):
    pass


class DegenerateProblem(DampedQHOError, ValueError):
    """The quadratic under the square root has no y-dependence to factor."""


class NoBoundStateBranch(DampedQHOError, ValueError):
    """Neither sign of pi gives a decreasing tau."""


class NonAffineEnergy(DampedQHOError, RuntimeError):
    pass


class UnresolvableLevels(DampedQHOError, ValueError):
    pass
