"""Exceptions raised by the surface pipeline."""


class SurfaceError(ArithmeticError):
    """Base class for points or data where a construction is undefined."""


class SingularGaussMap(SurfaceError):
    """g'(z) vanishes, so the Gauss map is not a local diffeomorphism."""


class DegeneratePoint(SurfaceError):
    """The regularity quantity P is (numerically) zero; the immersion is singular."""

    def __init__(self, message: str, P: float = 0.0):
        self.P = P
        super().__init__(message)


class DegenerateWronskian(SurfaceError):
    """f1*f2' - f2*f1' vanishes, so mu is undefined."""
