"""Exception hierarchy shared by all modules."""


class PolyharmonicError(Exception):
    """Base class for errors raised by this package."""


class OutsideDiskError(PolyharmonicError, ValueError):
    """A point handed to a disk-only routine has modulus >= 1."""


class NotNormalizedError(PolyharmonicError, ValueError):
    """The map is not in H_p^0 (b_{1,1} = 0, a_{k,1} = b_{k,1} = 0 for k >= 2)."""


class NotInClassError(PolyharmonicError, ValueError):
    """The map fails a coefficient class condition required by the operation."""


class SingularPointError(PolyharmonicError, ArithmeticError):
    """A quotient has a (numerically) vanishing denominator at ``point``."""

    def __init__(self, message: str, point: complex):
        super().__init__(f"{message} at z = {point!r}")
        self.point = point


class PointOnCurveError(PolyharmonicError, ValueError):
    """Winding number requested for a point lying on the polyline."""


class GridTooCoarseError(PolyharmonicError, ValueError):
    """Polyline sampling too coarse to track the argument reliably."""


class NoSignChangeError(PolyharmonicError, ValueError):
    """Root finder found no sign change where one was required."""


class TangencyError(PolyharmonicError, ValueError):
    """Polynomial touches zero without changing sign (repeated root)."""


class MapSpecError(PolyharmonicError, ValueError):
    """Malformed map specification document."""
