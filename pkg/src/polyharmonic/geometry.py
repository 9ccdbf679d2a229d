"""Grid-based checks of starlikeness, convexity and range coverage.

The starlike quantity is ``Re{(z F_z - zbar F_zbar) / F}``, the angular
derivative of ``arg F(r e^{it})``; the convex quantity is the angular
derivative of the argument of the tangent, written through second Wirtinger
derivatives. Both are 1 at the origin for normalized maps. A finite grid can
falsify the geometric property or support it; it cannot prove it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .classes import hc_membership
from .core import PolyharmonicMap, as_disk_points, evaluate, wirtinger
from .errors import (
    GridTooCoarseError,
    NotInClassError,
    PointOnCurveError,
    SingularPointError,
)

DEFAULT_TOLERANCE = 1e-9
SHARP_TOLERANCE = 1e-5
SINGULAR_LEVEL = 1e-14
TIE_TOL = 1e-12
COVER_RADIUS = 1.0 - 1e-6
ON_CURVE_DISTANCE = 1e-12
MAX_CURVE_POINTS = 1 << 18


@dataclass(frozen=True)
class PolarGrid:
    """Radii in (0, 1) times equally spaced angles in [0, 2pi)."""

    radii: np.ndarray
    n_theta: int

    def __post_init__(self):
        radii = np.asarray(self.radii, dtype=float).ravel()
        if radii.size == 0:
            raise ValueError("grid needs at least one radius")
        if np.any(radii <= 0) or np.any(radii >= 1):
            raise ValueError("grid radii must lie in (0, 1)")
        if np.any(np.diff(radii) <= 0):
            raise ValueError("grid radii must be strictly increasing")
        if self.n_theta < 16:
            raise ValueError(f"need at least 16 angles, got {self.n_theta}")
        radii.flags.writeable = False
        object.__setattr__(self, "radii", radii)

    @classmethod
    def uniform(cls, r_max: float, n_r: int, n_theta: int) -> "PolarGrid":
        return cls(r_max * np.arange(1, n_r + 1) / n_r, n_theta)

    @classmethod
    def clustered(cls, r_max: float, n_r: int = 64, n_theta: int = 512) -> "PolarGrid":
        """Radii whose gaps shrink geometrically toward ``r_max`` (which is included)."""
        if n_r < 2:
            return cls([r_max], n_theta)
        gaps = np.geomspace(1.0 - 1.0 / n_r, 1e-3, n_r - 1)
        return cls(np.append(r_max * (1.0 - gaps), r_max), n_theta)

    @property
    def angles(self) -> np.ndarray:
        return 2 * np.pi * np.arange(self.n_theta) / self.n_theta

    @property
    def r_max(self) -> float:
        return float(self.radii[-1])

    def row(self, i: int) -> np.ndarray:
        return self.radii[i] * np.exp(1j * self.angles)

    def points(self) -> np.ndarray:
        return self.radii[:, None] * np.exp(1j * self.angles)[None, :]


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of a grid scan.

    ``passed`` is equivalent to ``min_value > threshold - tolerance``.
    ``witness`` is the polar location ``(r, theta)`` of the minimum.
    """

    min_value: float
    witness: tuple[float, float]
    passed: bool
    tolerance: float
    threshold: float = 0.0
    # convolution scans: order margin implied by the scan at the witness
    critical_value: float | None = None
    # convolution scans: grid points whose xi-loop encloses a zero
    enclosed: int = 0


def _first_singular(mask: np.ndarray, z: np.ndarray) -> complex:
    return complex(np.ravel(z)[np.argmax(np.ravel(mask))])


def starlike_quantity(F: PolyharmonicMap, z):
    """Re{(z F_z - zbar F_zbar) / F(z)}; the limit value 1 is returned at z = 0."""
    scalar = np.ndim(z) == 0
    zz = as_disk_points(z)
    w = wirtinger(F, zz)
    num = zz * w.dz - np.conj(zz) * w.dzbar
    at_origin = zz == 0
    bad = (np.abs(w.value) < SINGULAR_LEVEL) & ~at_origin
    if np.any(bad):
        raise SingularPointError("F vanishes", _first_singular(bad, zz))
    with np.errstate(divide="ignore", invalid="ignore"):
        q = np.where(at_origin, 1.0, (num / np.where(at_origin, 1.0, w.value)).real)
    return float(q) if scalar else q


def convex_quantity(F: PolyharmonicMap, z):
    """Re of the second-order Wirtinger ratio (angular turning of the tangent)."""
    scalar = np.ndim(z) == 0
    zz = as_disk_points(z)
    w = wirtinger(F, zz)
    zb = np.conj(zz)
    den = zz * w.dz - zb * w.dzbar
    num = (
        zz * w.dz
        + zz * zz * w.dz2
        - 2 * (zz * zb).real * w.dzdzbar
        + zb * w.dzbar
        + zb * zb * w.dzbar2
    )
    at_origin = zz == 0
    bad = (np.abs(den) < SINGULAR_LEVEL) & ~at_origin
    if np.any(bad):
        raise SingularPointError("z F_z - zbar F_zbar vanishes", _first_singular(bad, zz))
    with np.errstate(divide="ignore", invalid="ignore"):
        q = np.where(at_origin, 1.0, (num / np.where(at_origin, 1.0, den)).real)
    return float(q) if scalar else q


def grid_argmin(values: np.ndarray) -> tuple[int, int]:
    """Index of the minimum; near-ties go to the lexicographically smallest (r, theta)."""
    lowest = float(np.min(values))
    near = values <= lowest + TIE_TOL * max(1.0, abs(lowest))
    flat = int(np.argmax(near.ravel()))
    return np.unravel_index(flat, values.shape)


def scan_grid(quantity, F: PolyharmonicMap, grid: PolarGrid) -> np.ndarray:
    """Evaluate ``quantity(F, z)`` on every grid point, one radius at a time."""
    out = np.empty((grid.radii.size, grid.n_theta))
    for i in range(grid.radii.size):
        out[i] = quantity(F, grid.row(i))
    return out


def _verify(quantity, F, r_max, order, grid, tolerance) -> VerificationReport:
    if not 0.0 <= order < 1.0:
        raise ValueError(f"order must lie in [0, 1), got {order!r}")
    if not 0.0 < r_max < 1.0:
        raise ValueError(f"r_max must lie in (0, 1), got {r_max!r}")
    if grid is None:
        grid = PolarGrid.clustered(r_max)
    elif grid.r_max > r_max * (1 + 1e-12):
        raise ValueError(f"grid reaches r = {grid.r_max}, beyond r_max = {r_max}")
    values = scan_grid(quantity, F, grid) - order
    i, t = grid_argmin(values)
    lowest = float(values[i, t])
    return VerificationReport(
        min_value=lowest,
        witness=(float(grid.radii[i]), float(grid.angles[t])),
        passed=lowest > -tolerance,
        tolerance=tolerance,
    )


def verify_starlike(
    F: PolyharmonicMap,
    r_max: float,
    alpha: float = 0.0,
    grid: PolarGrid | None = None,
    tolerance: float = DEFAULT_TOLERANCE,
) -> VerificationReport:
    """Minimum of the starlike quantity minus ``alpha`` over ``|z| <= r_max``."""
    return _verify(starlike_quantity, F, r_max, alpha, grid, tolerance)


def verify_convex(
    F: PolyharmonicMap,
    r_max: float,
    beta: float = 0.0,
    grid: PolarGrid | None = None,
    tolerance: float = DEFAULT_TOLERANCE,
) -> VerificationReport:
    """Minimum of the convex quantity minus ``beta`` over ``|z| <= r_max``."""
    return _verify(convex_quantity, F, r_max, beta, grid, tolerance)


def boundary_curve(F: PolyharmonicMap, r: float, n: int) -> np.ndarray:
    """F(r e^{i theta_m}) at ``n`` equally spaced angles starting from 0 (closure implicit)."""
    if not 0.0 < r < 1.0:
        raise ValueError(f"r must lie in (0, 1), got {r!r}")
    if n < 3:
        raise ValueError(f"a closed polyline needs n >= 3, got {n}")
    theta = 2 * np.pi * np.arange(n) / n
    return evaluate(F, r * np.exp(1j * theta))


def _segment_distance(curve: np.ndarray, w: np.ndarray) -> np.ndarray:
    """Distance from each point in ``w`` to the closed polyline ``curve``."""
    start = curve[None, :]
    seg = np.roll(curve, -1)[None, :] - start
    rel = w[:, None] - start
    length2 = np.abs(seg) ** 2
    with np.errstate(divide="ignore", invalid="ignore"):
        t = np.where(length2 > 0, (rel * np.conj(seg)).real / length2, 0.0)
    t = np.clip(t, 0.0, 1.0)
    return np.min(np.abs(rel - t * seg), axis=1)


def winding_numbers(curve, ws) -> np.ndarray:
    """Winding numbers of the closed polyline about each point of ``ws``."""
    curve = np.asarray(curve, dtype=complex).ravel()
    ws = np.atleast_1d(np.asarray(ws, dtype=complex)).ravel()
    if curve.size < 3:
        raise ValueError("curve needs at least 3 vertices")
    chunk = max(1, (1 << 21) // curve.size)
    out = np.empty(ws.size, dtype=int)
    for lo in range(0, ws.size, chunk):
        part = ws[lo : lo + chunk]
        dist = _segment_distance(curve, part)
        if np.any(dist <= ON_CURVE_DISTANCE):
            bad = complex(part[np.argmax(dist <= ON_CURVE_DISTANCE)])
            raise PointOnCurveError(f"point {bad!r} lies on the curve")
        rel = curve[None, :] - part[:, None]
        steps = np.angle(np.roll(rel, -1, axis=1) / rel)
        if np.any(np.abs(steps) >= np.pi / 2):
            raise GridTooCoarseError(
                f"argument step {float(np.max(np.abs(steps))):.3f} rad >= pi/2; refine the curve"
            )
        out[lo : lo + chunk] = np.rint(steps.sum(axis=1) / (2 * np.pi))
    return out


def winding_number(curve, w: complex) -> int:
    """Winding number of a closed polyline around ``w``."""
    return int(winding_numbers(curve, [w])[0])


def disk_samples(rho: float, n: int) -> np.ndarray:
    """Deterministic sample of ``|w| <= rho``: half on the circle, half a sunflower inside."""
    if n < 1:
        raise ValueError("need at least one sample point")
    n_ring = max(n // 2, 1)
    n_in = n - n_ring
    ring = rho * np.exp(2j * np.pi * np.arange(n_ring) / n_ring)
    i = np.arange(n_in)
    golden = np.pi * (3.0 - math.sqrt(5.0))
    inner = rho * np.sqrt((i + 0.5) / max(n_in, 1)) * np.exp(1j * golden * i)
    return np.concatenate([inner, ring])


def covers_disk(
    F: PolyharmonicMap,
    r: float = COVER_RADIUS,
    rho: float = 0.49,
    n_w: int = 200,
    n_curve: int = 2048,
) -> VerificationReport:
    """Check that F(|z| < r) contains every sampled point of ``|w| <= rho``.

    A sample is covered when the image of ``|z| = r`` winds once around it.
    The curve is refined automatically while argument steps are too coarse.
    """
    if not hc_membership(F).member:
        raise NotInClassError("range coverage applies to HC_p^0 members only")
    if rho < 0:
        raise ValueError(f"rho must be non-negative, got {rho!r}")
    ws = disk_samples(rho, n_w)
    n = n_curve
    while True:
        try:
            windings = winding_numbers(boundary_curve(F, r, n), ws)
            break
        except GridTooCoarseError:
            if n >= MAX_CURVE_POINTS:
                raise
            n *= 2
    worst = int(np.argmin(windings))
    w = ws[worst]
    return VerificationReport(
        min_value=float(windings[worst]),
        witness=(float(abs(w)), float(np.angle(w) % (2 * np.pi))),
        passed=bool(np.all(windings == 1)),
        tolerance=0.5,
        threshold=1.0,
    )
