"""Hadamard-product characterizations of starlikeness and convexity of order alpha/beta.

For a normalized map the order condition is equivalent to the non-vanishing of

    sum_k |z|^(2(k-1)) { h_k * K(xi) -/+ conj(g_k) * L(xi) }

for every z != 0 and every unimodular xi, where ``*`` is the coefficientwise
product and (K, L) a kernel pair. The scan below samples xi at roots of unity.
Because the kernels are affine in xi (after clearing the starlike
denominator, which never vanishes on the closed unit disk), the scan value
traces a circle as xi runs around the unit circle; whether that circle winds
around 0 tells on which side of the order the map sits at z. That winding
count is the falsifier used for pass/fail, alongside the minimum modulus.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as npoly

from .core import PolyharmonicMap, as_disk_points
from .errors import NotNormalizedError, SingularPointError
from .geometry import PolarGrid, VerificationReport, grid_argmin

NONZERO_THRESHOLD = 1e-9
WARNING_BAND = 1e-6
UNIMODULAR_TOL = 1e-12


@dataclass(frozen=True)
class KernelPair:
    """Taylor weights applied to a_{k,j} (``analytic``) and conj(b_{k,j}) (``coanalytic``).

    ``sign`` is the sign with which the co-analytic convolution enters the scan.
    """

    analytic: np.ndarray
    coanalytic: np.ndarray
    order: float
    xi: complex
    sign: int


def hadamard(a, w) -> np.ndarray:
    """Coefficientwise (Hadamard) product of two truncated series."""
    a = np.asarray(a)
    w = np.asarray(w)
    if a.shape != w.shape:
        raise ValueError(f"truncation orders differ: {a.shape} vs {w.shape}")
    return a * w


def _check_xi(xi: complex) -> complex:
    xi = complex(xi)
    if abs(abs(xi) - 1.0) > UNIMODULAR_TOL:
        raise ValueError(f"xi must be unimodular, got |xi| = {abs(xi)!r}")
    return xi


def _check_order(order: float, what: str) -> float:
    if not 0.0 <= order < 1.0:
        raise ValueError(f"{what} must lie in [0, 1), got {order!r}")
    return float(order)


def _starlike_params(alpha: float, xi):
    den = 2 - alpha - alpha * xi
    lam = (alpha * xi + alpha + xi - 1) / den
    mu = (2 * xi + alpha + alpha * xi) / den
    return lam, mu


def starlike_kernel(alpha: float, xi: complex, J: int) -> KernelPair:
    """Weights of (z + lam z^2)/(1-z)^2 and (mu z - lam z^2)/(1-z)^2."""
    alpha = _check_order(alpha, "alpha")
    xi = _check_xi(xi)
    if abs(2 - alpha - alpha * xi) < UNIMODULAR_TOL:
        raise ValueError("degenerate kernel: 2 - alpha - alpha*xi vanishes")
    lam, mu = _starlike_params(alpha, xi)
    j = np.arange(1, J + 1)
    return KernelPair(j + lam * (j - 1), mu * j - lam * (j - 1), alpha, xi, -1)


def convex_kernel(beta: float, xi: complex, J: int) -> KernelPair:
    """Weights of (A z + B z^2)/(1-z)^3 and (B z + A z^2)/(1-z)^3."""
    beta = _check_order(beta, "beta")
    xi = _check_xi(xi)
    A = 2 - beta * xi - beta
    B = 2 * xi + beta * xi + beta
    j = np.arange(1, J + 1)
    t = j * (j + 1) / 2
    u = j * (j - 1) / 2
    return KernelPair(A * t + B * u, B * t + A * u, beta, xi, +1)


def _series(coeffs: np.ndarray, z: np.ndarray) -> np.ndarray:
    return npoly.polyval(z, np.concatenate(([0.0], coeffs)))


def scan_value(F: PolyharmonicMap, kernel: KernelPair, z):
    """The convolution expression at ``z`` for one kernel pair."""
    scalar = np.ndim(z) == 0
    zz = as_disk_points(z)
    zb = np.conj(zz)
    r2 = (zz * zb).real
    total = np.zeros_like(zz)
    for k, (a, b) in enumerate(F.layers):
        h = _series(hadamard(a, kernel.analytic), zz)
        g = _series(hadamard(np.conj(b), kernel.coanalytic), zb)
        total = total + r2**k * (h + kernel.sign * g)
    return complex(total) if scalar else total


def starlike_scan_value(F: PolyharmonicMap, alpha: float, xi: complex, z):
    return scan_value(F, starlike_kernel(alpha, xi, F.order), z)


def convex_scan_value(F: PolyharmonicMap, beta: float, xi: complex, z):
    return scan_value(F, convex_kernel(beta, xi, F.order), z)


def _layer_sums(F: PolyharmonicMap, z: np.ndarray, wa: np.ndarray, wb: np.ndarray):
    """sum_k |z|^(2(k-1)) (h_k * wa)(z) and the co-analytic counterpart at zbar."""
    zb = np.conj(z)
    r2 = (z * zb).real
    h = np.zeros_like(z)
    g = np.zeros_like(z)
    for k, (a, b) in enumerate(F.layers):
        h = h + r2**k * _series(hadamard(a, wa), z)
        g = g + r2**k * _series(hadamard(np.conj(b), wb), zb)
    return h, g


def _starlike_values(F, alpha, z, xis):
    # c = j + lam (j - 1), d = mu j - lam (j - 1): two basis kernels suffice
    j = np.arange(1, F.order + 1, dtype=float)
    h1, g1 = _layer_sums(F, z, j, j)
    h2, g2 = _layer_sums(F, z, j - 1, j - 1)
    lam, mu = _starlike_params(alpha, xis[:, None])
    return h1 + lam * h2 - (mu * g1 - lam * g2)


def _convex_values(F, beta, z, xis):
    j = np.arange(1, F.order + 1, dtype=float)
    t = j * (j + 1) / 2
    u = j * (j - 1) / 2
    ht, gt = _layer_sums(F, z, t, t)
    hu, gu = _layer_sums(F, z, u, u)
    xi = xis[:, None]
    A = 2 - beta * xi - beta
    B = 2 * xi + beta * xi + beta
    return A * ht + B * hu + (B * gt + A * gu)


def _scan(F, order, grid, xi_count, threshold, values_fn, implied_fn) -> VerificationReport:
    if not F.normalized:
        raise NotNormalizedError("convolution characterizations apply to H_p^0 maps")
    if xi_count < 8:
        raise ValueError(f"need at least 8 xi samples, got {xi_count}")
    xis = np.exp(2j * np.pi * np.arange(xi_count) / xi_count)
    ends = np.array([1.0, -1.0], dtype=complex)
    shape = (grid.radii.size, grid.n_theta)
    signed = np.empty(shape)
    implied = np.empty(shape)
    for i in range(grid.radii.size):
        z = grid.row(i)
        vals = values_fn(F, order, z, xis)
        modulus = np.min(np.abs(vals), axis=0) / np.abs(z)
        with np.errstate(divide="ignore", invalid="ignore"):
            turns = np.angle(np.roll(vals, -1, axis=0) / vals).sum(axis=0) / (2 * np.pi)
        enclosed = np.rint(np.nan_to_num(turns)) != 0
        signed[i] = np.where(enclosed, -modulus, modulus)
        v1, vm1 = values_fn(F, order, z, ends)
        if np.any(np.abs(vm1) < 1e-300):
            raise SingularPointError("scan value at xi = -1 vanishes", complex(z[np.argmin(np.abs(vm1))]))
        implied[i] = implied_fn(v1 / vm1, order)
    i, t = grid_argmin(implied)
    lowest = float(np.min(signed))
    passed = lowest > threshold
    if passed and lowest < WARNING_BAND:
        warnings.warn(f"convolution scan minimum {lowest:.3g} lies in the warning band", RuntimeWarning)
    return VerificationReport(
        min_value=lowest,
        witness=(float(grid.radii[i]), float(grid.angles[t])),
        passed=passed,
        tolerance=0.0,
        threshold=threshold,
        critical_value=float(implied[i, t]),
        enclosed=int(np.count_nonzero(signed < 0)),
    )


def convolution_scan_starlike(
    F: PolyharmonicMap,
    alpha: float,
    grid: PolarGrid,
    xi_count: int = 64,
    threshold: float = NONZERO_THRESHOLD,
) -> VerificationReport:
    """Sampled non-vanishing test for starlikeness of order ``alpha``.

    ``min_value`` is the smallest ``|scan| / |z|`` over grid and xi samples,
    negated at grid points whose xi-loop encloses a zero. ``critical_value``
    is the order margin ``Re(zF_z - zbar F_zbar)/F - alpha`` recovered from
    the xi = 1 and xi = -1 scan values, and ``witness`` is where it is least.
    """
    alpha = _check_order(alpha, "alpha")
    return _scan(
        F, alpha, grid, xi_count, threshold, _starlike_values,
        lambda ratio, a: (1 - a) * ratio.real,
    )


def convolution_scan_convex(
    F: PolyharmonicMap,
    beta: float,
    grid: PolarGrid,
    xi_count: int = 64,
    threshold: float = NONZERO_THRESHOLD,
) -> VerificationReport:
    """Sampled non-vanishing test for convexity of order ``beta`` (see the starlike scan)."""
    beta = _check_order(beta, "beta")
    return _scan(
        F, beta, grid, xi_count, threshold, _convex_values,
        lambda ratio, b: ratio.real,
    )
