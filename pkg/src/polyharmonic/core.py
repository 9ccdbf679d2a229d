"""Truncated series representation of polyharmonic maps and exact Wirtinger calculus.

A map is stored as two ``(p, J)`` complex arrays ``a`` and ``b``; row ``k - 1``
holds the coefficients of ``h_k`` and ``g_k`` and column ``j - 1`` the
coefficient of ``z**j``, so

    F(z) = sum_k |z|^(2(k-1)) * sum_j (a[k-1, j-1] z^j + conj(b[k-1, j-1] z^j)).

Everything here is vectorized over arrays of points; scalars go in and come
out as Python ``complex``/``float``.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from numpy.polynomial import polynomial as npoly

from .errors import OutsideDiskError

DEFAULT_ORDER = 64
TAIL_WARN_LEVEL = 1e-8


class TruncationWarning(UserWarning):
    """The coefficient tail beyond the truncation order is not negligible."""


@dataclass(frozen=True)
class TailProfile:
    """Growth bound for the discarded coefficients of an infinite series.

    For every ``j`` beyond the truncation order,
    ``sum_k (|a_{k,j}| + |b_{k,j}|) <= (c0 + c1 j + c2 j^2) * scale**j``.
    """

    poly: tuple[float, float, float]
    scale: float = 1.0

    def bound(self, order: int, rho: float) -> float:
        """Upper bound for ``sum_{j > order} (|a_j| + |b_j|) rho^j``."""
        x = self.scale * rho
        if x >= 1.0:
            return math.inf
        if x <= 0.0:
            return 0.0
        n = order + 1
        s0 = 1.0 / (1.0 - x)
        s1 = x / (1.0 - x) ** 2
        s2 = x * (1.0 + x) / (1.0 - x) ** 3
        c0, c1, c2 = self.poly
        # sum_{i >= 0} (i + n)^m x^i expanded in the three moments above
        total = c0 * s0 + c1 * (s1 + n * s0) + c2 * (s2 + 2 * n * s1 + n * n * s0)
        # x^n underflows gracefully; keep the product finite near x -> 1
        log_head = n * math.log(x)
        if log_head < -745:
            return 0.0
        return math.exp(log_head) * total


@dataclass(frozen=True, eq=False)
class PolyharmonicMap:
    """Truncated polyharmonic map of the unit disk.

    Construction only checks shapes; class membership (``a_{1,1} = 1``,
    normalization) is reported by :attr:`in_class_h` / :attr:`normalized` and
    enforced by the operations that need it, so linear combinations of maps
    stay representable.
    """

    a: np.ndarray
    b: np.ndarray
    tail: TailProfile | None = None
    label: str = ""

    def __post_init__(self):
        a = np.array(self.a, dtype=complex, ndmin=2)
        b = np.array(self.b, dtype=complex, ndmin=2)
        if a.ndim != 2 or a.shape != b.shape:
            raise ValueError(f"coefficient arrays must share a (p, J) shape, got {a.shape} and {b.shape}")
        if a.shape[0] < 1 or a.shape[1] < 1:
            raise ValueError("need p >= 1 and truncation order J >= 1")
        if not (np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
            raise ValueError("coefficients must be finite")
        a.flags.writeable = False
        b.flags.writeable = False
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @classmethod
    def from_layers(
        cls,
        layers: Sequence[tuple[Sequence[complex], Sequence[complex]]],
        tail: TailProfile | None = None,
        label: str = "",
        order: int | None = None,
    ) -> "PolyharmonicMap":
        """Build from ``[(h_1, g_1), ..., (h_p, g_p)]``, zero-padding to a common order."""
        if not layers:
            raise ValueError("at least one layer is required")
        longest = max(max(len(h), len(g)) for h, g in layers)
        J = max(longest, 1) if order is None else order
        if J < longest:
            raise ValueError(f"order {J} shorter than supplied coefficients ({longest})")
        a = np.zeros((len(layers), J), dtype=complex)
        b = np.zeros((len(layers), J), dtype=complex)
        for k, (h, g) in enumerate(layers):
            a[k, : len(h)] = h
            b[k, : len(g)] = g
        return cls(a, b, tail=tail, label=label)

    @property
    def p(self) -> int:
        return self.a.shape[0]

    @property
    def order(self) -> int:
        """Truncation order J."""
        return self.a.shape[1]

    @property
    def layers(self) -> list[tuple[np.ndarray, np.ndarray]]:
        return [(self.a[k], self.b[k]) for k in range(self.p)]

    @property
    def in_class_h(self) -> bool:
        return self.a[0, 0] == 1 and abs(self.b[0, 0]) < 1

    @property
    def normalized(self) -> bool:
        """Membership in H_p^0."""
        return bool(
            self.in_class_h
            and self.b[0, 0] == 0
            and not np.any(self.a[1:, 0])
            and not np.any(self.b[1:, 0])
        )

    def __add__(self, other: "PolyharmonicMap") -> "PolyharmonicMap":
        if not isinstance(other, PolyharmonicMap):
            return NotImplemented
        if self.a.shape != other.a.shape:
            raise ValueError("maps must share p and J to be added")
        if self.tail is None:
            tail = other.tail
        elif other.tail is None:
            tail = self.tail
        elif self.tail.scale == other.tail.scale:
            tail = TailProfile(
                tuple(x + y for x, y in zip(self.tail.poly, other.tail.poly)), self.tail.scale
            )
        else:
            raise ValueError("cannot combine tail profiles with different scales")
        return PolyharmonicMap(self.a + other.a, self.b + other.b, tail=tail)


@dataclass(frozen=True)
class WirtingerBundle:
    """F and its Wirtinger derivatives up to second order at one or more points."""

    value: complex | np.ndarray
    dz: complex | np.ndarray
    dzbar: complex | np.ndarray
    dz2: complex | np.ndarray
    dzdzbar: complex | np.ndarray
    dzbar2: complex | np.ndarray


def as_disk_points(z) -> np.ndarray:
    """Coerce to a complex array and reject points outside the open unit disk."""
    arr = np.asarray(z, dtype=complex)
    if not np.all(np.isfinite(arr)):
        raise OutsideDiskError("points must be finite")
    if arr.size and np.max(np.abs(arr)) >= 1.0:
        raise OutsideDiskError(f"|z| must be < 1, got max |z| = {np.max(np.abs(arr))!r}")
    return arr


def _unwrap(arr: np.ndarray, scalar: bool):
    return complex(arr) if scalar else arr


def tail_bound(F: PolyharmonicMap, r: float) -> float:
    """Bound on the truncation error of ``F`` anywhere on ``|z| <= r`` (0 for finite maps)."""
    if F.tail is None:
        return 0.0
    return F.tail.bound(F.order, r)


def _warn_tail(F: PolyharmonicMap, z: np.ndarray) -> None:
    if F.tail is None or z.size == 0:
        return
    r = float(np.max(np.abs(z)))
    bound = tail_bound(F, r)
    if bound > TAIL_WARN_LEVEL:
        warnings.warn(
            f"truncation tail bound {bound:.3g} at |z| = {r:.6g} (J = {F.order})",
            TruncationWarning,
            stacklevel=3,
        )


def _series(coeffs: np.ndarray, z: np.ndarray, derivs: int):
    """Values of sum_j c_j z^j and its first ``derivs`` z-derivatives."""
    c = np.concatenate(([0.0], coeffs))
    out = [npoly.polyval(z, c)]
    for _ in range(derivs):
        c = npoly.polyder(c) if c.size > 1 else np.zeros(1, dtype=complex)
        out.append(npoly.polyval(z, c))
    return out


def evaluate(F: PolyharmonicMap, z):
    """F(z) summed to the truncation order."""
    scalar = np.ndim(z) == 0
    zz = as_disk_points(z)
    _warn_tail(F, zz)
    zb = np.conj(zz)
    r2 = (zz * zb).real
    total = np.zeros_like(zz)
    for k, (a, b) in enumerate(F.layers):
        if not (np.any(a) or np.any(b)):
            continue
        (h,) = _series(a, zz, 0)
        (g,) = _series(b, zz, 0)
        total = total + r2**k * (h + np.conj(g))
    return _unwrap(total, scalar)


def wirtinger(F: PolyharmonicMap, z) -> WirtingerBundle:
    """Exact Wirtinger derivatives of the truncated series.

    Each layer is ``P * (h + conj(g))`` with ``P = z^m zbar^m``, ``m = k - 1``;
    the product rule on the monomial ``P`` gives all six quantities without
    any differencing.
    """
    scalar = np.ndim(z) == 0
    zz = as_disk_points(z)
    _warn_tail(F, zz)
    zb = np.conj(zz)
    r2 = (zz * zb).real
    zero = np.zeros_like(zz)
    acc = [zero.copy() for _ in range(6)]
    for k, (a, b) in enumerate(F.layers):
        if not (np.any(a) or np.any(b)):
            continue
        m = k
        h, h1, h2 = _series(a, zz, 2)
        g, g1, g2 = _series(b, zz, 2)
        G, G1, G2 = np.conj(g), np.conj(g1), np.conj(g2)
        u = h + G
        P = r2**m
        if m >= 1:
            Pz = m * r2 ** (m - 1) * zb
            Pzb = m * r2 ** (m - 1) * zz
            Pzzb = m * m * r2 ** (m - 1)
        else:
            Pz = Pzb = Pzzb = zero
        if m >= 2:
            Pzz = m * (m - 1) * r2 ** (m - 2) * zb * zb
            Pzbzb = m * (m - 1) * r2 ** (m - 2) * zz * zz
        else:
            Pzz = Pzbzb = zero
        acc[0] = acc[0] + P * u
        acc[1] = acc[1] + Pz * u + P * h1
        acc[2] = acc[2] + Pzb * u + P * G1
        acc[3] = acc[3] + Pzz * u + 2 * Pz * h1 + P * h2
        acc[4] = acc[4] + Pzzb * u + Pz * G1 + Pzb * h1
        acc[5] = acc[5] + Pzbzb * u + 2 * Pzb * G1 + P * G2
    return WirtingerBundle(*(_unwrap(x, scalar) for x in acc))


def jacobian(F: PolyharmonicMap, z):
    """|F_z|^2 - |F_zbar|^2."""
    w = wirtinger(F, z)
    jac = np.abs(w.dz) ** 2 - np.abs(w.dzbar) ** 2
    return float(jac) if np.ndim(jac) == 0 else jac


def dilate(F: PolyharmonicMap, r: float) -> PolyharmonicMap:
    """Coefficients of ``F_r(z) = F(rz) / r``: a_{k,j} r^(2k+j-3), same for b."""
    if not 0.0 < r <= 1.0:
        raise ValueError(f"dilation radius must lie in (0, 1], got {r!r}")
    k = np.arange(F.p)[:, None]
    j = np.arange(1, F.order + 1)[None, :]
    w = float(r) ** (2 * k + j - 1)
    tail = None
    if F.tail is not None:
        tail = TailProfile(tuple(c / r for c in F.tail.poly), F.tail.scale * r)
    return PolyharmonicMap(F.a * w, F.b * w, tail=tail, label=F.label)


def rotate(F: PolyharmonicMap, phi: float) -> PolyharmonicMap:
    """Coefficients of ``G(z) = exp(-i phi) F(exp(i phi) z)``."""
    j = np.arange(1, F.order + 1)
    a = F.a * np.exp(1j * (j - 1) * phi)
    b = F.b * np.exp(1j * (j + 1) * phi)
    return PolyharmonicMap(a, b, tail=F.tail, label=F.label)
