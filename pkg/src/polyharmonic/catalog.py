"""Coefficient generators for the named extremal and example maps.

All generated maps are normalized (H_p^0). Infinite series carry a
:class:`~polyharmonic.core.TailProfile` describing how fast the discarded
coefficients grow, so evaluations near the unit circle can report their
truncation error.
"""
from __future__ import annotations

import enum

import numpy as np

from .core import DEFAULT_ORDER, PolyharmonicMap, TailProfile


class MapName(str, enum.Enum):
    IDENTITY = "IDENTITY"
    KOEBE_ANALYTIC = "KOEBE_ANALYTIC"
    KOEBE_HARMONIC = "KOEBE_HARMONIC"
    F0 = "F0"
    F1 = "F1"
    F2 = "F2"
    F3 = "F3"
    EXAMPLE1 = "EXAMPLE1"


def koebe_bounds(J: int) -> tuple[np.ndarray, np.ndarray]:
    """Extremal coefficient sizes (2j+1)(j+1)/6 and (2j-1)(j-1)/6 for j = 1..J."""
    j = np.arange(1, J + 1, dtype=float)
    return (2 * j + 1) * (j + 1) / 6, (2 * j - 1) * (j - 1) / 6


# |a_j| + |b_j| of the Koebe-type maps is (4j^2 + 2) / 6
_KOEBE_TAIL = TailProfile((1 / 3, 0.0, 2 / 3))


def make(name: MapName | str, J: int = DEFAULT_ORDER, C: float = 1.0) -> PolyharmonicMap:
    """Generate the coefficients of a named map truncated at order ``J``.

    ``C`` is only used by ``F2`` and ``F3`` (the uniform coefficient bound).
    """
    try:
        name = MapName(str(name.value if isinstance(name, MapName) else name).upper())
    except ValueError:
        known = ", ".join(m.value for m in MapName)
        raise ValueError(f"unknown map {name!r}; known maps: {known}") from None
    if int(J) != J or J < 2:
        raise ValueError(f"truncation order must be an integer >= 2, got {J!r}")
    J = int(J)
    if name in (MapName.F2, MapName.F3) and not C > 0:
        raise ValueError(f"C must be positive, got {C!r}")

    a = np.zeros(J, dtype=complex)
    b = np.zeros(J, dtype=complex)
    a[0] = 1.0
    tail = None
    if name is MapName.IDENTITY:
        pass
    elif name is MapName.KOEBE_ANALYTIC:
        a[:] = np.arange(1, J + 1)
        tail = TailProfile((0.0, 1.0, 0.0))
    elif name is MapName.KOEBE_HARMONIC:
        a[:], b[:] = koebe_bounds(J)
        tail = _KOEBE_TAIL
    elif name in (MapName.F0, MapName.F1):
        # 2z - K_h(z) +/- conj(K_g(z)): the 2z cancels the leading Koebe term
        ka, kb = koebe_bounds(J)
        a[1:] = -ka[1:]
        b[:] = kb if name is MapName.F0 else -kb
        tail = _KOEBE_TAIL
    elif name is MapName.F2:
        a[1:] = -C / 2
        b[1:] = -C / 2
        tail = TailProfile((float(C), 0.0, 0.0))
    elif name is MapName.F3:
        b[1:] = -C
        tail = TailProfile((float(C), 0.0, 0.0))
    elif name is MapName.EXAMPLE1:
        # z - (1/6) conj(z)^2 |z|^2: a single b_{2,2} in the biharmonic layer
        b2 = np.zeros(J, dtype=complex)
        b2[1] = -1 / 6
        return PolyharmonicMap(
            np.vstack([a, np.zeros(J)]), np.vstack([b, b2]), label=name.value
        )
    return PolyharmonicMap(a, b, tail=tail, label=name.value)

