"""Coefficient-sum membership tests for HS_p^0, HC_p^0 and the order-alpha/beta conditions.

Each test is a weighted l1 sum of coefficient moduli compared with a budget.
The margin ``budget - sum`` is non-negative exactly for members; a slack of
``MEMBERSHIP_TOL`` absorbs rounding for maps sitting on the boundary.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .core import PolyharmonicMap
from .errors import NotNormalizedError

MEMBERSHIP_TOL = 1e-12
ORDER_TOL = 1e-10
# supremum of an open interval [0, 1) reported one bisection width below 1
ORDER_CAP = 1.0 - ORDER_TOL


@dataclass(frozen=True)
class MembershipReport:
    sum_value: float
    budget: float
    margin: float
    breakdown: tuple[tuple[int, int, float], ...] = field(repr=False)
    order: int = 0

    @property
    def member(self) -> bool:
        return self.margin >= -MEMBERSHIP_TOL


def _require_normalized(F: PolyharmonicMap) -> None:
    if not F.normalized:
        raise NotNormalizedError(
            "map is not in H_p^0: need a_{1,1} = 1, b_{1,1} = 0 and a_{k,1} = b_{k,1} = 0 for k >= 2"
        )


def _report(F: PolyharmonicMap, wa: np.ndarray, wb: np.ndarray, budget: float, j_start: int):
    contrib = wa * np.abs(F.a) + wb * np.abs(F.b)
    contrib[:, : j_start - 1] = 0.0
    ks, js = np.nonzero(contrib)
    breakdown = tuple((int(k) + 1, int(j) + 1, float(contrib[k, j])) for k, j in zip(ks, js))
    total = math.fsum(c for _, _, c in breakdown)
    return MembershipReport(total, budget, budget - total, breakdown, F.order)


def _grid(F: PolyharmonicMap) -> tuple[np.ndarray, np.ndarray]:
    k = np.arange(1, F.p + 1, dtype=float)[:, None]
    j = np.arange(1, F.order + 1, dtype=float)[None, :]
    return k, j


def hs_membership(F: PolyharmonicMap) -> MembershipReport:
    """sum_{k,j} (2(k-1) + j)(|a_{k,j}| + |b_{k,j}|) against the budget 2."""
    _require_normalized(F)
    k, j = _grid(F)
    w = np.broadcast_to(2 * (k - 1) + j, F.a.shape)
    return _report(F, w, w, 2.0, 1)


def hc_membership(F: PolyharmonicMap) -> MembershipReport:
    """sum_{k,j} (2(k-1) + j^2)(|a_{k,j}| + |b_{k,j}|) against the budget 2."""
    _require_normalized(F)
    k, j = _grid(F)
    w = np.broadcast_to(2 * (k - 1) + j**2, F.a.shape)
    return _report(F, w, w, 2.0, 1)


def _check_order(value: float, what: str) -> float:
    if not 0.0 <= value < 1.0:
        raise ValueError(f"{what} must lie in [0, 1), got {value!r}")
    return float(value)


def starlike_order_margin(F: PolyharmonicMap, alpha: float) -> MembershipReport:
    """Sufficient condition for starlikeness of order ``alpha`` (budget 1, j >= 2).

    Weights are (2(k-1) + j - alpha)/(1 - alpha) on |a_{k,j}| and
    (2(k-1) + j + alpha)/(1 - alpha) on |b_{k,j}|.
    """
    alpha = _check_order(alpha, "alpha")
    _require_normalized(F)
    k, j = _grid(F)
    base = 2 * (k - 1) + j
    wa = np.broadcast_to((base - alpha) / (1 - alpha), F.a.shape)
    wb = np.broadcast_to((base + alpha) / (1 - alpha), F.a.shape)
    return _report(F, wa, wb, 1.0, 2)


def convex_order_margin(F: PolyharmonicMap, beta: float) -> MembershipReport:
    """Sufficient condition for convexity of order ``beta`` (budget 1, j >= 2).

    Weights are (2(k-1) + j(j - beta))/(1 - beta) on |a_{k,j}| and
    (2(k-1) + j(j + beta))/(1 - beta) on |b_{k,j}|. The order enters
    multiplied by j; with a bare +/- beta the condition is not sufficient
    (F3 violates it just inside its convexity radius) and no longer matches the
    convexity radius polynomials.
    """
    beta = _check_order(beta, "beta")
    _require_normalized(F)
    k, j = _grid(F)
    base = 2 * (k - 1) + j**2
    wa = np.broadcast_to((base - beta * j) / (1 - beta), F.a.shape)
    wb = np.broadcast_to((base + beta * j) / (1 - beta), F.a.shape)
    return _report(F, wa, wb, 1.0, 2)


def _max_order(margin: Callable[[float], MembershipReport]) -> float | None:
    if not margin(0.0).member:
        return None
    if margin(ORDER_CAP).member:
        return ORDER_CAP
    lo, hi = 0.0, ORDER_CAP
    while hi - lo > ORDER_TOL:
        mid = 0.5 * (lo + hi)
        if margin(mid).member:
            lo = mid
        else:
            hi = mid
    return lo


def max_starlike_order(F: PolyharmonicMap) -> float | None:
    """Largest alpha whose starlike condition holds, or ``None`` if it fails at 0."""
    return _max_order(lambda a: starlike_order_margin(F, a))


def max_convex_order(F: PolyharmonicMap) -> float | None:
    """Largest beta whose convexity condition holds, or ``None`` if it fails at 0."""
    return _max_order(lambda b: convex_order_margin(F, b))
