"""Radius polynomials for starlikeness/convexity under coefficient bounds, and their roots.

Two coefficient hypotheses are covered: the Koebe-type bounds
|a_{k,j}| <= (2j+1)(j+1)/6, |b_{k,j}| <= (2j-1)(j-1)/6, and the uniform bound
|a_{k,j}| + |b_{k,j}| <= C (j >= 2). For each, a polynomial s(r) with
s(0) > 0 > s(1) is built; its smallest root in (0, 1) is the radius.

Polynomials are expanded over the rationals (orders and C enter as the exact
binary value of the given float) and root brackets are certified by exact
sign evaluation at the bracket ends.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np
from numpy.polynomial import polynomial as npoly

from .errors import NoSignChangeError, TangencyError

SCAN_STEP = 1e-3
BRACKET_WIDTH = 1e-12


class Family(str, enum.Enum):
    STARLIKE_KOEBE_BOUND = "starlike-koebe"
    CONVEX_KOEBE_BOUND = "convex-koebe"
    STARLIKE_UNIFORM_BOUND = "starlike-bounded"
    CONVEX_UNIFORM_BOUND = "convex-bounded"

    @property
    def uses_c(self) -> bool:
        return self in (Family.STARLIKE_UNIFORM_BOUND, Family.CONVEX_UNIFORM_BOUND)

    @classmethod
    def parse(cls, value: "Family | str") -> "Family":
        if isinstance(value, Family):
            return value
        text = str(value).strip()
        for fam in cls:
            if text in (fam.value, fam.name):
                return fam
        raise ValueError(f"unknown family {value!r}; choose from {', '.join(f.value for f in cls)}")


@dataclass(frozen=True)
class RadiusProblem:
    family: Family
    order: float
    p: int = 1
    C: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "family", Family.parse(self.family))
        if not 0.0 <= self.order < 1.0:
            raise ValueError(f"order must lie in [0, 1), got {self.order!r}")
        if int(self.p) != self.p or self.p < 1:
            raise ValueError(f"p must be a positive integer, got {self.p!r}")
        if self.family.uses_c and not (self.C > 0 and math.isfinite(self.C)):
            raise ValueError(f"C must be a positive real, got {self.C!r}")


@dataclass(frozen=True)
class RealPolynomial:
    """Polynomial with exact rational coefficients on r^0 .. r^d."""

    exact: tuple[Fraction, ...]

    @property
    def coefficients(self) -> np.ndarray:
        return np.array([float(c) for c in self.exact])

    @property
    def degree(self) -> int:
        return len(self.exact) - 1

    def __call__(self, r):
        return npoly.polyval(r, self.coefficients)

    def sign(self, r: float) -> int:
        """Exact sign at the binary value of ``r``."""
        x = Fraction(r)
        acc = Fraction(0)
        for c in reversed(self.exact):
            acc = acc * x + c
        return (acc > 0) - (acc < 0)


@dataclass(frozen=True)
class RootBracket:
    """Smallest root in (0, 1) with ``poly(lo) > 0 > poly(hi)``."""

    root: float
    lo: float
    hi: float


def _poly(*coeffs) -> np.ndarray:
    return np.array([Fraction(c) for c in coeffs], dtype=object)


def _trim(c: np.ndarray) -> tuple[Fraction, ...]:
    out = [Fraction(x) for x in c]
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return tuple(out)


def _pow(c: np.ndarray, n: int) -> np.ndarray:
    out = _poly(1)
    for _ in range(n):
        out = npoly.polymul(out, c)
    return out


def _shift(c: np.ndarray, n: int) -> np.ndarray:
    """Multiply by r^n."""
    return np.concatenate([np.array([Fraction(0)] * n, dtype=object), c])


def build_radius_polynomial(prob: RadiusProblem) -> RealPolynomial:
    """Expand the radius equation of ``prob`` into monomial coefficients."""
    a = Fraction(prob.order)
    C = Fraction(prob.C)
    r = _poly(0, 1)
    one_minus = _poly(1, -1)
    one_plus = _poly(1, 1)
    fam = prob.family
    if fam is Family.STARLIKE_KOEBE_BOUND:
        total = (6 * (1 - a)) * _pow(one_minus, 4)
        for k in range(1, prob.p + 1):
            inner = npoly.polyadd(
                npoly.polysub(3 * _pow(one_plus, 2), (3 * a) * _pow(one_minus, 2)),
                (2 * (k - 1)) * npoly.polymul(npoly.polyadd(npoly.polymul(r, r), _poly(3)), one_minus),
            )
            total = npoly.polysub(total, _shift(inner, 2 * (k - 1)))
    elif fam is Family.CONVEX_KOEBE_BOUND:
        total = (6 * (1 - a)) * _pow(one_minus, 5)
        quad = _poly(1, 10, 1)
        for k in range(1, prob.p + 1):
            inner = (8 * k - 6 - 6 * a) * npoly.polymul(one_plus, _pow(one_minus, 2))
            inner = npoly.polyadd(inner, (4 * (k - 1)) * _pow(one_minus, 4))
            inner = npoly.polyadd(inner, 4 * npoly.polymul(one_plus, quad))
            inner = npoly.polysub(inner, (6 * (2 * k - 1 - a)) * _pow(one_minus, 5))
            total = npoly.polysub(total, _shift(inner, 2 * (k - 1)))
    elif fam is Family.STARLIKE_UNIFORM_BOUND:
        total = (1 - a) * _pow(one_minus, 2)
        for k in range(1, prob.p + 1):
            inner = npoly.polyadd((2 * k - 2 + a) * one_minus, _poly(1))
            inner = npoly.polysub(inner, (2 * k + a - 1) * _pow(one_minus, 2))
            total = npoly.polysub(total, _shift(C * inner, 2 * (k - 1)))
    else:
        total = (1 - a) * _pow(one_minus, 3)
        for k in range(1, prob.p + 1):
            inner = npoly.polyadd((2 * k - 2) * _pow(one_minus, 2), _poly(1 + a, 1 - a))
            inner = npoly.polysub(inner, (2 * k + a - 1) * _pow(one_minus, 3))
            total = npoly.polysub(total, _shift(C * inner, 2 * k - 2))
    poly = RealPolynomial(_trim(total))
    assert poly.degree <= 2 * prob.p + 5
    return poly


def smallest_root(poly: RealPolynomial, step: float = SCAN_STEP, width: float = BRACKET_WIDTH) -> RootBracket:
    """First sign change of ``poly`` on (0, 1), refined by bisection to ``width``."""
    if poly.sign(0.0) <= 0 or poly.sign(1.0) >= 0:
        raise NoSignChangeError("need poly(0) > 0 > poly(1)")
    n = int(math.ceil(1.0 / step))
    grid = np.minimum(np.arange(n + 1) * step, 1.0)
    values = poly(grid)
    lo = 0.0
    hi = None
    for x, v in zip(grid[1:], values[1:]):
        s = poly.sign(float(x)) if abs(v) < 1e-9 else (1 if v > 0 else -1)
        if s < 0:
            hi = float(x)
            break
        if s == 0:
            nxt = poly.sign(min(float(x) + step / 2, 1.0))
            if nxt > 0:
                raise TangencyError(f"polynomial touches zero at r = {x!r} without changing sign")
            hi = min(float(x) + step / 2, 1.0)
            break
        lo = float(x)
    if hi is None:
        raise NoSignChangeError("no sign change located on (0, 1)")
    while hi - lo > width:
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        s = poly.sign(mid)
        if s > 0:
            lo = mid
        elif s < 0:
            hi = mid
        else:
            delta = width / 4
            if poly.sign(mid - delta) > 0 and poly.sign(mid + delta) < 0:
                lo, hi = mid - delta, mid + delta
                break
            raise TangencyError(f"repeated root at r = {mid!r}")
    return RootBracket(0.5 * (lo + hi), lo, hi)


def radius(prob: RadiusProblem) -> RootBracket:
    return smallest_root(build_radius_polynomial(prob))


def radius_vs_order_table(
    family: Family | str, p: int, C: float, orders: Sequence[float]
) -> list[tuple[float, float]]:
    """(order, radius) rows; orders must be strictly increasing in [0, 1)."""
    orders = [float(o) for o in orders]
    if any(b <= a for a, b in zip(orders, orders[1:])):
        raise ValueError("orders must be strictly increasing")
    return [(o, radius(RadiusProblem(family, o, p, C)).root) for o in orders]


@dataclass(frozen=True)
class PowerSum:
    """Partial sum of j^m r^(j-1) for j <= J against its closed-form limit."""

    m: int
    partial: float
    closed_form: float
    tail_bound: float


def power_sum_closed_forms(r: float, J: int) -> list[PowerSum]:
    """Partial sums for m = 0..4 with closed forms and a geometric bound on the remainder."""
    if not 0.0 < r < 1.0:
        raise ValueError(f"r must lie in (0, 1), got {r!r}")
    if J < 1:
        raise ValueError("J must be positive")
    closed = [
        1 / (1 - r),
        1 / (1 - r) ** 2,
        (1 + r) / (1 - r) ** 3,
        (1 + 4 * r + r * r) / (1 - r) ** 4,
        (1 + r) * (1 + 10 * r + r * r) / (1 - r) ** 5,
    ]
    j = np.arange(1, J + 1, dtype=float)
    geometric = r ** (j - 1)
    out = []
    for m, target in enumerate(closed):
        partial = math.fsum(j**m * geometric)
        # terms beyond J shrink at least by this ratio each step
        ratio = ((J + 2) / (J + 1)) ** m * r
        first = (J + 1) ** m * r**J
        tail = first / (1 - ratio) if ratio < 1 else math.inf
        out.append(PowerSum(m, partial, target, tail))
    return out

