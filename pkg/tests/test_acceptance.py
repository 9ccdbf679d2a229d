"""Acceptance criteria, one test per criterion, each printing a PASS/FAIL line."""
import math
import time
import warnings

import numpy as np
import pytest

from polyharmonic import evaluate, wirtinger
from polyharmonic.catalog import make
from polyharmonic.classes import hc_membership
from polyharmonic.cli import main
from polyharmonic.convolution import convolution_scan_starlike, starlike_scan_value
from polyharmonic.geometry import PolarGrid, convex_quantity, covers_disk, verify_starlike
from polyharmonic.radii import (
    Family,
    RadiusProblem,
    build_radius_polynomial,
    power_sum_closed_forms,
    radius,
    radius_vs_order_table,
    smallest_root,
)

from .conftest import ACCEPTANCE_LINES, random_map
from .oracles import finite_difference

pytestmark = pytest.mark.acceptance


def record(number: int, title: str, ok: bool, detail: str) -> None:
    line = f"criterion {number} {'PASS' if ok else 'FAIL'}: {title} ({detail})"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def _root(family, order=0.0, p=1, C=1.0):
    return radius(RadiusProblem(family, order, p, C)).root


def test_criterion_1_radius_reproduction():
    reference = {
        Family.STARLIKE_KOEBE_BOUND: 0.11290,
        Family.CONVEX_KOEBE_BOUND: 0.06143,
        Family.STARLIKE_UNIFORM_BOUND: 0.29289,
        Family.CONVEX_UNIFORM_BOUND: 0.16488,
    }
    start = time.perf_counter()
    rows = []
    for family in reference:
        poly = build_radius_polynomial(RadiusProblem(family, 0.0, 1, 1.0))
        rows.append((family, smallest_root(poly).root, poly))
    elapsed = time.perf_counter() - start
    ok = elapsed < 1.0
    parts = []
    for family, root, poly in rows:
        ok &= abs(root - reference[family]) <= 1e-4 and abs(poly(root)) <= 1e-9
        parts.append(f"{family.value}={root:.8f}")
    record(1, "radius reproduction", ok, ", ".join(parts) + f", {elapsed:.3f}s")


def test_criterion_2_closed_form_root():
    root = _root(Family.STARLIKE_UNIFORM_BOUND)
    err = abs(root - (1 - 1 / math.sqrt(2)))
    record(2, "bounded-starlike root is 1 - 1/sqrt(2)", err <= 1e-10, f"error {err:.2e}")


def test_criterion_3_sharpness_equality(capsys):
    r3 = _root(Family.CONVEX_UNIFORM_BOUND)
    q = convex_quantity(make("F3", J=512), r3)
    codes = []
    for factor in (1.03, 0.97):
        codes.append(main(["verify", "--builtin", "F3", "--J", "512", "--mode", "convex",
                           "--order", "0", "--r", repr(factor * r3)]))
    capsys.readouterr()
    ok = abs(q) <= 1e-5 and codes == [1, 0]
    record(3, "F3 convexity is sharp at r3", ok,
           f"quantity {q:.2e} at r3, exit {codes[0]} at 1.03 r3, exit {codes[1]} at 0.97 r3")


def test_criterion_4_sharp_map_bracketing():
    r0 = _root(Family.STARLIKE_KOEBE_BOUND)
    F = make("F0", J=512)
    inside = verify_starlike(F, 0.99 * r0, 0.0, PolarGrid.clustered(0.99 * r0, 64, 512))
    outside = verify_starlike(F, 1.05 * r0, 0.0, PolarGrid.clustered(1.05 * r0, 64, 512))
    ok = inside.passed and not outside.passed
    record(4, "F0 starlikeness brackets r0", ok,
           f"min {inside.min_value:.4g} at 0.99 r0, {outside.min_value:.4g} at 1.05 r0")


def test_criterion_5_range_theorem():
    F = make("EXAMPLE1", J=256)
    small = covers_disk(F, r=1 - 1e-6, rho=0.49, n_w=200)
    large = covers_disk(F, r=1 - 1e-6, rho=0.84, n_w=200)
    ok = small.passed and not large.passed
    record(5, "Example-1 image covers |w| <= 0.49 but not |w| <= 0.84", ok,
           f"min winding {small.min_value:g} / {large.min_value:g}")


def _cell_distance(a, b, grid):
    i = abs(int(np.argmin(np.abs(grid.radii - a[0]))) - int(np.argmin(np.abs(grid.radii - b[0]))))
    n = grid.n_theta
    t = abs(round(a[1] / (2 * np.pi) * n) - round(b[1] / (2 * np.pi) * n)) % n
    return max(i, min(t, n - t))


def test_criterion_6_cross_oracle():
    grid = PolarGrid.uniform(0.9, 32, 256)
    ok = True
    parts = []
    for name in ("IDENTITY", "EXAMPLE1", "F0"):
        F = make(name, J=512)
        for alpha in (0.0, 0.3):
            geo = verify_starlike(F, 0.9, alpha, grid)
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", RuntimeWarning)
                conv = convolution_scan_starlike(F, alpha, grid)
            agree = geo.passed == conv.passed and _cell_distance(geo.witness, conv.witness, grid) <= 1
            ok &= agree
            parts.append(f"{name}@{alpha}:{'pass' if geo.passed else 'fail'}{'' if agree else '!'}")
    rng = np.random.default_rng(20261015)
    worst = 0.0
    for _ in range(100):
        F = random_map(rng, p=int(rng.integers(1, 4)), J=int(rng.integers(2, 10)))
        z = complex(rng.uniform(0.01, 0.95) * np.exp(1j * rng.uniform(0, 2 * np.pi)))
        w = wirtinger(F, z)
        worst = max(worst, abs(starlike_scan_value(F, 0.0, 1.0, z) - (z * w.dz - np.conj(z) * w.dzbar)))
    ok &= worst <= 1e-10
    record(6, "geometric and convolution tests agree", ok, ", ".join(parts) + f", reduction error {worst:.1e}")


def test_criterion_7_identity_suites():
    ok = True
    for r in (0.1, 0.5, 0.9):
        for s in power_sum_closed_forms(r, 10_000):
            gap = s.closed_form - s.partial
            ok &= -1e-13 * s.closed_form <= gap <= s.tail_bound + 1e-13 * s.closed_form
    rng = np.random.default_rng(7)
    worst = 0.0
    for _ in range(100):
        F = random_map(rng, p=int(rng.integers(1, 4)), J=int(rng.integers(2, 10)))
        z = complex(rng.uniform(0, 0.9) * np.exp(1j * rng.uniform(0, 2 * np.pi)))
        w = wirtinger(F, z)
        dz, dzb = finite_difference(lambda u: evaluate(F, u), z)
        worst = max(worst, abs(w.dz - dz) / max(1.0, abs(w.dz)), abs(w.dzbar - dzb) / max(1.0, abs(w.dzbar)))
    margin = hc_membership(make("EXAMPLE1")).margin
    ok &= worst <= 1e-6 and abs(margin) <= 1e-12
    record(7, "power sums, finite differences, HC boundary", ok,
           f"max relative derivative error {worst:.1e}, HC margin {margin:.1e}")


def test_criterion_8_monotonicity():
    orders = np.linspace(0.0, 0.9, 10)
    ok = True
    for family in Family:
        for p in (1, 2):
            radii = [r for _, r in radius_vs_order_table(family, p, 1.0, orders)]
            ok &= all(x > y for x, y in zip(radii, radii[1:]))
    record(8, "radii strictly decrease in the order", ok, "4 families x p in {1, 2} x 10 orders")
