import numpy as np
import pytest
from hypothesis import strategies as st

from polyharmonic import PolyharmonicMap
from polyharmonic.catalog import make


@pytest.fixture
def identity():
    return make("IDENTITY", J=8)


@pytest.fixture
def example1():
    return make("EXAMPLE1", J=8)


def random_map(rng: np.random.Generator, p: int, J: int, normalized: bool = True, real: bool = False):
    shape = (p, J)
    a = rng.uniform(-1, 1, shape)
    b = rng.uniform(-1, 1, shape)
    if not real:
        a = a + 1j * rng.uniform(-1, 1, shape)
        b = b + 1j * rng.uniform(-1, 1, shape)
    a[0, 0] = 1.0
    if normalized:
        b[0, 0] = 0.0
        a[1:, 0] = 0.0
        b[1:, 0] = 0.0
    return PolyharmonicMap(a, b)


def scaled_into_hs(F: PolyharmonicMap, fill: float) -> PolyharmonicMap:
    """Shrink the non-leading coefficients of a normalized map so its HS sum is 1 + fill."""
    k = np.arange(1, F.p + 1)[:, None]
    j = np.arange(1, F.order + 1)[None, :]
    w = 2 * (k - 1) + j
    mask = np.ones(F.a.shape, dtype=bool)
    mask[0, 0] = False
    s = float(np.sum((w * (np.abs(F.a) + np.abs(F.b)))[mask]))
    scale = fill / s if s > 0 else 0.0
    a = np.where(mask, F.a * scale, F.a)
    b = np.where(mask, F.b * scale, F.b)
    return PolyharmonicMap(a, b)


@st.composite
def maps(draw, normalized=True, real=False, max_p=3, max_J=6):
    p = draw(st.integers(1, max_p))
    J = draw(st.integers(2, max_J))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_map(np.random.default_rng(seed), p, J, normalized=normalized, real=real)


@st.composite
def disk_points(draw, r_max=0.9, r_min=0.0):
    r = draw(st.floats(r_min, r_max))
    t = draw(st.floats(0, 2 * np.pi))
    return complex(r * np.cos(t), r * np.sin(t))


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
