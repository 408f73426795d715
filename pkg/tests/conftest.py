import sys
from pathlib import Path

import numpy as np
import pytest

from anslab.core import Grid2D, RealField2D

sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture
def grid16():
    """Small square 2 pi box, enough modes for band-limited exactness."""
    return Grid2D(16, 16, 2.0 * np.pi, 2.0 * np.pi)


@pytest.fixture
def grid8():
    return Grid2D(8, 8, 2.0 * np.pi, 2.0 * np.pi)


@pytest.fixture
def rng():
    return np.random.default_rng(42)


def smooth_field(grid: Grid2D, rng: np.random.Generator, band: int = 3) -> RealField2D:
    """Random real trigonometric polynomial with modes |m_i| <= band."""
    x1, x2 = grid.meshgrid()
    out = np.zeros(grid.shape)
    for a in range(-band, band + 1):
        for b in range(-band, band + 1):
            if a == 0 and b == 0:
                continue
            c = rng.normal() / (1.0 + a * a + b * b)
            s = rng.normal() / (1.0 + a * a + b * b)
            phase = 2.0 * np.pi * (a * x1 / grid.l1 + b * x2 / grid.l2)
            out = out + c * np.cos(phase) + s * np.sin(phase)
    return RealField2D(grid, out)


@pytest.fixture
def smooth16(grid16, rng):
    return smooth_field(grid16, rng)
