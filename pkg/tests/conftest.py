import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from thfcm.histogram import GrayImage  # noqa: E402


def two_value_pixels(size=512, low=60, high=190):
    a = np.full((size, size), low, dtype=np.uint8)
    a[:, size // 2 :] = high
    return a


def jittered_two_population(size=512, seed=0, jitter=5):
    """Left half around 60, right half around 190, uniform integer jitter."""
    rng = np.random.default_rng(seed)
    base = two_value_pixels(size).astype(np.int64)
    return (base + rng.integers(-jitter, jitter + 1, base.shape)).astype(np.uint8)


def gaussian_bimodal_pixels(size=256, seed=0, low=(60, 10.0, 1.0), high=(190, 12.0, 1.8)):
    """Image whose histogram is two Gaussian bumps; the ``high`` one is taller.

    Each tuple is (mean, std, relative height).
    """
    g = np.arange(256)
    shape = sum(h * np.exp(-0.5 * ((g - mu) / sd) ** 2) for mu, sd, h in (low, high))
    counts = np.floor(shape / shape.sum() * size * size).astype(np.int64)
    counts[int(np.argmax(counts))] += size * size - counts.sum()
    pixels = np.repeat(g, counts).astype(np.uint8)
    np.random.default_rng(seed).shuffle(pixels)
    return pixels.reshape(size, size)


@pytest.fixture
def two_value_image():
    return GrayImage(two_value_pixels())


@pytest.fixture
def jittered_image():
    return GrayImage(jittered_two_population())


@pytest.fixture
def bimodal_image():
    return GrayImage(gaussian_bimodal_pixels())


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
