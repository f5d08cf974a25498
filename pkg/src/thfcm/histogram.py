"""Gray-level histograms and their smoothed curves."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .errors import EvenWindow, WindowOutOfRange

LEVELS = 256
MAX_WINDOW = 255


class GrayImage:
    """8-bit single-channel raster stored as a read-only ``(height, width)`` array.

    Parameters
    ----------
    pixels : array_like
        2-D array of integral intensities in ``[0, 255]``.
    """

    __slots__ = ("_pixels",)

    def __init__(self, pixels) -> None:
        arr = np.asarray(pixels)
        if arr.ndim != 2 or arr.shape[0] == 0 or arr.shape[1] == 0:
            raise ValueError(f"expected a non-empty 2-D array, got shape {arr.shape}")
        if arr.dtype != np.uint8:
            if arr.dtype.kind not in "iub":
                if arr.dtype.kind != "f" or not np.all(np.isfinite(arr)) or np.any(arr != np.round(arr)):
                    raise ValueError("pixel values must be integers")
            if arr.size and (arr.min() < 0 or arr.max() > 255):
                raise ValueError("pixel values must lie in [0, 255]")
        arr = np.array(arr, dtype=np.uint8, copy=True)
        arr.flags.writeable = False
        self._pixels = arr

    @classmethod
    def from_sequence(cls, width: int, height: int, pixels: Sequence[int]) -> GrayImage:
        """Build an image from a row-major flat sequence."""
        flat = np.asarray(pixels)
        if width <= 0 or height <= 0:
            raise ValueError("width and height must be positive")
        if flat.size != width * height:
            raise ValueError(f"expected {width * height} pixels, got {flat.size}")
        return cls(flat.reshape(height, width))

    @property
    def pixels(self) -> np.ndarray:
        return self._pixels

    @property
    def width(self) -> int:
        return self._pixels.shape[1]

    @property
    def height(self) -> int:
        return self._pixels.shape[0]

    @property
    def size(self) -> int:
        return self._pixels.size

    def __eq__(self, other) -> bool:
        if not isinstance(other, GrayImage):
            return NotImplemented
        return self._pixels.shape == other._pixels.shape and bool(np.array_equal(self._pixels, other._pixels))

    def __hash__(self) -> int:
        return hash((self._pixels.shape, self._pixels.tobytes()))

    def __repr__(self) -> str:
        return f"GrayImage(width={self.width}, height={self.height})"


@dataclass(frozen=True, eq=False)
class Histogram:
    """Pixel counts per gray level; ``counts[g]`` is the number of pixels equal to ``g``."""

    counts: np.ndarray

    @property
    def total(self) -> int:
        return int(self.counts.sum())


@dataclass(frozen=True, eq=False)
class SmoothedHistogram:
    """Real-valued smoothed counts (the frequency curve that gets clustered).

    ``window`` records the moving-average width that produced ``values``.
    """

    values: np.ndarray
    window: int


def compute_histogram(image: GrayImage) -> Histogram:
    counts = np.bincount(image.pixels.ravel(), minlength=LEVELS).astype(np.int64)
    counts.flags.writeable = False
    return Histogram(counts)


def _check_window(window: int) -> int:
    if isinstance(window, bool) or int(window) != window:
        raise WindowOutOfRange(f"window must be an integer, got {window!r}")
    window = int(window)
    if not 1 <= window <= MAX_WINDOW:
        raise WindowOutOfRange(f"window must lie in [1, {MAX_WINDOW}], got {window}")
    if window % 2 == 0:
        raise EvenWindow(f"window must be odd, got {window}")
    return window


def moving_average(y: np.ndarray, window: int) -> np.ndarray:
    """Centered moving average with half-sample symmetric reflection at both ends.

    Out-of-range index ``-k`` reads ``y[k - 1]`` and ``n - 1 + k`` reads
    ``y[n - k]``. Every input sample then contributes exactly ``window`` times,
    so the total mass of ``y`` is preserved.
    """
    window = _check_window(window)
    y = np.asarray(y, dtype=np.float64)
    if window == 1:
        return y.copy()
    half = window // 2
    if half > y.size:
        raise WindowOutOfRange(f"window {window} is wider than twice the signal length {y.size}")
    padded = np.pad(y, half, mode="symmetric")
    # Sum then divide once so integer-valued windows stay exact.
    return sliding_window_view(padded, window).sum(axis=1) / window


def smooth_histogram(hist: Histogram, window: int = 5) -> SmoothedHistogram:
    values = moving_average(hist.counts.astype(np.float64), window)
    values.flags.writeable = False
    return SmoothedHistogram(values, _check_window(window))
