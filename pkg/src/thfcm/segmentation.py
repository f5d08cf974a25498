"""Histogram-frequency FCM segmentation and the single-threshold baseline.

The pipeline clusters the 256 smoothed histogram frequencies (not the pixel
intensities). The cluster holding the highest frequency is the *discerner*
cluster; every gray level whose frequency fell in it is object (1), all other
levels are background (0). Pixels inherit the class of their gray level.

Note the polarity: the discerner cluster collects the most populous
intensity band, which in natural images is frequently the background. The
rule is applied as stated regardless.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .errors import ConfigError, DegenerateImage
from .fcm import FcmConfig, FcmModel, InitPolicy, fcm_fit
from .histogram import (
    LEVELS,
    GrayImage,
    Histogram,
    SmoothedHistogram,
    _check_window,
    compute_histogram,
    smooth_histogram,
)

OBJECT = 255
BACKGROUND = 0


@dataclass(frozen=True)
class SegmentationConfig:
    cluster_count: int = 3
    fuzzifier: float = 2.0
    tolerance: float = 1e-6
    max_iterations: int = 300
    smoothing_window: int = 5
    init: InitPolicy = "quantile"
    seed: int = 0

    def __post_init__(self) -> None:
        _check_window(self.smoothing_window)
        fcm = self.fcm_config()
        if fcm.cluster_count > LEVELS:
            raise ConfigError(f"cluster_count must be <= {LEVELS}, got {fcm.cluster_count}")

    def fcm_config(self) -> FcmConfig:
        return FcmConfig(
            cluster_count=self.cluster_count,
            fuzzifier=self.fuzzifier,
            tolerance=self.tolerance,
            max_iterations=self.max_iterations,
            init=self.init,
            seed=self.seed,
        )

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True, eq=False)
class GrayLevelMap:
    """Lookup table, ``table[g] == 1`` iff gray level ``g`` is object."""

    table: np.ndarray

    def apply(self, image: GrayImage) -> GrayImage:
        lut = np.where(self.table == 1, OBJECT, BACKGROUND).astype(np.uint8)
        return GrayImage(lut[image.pixels])

    @property
    def object_levels(self) -> np.ndarray:
        return np.flatnonzero(self.table)


@dataclass(frozen=True, eq=False)
class SegmentationReport:
    histogram: Histogram
    smoothed: SmoothedHistogram
    model: FcmModel
    discerner_index: int
    gray_map: GrayLevelMap
    mask: GrayImage
    config: SegmentationConfig

    @property
    def peak_level(self) -> int:
        return peak_gray_level(self.smoothed)


def peak_gray_level(smoothed: SmoothedHistogram) -> int:
    # np.argmax returns the first maximum, i.e. the lowest gray level on ties.
    return int(np.argmax(smoothed.values))


def select_discerner_cluster(model: FcmModel, smoothed: SmoothedHistogram) -> int:
    """Label of the cluster that holds the highest smoothed frequency."""
    if model.labels.shape[0] != smoothed.values.shape[0]:
        raise ValueError("model was not fit on this smoothed histogram")
    return int(model.labels[peak_gray_level(smoothed)])


def build_gray_level_map(model: FcmModel, discerner: int) -> GrayLevelMap:
    if model.labels.shape[0] != LEVELS:
        raise ValueError(f"model must carry {LEVELS} labels, got {model.labels.shape[0]}")
    table = (model.labels == discerner).astype(np.uint8)
    table.flags.writeable = False
    return GrayLevelMap(table)


def segment(image: GrayImage, config: SegmentationConfig | None = None) -> SegmentationReport:
    """Run the full histogram-FCM segmentation on ``image``.

    Raises
    ------
    DegenerateImage
        If every pixel has the same gray value.
    """
    config = config or SegmentationConfig()
    hist = compute_histogram(image)
    if np.count_nonzero(hist.counts) < 2:
        raise DegenerateImage("image has a single gray value; nothing to separate")
    smoothed = smooth_histogram(hist, config.smoothing_window)
    model = fcm_fit(smoothed.values, config.fcm_config())
    discerner = select_discerner_cluster(model, smoothed)
    gray_map = build_gray_level_map(model, discerner)
    return SegmentationReport(
        histogram=hist,
        smoothed=smoothed,
        model=model,
        discerner_index=discerner,
        gray_map=gray_map,
        mask=gray_map.apply(image),
        config=config,
    )


def apply_global_threshold(image: GrayImage, threshold: int) -> GrayImage:
    """White (255) where the pixel is strictly above ``threshold``, black otherwise."""
    if isinstance(threshold, bool) or int(threshold) != threshold or not 0 <= threshold <= 255:
        raise ValueError(f"threshold must be an integer in [0, 255], got {threshold!r}")
    return GrayImage(np.where(image.pixels > int(threshold), OBJECT, BACKGROUND).astype(np.uint8))


def mean_threshold(image: GrayImage) -> int:
    # Integer arithmetic: floor(sum / N) exactly.
    return int(image.pixels.sum(dtype=np.int64)) // image.size
