"""Gray-level segmentation by fuzzy c-means clustering of smoothed histogram frequencies."""

from .errors import (
    ConfigError,
    DegenerateImage,
    EvenWindow,
    ImageFormatError,
    InsufficientData,
    MalformedData,
    MalformedHeader,
    NonFiniteInput,
    ThfcmError,
    TruncatedData,
    UnsupportedFormat,
    UnsupportedMaxval,
    WindowOutOfRange,
)
from .fcm import FcmConfig, FcmModel, compute_cost, fcm_fit, update_centers, update_memberships
from .histogram import GrayImage, Histogram, SmoothedHistogram, compute_histogram, smooth_histogram
from .io_formats import read_pgm, write_diagnostics_csv, write_histogram_csv, write_histogram_svg, write_pgm
from .segmentation import (
    GrayLevelMap,
    SegmentationConfig,
    SegmentationReport,
    apply_global_threshold,
    build_gray_level_map,
    mean_threshold,
    segment,
    select_discerner_cluster,
)

__version__ = "0.1.0"
