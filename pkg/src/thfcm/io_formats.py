"""PGM decoding/encoding and diagnostic exports (CSV table, SVG figure)."""

from __future__ import annotations

import os
import tempfile
from pathlib import Path
from typing import Iterable, Mapping

import numpy as np

from .errors import MalformedData, MalformedHeader, TruncatedData, UnsupportedFormat, UnsupportedMaxval
from .histogram import LEVELS, GrayImage, Histogram, SmoothedHistogram

CSV_HEADER = "gray_level,raw_count,smoothed_value,cluster_label,is_discerner,object_flag"

SVG_WIDTH = 1024
SVG_HEIGHT = 512
SVG_MARGIN = 32
CIRCLE_RADIUS = 4

_WHITESPACE = b" \t\n\r\v\f"


# --------------------------------------------------------------------------
# PGM
# --------------------------------------------------------------------------


def _header_tokens(data: bytes, count: int):
    """Read ``count`` whitespace-separated header tokens after the magic number.

    Returns the tokens and the offset just past the last one.
    """
    tokens = []
    i = 2
    n = len(data)
    while len(tokens) < count:
        while i < n and (data[i] in _WHITESPACE or data[i] == ord("#")):
            if data[i] == ord("#"):
                while i < n and data[i] not in b"\r\n":
                    i += 1
            else:
                i += 1
        if i >= n:
            raise MalformedHeader("header ended before width, height and maxval were read")
        start = i
        while i < n and data[i] not in _WHITESPACE and data[i] != ord("#"):
            i += 1
        tokens.append(data[start:i])
    return tokens, i


def _parse_int(token: bytes, what: str) -> int:
    if not token.isdigit():
        raise MalformedHeader(f"{what} is not a decimal integer: {token!r}")
    return int(token)


def read_pgm(data: bytes) -> GrayImage:
    """Decode a binary (P5) or plain (P2) PGM with maxval <= 255.

    Pixel values are returned as stored; no rescaling to 255 is done for
    smaller maxvals. Bytes after the first image are ignored.
    """
    data = bytes(data)
    if len(data) < 2:
        raise MalformedHeader("file too short for a Netpbm magic number")
    magic = data[:2]
    if magic in (b"P1", b"P3", b"P4", b"P6", b"P7"):
        raise UnsupportedFormat(f"{magic.decode()} is not a grayscale PGM; only P2 and P5 are accepted")
    if magic not in (b"P2", b"P5"):
        raise MalformedHeader(f"unknown magic number {magic!r}")
    if len(data) > 2 and data[2] not in _WHITESPACE and data[2] != ord("#"):
        raise MalformedHeader("magic number must be followed by whitespace")

    (tw, th, tm), end = _header_tokens(data, 3)
    width = _parse_int(tw, "width")
    height = _parse_int(th, "height")
    maxval = _parse_int(tm, "maxval")
    if width == 0 or height == 0:
        raise MalformedHeader(f"image dimensions must be positive, got {width}x{height}")
    if maxval == 0:
        raise MalformedHeader("maxval must be positive")
    if maxval > 255:
        raise UnsupportedMaxval(f"maxval {maxval} exceeds 255")
    npix = width * height

    if magic == b"P5":
        if end >= len(data):
            raise TruncatedData(f"expected {npix} pixel bytes, got 0")
        if data[end] not in _WHITESPACE:
            raise MalformedHeader("maxval must be followed by a single whitespace byte")
        raster = data[end + 1 : end + 1 + npix]
        if len(raster) < npix:
            raise TruncatedData(f"expected {npix} pixel bytes, got {len(raster)}")
        pixels = np.frombuffer(raster, dtype=np.uint8)
    else:
        body = b"\n".join(line.split(b"#", 1)[0] for line in data[end:].splitlines())
        tokens = body.split()
        if len(tokens) < npix:
            raise TruncatedData(f"expected {npix} pixel values, got {len(tokens)}")
        try:
            pixels = np.array([int(t) for t in tokens[:npix]], dtype=np.int64)
        except ValueError as exc:
            raise MalformedData(f"non-integer pixel value in P2 raster: {exc}") from None
        if pixels.min() < 0:
            raise MalformedData("negative pixel value in P2 raster")

    if pixels.max() > maxval:
        raise MalformedData(f"pixel value {int(pixels.max())} exceeds maxval {maxval}")
    return GrayImage(pixels.reshape(height, width))


def write_pgm(image: GrayImage) -> bytes:
    header = f"P5\n{image.width} {image.height}\n255\n".encode("ascii")
    return header + image.pixels.tobytes(order="C")


def load_pgm(path) -> GrayImage:
    return read_pgm(Path(path).read_bytes())


# --------------------------------------------------------------------------
# Diagnostics
# --------------------------------------------------------------------------


def _csv_rows(
    counts: np.ndarray,
    smoothed: np.ndarray,
    labels: Iterable[int],
    discerner: Iterable[int],
    objects: Iterable[int],
) -> str:
    lines = [CSV_HEADER]
    for g, (n, y, lab, d, o) in enumerate(zip(counts, smoothed, labels, discerner, objects)):
        lines.append(f"{g},{int(n)},{float(y):.6f},{int(lab)},{int(d)},{int(o)}")
    return "\n".join(lines) + "\n"


def write_diagnostics_csv(report) -> str:
    """One row per gray level: raw and smoothed counts, cluster, discerner and object flags."""
    labels = report.model.labels
    is_discerner = (labels == report.discerner_index).astype(int)
    return _csv_rows(report.histogram.counts, report.smoothed.values, labels, is_discerner, report.gray_map.table)


def write_histogram_csv(hist: Histogram, smoothed: SmoothedHistogram) -> str:
    """Same table as :func:`write_diagnostics_csv` without clustering.

    Cluster columns carry the ``-1`` sentinel and both flags are 0.
    """
    return _csv_rows(hist.counts, smoothed.values, [-1] * LEVELS, [0] * LEVELS, [0] * LEVELS)


def _fmt(v: float) -> str:
    s = f"{v:.3f}".rstrip("0").rstrip(".")
    return "0" if s == "-0" else s


def curve_coordinates(values: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Canvas coordinates of the smoothed curve; the maximum lands on the top margin."""
    values = np.asarray(values, dtype=np.float64)
    plot_w = SVG_WIDTH - 2 * SVG_MARGIN
    plot_h = SVG_HEIGHT - 2 * SVG_MARGIN
    xs = SVG_MARGIN + np.arange(values.size) * (plot_w / (values.size - 1))
    vmax = float(values.max())
    scaled = values / vmax if vmax > 0 else np.zeros_like(values)
    ys = SVG_MARGIN + (1.0 - scaled) * plot_h
    return xs, ys


def _escape(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def write_histogram_svg(report, meta: Mapping[str, object] | None = None) -> str:
    """Smoothed histogram as a polyline with a circle on every discerner-cluster bin.

    ``meta`` (defaults to the report's config) is recorded in the document's
    ``<desc>`` element.
    """
    xs, ys = curve_coordinates(report.smoothed.values)
    meta = dict(report.config.as_dict() if meta is None else meta)
    desc = " ".join(f"{k}={v}" for k, v in meta.items())
    points = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in zip(xs, ys))
    bottom = SVG_HEIGHT - SVG_MARGIN
    right = SVG_WIDTH - SVG_MARGIN

    out = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        f'<svg version="1.1" xmlns="http://www.w3.org/2000/svg" width="{SVG_WIDTH}" height="{SVG_HEIGHT}" '
        f'viewBox="0 0 {SVG_WIDTH} {SVG_HEIGHT}">',
        "<title>Smoothed histogram with discerner cluster</title>",
        f"<desc>{_escape(desc)}</desc>",
        f'<rect x="0" y="0" width="{SVG_WIDTH}" height="{SVG_HEIGHT}" fill="white"/>',
        f'<g id="axes" stroke="black" stroke-width="1">'
        f'<line x1="{SVG_MARGIN}" y1="{bottom}" x2="{right}" y2="{bottom}"/>'
        f'<line x1="{SVG_MARGIN}" y1="{SVG_MARGIN}" x2="{SVG_MARGIN}" y2="{bottom}"/></g>',
        f'<polyline id="smoothed" fill="none" stroke="steelblue" stroke-width="1.5" points="{points}"/>',
        '<g id="discerner" fill="none" stroke="crimson" stroke-width="1">',
    ]
    for g in np.flatnonzero(report.model.labels == report.discerner_index):
        out.append(f'<circle data-level="{g}" cx="{_fmt(xs[g])}" cy="{_fmt(ys[g])}" r="{CIRCLE_RADIUS}"/>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def format_config_sidecar(values: Mapping[str, object]) -> str:
    return "".join(f"{k}={v}\n" for k, v in values.items())


# --------------------------------------------------------------------------
# Atomic file output
# --------------------------------------------------------------------------


def write_files_atomically(outputs: Mapping[os.PathLike | str, bytes]) -> None:
    """Write every file or none.

    All payloads go to temporary siblings first; only when each has been
    written are they renamed into place.
    """
    staged = []
    try:
        for path, payload in outputs.items():
            path = Path(path)
            fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", suffix=".tmp", dir=path.parent or ".")
            staged.append((tmp, path))
            with os.fdopen(fd, "wb") as fh:
                fh.write(payload)
        for tmp, path in staged:
            os.replace(tmp, path)
    finally:
        for tmp, _ in staged:
            if os.path.exists(tmp):
                os.unlink(tmp)
