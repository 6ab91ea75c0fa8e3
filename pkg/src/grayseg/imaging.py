"""Grayscale image I/O, histograms, and rendering of cluster assignments.

Binary PGM (P5) is the canonical on-disk format: it needs no dependencies
and a fixture's exact bytes can be checked with a hex dump.  8-bit
single-channel PNG is supported as a convenience (via Pillow).
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from .errors import (
    CorruptFile,
    EmptyCenters,
    EmptyImage,
    IoFailure,
    UnsupportedFormat,
)

MAX_LEVEL = 255
NUM_LEVELS = 256

_PNG_SIGNATURE = b"\x89PNG\r\n\x1a\n"


@dataclass(frozen=True)
class GrayImage:
    """An 8-bit grayscale image; ``pixels`` is the row-major raster."""

    width: int
    height: int
    pixels: bytes

    def __post_init__(self):
        if self.width <= 0 or self.height <= 0:
            raise ValueError(f"image dimensions must be positive, got {self.width}x{self.height}")
        if len(self.pixels) != self.width * self.height:
            raise ValueError(
                f"raster has {len(self.pixels)} bytes, expected {self.width * self.height}"
            )

    def to_array(self) -> np.ndarray:
        """Pixels as a height x width uint8 array."""
        return np.frombuffer(self.pixels, dtype=np.uint8).reshape(self.height, self.width)

    @classmethod
    def from_array(cls, arr: np.ndarray) -> "GrayImage":
        arr = np.asarray(arr)
        if arr.ndim != 2:
            raise ValueError(f"expected a 2-D array, got shape {arr.shape}")
        if arr.dtype != np.uint8:
            if arr.min() < 0 or arr.max() > MAX_LEVEL:
                raise ValueError("array values outside [0, 255]")
            arr = arr.astype(np.uint8)
        return cls(width=arr.shape[1], height=arr.shape[0], pixels=arr.tobytes())


@dataclass(frozen=True, eq=False)
class Histogram:
    """Dense 256-bin gray-level occurrence counts."""

    counts: np.ndarray
    total: int

    def __post_init__(self):
        if self.counts.shape != (NUM_LEVELS,):
            raise ValueError(f"histogram must have {NUM_LEVELS} bins, got {self.counts.shape}")
        if int(self.counts.sum()) != self.total:
            raise ValueError("histogram counts do not sum to total")

    @property
    def support(self) -> np.ndarray:
        """Gray levels with nonzero count, ascending."""
        return np.flatnonzero(self.counts)

    @property
    def distinct_levels(self) -> int:
        return int(np.count_nonzero(self.counts))


def histogram_from_counts(level_counts: dict[int, int]) -> Histogram:
    """Build a Histogram from a {gray level: count} mapping (test convenience)."""
    counts = np.zeros(NUM_LEVELS, dtype=np.int64)
    for level, count in level_counts.items():
        counts[level] = count
    return Histogram(counts=counts, total=int(counts.sum()))


@dataclass(frozen=True, eq=False)
class LabelMap:
    """Per-pixel cluster indices in [0, k-1], row-major."""

    width: int
    height: int
    labels: np.ndarray
    k: int

    def __post_init__(self):
        if self.labels.shape != (self.width * self.height,):
            raise ValueError("label count does not match image dimensions")
        if self.k >= 1 and self.labels.size and int(self.labels.max()) >= self.k:
            raise ValueError("label exceeds cluster count")

    def to_array(self) -> np.ndarray:
        return self.labels.reshape(self.height, self.width)


def _parse_pgm(data: bytes) -> GrayImage:
    # Header: "P5", then width, height, maxval as ASCII decimal tokens
    # separated by whitespace; '#' starts a comment running to end of line.
    # Exactly one whitespace byte separates maxval from the raster.
    pos = 2  # past magic
    tokens: list[int] = []
    while len(tokens) < 3:
        while pos < len(data) and data[pos : pos + 1].isspace():
            pos += 1
        if pos < len(data) and data[pos] == ord("#"):
            while pos < len(data) and data[pos] not in (ord("\n"), ord("\r")):
                pos += 1
            continue
        start = pos
        while pos < len(data) and data[pos : pos + 1].isdigit():
            pos += 1
        if pos == start:
            raise CorruptFile("malformed PGM header")
        tokens.append(int(data[start:pos]))
    if pos >= len(data) or not data[pos : pos + 1].isspace():
        raise CorruptFile("missing whitespace after PGM maxval")
    pos += 1

    width, height, maxval = tokens
    if maxval != MAX_LEVEL:
        raise UnsupportedFormat(f"only maxval 255 PGM is supported, got {maxval}")
    if width <= 0 or height <= 0:
        raise CorruptFile(f"invalid PGM dimensions {width}x{height}")
    raster = data[pos : pos + width * height]
    if len(raster) < width * height:
        raise CorruptFile(
            f"PGM raster truncated: expected {width * height} bytes, got {len(raster)}"
        )
    return GrayImage(width=width, height=height, pixels=bytes(raster))


def _load_png(path: str) -> GrayImage:
    from PIL import Image

    try:
        with Image.open(path) as im:
            if im.mode != "L":
                raise UnsupportedFormat(f"only 8-bit grayscale PNG is supported, got mode {im.mode!r}")
            arr = np.asarray(im, dtype=np.uint8)
    except UnsupportedFormat:
        raise
    except OSError as exc:
        raise CorruptFile(f"cannot decode PNG {path}: {exc}") from exc
    return GrayImage.from_array(arr)


def load_image(path: str) -> GrayImage:
    """Load a binary PGM (P5) or an 8-bit grayscale PNG."""
    try:
        with open(path, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        raise IoFailure(f"cannot read {path}: {exc}") from exc

    if data[:2] == b"P5":
        return _parse_pgm(data)
    if data[: len(_PNG_SIGNATURE)] == _PNG_SIGNATURE:
        return _load_png(path)
    magic = data[:2]
    raise UnsupportedFormat(f"not a P5 PGM or PNG file (starts with {magic!r})")


def save_image(img: GrayImage, path: str) -> None:
    """Write ``img`` to ``path``; PNG when the suffix is .png, PGM P5 otherwise.

    Round-trip guarantee: ``load_image`` on the written file reproduces
    ``img`` bit-exactly.
    """
    if os.path.splitext(path)[1].lower() == ".png":
        from PIL import Image

        try:
            Image.fromarray(img.to_array(), mode="L").save(path, format="PNG")
        except OSError as exc:
            raise IoFailure(f"cannot write {path}: {exc}") from exc
        return
    header = f"P5\n{img.width} {img.height}\n{MAX_LEVEL}\n".encode("ascii")
    try:
        with open(path, "wb") as fh:
            fh.write(header)
            fh.write(img.pixels)
    except OSError as exc:
        raise IoFailure(f"cannot write {path}: {exc}") from exc


def compute_histogram(img: GrayImage) -> Histogram:
    """Tally per-gray-level pixel counts."""
    values = np.frombuffer(img.pixels, dtype=np.uint8)
    if values.size == 0:
        raise EmptyImage("cannot build a histogram of an empty image")
    counts = np.bincount(values, minlength=NUM_LEVELS).astype(np.int64)
    return Histogram(counts=counts, total=int(values.size))


def nearest_center_labels(centers) -> np.ndarray:
    """Label for each of the 256 gray levels: index of the nearest center.

    Equidistant levels go to the lowest center index.
    """
    cen = np.asarray(centers, dtype=np.float64)
    if cen.size == 0:
        raise EmptyCenters("at least one center is required")
    dist = np.abs(np.arange(NUM_LEVELS, dtype=np.float64)[:, None] - cen[None, :])
    return np.argmin(dist, axis=1)


def render_segmentation(img: GrayImage, centers) -> tuple[LabelMap, GrayImage]:
    """Assign each pixel to its nearest center and paint it with that value."""
    cen = np.asarray(centers)
    if cen.size == 0:
        raise EmptyCenters("at least one center is required")
    if np.any(cen < 0) or np.any(cen > MAX_LEVEL):
        raise ValueError("centers must lie in [0, 255]")
    cen_int = np.asarray(np.rint(cen), dtype=np.int64)
    if not np.allclose(cen, cen_int):
        raise ValueError("rendering requires integer center intensities")

    level_labels = nearest_center_labels(cen_int)
    values = np.frombuffer(img.pixels, dtype=np.uint8)
    labels = level_labels[values]
    rendered = cen_int[labels].astype(np.uint8)
    label_map = LabelMap(width=img.width, height=img.height, labels=labels, k=int(cen_int.size))
    out = GrayImage(width=img.width, height=img.height, pixels=rendered.tobytes())
    return label_map, out
