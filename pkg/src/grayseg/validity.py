"""Turi's cluster validity index for choosing the number of clusters.

V = y * intra / inter, where intra is the mean squared pixel-to-center
distance, inter is the smallest squared gap between any two centers, and
y is a Gaussian-in-K weight peaking at K=2.  The peak penalizes the
otherwise-favored two-cluster solutions; lower V is better.  Note the
asymmetry with the genetic metric: both terms here use squared distances,
while the evolution metric sums non-squared distances.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import EmptyHistogram, TooFewClusters
from .imaging import NUM_LEVELS, Histogram, nearest_center_labels


@dataclass(frozen=True)
class ValidityConfig:
    c_param: float = 25.0

    def __post_init__(self):
        if self.c_param < 0:
            raise ValueError("c_param must be non-negative")


@dataclass(frozen=True)
class ValidityReport:
    k: int
    intra: float
    inter: float
    y: float
    v: float


def intra_measure(hist: Histogram, centers) -> float:
    """Mean squared distance from each pixel to its nearest center."""
    if hist.total == 0:
        raise EmptyHistogram("histogram has no pixels")
    cen = np.asarray(centers, dtype=np.float64)
    labels = nearest_center_labels(cen)
    levels = np.arange(NUM_LEVELS, dtype=np.float64)
    sq = (levels - cen[labels]) ** 2
    return float((hist.counts * sq).sum()) / hist.total


def inter_measure(centers) -> float:
    """Minimum squared gap over all center pairs."""
    cen = np.asarray(centers, dtype=np.float64)
    if cen.size < 2:
        raise TooFewClusters("pairwise separation needs at least two centers")
    diff = cen[:, None] - cen[None, :]
    sq = diff * diff
    iu = np.triu_indices(cen.size, k=1)
    return float(sq[iu].min())


def y_factor(k: int, cfg: ValidityConfig) -> float:
    """Gaussian-in-K weight: c * pdf(k; mean 2, sigma 1) + 1."""
    if k < 1:
        raise ValueError("cluster count must be at least 1")
    density = math.exp(-((k - 2) ** 2) / 2.0) / math.sqrt(2.0 * math.pi)
    return cfg.c_param * density + 1.0


def validity_index(hist: Histogram, centers, cfg: ValidityConfig) -> ValidityReport:
    """Combine intra, inter, and the K weight into a single report.

    Coincident centers make the index undefined; the report then carries
    v = +inf so a K-sweep discards the candidate instead of aborting.
    """
    cen = np.asarray(centers, dtype=np.float64)
    if cen.size < 2:
        raise TooFewClusters("validity index needs at least two centers")
    intra = intra_measure(hist, cen)
    inter = inter_measure(cen)
    y = y_factor(int(cen.size), cfg)
    v = y * intra / inter if inter > 0.0 else float("inf")
    return ValidityReport(k=int(cen.size), intra=intra, inter=inter, y=y, v=v)
