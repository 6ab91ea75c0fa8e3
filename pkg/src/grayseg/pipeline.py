"""End-to-end segmentation: per-K hybrid runs, K-sweep selection, baselines.

A hybrid run clusters the gray-level histogram with the fuzzy network,
seeds the genetic population from the resulting centers, evolves it, and
scores the best chromosome with the validity index.  The sweep repeats
this for K = 2..k_max and keeps the K with the smallest index value.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateImage, InvalidK, IoFailure, TooManyClasses
from .fhnn import FhnnConfig, FhnnResult, defuzzify, fhnn_cluster
from .ga import EvolutionResult, GaConfig, clustering_metric, evolve, round_half_up
from .imaging import (
    MAX_LEVEL,
    GrayImage,
    Histogram,
    LabelMap,
    compute_histogram,
    render_segmentation,
)
from .validity import ValidityConfig, ValidityReport, validity_index

K_MIN = 2

# Odd salts keep per-K seed streams disjoint: adding K values to a sweep
# never perturbs the existing per-K results.
_K_SALT = 0x9E3779B97F4A7C15
_GA_SALT = 0xD1B54A32D192ED03
_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class SweepConfig:
    k_max: int = 10
    fhnn: FhnnConfig = dataclasses.field(default_factory=FhnnConfig)
    ga: GaConfig = dataclasses.field(default_factory=GaConfig)
    validity: ValidityConfig = dataclasses.field(default_factory=ValidityConfig)
    master_seed: int = 0

    def __post_init__(self):
        if self.k_max < K_MIN:
            raise ValueError(f"k_max must be at least {K_MIN}")


@dataclass(frozen=True, eq=False)
class SegmentationResult:
    k: int
    centers: tuple[int, ...]
    label_map: LabelMap
    rendered: GrayImage
    validity: ValidityReport
    ga_result: EvolutionResult | None
    fhnn_result: FhnnResult


@dataclass(frozen=True)
class SweepEntry:
    report: ValidityReport
    best_metric: float


SweepRecord = list[SweepEntry]


@dataclass(frozen=True)
class KmeansResult:
    centers: tuple[int, ...]
    metric: float


def derive_seeds(master_seed: int, k: int) -> tuple[int, int]:
    """Deterministic (fhnn_seed, ga_seed) pair for one K of a sweep."""
    fhnn_seed = (master_seed ^ (k * _K_SALT)) & _MASK64
    ga_seed = (fhnn_seed ^ _GA_SALT) & _MASK64
    return fhnn_seed, ga_seed


def _configs_for_k(cfg: SweepConfig, k: int) -> tuple[FhnnConfig, GaConfig]:
    fhnn_seed, ga_seed = derive_seeds(cfg.master_seed, k)
    return (
        dataclasses.replace(cfg.fhnn, seed=fhnn_seed),
        dataclasses.replace(cfg.ga, seed=ga_seed),
    )


def segment_k(img: GrayImage, k: int, cfg: SweepConfig) -> SegmentationResult:
    """Hybrid segmentation at a fixed cluster count."""
    if k < K_MIN:
        raise InvalidK(f"cluster count must be at least {K_MIN}, got {k}")
    hist = compute_histogram(img)
    if k > hist.distinct_levels:
        raise TooManyClasses(
            f"{k} clusters requested but image has {hist.distinct_levels} distinct gray levels"
        )
    fhnn_cfg, ga_cfg = _configs_for_k(cfg, k)
    fhnn_res = fhnn_cluster(hist, k, fhnn_cfg)
    ga_res = evolve(hist, fhnn_res.centers, ga_cfg)
    report = validity_index(hist, ga_res.best, cfg.validity)
    label_map, rendered = render_segmentation(img, ga_res.best)
    return SegmentationResult(
        k=k,
        centers=ga_res.best,
        label_map=label_map,
        rendered=rendered,
        validity=report,
        ga_result=ga_res,
        fhnn_result=fhnn_res,
    )


def sweep(img: GrayImage, cfg: SweepConfig) -> tuple[SegmentationResult, SweepRecord]:
    """Segment at every K in [2, k_max] and keep the minimum-validity run.

    Ties break toward smaller K.  The sweep never requests more clusters
    than there are distinct gray levels.
    """
    hist = compute_histogram(img)
    if hist.distinct_levels < 2:
        raise DegenerateImage("image has a single gray level; nothing to segment")

    upper = min(cfg.k_max, hist.distinct_levels)
    record: SweepRecord = []
    best: SegmentationResult | None = None
    for k in range(K_MIN, upper + 1):
        result = segment_k(img, k, cfg)
        record.append(SweepEntry(report=result.validity, best_metric=result.ga_result.best_metric))
        if best is None or result.validity.v < best.validity.v:
            best = result
    assert best is not None
    return best, record


def kmeans_baseline(hist: Histogram, k: int, seed: int) -> KmeansResult:
    """Lloyd iterations on the histogram with rounded integer centers.

    Initial centers are k distinct support levels drawn without
    replacement; iteration stops when the level assignment stabilizes.
    """
    if k < 1:
        raise InvalidK("cluster count must be at least 1")
    support = hist.support
    if k > support.size:
        raise TooManyClasses(
            f"{k} clusters requested but only {support.size} distinct gray levels present"
        )
    rng = np.random.default_rng(seed)
    centers = np.sort(rng.choice(support, size=k, replace=False)).astype(np.int64)

    levels = np.arange(hist.counts.size, dtype=np.int64)
    prev_labels = None
    for _ in range(500):  # assignment stabilizes long before this on 256 bins
        dist = np.abs(levels[:, None] - centers[None, :])
        labels = np.argmin(dist, axis=1)
        if prev_labels is not None and np.array_equal(labels, prev_labels):
            break
        prev_labels = labels
        sizes = np.bincount(labels, weights=hist.counts, minlength=k)
        sums = np.bincount(labels, weights=hist.counts * levels, minlength=k)
        occupied = sizes > 0
        centers = centers.copy()
        centers[occupied] = np.floor(sums[occupied] / sizes[occupied] + 0.5).astype(np.int64)

    chrom = tuple(int(c) for c in centers)
    return KmeansResult(centers=chrom, metric=clustering_metric(hist, chrom))


def fhnn_only_segment(
    img: GrayImage,
    k: int,
    cfg: FhnnConfig,
    validity_cfg: ValidityConfig | None = None,
) -> SegmentationResult:
    """Standalone fuzzy-network segmentation, no genetic refinement.

    Memberships are defuzzified per gray level (maximum-membership class,
    lowest index on ties) and centers rounded to integers for rendering
    and validity scoring.
    """
    if k < K_MIN:
        raise InvalidK(f"cluster count must be at least {K_MIN}, got {k}")
    hist = compute_histogram(img)
    if k > hist.distinct_levels:
        raise TooManyClasses(
            f"{k} clusters requested but image has {hist.distinct_levels} distinct gray levels"
        )
    if validity_cfg is None:
        validity_cfg = ValidityConfig()

    fhnn_res = fhnn_cluster(hist, k, cfg)
    level_labels = defuzzify(fhnn_res.memberships)
    centers = tuple(
        min(max(round_half_up(v), 0), MAX_LEVEL) for v in fhnn_res.centers
    )
    report = validity_index(hist, centers, validity_cfg)

    values = np.frombuffer(img.pixels, dtype=np.uint8)
    labels = level_labels[values]
    rendered_values = np.asarray(centers, dtype=np.int64)[labels].astype(np.uint8)
    label_map = LabelMap(width=img.width, height=img.height, labels=labels, k=k)
    rendered = GrayImage(width=img.width, height=img.height, pixels=rendered_values.tobytes())
    return SegmentationResult(
        k=k,
        centers=centers,
        label_map=label_map,
        rendered=rendered,
        validity=report,
        ga_result=None,
        fhnn_result=fhnn_res,
    )


def export_sweep_csv(record: SweepRecord, path: str) -> None:
    """Write the validity curve, one row per swept K, 6 fractional digits."""
    if not record:
        raise ValueError("cannot export an empty sweep record")
    lines = ["k,validity,intra,inter,y,best_metric"]
    for entry in record:
        r = entry.report
        lines.append(
            f"{r.k},{r.v:.6f},{r.intra:.6f},{r.inter:.6f},{r.y:.6f},{entry.best_metric:.6f}"
        )
    try:
        with open(path, "w", encoding="ascii") as fh:
            fh.write("\n".join(lines) + "\n")
    except OSError as exc:
        raise IoFailure(f"cannot write {path}: {exc}") from exc
