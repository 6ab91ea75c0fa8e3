"""Grayscale image segmentation toolkit.

Clusters the gray-level histogram with a fuzzy Hopfield network, refines
the cluster centers with a genetic algorithm seeded from the network's
solution, and picks the number of clusters by minimizing Turi's validity
index over a K-sweep.
"""

from .fhnn import ExponentMode, FhnnConfig, FhnnResult, MembershipMatrix, fhnn_cluster
from .ga import Chromosome, EvolutionResult, GaConfig, evolve
from .imaging import (
    GrayImage,
    Histogram,
    LabelMap,
    compute_histogram,
    load_image,
    render_segmentation,
    save_image,
)
from .pipeline import (
    SegmentationResult,
    SweepConfig,
    SweepEntry,
    export_sweep_csv,
    fhnn_only_segment,
    kmeans_baseline,
    segment_k,
    sweep,
)
from .validity import ValidityConfig, ValidityReport, validity_index

__all__ = [
    "Chromosome",
    "EvolutionResult",
    "ExponentMode",
    "FhnnConfig",
    "FhnnResult",
    "GaConfig",
    "GrayImage",
    "Histogram",
    "LabelMap",
    "MembershipMatrix",
    "SegmentationResult",
    "SweepConfig",
    "SweepEntry",
    "ValidityConfig",
    "ValidityReport",
    "compute_histogram",
    "evolve",
    "export_sweep_csv",
    "fhnn_cluster",
    "fhnn_only_segment",
    "kmeans_baseline",
    "load_image",
    "render_segmentation",
    "save_image",
    "segment_k",
    "sweep",
    "validity_index",
]

__version__ = "0.1.0"
