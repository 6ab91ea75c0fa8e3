"""Genetic refinement of K integer cluster centers.

A chromosome is a tuple of K gray-level intensities.  The population is
seeded from fuzzy-network centers (one exact copy plus jittered variants),
then evolved by roulette-wheel selection, single-point crossover, and
single-gene mutation.  Every chromosome is Lloyd-adjusted before scoring:
pixels are assigned to their nearest gene and each gene is replaced by the
rounded mean of its cluster.  Fitness is the reciprocal of the summed
absolute pixel-to-center distance, and the all-time best chromosome is
reinserted over the worst member each generation (elitism).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, TextIO

import numpy as np

from .errors import EmptyHistogram, InvalidK, LengthMismatch
from .imaging import MAX_LEVEL, NUM_LEVELS, Histogram, nearest_center_labels

Chromosome = tuple[int, ...]

METRIC_FLOOR = 1e-12

_LEVELS = np.arange(NUM_LEVELS, dtype=np.int64)


def round_half_up(value: float) -> int:
    """Round to the nearest integer, halves away from zero toward +inf."""
    return int(np.floor(value + 0.5))


@dataclass(frozen=True)
class GaConfig:
    population_size: int = 30
    crossover_prob: float = 0.9
    mutation_prob: float = 0.01
    generations: int = 20
    seed: int = 0
    fhnn_jitter: int = 10

    def __post_init__(self):
        if self.population_size < 2:
            raise ValueError("population_size must be at least 2")
        if not 0.0 <= self.crossover_prob <= 1.0:
            raise ValueError("crossover_prob must lie in [0, 1]")
        if not 0.0 <= self.mutation_prob <= 1.0:
            raise ValueError("mutation_prob must lie in [0, 1]")
        if self.generations < 1:
            raise ValueError("generations must be positive")
        if self.fhnn_jitter < 0:
            raise ValueError("fhnn_jitter must be non-negative")


@dataclass(frozen=True)
class EvolutionResult:
    best: Chromosome
    best_metric: float
    best_fitness: float
    fitness_history: tuple[float, ...]


def seed_population(
    fhnn_centers: Sequence[float],
    cfg: GaConfig,
    rng: np.random.Generator | None = None,
) -> list[Chromosome]:
    """Initial population: exact rounded centers plus jittered copies.

    Chromosome 0 is the centers rounded to integers; every other member adds
    independent integer offsets uniform in [-fhnn_jitter, +fhnn_jitter] per
    gene, clamped to the intensity range.
    """
    centers = np.asarray(fhnn_centers, dtype=np.float64)
    if centers.size == 0:
        raise InvalidK("need at least one center to seed a population")
    if np.any(centers < 0) or np.any(centers > MAX_LEVEL):
        raise ValueError("seed centers must lie in [0, 255]")
    if rng is None:
        rng = np.random.default_rng(cfg.seed)

    base = np.floor(centers + 0.5).astype(np.int64)
    population = [tuple(int(g) for g in base)]
    j = cfg.fhnn_jitter
    for _ in range(cfg.population_size - 1):
        offsets = rng.integers(-j, j + 1, size=base.size)
        genes = np.clip(base + offsets, 0, MAX_LEVEL)
        population.append(tuple(int(g) for g in genes))
    return population


def assign_and_adjust(hist: Histogram, chrom: Chromosome) -> tuple[Chromosome, tuple[int, ...]]:
    """One Lloyd step: nearest-gene assignment, then genes become cluster means.

    Means are rounded back to integers; a gene whose cluster is empty keeps
    its previous value.
    """
    genes = np.asarray(chrom, dtype=np.int64)
    k = genes.size
    labels = nearest_center_labels(genes)
    counts = hist.counts
    sizes = np.bincount(labels, weights=counts, minlength=k)
    sums = np.bincount(labels, weights=counts * _LEVELS, minlength=k)

    adjusted = genes.copy()
    occupied = sizes > 0
    means = sums[occupied] / sizes[occupied]
    adjusted[occupied] = np.floor(means + 0.5).astype(np.int64)
    return tuple(int(g) for g in adjusted), tuple(int(s) for s in sizes)


def clustering_metric(hist: Histogram, chrom: Chromosome) -> float:
    """Sum over all pixels of the absolute distance to the nearest gene.

    Computed on the histogram in exact integer arithmetic, so it equals the
    naive per-pixel sum bit for bit.
    """
    genes = np.asarray(chrom, dtype=np.int64)
    labels = nearest_center_labels(genes)
    distances = np.abs(_LEVELS - genes[labels])
    return float((hist.counts * distances).sum())


def fitness(metric: float) -> float:
    """Reciprocal metric, floored to keep a perfect clustering finite."""
    return 1.0 / max(metric, METRIC_FLOOR)


def roulette_select(fitnesses: Sequence[float], rng: np.random.Generator) -> int:
    """Draw an index with probability proportional to fitness.

    A zero-total wheel degrades to a uniform draw.
    """
    f = np.asarray(fitnesses, dtype=np.float64)
    total = f.sum()
    if total <= 0.0:
        return int(rng.integers(0, f.size))
    wheel = np.cumsum(f)
    u = rng.random() * total
    return int(np.searchsorted(wheel, u, side="right"))


def crossover(
    a: Chromosome, b: Chromosome, prob: float, rng: np.random.Generator
) -> tuple[Chromosome, Chromosome]:
    """Single-point crossover: swap gene suffixes from a random cut point.

    Length-1 chromosomes have no interior cut point and pass through
    unchanged without consuming random draws.
    """
    if len(a) != len(b):
        raise LengthMismatch(f"chromosome lengths differ: {len(a)} vs {len(b)}")
    length = len(a)
    if length < 2:
        return a, b
    if rng.random() >= prob:
        return a, b
    t = int(rng.integers(1, length))
    return a[:t] + b[t:], b[:t] + a[t:]


def mutate(chrom: Chromosome, prob: float, rng: np.random.Generator) -> Chromosome:
    """Perturb one uniformly chosen gene, with probability ``prob``.

    The gene value v moves to v +/- delta*v (v +/- delta when v is 0) for
    delta uniform in [0, 1), rounded and clamped to the intensity range.
    """
    if rng.random() >= prob:
        return chrom
    pos = int(rng.integers(0, len(chrom)))
    delta = rng.random()
    sign = 1.0 if int(rng.integers(0, 2)) == 0 else -1.0
    v = chrom[pos]
    moved = v + sign * delta * v if v != 0 else v + sign * delta
    new_gene = min(max(round_half_up(moved), 0), MAX_LEVEL)
    genes = list(chrom)
    genes[pos] = new_gene
    return tuple(genes)


def evolve(
    hist: Histogram,
    fhnn_centers: Sequence[float],
    cfg: GaConfig,
    trace: TextIO | None = None,
) -> EvolutionResult:
    """Full generational loop; returns the all-time best adjusted chromosome.

    Per generation: Lloyd-adjust and score the population, update the
    all-time best, then build the next generation from roulette-selected
    parents via crossover and mutation, overwriting its worst member with
    the all-time best.  ``fitness_history`` records the best-so-far fitness
    after each generation, which elitism makes non-decreasing.
    """
    if hist.total == 0:
        raise EmptyHistogram("cannot evolve on an empty histogram")
    if len(fhnn_centers) == 0:
        raise InvalidK("need at least one seed center")

    rng = np.random.default_rng(cfg.seed)
    population = seed_population(fhnn_centers, cfg, rng=rng)
    p = cfg.population_size

    best_chrom: Chromosome | None = None
    best_metric = float("inf")
    best_fit = 0.0
    history: list[float] = []

    if trace is not None:
        trace.write("generation,best_fitness,best_metric,mean_fitness\n")

    for generation in range(cfg.generations):
        adjusted = [assign_and_adjust(hist, ch)[0] for ch in population]
        metrics = [clustering_metric(hist, ch) for ch in adjusted]
        fitnesses = [fitness(m) for m in metrics]

        gen_best = int(np.argmax(fitnesses))
        if fitnesses[gen_best] > best_fit or best_chrom is None:
            best_fit = fitnesses[gen_best]
            best_metric = metrics[gen_best]
            best_chrom = adjusted[gen_best]
        history.append(best_fit)

        if trace is not None:
            mean_fit = float(np.mean(fitnesses))
            trace.write(f"{generation},{best_fit:.9e},{best_metric:.9e},{mean_fit:.9e}\n")

        if generation == cfg.generations - 1:
            break

        parents = [adjusted[roulette_select(fitnesses, rng)] for _ in range(p)]
        children: list[Chromosome] = []
        for i in range(0, p - 1, 2):
            c1, c2 = crossover(parents[i], parents[i + 1], cfg.crossover_prob, rng)
            children.extend((c1, c2))
        if len(children) < p:  # odd population: last parent passes through
            children.append(parents[-1])
        children = [mutate(ch, cfg.mutation_prob, rng) for ch in children]

        worst = int(np.argmax([clustering_metric(hist, ch) for ch in children]))
        children[worst] = best_chrom
        population = children

    assert best_chrom is not None
    return EvolutionResult(
        best=best_chrom,
        best_metric=best_metric,
        best_fitness=best_fit,
        fitness_history=tuple(history),
    )
