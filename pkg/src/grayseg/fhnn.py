"""Fuzzy Hopfield network clustering of a gray-level histogram.

The network is a 256 x c grid of neurons (gray level x class) whose state is
a fuzzy membership matrix.  Training alternates between recomputing class
centers as histogram-weighted fuzzy means and synchronously updating all
memberships from the squared level-to-center distances, until the largest
membership change drops below ``epsilon``.  The Lyapunov energy of the net,
i.e. the weighted within-class scatter, is recorded per iteration as a
convergence diagnostic.

Membership rows are kept for all 256 gray levels, including empty ones:
zero-count levels carry no weight in the center update but still receive
memberships, which keeps indexing uniform for rendering.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterator, TextIO

import numpy as np

from .errors import (
    DegenerateClass,
    DimensionMismatch,
    EmptyHistogram,
    InvalidDimensions,
    TooManyClasses,
)
from .imaging import NUM_LEVELS, Histogram

LEVELS = np.arange(NUM_LEVELS, dtype=np.float64)


class ExponentMode(enum.Enum):
    """Exponent applied to squared-distance ratios in the membership update.

    PAPER uses 2/(m-1), the update as originally published for this network;
    FCM uses 1/(m-1), which makes the update the exact minimizer of the
    weighted fuzzy c-means objective and yields a monotone energy trace.
    """

    PAPER = "paper"
    FCM = "fcm"


@dataclass(frozen=True)
class FhnnConfig:
    m: float = 2.0
    epsilon: float = 1e-4
    max_iterations: int = 500
    exponent_mode: ExponentMode = ExponentMode.PAPER
    seed: int = 0
    bias: float = 0.0  # external neuron bias; the formulation fixes it at 0

    def __post_init__(self):
        if self.m <= 1.0:
            raise ValueError("fuzzification exponent m must exceed 1")
        if self.epsilon <= 0:
            raise ValueError("epsilon must be positive")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be positive")
        if self.bias != 0.0:
            raise ValueError("the network bias is fixed at 0")


@dataclass(frozen=True, eq=False)
class MembershipMatrix:
    """Fuzzy c-partition: rows are gray levels, columns are classes.

    Entries lie in [0, 1] and every row sums to 1.
    """

    mu: np.ndarray

    def __post_init__(self):
        if self.mu.ndim != 2 or self.mu.shape[0] < 1 or self.mu.shape[1] < 1:
            raise InvalidDimensions(f"membership matrix shape {self.mu.shape} is invalid")

    @property
    def n(self) -> int:
        return self.mu.shape[0]

    @property
    def c(self) -> int:
        return self.mu.shape[1]

    def row_sum_error(self) -> float:
        """Largest deviation of any row sum from 1."""
        return float(np.abs(self.mu.sum(axis=1) - 1.0).max())


@dataclass(frozen=True, eq=False)
class FhnnResult:
    memberships: MembershipMatrix
    centers: np.ndarray
    iterations: int
    final_delta: float
    energy_trace: np.ndarray
    converged: bool


@dataclass(frozen=True, eq=False)
class FhnnStep:
    """State after one synchronous update, exposed for diagnostics."""

    iteration: int
    memberships: MembershipMatrix
    centers: np.ndarray
    delta: float
    energy: float


def init_membership(n: int, c: int, seed: int) -> MembershipMatrix:
    """Random fuzzy partition: rows are uniform draws normalized to sum 1."""
    if n < 1 or c < 1:
        raise InvalidDimensions(f"need n >= 1 and c >= 1, got n={n}, c={c}")
    rng = np.random.default_rng(seed)
    mu = rng.random((n, c))
    mu /= mu.sum(axis=1, keepdims=True)
    return MembershipMatrix(mu=mu)


def compute_centers(hist: Histogram, u: MembershipMatrix, m: float) -> np.ndarray:
    """Histogram-weighted fuzzy class centers.

    v_i = sum_y p_y mu_{y,i}^m z_y / sum_h p_h mu_{h,i}^m; a convex
    combination of support levels, so every center lies in [0, 255].
    """
    if u.n != NUM_LEVELS:
        raise DimensionMismatch(f"expected {NUM_LEVELS} membership rows, got {u.n}")
    weights = hist.counts[:, None] * np.power(u.mu, m)
    mass = weights.sum(axis=0)
    if np.any(mass <= 0.0):
        dead = np.flatnonzero(mass <= 0.0)
        raise DegenerateClass(f"classes {dead.tolist()} carry zero weighted mass")
    return (weights * LEVELS[:, None]).sum(axis=0) / mass


def compute_net(hist: Histogram, centers) -> np.ndarray:
    """Net input to neuron (x, i): squared distance (z_x - v_i)^2, zero bias."""
    cen = np.asarray(centers, dtype=np.float64)
    if cen.size == 0:
        raise ValueError("centers must be non-empty")
    diff = LEVELS[:, None] - cen[None, :]
    return diff * diff


def update_membership(net: np.ndarray, m: float, mode: ExponentMode) -> MembershipMatrix:
    """Synchronous membership update from the net-input matrix.

    mu_{x,i} = [sum_j (Net_{x,i}/Net_{x,j})^e]^-1 with e = 2/(m-1) in PAPER
    mode and 1/(m-1) in FCM mode.  Rows containing a zero net input become
    crisp, splitting membership 1 equally over all zero-net classes (the
    ratio formula divides by zero there).

    Computed via the equivalent form mu_{x,i} = w_i / sum_j w_j with
    w_j = (dmin_x / Net_{x,j})^e, which keeps every factor in (0, 1] and
    avoids overflow for large exponents (small m).
    """
    if mode is ExponentMode.PAPER:
        e = 2.0 / (m - 1.0)
    else:
        e = 1.0 / (m - 1.0)

    zero_mask = net == 0.0
    has_zero = zero_mask.any(axis=1)

    safe_net = np.where(zero_mask, 1.0, net)
    dmin = safe_net.min(axis=1, keepdims=True)
    w = np.power(dmin / safe_net, e)
    mu = w / w.sum(axis=1, keepdims=True)

    if has_zero.any():
        crisp = zero_mask[has_zero].astype(np.float64)
        mu[has_zero] = crisp / crisp.sum(axis=1, keepdims=True)
    return MembershipMatrix(mu=mu)


def compute_energy(hist: Histogram, u: MembershipMatrix, centers, m: float) -> float:
    """Lyapunov energy: half the histogram-weighted within-class scatter."""
    cen = np.asarray(centers, dtype=np.float64)
    if u.n != NUM_LEVELS or u.c != cen.size:
        raise DimensionMismatch(
            f"membership {u.mu.shape} inconsistent with {cen.size} centers"
        )
    diff = LEVELS[:, None] - cen[None, :]
    return 0.5 * float((hist.counts[:, None] * np.power(u.mu, m) * diff * diff).sum())


def fhnn_steps(
    hist: Histogram,
    c: int,
    cfg: FhnnConfig,
    initial: MembershipMatrix | None = None,
) -> Iterator[FhnnStep]:
    """Yield the network state after each synchronous update.

    Terminates when the max absolute membership change is <= cfg.epsilon or
    after cfg.max_iterations steps, whichever comes first.
    """
    if hist.total == 0:
        raise EmptyHistogram("histogram has no pixels")
    if c < 1:
        raise InvalidDimensions(f"need at least one class, got c={c}")
    if c > hist.distinct_levels:
        raise TooManyClasses(
            f"{c} classes requested but only {hist.distinct_levels} distinct gray levels present"
        )

    u = init_membership(NUM_LEVELS, c, cfg.seed) if initial is None else initial
    if u.n != NUM_LEVELS or u.c != c:
        raise DimensionMismatch(f"initial membership {u.mu.shape} != ({NUM_LEVELS}, {c})")

    for iteration in range(1, cfg.max_iterations + 1):
        centers = compute_centers(hist, u, cfg.m)
        net = compute_net(hist, centers)
        u_next = update_membership(net, cfg.m, cfg.exponent_mode)
        delta = float(np.abs(u_next.mu - u.mu).max())
        energy = compute_energy(hist, u_next, centers, cfg.m)
        u = u_next
        yield FhnnStep(
            iteration=iteration, memberships=u, centers=centers, delta=delta, energy=energy
        )
        if delta <= cfg.epsilon:
            return


def fhnn_cluster(
    hist: Histogram,
    c: int,
    cfg: FhnnConfig,
    initial: MembershipMatrix | None = None,
    trace: TextIO | None = None,
) -> FhnnResult:
    """Run the network to convergence and package the final state.

    ``initial`` overrides the seeded random start; ``trace`` receives CSV
    lines ``iter,delta,energy`` when given.
    """
    if trace is not None:
        trace.write("iter,delta,energy\n")

    step = None
    energies = []
    for step in fhnn_steps(hist, c, cfg, initial=initial):
        energies.append(step.energy)
        if trace is not None:
            trace.write(f"{step.iteration},{step.delta:.9e},{step.energy:.9e}\n")

    assert step is not None  # max_iterations >= 1 guarantees one step
    return FhnnResult(
        memberships=step.memberships,
        centers=step.centers,
        iterations=step.iteration,
        final_delta=step.delta,
        energy_trace=np.asarray(energies),
        converged=step.delta <= cfg.epsilon,
    )


def defuzzify(u: MembershipMatrix) -> np.ndarray:
    """Hard label per gray level: the maximum-membership class (ties: lowest index)."""
    return np.argmax(u.mu, axis=1)
