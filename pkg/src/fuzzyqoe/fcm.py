"""Fuzzy c-means clustering of scalar scores and output MF synthesis."""
from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from .membership import TriangularMF, Universe


@dataclass(frozen=True)
class FcmConfig:
    """Clustering hyperparameters.

    ``m`` is the fuzzifier exponent (> 1); ``tol`` bounds the center movement
    accepted as converged; ``seed`` drives the center initialization.
    """

    c: int = 4
    m: float = 2.0
    tol: float = 1e-6
    max_iter: int = 300
    seed: int = 0

    def __post_init__(self) -> None:
        if self.c < 1:
            raise ValueError(f"cluster count must be >= 1, got {self.c}")
        if self.m <= 1.0:
            raise ValueError(f"fuzzifier must be > 1, got {self.m}")
        if self.tol <= 0:
            raise ValueError(f"tol must be positive, got {self.tol}")
        if self.max_iter < 1:
            raise ValueError(f"max_iter must be >= 1, got {self.max_iter}")


@dataclass(frozen=True, eq=False)
class FcmResult:
    """Converged clustering: sorted centers, point-by-cluster memberships,
    and the per-iteration objective values."""

    centers: tuple[float, ...]
    memberships: np.ndarray
    objective_trace: tuple[float, ...]
    iterations: int
    converged: bool


def _memberships(x: np.ndarray, centers: np.ndarray, m: float) -> np.ndarray:
    """Optimal membership matrix for fixed centers; rows sum to 1.

    A point coincident with a center is assigned crisply to that center
    (the standard singularity rule avoiding division by zero).
    """
    d2 = (x[:, None] - centers[None, :]) ** 2
    u = np.zeros_like(d2)
    singular = d2 == 0.0
    singular_rows = singular.any(axis=1)
    if singular_rows.any():
        rows = np.flatnonzero(singular_rows)
        u[rows, np.argmax(singular[rows], axis=1)] = 1.0
    regular = ~singular_rows
    if regular.any():
        inv = d2[regular] ** (-1.0 / (m - 1.0))
        u[regular] = inv / inv.sum(axis=1, keepdims=True)
    return u


def _objective(x: np.ndarray, u: np.ndarray, centers: np.ndarray, m: float) -> float:
    return float(((u ** m) * (x[:, None] - centers[None, :]) ** 2).sum())


def fcm_cluster(points: Sequence[float] | np.ndarray, config: FcmConfig = FcmConfig()) -> FcmResult:
    """Cluster 1-D scores by alternating membership and center updates.

    Minimizes sum_k sum_i u_ik^m (x_k - v_i)^2. Initial centers are ``c``
    distinct values sampled by seeded PRNG from the (sorted) data, re-sampled
    on collision, which makes the run invariant to the input point order.
    """
    x = np.asarray(points, dtype=float)
    if x.ndim != 1 or x.size == 0:
        raise ValueError("points must be a non-empty 1-D sequence")
    if not np.all(np.isfinite(x)):
        raise ValueError("points must be finite")
    if np.unique(x).size < config.c:
        raise ValueError(
            f"need at least {config.c} distinct points, got {np.unique(x).size}"
        )

    rng = np.random.default_rng(config.seed)
    ordered = np.sort(x)
    while True:
        centers = ordered[rng.choice(x.size, size=config.c, replace=False)]
        if np.unique(centers).size == config.c:
            break

    trace: list[float] = []
    converged = False
    iterations = 0
    for iterations in range(1, config.max_iter + 1):
        u = _memberships(x, centers, config.m)
        um = u ** config.m
        new_centers = (um * x[:, None]).sum(axis=0) / um.sum(axis=0)
        trace.append(_objective(x, u, new_centers, config.m))
        shift = float(np.max(np.abs(new_centers - centers)))
        centers = new_centers
        if shift < config.tol:
            converged = True
            break

    u = _memberships(x, centers, config.m)
    order = np.argsort(centers)
    memberships = u[:, order]
    memberships.flags.writeable = False
    return FcmResult(
        centers=tuple(float(v) for v in centers[order]),
        memberships=memberships,
        objective_trace=tuple(trace),
        iterations=iterations,
        converged=converged,
    )


def mfs_from_centers(
    centers: Sequence[float],
    universe: Universe,
    labels: Sequence[str],
) -> tuple[TriangularMF, ...]:
    """Triangles peaked at the cluster centers.

    Triangle i has its peak at center i, its left foot at center i-1 (or the
    universe lower bound for the first) and its right foot at center i+1 (or
    the upper bound for the last), mirroring the equal-partition geometry.
    """
    centers = [float(v) for v in centers]
    labels = tuple(labels)
    if len(centers) != len(labels):
        raise ValueError(f"{len(centers)} centers but {len(labels)} labels")
    if any(b <= a for a, b in zip(centers, centers[1:])):
        raise ValueError(f"centers must be strictly increasing, got {centers}")
    if centers and (centers[0] < universe.lo or centers[-1] > universe.hi):
        raise ValueError(f"centers {centers} exceed universe [{universe.lo}, {universe.hi}]")
    mfs = []
    for i, (center, label) in enumerate(zip(centers, labels)):
        left = universe.lo if i == 0 else centers[i - 1]
        right = universe.hi if i == len(centers) - 1 else centers[i + 1]
        mfs.append(TriangularMF(label, left, center, right))
    return tuple(mfs)
