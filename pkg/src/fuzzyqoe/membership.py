"""Triangular membership functions and linguistic variables on a bounded universe."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import OutOfRangeError

_BOUND_EPS = 1e-9


@dataclass(frozen=True)
class Universe:
    """Closed score interval together with the discretization step of its grid."""

    lo: float = 0.0
    hi: float = 100.0
    grid_step: float = 0.1

    def __post_init__(self) -> None:
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise ValueError("universe bounds must be finite")
        if self.lo >= self.hi:
            raise ValueError(f"universe needs lo < hi, got [{self.lo}, {self.hi}]")
        if self.grid_step <= 0:
            raise ValueError(f"grid_step must be positive, got {self.grid_step}")
        steps = (self.hi - self.lo) / self.grid_step
        if abs(steps - round(steps)) > _BOUND_EPS:
            raise ValueError(
                f"(hi - lo) must be an integer multiple of grid_step, "
                f"got span {self.hi - self.lo} at step {self.grid_step}"
            )

    @property
    def n_points(self) -> int:
        return int(round((self.hi - self.lo) / self.grid_step)) + 1

    def grid(self) -> np.ndarray:
        """Uniform sample points from lo to hi inclusive."""
        return np.linspace(self.lo, self.hi, self.n_points)

    def contains(self, x: float) -> bool:
        return self.lo <= x <= self.hi


@dataclass(frozen=True)
class TriangularMF:
    """Triangular fuzzy set: 0 at the feet, 1 at the peak, linear between."""

    label: str
    left_foot: float
    peak: float
    right_foot: float

    def __post_init__(self) -> None:
        if not (self.left_foot <= self.peak <= self.right_foot):
            raise ValueError(
                f"'{self.label}': feet must bracket the peak, "
                f"got ({self.left_foot}, {self.peak}, {self.right_foot})"
            )
        if not self.left_foot < self.right_foot:
            raise ValueError(f"'{self.label}': support must have positive width")

    def membership(self, x: float) -> float:
        """Degree of membership of a crisp value, in [0, 1]."""
        if not math.isfinite(x):
            raise ValueError(f"membership input must be finite, got {x}")
        if x == self.peak:
            return 1.0
        if x <= self.left_foot or x >= self.right_foot:
            return 0.0
        if x < self.peak:
            return (x - self.left_foot) / (self.peak - self.left_foot)
        return (self.right_foot - x) / (self.right_foot - self.peak)

    def membership_grid(self, xs: np.ndarray) -> np.ndarray:
        """Vectorized :meth:`membership` over an array of sample points."""
        xs = np.asarray(xs, dtype=float)
        out = np.zeros_like(xs)
        if self.peak > self.left_foot:
            rising = (xs > self.left_foot) & (xs < self.peak)
            out[rising] = (xs[rising] - self.left_foot) / (self.peak - self.left_foot)
        if self.right_foot > self.peak:
            falling = (xs > self.peak) & (xs < self.right_foot)
            out[falling] = (self.right_foot - xs[falling]) / (self.right_foot - self.peak)
        out[xs == self.peak] = 1.0
        return out


@dataclass(frozen=True)
class LinguisticVariable:
    """Named variable described by ordered, uniquely labeled triangular sets."""

    name: str
    universe: Universe
    mfs: tuple[TriangularMF, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "mfs", tuple(self.mfs))
        if len(self.mfs) < 2:
            raise ValueError(f"'{self.name}' needs at least 2 membership functions")
        labels = [mf.label for mf in self.mfs]
        if len(set(labels)) != len(labels):
            raise ValueError(f"'{self.name}' has duplicate MF labels: {labels}")
        peaks = [mf.peak for mf in self.mfs]
        if any(b <= a for a, b in zip(peaks, peaks[1:])):
            raise ValueError(f"'{self.name}' peaks must be strictly increasing: {peaks}")
        for mf in self.mfs:
            if (mf.left_foot < self.universe.lo - _BOUND_EPS
                    or mf.right_foot > self.universe.hi + _BOUND_EPS):
                raise ValueError(
                    f"'{self.name}'/'{mf.label}' exceeds universe "
                    f"[{self.universe.lo}, {self.universe.hi}]"
                )
        object.__setattr__(self, "_mf_by_label", {mf.label: mf for mf in self.mfs})

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(mf.label for mf in self.mfs)

    def mf(self, label: str) -> TriangularMF:
        try:
            return self._mf_by_label[label]
        except KeyError:
            raise KeyError(f"'{self.name}' has no MF labeled '{label}'") from None

    def _check_in_universe(self, x: float) -> None:
        if not math.isfinite(x) or not self.universe.contains(x):
            raise OutOfRangeError(
                f"value {x} outside universe [{self.universe.lo}, {self.universe.hi}] "
                f"of '{self.name}'"
            )

    def fuzzify(self, x: float) -> list[tuple[str, float]]:
        """Membership degree of ``x`` under every set, in MF order."""
        self._check_in_universe(x)
        return [(mf.label, mf.membership(x)) for mf in self.mfs]

    def best_label(self, x: float) -> str:
        """Label of maximal membership; ties go to the lower-peak label."""
        self._check_in_universe(x)
        best = self.mfs[0].label
        best_degree = self.mfs[0].membership(x)
        for mf in self.mfs[1:]:
            degree = mf.membership(x)
            if degree > best_degree:
                best, best_degree = mf.label, degree
        return best


def make_equal_partition(universe: Universe, labels: list[str] | tuple[str, ...]) -> tuple[TriangularMF, ...]:
    """Equally spaced triangles whose memberships sum to 1 everywhere on the universe.

    Peaks sit at lo, lo + d, ..., hi; each foot at the adjacent peak, with the
    outermost feet clamped to the universe bounds.
    """
    labels = tuple(labels)
    if len(labels) < 2:
        raise ValueError(f"equal partition needs at least 2 labels, got {len(labels)}")
    peaks = np.linspace(universe.lo, universe.hi, len(labels))
    mfs = []
    for i, label in enumerate(labels):
        left = universe.lo if i == 0 else float(peaks[i - 1])
        right = universe.hi if i == len(labels) - 1 else float(peaks[i + 1])
        mfs.append(TriangularMF(label, left, float(peaks[i]), right))
    return tuple(mfs)
