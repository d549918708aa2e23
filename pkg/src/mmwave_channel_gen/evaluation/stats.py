"""Scalar link statistics, empirical CDFs and two-sample distances."""

import math
from collections.abc import Iterable
from dataclasses import dataclass

import numpy as np
import pandas as pd
from numpy.typing import ArrayLike, NDArray

from mmwave_channel_gen.models.channel import Link

FloatArray = NDArray[np.float64]


def omni_path_loss(link: Link) -> float | None:
    """Noncoherent omnidirectional path loss -10*log10(sum_k 10^(-L_k/10)).

    Returns:
        Effective loss in dB, or None when the link has no paths
    """
    if not link.paths:
        return None
    losses = np.array([p.path_loss for p in link.paths])
    # Shift by the minimum so strong paths do not underflow
    floor = losses.min()
    return float(floor - 10.0 * np.log10(np.sum(10.0 ** (-(losses - floor) / 10.0))))


def _sample(values: ArrayLike, name: str) -> FloatArray:
    arr = np.asarray(values, dtype=np.float64).ravel()
    if arr.size == 0:
        raise ValueError(f"{name} must not be empty")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} must contain only finite values")
    return arr


@dataclass(frozen=True)
class Ecdf:
    """Right-continuous empirical CDF of a finite sample."""

    sorted_values: FloatArray

    @property
    def n(self) -> int:
        return int(self.sorted_values.size)

    def __call__(self, x: ArrayLike) -> FloatArray:
        """Fraction of the sample that is <= x."""
        return np.searchsorted(self.sorted_values, np.asarray(x, dtype=np.float64), side="right") / self.n

    def steps(self) -> tuple[FloatArray, FloatArray]:
        """Distinct sample values and the CDF value reached at each."""
        values, counts = np.unique(self.sorted_values, return_counts=True)
        return values, np.cumsum(counts) / self.n

    def to_frame(self) -> pd.DataFrame:
        values, cdf = self.steps()
        return pd.DataFrame({"value": values, "cdf": cdf})


def ecdf(values: ArrayLike) -> Ecdf:
    """Build the empirical CDF of a sample.

    Raises:
        ValueError: If the sample is empty or holds non-finite values
    """
    return Ecdf(np.sort(_sample(values, "values")))


def ks_statistic(sample_a: ArrayLike, sample_b: ArrayLike) -> float:
    """Two-sample Kolmogorov-Smirnov distance sup |F_a - F_b|.

    Evaluated exactly at every pooled sample point, where the supremum of
    two step functions is attained.

    Raises:
        ValueError: If either sample is empty or non-finite
    """
    fa = ecdf(_sample(sample_a, "sample_a"))
    fb = ecdf(_sample(sample_b, "sample_b"))
    pooled = np.concatenate([fa.sorted_values, fb.sorted_values])
    return float(np.max(np.abs(fa(pooled) - fb(pooled))))


def circular_std(angles_deg: ArrayLike) -> float:
    """Circular standard deviation sqrt(-2 ln R) in degrees.

    Raises:
        ValueError: If no angles are given
    """
    theta = np.radians(_sample(angles_deg, "angles_deg"))
    resultant = float(np.hypot(np.mean(np.cos(theta)), np.mean(np.sin(theta))))
    if resultant <= 0.0:
        return math.inf
    return math.degrees(math.sqrt(max(-2.0 * math.log(min(resultant, 1.0)), 0.0)))


def present_values(values: Iterable[float | None]) -> tuple[list[float], int]:
    """Split out the Absent (None) entries and count them."""
    kept: list[float] = []
    absent = 0
    for v in values:
        if v is None:
            absent += 1
        else:
            kept.append(v)
    return kept, absent
