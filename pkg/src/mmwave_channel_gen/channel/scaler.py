"""Per-dimension standard scaling."""

from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import Any

import numpy as np
from numpy.typing import ArrayLike, NDArray

from mmwave_channel_gen.errors import ShapeMismatchError

FloatArray = NDArray[np.float64]


@dataclass(frozen=True)
class StandardScaler:
    """Population mean and standard deviation per dimension.

    Zero-variance dimensions store a standard deviation of 1.
    """

    mean: FloatArray = field(repr=False)
    std: FloatArray = field(repr=False)

    @property
    def dim(self) -> int:
        return int(self.mean.shape[0])

    def _check(self, values: FloatArray) -> None:
        if values.shape[-1] != self.dim:
            raise ShapeMismatchError(
                f"Scaler expects dimension {self.dim}, got {values.shape[-1]}",
                expected=self.dim,
                actual=values.shape[-1],
            )

    def apply(self, values: ArrayLike) -> FloatArray:
        v = np.asarray(values, dtype=np.float64)
        self._check(v)
        return np.asarray((v - self.mean) / self.std)

    def invert(self, values: ArrayLike) -> FloatArray:
        v = np.asarray(values, dtype=np.float64)
        self._check(v)
        return np.asarray(v * self.std + self.mean)

    def to_dict(self) -> dict[str, Any]:
        return {"mean": self.mean.tolist(), "std": self.std.tolist()}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "StandardScaler":
        return cls(
            mean=np.asarray(data["mean"], dtype=np.float64),
            std=np.asarray(data["std"], dtype=np.float64),
        )


def scaler_fit(samples: ArrayLike | Sequence[ArrayLike]) -> StandardScaler:
    """Fit a scaler on a set of sample vectors.

    Raises:
        ValueError: If fewer than two samples are given
        ShapeMismatchError: If the samples do not share one dimension
    """
    try:
        data = np.asarray(samples, dtype=np.float64)
    except ValueError as e:
        raise ShapeMismatchError(f"Samples have inconsistent dimensions: {e}") from e
    if data.ndim == 1:
        data = data.reshape(-1, 1)
    if data.ndim != 2:
        raise ShapeMismatchError(f"Samples must form a 2-d array, got shape {data.shape}")
    if data.shape[0] < 2:
        raise ValueError(f"Scaler fit needs at least 2 samples, got {data.shape[0]}")

    mean = data.mean(axis=0)
    std = data.std(axis=0)
    std = np.where(std > 0.0, std, 1.0)
    return StandardScaler(mean=mean, std=std)


def scaler_apply(scaler: StandardScaler, vector: ArrayLike) -> FloatArray:
    """(v - mean) / std, elementwise."""
    return scaler.apply(vector)


def scaler_invert(scaler: StandardScaler, vector: ArrayLike) -> FloatArray:
    """Exact inverse of :func:`scaler_apply`."""
    return scaler.invert(vector)
