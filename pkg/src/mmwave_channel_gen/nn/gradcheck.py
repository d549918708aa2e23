"""Central finite-difference gradient checking."""

from collections.abc import Callable, Sequence
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

FloatArray = NDArray[np.float64]


@dataclass
class GradCheckResult:
    """Result of comparing analytic and numerical gradients."""

    max_relative_error: float
    checked: int
    worst_block: int | None = None
    worst_index: int | None = None

    def passed(self, tolerance: float = 1e-4) -> bool:
        return self.max_relative_error <= tolerance

    def to_dict(self) -> dict[str, float | int | None]:
        return {
            "max_relative_error": self.max_relative_error,
            "checked": self.checked,
            "worst_block": self.worst_block,
            "worst_index": self.worst_index,
        }


def relative_error(analytic: float, numeric: float, floor: float = 1e-6) -> float:
    """|a - n| / max(|a|, |n|, floor)."""
    return abs(analytic - numeric) / max(abs(analytic), abs(numeric), floor)


def check_gradients(
    loss_fn: Callable[[list[FloatArray]], float],
    params: Sequence[FloatArray],
    analytic_grads: Sequence[FloatArray],
    n_checks: int = 64,
    h: float = 1e-5,
    seed: int = 0,
) -> GradCheckResult:
    """Compare analytic gradients with central differences on random entries.

    Args:
        loss_fn: Scalar loss as a function of the parameter blocks
        params: Point at which gradients were computed
        analytic_grads: Gradient blocks congruent with ``params``
        n_checks: Number of randomly chosen scalar parameters to check
        h: Finite-difference step
        seed: Seed for choosing the checked entries

    Returns:
        GradCheckResult with the worst relative error found
    """
    rng = np.random.default_rng(seed)
    base = [np.array(p, dtype=np.float64, copy=True) for p in params]
    sizes = np.array([p.size for p in base])
    total = int(sizes.sum())
    flat_ids = rng.choice(total, size=min(n_checks, total), replace=False)
    offsets = np.concatenate(([0], np.cumsum(sizes)))

    worst = 0.0
    worst_block: int | None = None
    worst_index: int | None = None
    for flat_id in flat_ids:
        block = int(np.searchsorted(offsets, flat_id, side="right") - 1)
        index = int(flat_id - offsets[block])
        original = base[block].flat[index]

        base[block].flat[index] = original + h
        plus = loss_fn(base)
        base[block].flat[index] = original - h
        minus = loss_fn(base)
        base[block].flat[index] = original

        numeric = (plus - minus) / (2.0 * h)
        err = relative_error(float(analytic_grads[block].flat[index]), numeric)
        if err > worst:
            worst, worst_block, worst_index = err, block, index
    return GradCheckResult(worst, len(flat_ids), worst_block, worst_index)
