"""Median-SNR maps over UAV positions around a single gNB."""

import json
import logging
from collections.abc import Sequence
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Self

import numpy as np
import pandas as pd
from numpy.typing import NDArray
from pydantic import BaseModel, ConfigDict, Field, model_validator

from mmwave_channel_gen.antenna.budget import LinkBudget, default_arrays, link_snr
from mmwave_channel_gen.config.standards import GNB_HEIGHT_M, SNR_REALIZATIONS, CellType
from mmwave_channel_gen.generative.generator import ChannelModel, generate_batch
from mmwave_channel_gen.models.channel import LinkCondition

logger = logging.getLogger(__name__)

FloatArray = NDArray[np.float64]


class GnbSpec(BaseModel):
    """gNB type and mast height; height defaults per cell type."""

    model_config = ConfigDict(frozen=True)

    cell_type: CellType
    height_m: float | None = Field(default=None, ge=0)

    @property
    def resolved_height_m(self) -> float:
        return GNB_HEIGHT_M[self.cell_type] if self.height_m is None else self.height_m


class SnrGrid(BaseModel):
    """UAV positions (x horizontal from the gNB, z altitude above ground)."""

    model_config = ConfigDict(frozen=True)

    x_min_m: float = 0.0
    x_max_m: float = 500.0
    x_step_m: float = Field(default=10.0, gt=0)
    z_min_m: float = 0.0
    z_max_m: float = 130.0
    z_step_m: float = Field(default=10.0, gt=0)

    @model_validator(mode="after")
    def _ordered(self) -> Self:
        if self.x_max_m < self.x_min_m or self.z_max_m < self.z_min_m:
            raise ValueError("grid maxima must not be below minima")
        return self

    @staticmethod
    def _axis(lo: float, hi: float, step: float) -> FloatArray:
        count = int(np.floor((hi - lo) / step + 1e-9)) + 1
        return lo + step * np.arange(count)

    @property
    def x_points(self) -> FloatArray:
        return self._axis(self.x_min_m, self.x_max_m, self.x_step_m)

    @property
    def z_points(self) -> FloatArray:
        return self._axis(self.z_min_m, self.z_max_m, self.z_step_m)


@dataclass
class SnrMap:
    """Median SNR per grid point; NaN marks Absent (median link has no paths)."""

    x_m: FloatArray
    z_m: FloatArray
    median_snr_db: FloatArray
    parameters: dict[str, Any] = field(default_factory=dict)

    def to_frame(self) -> pd.DataFrame:
        xx, zz = np.meshgrid(self.x_m, self.z_m, indexing="ij")
        return pd.DataFrame(
            {"x_m": xx.ravel(), "z_m": zz.ravel(), "median_snr_db": self.median_snr_db.ravel()}
        )


def median_snr(values: Sequence[float | None]) -> float | None:
    """Median with Absent ordered below every SNR; None when the median is Absent."""
    if not values:
        return None
    arr = np.array([-np.inf if v is None else v for v in values], dtype=np.float64)
    med = float(np.median(arr))
    return None if np.isneginf(med) or np.isnan(med) else med


def snr_map(
    model: ChannelModel,
    gnb: GnbSpec,
    grid: SnrGrid | None = None,
    n_real: int = SNR_REALIZATIONS,
    seed: int = 0,
    budget: LinkBudget | None = None,
) -> SnrMap:
    """Median SNR over ``n_real`` generated links at every grid point.

    The UAV at (x, 0, z) transmits to a gNB at (0, 0, h), so the displacement
    is (-x, 0, h - z). A grid point that coincides with the gNB is Absent.

    Raises:
        ValueError: If ``n_real`` < 1
    """
    if n_real < 1:
        raise ValueError(f"n_real must be >= 1, got {n_real}")
    grid = grid or SnrGrid()
    budget = budget or LinkBudget()
    tx_array, rx_arrays = default_arrays(gnb.cell_type)
    height = gnb.resolved_height_m
    xs, zs = grid.x_points, grid.z_points

    values = np.full((xs.size, zs.size), np.nan)
    for i, x in enumerate(xs):
        for j, z in enumerate(zs):
            d = (-float(x), 0.0, height - float(z))
            if x == 0.0 and z == height:
                continue
            u = LinkCondition(d=d, cell_type=gnb.cell_type)
            links = generate_batch(model, [u], n_real, seed)
            med = median_snr([link_snr(link, tx_array, rx_arrays, budget) for link in links])
            if med is not None:
                values[i, j] = med
        logger.info("snr map column x=%.1f m done (%d/%d)", x, i + 1, xs.size)

    parameters = {
        "gnb": gnb.model_dump(mode="json") | {"resolved_height_m": height},
        "grid": grid.model_dump(mode="json"),
        "n_real": n_real,
        "seed": seed,
        "budget": budget.model_dump(mode="json"),
        "tx_array": tx_array.model_dump(mode="json"),
        "rx_arrays": [rx.model_dump(mode="json") for rx in rx_arrays],
    }
    return SnrMap(xs, zs, values, parameters)


def write_snr_map(result: SnrMap, path: str | Path) -> tuple[Path, Path]:
    """Write the grid CSV (Absent as an empty field) and its parameters sidecar."""
    csv_path = Path(path)
    result.to_frame().to_csv(csv_path, index=False, na_rep="")
    sidecar = csv_path.with_name(csv_path.name + ".params.json")
    sidecar.write_text(json.dumps(result.parameters, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return csv_path, sidecar
