"""Binned statistics over link geometry: state maps and angular distributions.

All bins are half-open [lo, hi), so a value on an edge goes to the bin that
edge opens. Empty cells hold NaN so they stay distinct from a probability or
mass of 0.
"""

from collections.abc import Sequence
from dataclasses import dataclass
from enum import Enum
from typing import Protocol, runtime_checkable

import numpy as np
import pandas as pd
from numpy.typing import ArrayLike, NDArray

from mmwave_channel_gen.channel.geometry import angle_offsets, los_geometry
from mmwave_channel_gen.config.standards import LINK_STATE_ORDER, STRONGEST_PATHS, CellType, LinkState
from mmwave_channel_gen.evaluation.stats import circular_std
from mmwave_channel_gen.models.channel import Link, LinkCondition

FloatArray = NDArray[np.float64]

DEFAULT_DH_EDGES: FloatArray = np.linspace(0.0, 500.0, 21)
DEFAULT_DZ_EDGES: FloatArray = np.linspace(-40.0, 130.0, 18)
DEFAULT_DISTANCE_EDGES: FloatArray = np.logspace(1.0, 3.0, 13)
DEFAULT_ANGLE_EDGES: FloatArray = np.linspace(-180.0, 180.0, 37)


class MapSource(str, Enum):
    """Where the per-cell state probability comes from."""

    EMPIRICAL = "empirical"
    MODEL = "model"


class AngleKind(str, Enum):
    """Which path angle an angular distribution bins."""

    AOA_AZ = "aoa_az"
    AOA_EL = "aoa_el"
    AOD_AZ = "aod_az"
    AOD_EL = "aod_el"


@runtime_checkable
class StateProbabilitySource(Protocol):
    """Anything that predicts (n, 3) state probabilities for conditions."""

    def state_probs(self, conditions: Sequence[LinkCondition]) -> FloatArray: ...


@dataclass
class Histogram2D:
    """Values on an (x, y) grid with the number of samples behind each cell."""

    edges_x: FloatArray
    edges_y: FloatArray
    values: FloatArray
    counts: NDArray[np.int64]

    def __post_init__(self) -> None:
        for name, edges in (("edges_x", self.edges_x), ("edges_y", self.edges_y)):
            if edges.ndim != 1 or edges.size < 2 or np.any(np.diff(edges) <= 0):
                raise ValueError(f"{name} must be a strictly increasing vector of at least 2 edges")
        shape = (self.edges_x.size - 1, self.edges_y.size - 1)
        if self.values.shape != shape or self.counts.shape != shape:
            raise ValueError(f"values and counts must have shape {shape}")
        if np.any(self.counts < 0):
            raise ValueError("counts must be nonnegative")

    @property
    def occupied(self) -> NDArray[np.bool_]:
        return self.counts > 0

    def to_frame(self, x_name: str, y_name: str, value_name: str) -> pd.DataFrame:
        """Long-format table, one row per cell, x-major."""
        ix, iy = np.meshgrid(np.arange(self.values.shape[0]), np.arange(self.values.shape[1]), indexing="ij")
        ix, iy = ix.ravel(), iy.ravel()
        return pd.DataFrame(
            {
                f"{x_name}_lo": self.edges_x[ix],
                f"{x_name}_hi": self.edges_x[ix + 1],
                f"{y_name}_lo": self.edges_y[iy],
                f"{y_name}_hi": self.edges_y[iy + 1],
                value_name: self.values.ravel(),
                "count": self.counts.ravel(),
            }
        )


def bin_index(values: ArrayLike, edges: FloatArray) -> NDArray[np.int64]:
    """Half-open bin index per value; -1 for values outside [edges[0], edges[-1])."""
    v = np.asarray(values, dtype=np.float64)
    idx = np.searchsorted(edges, v, side="right") - 1
    return np.where((idx >= 0) & (idx < edges.size - 1), idx, -1).astype(np.int64)


def _as_edges(edges: ArrayLike | None, default: FloatArray) -> FloatArray:
    return default.copy() if edges is None else np.asarray(edges, dtype=np.float64)


def _accumulate(
    x: FloatArray,
    y: FloatArray,
    weights: FloatArray,
    edges_x: FloatArray,
    edges_y: FloatArray,
) -> tuple[FloatArray, NDArray[np.int64]]:
    shape = (edges_x.size - 1, edges_y.size - 1)
    sums = np.zeros(shape)
    counts = np.zeros(shape, dtype=np.int64)
    ix = bin_index(x, edges_x)
    iy = bin_index(y, edges_y)
    keep = (ix >= 0) & (iy >= 0)
    np.add.at(sums, (ix[keep], iy[keep]), weights[keep])
    np.add.at(counts, (ix[keep], iy[keep]), 1)
    return sums, counts


def state_prob_map(
    links: Sequence[Link],
    dh_edges: ArrayLike | None = None,
    dz_edges: ArrayLike | None = None,
    source: MapSource = MapSource.EMPIRICAL,
    model: StateProbabilitySource | None = None,
    state: LinkState = LinkState.LOS,
    cell_type: CellType | None = None,
) -> Histogram2D:
    """Per-cell probability of ``state`` over (horizontal distance, UAV height above gNB).

    Args:
        links: Links whose conditions are binned
        dh_edges: Horizontal-distance bin edges in meters
        dz_edges: UAV-height-above-gNB bin edges in meters
        source: EMPIRICAL averages the link labels; MODEL averages predicted probabilities
        model: Probability source, required for MODEL
        state: Which state's probability to map
        cell_type: Restrict to links of one cell type

    Raises:
        ValueError: If MODEL is requested without a model
    """
    ex = _as_edges(dh_edges, DEFAULT_DH_EDGES)
    ey = _as_edges(dz_edges, DEFAULT_DZ_EDGES)
    selected = [link for link in links if cell_type is None or link.condition.cell_type is cell_type]
    dh = np.array([link.condition.horizontal_distance for link in selected])
    dz = np.array([link.condition.uav_height_above_gnb for link in selected])

    if source is MapSource.MODEL:
        if model is None:
            raise ValueError("A model is required for MODEL-sourced maps")
        probs = model.state_probs([link.condition for link in selected])
        weights = probs[:, LINK_STATE_ORDER.index(state)] if selected else np.zeros(0)
    else:
        weights = np.array([1.0 if link.state is state else 0.0 for link in selected])

    sums, counts = _accumulate(dh, dz, weights, ex, ey)
    with np.errstate(invalid="ignore", divide="ignore"):
        values = np.where(counts > 0, sums / np.maximum(counts, 1), np.nan)
    return Histogram2D(ex, ey, values, counts)


def los_prob_map(
    links: Sequence[Link],
    dh_edges: ArrayLike | None = None,
    dz_edges: ArrayLike | None = None,
    source: MapSource = MapSource.EMPIRICAL,
    model: StateProbabilitySource | None = None,
    cell_type: CellType | None = None,
) -> Histogram2D:
    """LOS probability map; see :func:`state_prob_map`."""
    return state_prob_map(links, dh_edges, dz_edges, source, model, LinkState.LOS, cell_type)


def model_prob_grid(
    model: StateProbabilitySource,
    dh_centers: ArrayLike,
    dz_centers: ArrayLike,
    cell_type: CellType,
    state: LinkState = LinkState.LOS,
) -> FloatArray:
    """Predicted state probability at grid points, shape (len(dh), len(dz)).

    The UAV sits at horizontal distance dh and height dz above the gNB, so the
    displacement toward the gNB is (dh, 0, -dz).
    """
    dh = np.asarray(dh_centers, dtype=np.float64)
    dz = np.asarray(dz_centers, dtype=np.float64)
    conditions = [LinkCondition(d=(float(h), 0.0, -float(z)), cell_type=cell_type) for h in dh for z in dz]
    probs = model.state_probs(conditions)[:, LINK_STATE_ORDER.index(state)]
    return np.asarray(probs.reshape(dh.size, dz.size))


def strongest_path_offsets(link: Link, kind: AngleKind, limit: int = STRONGEST_PATHS) -> FloatArray:
    """Offsets of the chosen angle from the LOS direction for the strongest paths."""
    if not link.paths:
        return np.zeros(0)
    geometry = los_geometry(link.condition.d)
    strongest = sorted(link.paths, key=lambda p: p.path_loss)[:limit]
    column = list(AngleKind).index(kind)
    return np.array([angle_offsets(p, geometry)[column] for p in strongest])


def _distance_offsets(links: Sequence[Link], kind: AngleKind) -> tuple[FloatArray, FloatArray]:
    distances: list[FloatArray] = []
    offsets: list[FloatArray] = []
    for link in links:
        off = strongest_path_offsets(link, kind)
        distances.append(np.full(off.size, link.condition.distance))
        offsets.append(off)
    if not offsets:
        return np.zeros(0), np.zeros(0)
    return np.concatenate(distances), np.concatenate(offsets)


def angular_distribution(
    links: Sequence[Link],
    distance_edges: ArrayLike | None = None,
    angle_edges: ArrayLike | None = None,
    which_angle: AngleKind = AngleKind.AOD_AZ,
) -> Histogram2D:
    """Distance x angle-offset histogram, each occupied distance column summing to 1.

    Every link contributes its (up to) 10 strongest paths, binned by 3-D
    distance and by the chosen angle's offset from the LOS direction.
    """
    ex = _as_edges(distance_edges, DEFAULT_DISTANCE_EDGES)
    ey = _as_edges(angle_edges, DEFAULT_ANGLE_EDGES)
    distance, offset = _distance_offsets(links, which_angle)
    _, counts = _accumulate(distance, offset, np.ones(distance.size), ex, ey)
    column_totals = counts.sum(axis=1, keepdims=True)
    with np.errstate(invalid="ignore", divide="ignore"):
        mass = np.where(column_totals > 0, counts / np.maximum(column_totals, 1), np.nan)
    return Histogram2D(ex, ey, mass, counts)


def angular_spread(
    links: Sequence[Link],
    distance_edges: ArrayLike | None = None,
    which_angle: AngleKind = AngleKind.AOD_AZ,
) -> FloatArray:
    """Circular standard deviation (degrees) of the angle offsets per distance bin; NaN where empty."""
    ex = _as_edges(distance_edges, DEFAULT_DISTANCE_EDGES)
    distance, offset = _distance_offsets(links, which_angle)
    idx = bin_index(distance, ex)
    spread = np.full(ex.size - 1, np.nan)
    for b in range(ex.size - 1):
        in_bin = offset[idx == b]
        if in_bin.size:
            spread[b] = circular_std(in_bin)
    return spread
