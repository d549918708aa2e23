"""Synthetic ground-truth channel sampler with known analytic state probabilities."""

import logging
import math
from collections.abc import Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from mmwave_channel_gen.channel.geometry import friis_path_loss, los_geometry, los_path, wrap_azimuths
from mmwave_channel_gen.config.standards import (
    DEFAULT_CARRIER_HZ,
    GNB_HEIGHT_M,
    K_MAX,
    L_MAX_DB,
    CellType,
    LinkState,
)
from mmwave_channel_gen.data.dataset import Dataset, SourceKind
from mmwave_channel_gen.generative.link_state import sample_state_from_probs
from mmwave_channel_gen.models.channel import Link, LinkCondition, Path
from mmwave_channel_gen.rng import derive_rng

logger = logging.getLogger(__name__)

UAV_MAX_HORIZONTAL_M = 500.0
UAV_MAX_ALTITUDE_M = 130.0
# Two terrestrial placements per aerial one
CELL_TYPE_CYCLE: tuple[CellType, ...] = (CellType.TERRESTRIAL, CellType.TERRESTRIAL, CellType.AERIAL)


class OracleParams(BaseModel):
    """Shape parameters of the synthetic channel."""

    model_config = ConfigDict(frozen=True)

    carrier_hz: float = Field(default=DEFAULT_CARRIER_HZ, gt=0)
    los_scale_m: float = Field(default=50.0, gt=0, description="LOS decay length at ground level")
    los_alt_gain: float = Field(default=2.0, gt=0, description="Extra decay length per meter of UAV height")
    outage_ref_m: float = Field(default=500.0, gt=0, description="Distance at which non-LOS links are all outages")
    nlos_extra_count_p: float = Field(default=0.3, gt=0, le=1, description="Binomial p for the extra NLOS paths")
    first_excess_mean_db: float = Field(default=15.0, gt=0)
    increment_mean_db: float = Field(default=8.0, gt=0)
    ang_scale_base_deg: float = Field(default=10.0, gt=0)
    ang_scale_amp_deg: float = Field(default=60.0, gt=0)
    ang_scale_decay_m: float = Field(default=150.0, gt=0)
    delay_excess_mean_s: float = Field(default=2e-7, gt=0)


def oracle_state_probs(params: OracleParams, u: LinkCondition) -> tuple[float, float, float]:
    """Analytic (p_los, p_nlos, p_nolink) at a condition.

    The LOS decay length grows with the UAV height above the gNB, floored at 0.
    """
    height = max(u.uav_height_above_gnb, 0.0)
    p_los = math.exp(-u.horizontal_distance / (params.los_scale_m + params.los_alt_gain * height))
    p_nolink = (1.0 - p_los) * min(1.0, (u.distance / params.outage_ref_m) ** 2)
    p_nlos = max(1.0 - p_los - p_nolink, 0.0)
    return p_los, p_nlos, p_nolink


def angular_scale_deg(params: OracleParams, distance_m: float) -> float:
    """Laplacian scale of the angle offsets, decreasing in distance."""
    return params.ang_scale_base_deg + params.ang_scale_amp_deg * math.exp(-distance_m / params.ang_scale_decay_m)


def oracle_nlos_paths(params: OracleParams, u: LinkCondition, count: int, rng: np.random.Generator) -> list[Path]:
    """Draw ``count`` NLOS paths, dropping any whose loss reaches 200 dB."""
    if count <= 0:
        return []
    geometry = los_geometry(u.d)
    friis = friis_path_loss(u.distance, params.carrier_hz)
    first = friis + rng.exponential(params.first_excess_mean_db)
    increments = rng.exponential(params.increment_mean_db, count - 1)
    losses = first + np.concatenate(([0.0], np.cumsum(increments)))
    offsets = rng.laplace(0.0, angular_scale_deg(params, u.distance), size=(count, 4))
    excess = np.sort(rng.exponential(params.delay_excess_mean_s, count))

    aoa_az = wrap_azimuths(geometry.aoa_azimuth + offsets[:, 0])
    aoa_el = np.clip(geometry.aoa_elevation + offsets[:, 1], -90.0, 90.0)
    aod_az = wrap_azimuths(geometry.aod_azimuth + offsets[:, 2])
    aod_el = np.clip(geometry.aod_elevation + offsets[:, 3], -90.0, 90.0)
    return [
        Path(
            path_loss=float(losses[k]),
            aoa_azimuth=float(aoa_az[k]),
            aoa_elevation=float(aoa_el[k]),
            aod_azimuth=float(aod_az[k]),
            aod_elevation=float(aod_el[k]),
            delay=geometry.delay_s + float(excess[k]),
        )
        for k in range(count)
        if losses[k] < L_MAX_DB
    ]


def oracle_link(params: OracleParams, u: LinkCondition, rng: np.random.Generator) -> Link:
    """Sample one ground-truth link. An NLOS draw with every path clipped becomes NoLink."""
    state = sample_state_from_probs(oracle_state_probs(params, u), rng)
    if state is LinkState.NO_LINK:
        return Link(condition=u, state=state)
    count = 1 + int(rng.binomial(K_MAX - 1, params.nlos_extra_count_p))
    if state is LinkState.LOS:
        nlos = oracle_nlos_paths(params, u, count - 1, rng)
        return Link.build(u, state, los_path(u.d, params.carrier_hz), nlos)
    nlos = oracle_nlos_paths(params, u, count, rng)
    if not nlos:
        return Link(condition=u, state=LinkState.NO_LINK)
    return Link.build(u, state, None, nlos)


def oracle_generate(
    params: OracleParams,
    conditions: Sequence[LinkCondition],
    seed: int,
) -> Dataset:
    """One oracle link per condition, each from the stream (seed, index)."""
    links = [oracle_link(params, u, derive_rng(seed, i)) for i, u in enumerate(conditions)]
    counts = {s.value: sum(1 for link in links if link.state is s) for s in LinkState}
    logger.info("Oracle generated %d links: %s", len(links), counts)
    return Dataset(
        links=links,
        source=SourceKind.ORACLE,
        source_info={"params": params.model_dump(mode="json"), "seed": seed},
    )


def sample_conditions(n: int, seed: int) -> list[LinkCondition]:
    """Random UAV placements around gNBs, cycling terrestrial, terrestrial, aerial.

    The UAV is placed uniformly within 500 m horizontally of the gNB at an
    altitude uniform in [0, 130] m; gNB heights are 2 m and 30 m.

    Raises:
        ValueError: If ``n`` < 1
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    rng = derive_rng(seed)
    radius = rng.uniform(0.0, UAV_MAX_HORIZONTAL_M, n)
    bearing = rng.uniform(0.0, 2.0 * math.pi, n)
    altitude = rng.uniform(0.0, UAV_MAX_ALTITUDE_M, n)

    conditions: list[LinkCondition] = []
    for i in range(n):
        cell_type = CELL_TYPE_CYCLE[i % len(CELL_TYPE_CYCLE)]
        gnb_height = GNB_HEIGHT_M[cell_type]
        d = (
            -float(radius[i] * math.cos(bearing[i])),
            -float(radius[i] * math.sin(bearing[i])),
            gnb_height - float(altitude[i]),
        )
        conditions.append(LinkCondition(d=d, cell_type=cell_type))
    return conditions
