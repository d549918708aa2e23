"""Conversion between NLOS path lists and the fixed 120-d path vector.

Each of the 20 blocks is (path_loss_dB, d_aoa_az, d_aoa_el, d_aod_az,
d_aod_el, excess_delay_s). Angles are offsets from the geometric LOS
direction and delays are in excess of |d|/c. Absent slots hold the padding
block (200, 0, 0, 0, 0, 0) and blocks are sorted ascending by loss.
"""

from collections.abc import Sequence

import numpy as np
from numpy.typing import ArrayLike, NDArray

from mmwave_channel_gen.channel.geometry import los_geometry, wrap_azimuths
from mmwave_channel_gen.config.standards import (
    ABSENT_THRESHOLD_DB,
    K_MAX,
    L_MAX_DB,
    PADDING_BLOCK,
    PATH_FIELDS,
    PATH_VECTOR_DIM,
    LinkState,
)
from mmwave_channel_gen.errors import PathVectorError
from mmwave_channel_gen.models.channel import Link, LinkCondition, Path

FloatArray = NDArray[np.float64]

MIN_PATH_LOSS_DB = 1e-6


def encode_paths(link: Link) -> FloatArray:
    """Encode the NLOS paths of a link as a 120-d vector.

    The LOS path, if present, is excluded: it is reconstructed from geometry.

    Raises:
        PathVectorError: For NoLink links or more than 20 NLOS paths
    """
    if link.state is LinkState.NO_LINK:
        raise PathVectorError("NoLink links have no path vector")
    nlos = link.nlos_paths
    if len(nlos) > K_MAX:
        raise PathVectorError(f"At most {K_MAX} NLOS paths can be encoded, got {len(nlos)}")

    geometry = los_geometry(link.condition.d)
    blocks = np.tile(np.asarray(PADDING_BLOCK), (K_MAX, 1))
    for k, path in enumerate(sorted(nlos, key=lambda p: p.path_loss)):
        blocks[k] = (
            path.path_loss,
            path.aoa_azimuth - geometry.aoa_azimuth,
            path.aoa_elevation - geometry.aoa_elevation,
            path.aod_azimuth - geometry.aod_azimuth,
            path.aod_elevation - geometry.aod_elevation,
            max(path.delay - geometry.delay_s, 0.0),
        )
    n = len(nlos)
    blocks[:n, 1] = wrap_azimuths(blocks[:n, 1])
    blocks[:n, 3] = wrap_azimuths(blocks[:n, 3])
    return blocks.ravel()


def encode_path_matrix(links: Sequence[Link]) -> FloatArray:
    """Stack :func:`encode_paths` for many links into an (n, 120) matrix."""
    if not links:
        return np.zeros((0, PATH_VECTOR_DIM))
    return np.vstack([encode_paths(link) for link in links])


def decode_paths(
    vec: ArrayLike,
    u: LinkCondition,
    absent_threshold_db: float = ABSENT_THRESHOLD_DB,
) -> list[Path]:
    """Decode a 120-d vector back into absolute NLOS paths.

    Blocks at or above ``absent_threshold_db`` are dropped; losses are clamped
    into (0, 200], elevations into [-90, 90] and excess delays at zero.

    Raises:
        PathVectorError: If the vector has the wrong length or non-finite entries
    """
    v = np.asarray(vec, dtype=np.float64)
    if v.shape != (PATH_VECTOR_DIM,):
        raise PathVectorError(f"Path vector must have length {PATH_VECTOR_DIM}, got {v.shape}")
    if not np.all(np.isfinite(v)):
        raise PathVectorError("Path vector contains non-finite entries")

    blocks = v.reshape(K_MAX, PATH_FIELDS)
    blocks = blocks[blocks[:, 0] < min(absent_threshold_db, L_MAX_DB)]
    if blocks.shape[0] == 0:
        return []

    geometry = los_geometry(u.d)
    losses = np.clip(blocks[:, 0], MIN_PATH_LOSS_DB, L_MAX_DB)
    aoa_az = wrap_azimuths(geometry.aoa_azimuth + blocks[:, 1])
    aoa_el = np.clip(geometry.aoa_elevation + blocks[:, 2], -90.0, 90.0)
    aod_az = wrap_azimuths(geometry.aod_azimuth + blocks[:, 3])
    aod_el = np.clip(geometry.aod_elevation + blocks[:, 4], -90.0, 90.0)
    delays = geometry.delay_s + np.maximum(blocks[:, 5], 0.0)

    order = np.argsort(losses, kind="stable")
    return [
        Path(
            path_loss=float(losses[i]),
            aoa_azimuth=float(aoa_az[i]),
            aoa_elevation=float(aoa_el[i]),
            aod_azimuth=float(aod_az[i]),
            aod_elevation=float(aod_el[i]),
            delay=float(delays[i]),
        )
        for i in order
    ]
