"""LOS geometry, free-space loss and angle helpers."""

import math
from collections.abc import Sequence
from typing import NamedTuple

import numpy as np
from numpy.typing import ArrayLike, NDArray

from mmwave_channel_gen.config.standards import SPEED_OF_LIGHT
from mmwave_channel_gen.errors import InvalidConditionError
from mmwave_channel_gen.models.channel import Path, wrap_azimuth


class LosGeometry(NamedTuple):
    """Delay and directions of the geometric LOS path."""

    delay_s: float
    aod_azimuth: float
    aod_elevation: float
    aoa_azimuth: float
    aoa_elevation: float


def wrap_azimuths(angles_deg: ArrayLike) -> NDArray[np.float64]:
    """Vectorized azimuth wrap into [-180, 180)."""
    wrapped = np.mod(np.asarray(angles_deg, dtype=np.float64) + 180.0, 360.0) - 180.0
    return np.where(wrapped >= 180.0, -180.0, wrapped)


def direction_angles(vector: Sequence[float]) -> tuple[float, float]:
    """Azimuth and elevation in degrees of a nonzero direction vector."""
    x, y, z = (float(c) for c in vector)
    norm = math.sqrt(x * x + y * y + z * z)
    if norm <= 0.0:
        raise InvalidConditionError("Cannot take the direction of a zero vector")
    azimuth = wrap_azimuth(math.degrees(math.atan2(y, x)))
    elevation = math.degrees(math.asin(max(-1.0, min(1.0, z / norm))))
    return azimuth, elevation


def los_geometry(d: Sequence[float]) -> LosGeometry:
    """Delay and angles of the direct path for a UAV-to-gNB displacement.

    Args:
        d: Displacement (d_x, d_y, d_z) in meters from transmitter to receiver

    Returns:
        LosGeometry with delay |d|/c, departure along d and arrival along -d

    Raises:
        InvalidConditionError: If d is the zero vector
    """
    dx, dy, dz = (float(c) for c in d)
    distance = math.sqrt(dx * dx + dy * dy + dz * dz)
    if distance <= 0.0:
        raise InvalidConditionError("LOS geometry needs a nonzero displacement")
    aod_az, aod_el = direction_angles((dx, dy, dz))
    aoa_az, aoa_el = direction_angles((-dx, -dy, -dz))
    return LosGeometry(distance / SPEED_OF_LIGHT, aod_az, aod_el, aoa_az, aoa_el)


def friis_path_loss(distance_m: float, frequency_hz: float) -> float:
    """Free-space path loss 20*log10(4*pi*d*f/c) in dB.

    Raises:
        ValueError: If distance or frequency is not positive
    """
    if distance_m <= 0 or frequency_hz <= 0:
        raise ValueError(
            f"distance and frequency must be positive, got {distance_m} m, {frequency_hz} Hz"
        )
    return 20.0 * math.log10(4.0 * math.pi * distance_m * frequency_hz / SPEED_OF_LIGHT)


def los_path(d: Sequence[float], frequency_hz: float) -> Path:
    """The deterministic LOS path: geometry for angles/delay, Friis for loss."""
    geometry = los_geometry(d)
    return Path(
        path_loss=friis_path_loss(geometry.delay_s * SPEED_OF_LIGHT, frequency_hz),
        aoa_azimuth=geometry.aoa_azimuth,
        aoa_elevation=geometry.aoa_elevation,
        aod_azimuth=geometry.aod_azimuth,
        aod_elevation=geometry.aod_elevation,
        delay=geometry.delay_s,
    )


def angular_separation(az1: float, el1: float, az2: float, el2: float) -> float:
    """Great-circle angle in degrees between two directions."""
    a1, e1, a2, e2 = (math.radians(v) for v in (az1, el1, az2, el2))
    cos_sep = math.sin(e1) * math.sin(e2) + math.cos(e1) * math.cos(e2) * math.cos(a1 - a2)
    return math.degrees(math.acos(max(-1.0, min(1.0, cos_sep))))


def angle_offsets(path: Path, geometry: LosGeometry) -> tuple[float, float, float, float]:
    """(aoa_az, aoa_el, aod_az, aod_el) of a path relative to the LOS direction.

    Azimuth offsets are wrapped into [-180, 180).
    """
    return (
        wrap_azimuth(path.aoa_azimuth - geometry.aoa_azimuth),
        path.aoa_elevation - geometry.aoa_elevation,
        wrap_azimuth(path.aod_azimuth - geometry.aod_azimuth),
        path.aod_elevation - geometry.aod_elevation,
    )
