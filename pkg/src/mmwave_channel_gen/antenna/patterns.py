"""Element patterns, array orientation and idealized array gain."""

import math
from enum import Enum

import numpy as np
from numpy.typing import ArrayLike, NDArray
from pydantic import BaseModel, ConfigDict, Field

from mmwave_channel_gen.config.standards import FRONT_TO_BACK_DB, SECTOR_HPBW_DEG

FloatArray = NDArray[np.float64]


class OrientationKind(str, Enum):
    """How an array is mounted."""

    DOWN_FACING = "down_facing"
    UP_FACING = "up_facing"
    SECTOR_DOWNTILT = "sector_downtilt"


class ElementPattern(BaseModel):
    """Parabolic-in-dB element pattern with a front-to-back floor."""

    model_config = ConfigDict(frozen=True)

    hpbw_az_deg: float = Field(default=SECTOR_HPBW_DEG, gt=0, le=360, description="Azimuth half-power beamwidth")
    hpbw_el_deg: float = Field(default=SECTOR_HPBW_DEG, gt=0, le=360, description="Elevation half-power beamwidth")
    front_to_back_db: float = Field(default=FRONT_TO_BACK_DB, ge=0, description="Attenuation floor in dB")


class ArraySpec(BaseModel):
    """A uniform planar array steered ideally toward every path."""

    model_config = ConfigDict(frozen=True)

    element_count: int = Field(..., ge=1)
    pattern: ElementPattern = Field(default_factory=ElementPattern)
    orientation: OrientationKind
    tilt_deg: float = Field(default=0.0, ge=-90, le=90, description="Downtilt for sector arrays")
    sector_azimuth_deg: float = Field(default=0.0, description="Sector pointing azimuth")

    @property
    def boresight(self) -> tuple[float, float]:
        """Boresight (azimuth, elevation) in degrees."""
        if self.orientation is OrientationKind.DOWN_FACING:
            return 0.0, -90.0
        if self.orientation is OrientationKind.UP_FACING:
            return 0.0, 90.0
        return self.sector_azimuth_deg, -self.tilt_deg


def element_gain(pattern: ElementPattern, rel_azimuth_deg: ArrayLike, rel_elevation_deg: ArrayLike) -> FloatArray:
    """-min(12 (az/hpbw_az)^2 + 12 (el/hpbw_el)^2, front_to_back) in dB.

    Args:
        pattern: Element pattern
        rel_azimuth_deg: Azimuth relative to boresight, in [-180, 180)
        rel_elevation_deg: Elevation relative to boresight, in [-90, 90]
    """
    az = np.asarray(rel_azimuth_deg, dtype=np.float64) / pattern.hpbw_az_deg
    el = np.asarray(rel_elevation_deg, dtype=np.float64) / pattern.hpbw_el_deg
    return np.asarray(-np.minimum(12.0 * az**2 + 12.0 * el**2, pattern.front_to_back_db))


def array_gain(element_count: int) -> float:
    """Beamforming gain 10*log10(N) of an ideally steered array."""
    if element_count < 1:
        raise ValueError(f"element_count must be >= 1, got {element_count}")
    return 10.0 * math.log10(element_count)


def relative_angles(
    boresight: tuple[float, float],
    azimuth_deg: ArrayLike,
    elevation_deg: ArrayLike,
) -> tuple[FloatArray, FloatArray]:
    """Directions expressed in the array frame, where boresight is (0, 0).

    The world direction is rotated by Rz(-az_b) and then Ry(el_b).
    """
    az_b, el_b = (math.radians(v) for v in boresight)
    az = np.radians(np.asarray(azimuth_deg, dtype=np.float64))
    el = np.radians(np.asarray(elevation_deg, dtype=np.float64))
    x = np.cos(el) * np.cos(az)
    y = np.cos(el) * np.sin(az)
    z = np.sin(el)

    x1 = np.cos(az_b) * x + np.sin(az_b) * y
    y1 = -np.sin(az_b) * x + np.cos(az_b) * y
    x2 = np.cos(el_b) * x1 + np.sin(el_b) * z
    z2 = -np.sin(el_b) * x1 + np.cos(el_b) * z

    rel_az = np.degrees(np.arctan2(y1, x2))
    rel_el = np.degrees(np.arcsin(np.clip(z2, -1.0, 1.0)))
    rel_az = np.mod(rel_az + 180.0, 360.0) - 180.0
    return rel_az, rel_el


def directional_gain(array: ArraySpec, azimuth_deg: ArrayLike, elevation_deg: ArrayLike) -> FloatArray:
    """Array plus element gain in dB toward world directions."""
    rel_az, rel_el = relative_angles(array.boresight, azimuth_deg, elevation_deg)
    return element_gain(array.pattern, rel_az, rel_el) + array_gain(array.element_count)
