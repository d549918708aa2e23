"""Pydantic models for links, paths and link conditions.

Angle convention: azimuth is measured counterclockwise from the +x axis in
degrees and lives in [-180, 180); elevation is measured from the horizontal
plane in [-90, 90], positive up. The displacement ``d`` points from the UAV
(transmitter) to the gNB (receiver): the LOS departure direction is d/|d| at
the UAV and the LOS arrival direction is -d/|d| at the gNB.
"""

import math
from collections.abc import Iterable
from typing import Self

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from mmwave_channel_gen.config.standards import K_MAX, L_MAX_DB, SPEED_OF_LIGHT, CellType, LinkState

LOS_DELAY_TOLERANCE_S = 1e-12


def wrap_azimuth(angle_deg: float) -> float:
    """Wrap an azimuth into [-180, 180)."""
    wrapped = (angle_deg + 180.0) % 360.0 - 180.0
    # Float modulo can land exactly on +180 for inputs just below -180
    return -180.0 if wrapped >= 180.0 else wrapped


class Path(BaseModel):
    """One propagation path: loss, arrival/departure angles and delay."""

    model_config = ConfigDict(frozen=True)

    path_loss: float = Field(..., gt=0.0, le=L_MAX_DB, description="Path loss in dB")
    aoa_azimuth: float = Field(..., description="Arrival azimuth in degrees")
    aoa_elevation: float = Field(..., ge=-90.0, le=90.0, description="Arrival elevation in degrees")
    aod_azimuth: float = Field(..., description="Departure azimuth in degrees")
    aod_elevation: float = Field(..., ge=-90.0, le=90.0, description="Departure elevation in degrees")
    delay: float = Field(..., ge=0.0, description="Absolute propagation delay in seconds")

    @field_validator("aoa_azimuth", "aod_azimuth")
    @classmethod
    def _wrap(cls, value: float) -> float:
        if not math.isfinite(value):
            raise ValueError("azimuth must be finite")
        return wrap_azimuth(value)

    @field_validator("path_loss", "aoa_elevation", "aod_elevation", "delay")
    @classmethod
    def _finite(cls, value: float) -> float:
        if not math.isfinite(value):
            raise ValueError("value must be finite")
        return value

    @property
    def is_padding(self) -> bool:
        return self.path_loss >= L_MAX_DB

    def to_dict(self) -> dict[str, float]:
        """Convert to the dataset file layout."""
        return {
            "loss_db": self.path_loss,
            "aoa_az": self.aoa_azimuth,
            "aoa_el": self.aoa_elevation,
            "aod_az": self.aod_azimuth,
            "aod_el": self.aod_elevation,
            "delay_s": self.delay,
        }


class LinkCondition(BaseModel):
    """Displacement from UAV to gNB plus the gNB type."""

    model_config = ConfigDict(frozen=True)

    d: tuple[float, float, float] = Field(..., description="(d_x, d_y, d_z) in meters")
    cell_type: CellType

    @field_validator("d")
    @classmethod
    def _nonzero(cls, value: tuple[float, float, float]) -> tuple[float, float, float]:
        if not all(math.isfinite(c) for c in value):
            raise ValueError("displacement must be finite")
        if math.hypot(*value) <= 0.0:
            raise ValueError("displacement must have nonzero length")
        return value

    @property
    def horizontal_distance(self) -> float:
        return math.hypot(self.d[0], self.d[1])

    @property
    def distance(self) -> float:
        return math.hypot(*self.d)

    @property
    def los_delay(self) -> float:
        return self.distance / SPEED_OF_LIGHT

    @property
    def uav_height_above_gnb(self) -> float:
        return -self.d[2]

    def to_dict(self) -> dict[str, object]:
        return {"d": list(self.d), "cell_type": self.cell_type.value}


def _sorted_by_loss(paths: Iterable[Path]) -> list[Path]:
    return sorted(paths, key=lambda p: p.path_loss)


class Link(BaseModel):
    """A transmitter-receiver pair: condition, state and path list.

    Paths are ordered ascending by loss; for LOS links the geometric LOS path
    comes first and the NLOS paths after it are ordered ascending by loss.
    """

    model_config = ConfigDict(frozen=True)

    condition: LinkCondition
    state: LinkState
    paths: tuple[Path, ...] = ()

    @model_validator(mode="after")
    def _check_invariants(self) -> Self:
        if len(self.paths) > K_MAX:
            raise ValueError(f"a link holds at most {K_MAX} paths, got {len(self.paths)}")
        if any(p.is_padding for p in self.paths):
            raise ValueError(f"padding paths ({L_MAX_DB} dB) must not be stored in a link")
        if (self.state is LinkState.NO_LINK) != (len(self.paths) == 0):
            raise ValueError("state must be NoLink exactly when the link has no paths")

        nlos = self.paths
        if self.state is LinkState.LOS:
            if abs(self.paths[0].delay - self.condition.los_delay) > LOS_DELAY_TOLERANCE_S:
                raise ValueError("first path of a LOS link must be the geometric LOS path")
            nlos = self.paths[1:]
        losses = [p.path_loss for p in nlos]
        if any(a > b for a, b in zip(losses, losses[1:], strict=False)):
            raise ValueError("paths must be sorted ascending by path loss")
        return self

    @classmethod
    def build(
        cls,
        condition: LinkCondition,
        state: LinkState,
        los_path: Path | None,
        nlos_paths: Iterable[Path],
    ) -> "Link":
        """Assemble a link, sorting NLOS paths and placing the LOS path first."""
        ordered = _sorted_by_loss(nlos_paths)
        paths = ([los_path] if los_path is not None else []) + ordered
        return cls(condition=condition, state=state, paths=tuple(paths))

    @property
    def nlos_paths(self) -> tuple[Path, ...]:
        return self.paths[1:] if self.state is LinkState.LOS else self.paths

    def to_dict(self) -> dict[str, object]:
        """Convert to one dataset-file record."""
        return {
            **self.condition.to_dict(),
            "state": self.state.value,
            "paths": [p.to_dict() for p in self.paths],
        }
