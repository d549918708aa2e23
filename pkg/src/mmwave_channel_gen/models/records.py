"""Pydantic models for dataset file records (one JSON object per line)."""

import math

from pydantic import BaseModel, ConfigDict, Field, field_validator

from mmwave_channel_gen.config.standards import L_MAX_DB, CellType, LinkState
from mmwave_channel_gen.models.channel import LinkCondition, Path


class PathRecord(BaseModel):
    """One path as stored in a dataset file. Absent paths are omitted."""

    model_config = ConfigDict(extra="forbid")

    loss_db: float = Field(..., gt=0.0, lt=L_MAX_DB)
    aoa_az: float
    aoa_el: float = Field(..., ge=-90.0, le=90.0)
    aod_az: float
    aod_el: float = Field(..., ge=-90.0, le=90.0)
    delay_s: float = Field(..., ge=0.0)

    @field_validator("loss_db", "aoa_az", "aoa_el", "aod_az", "aod_el", "delay_s")
    @classmethod
    def _finite(cls, value: float) -> float:
        if not math.isfinite(value):
            raise ValueError("value must be finite")
        return value

    def to_path(self) -> Path:
        return Path(
            path_loss=self.loss_db,
            aoa_azimuth=self.aoa_az,
            aoa_elevation=self.aoa_el,
            aod_azimuth=self.aod_az,
            aod_elevation=self.aod_el,
            delay=self.delay_s,
        )


class ConditionRecord(BaseModel):
    """A link condition as stored in a conditions file."""

    model_config = ConfigDict(extra="ignore")

    d: tuple[float, float, float]
    cell_type: CellType

    def to_condition(self) -> LinkCondition:
        return LinkCondition(d=self.d, cell_type=self.cell_type)


class LinkRecord(ConditionRecord):
    """A full link record.

    ``state`` is informational; the loader derives the state from the paths.
    """

    paths: list[PathRecord] = Field(default_factory=list)
    state: LinkState | None = None
