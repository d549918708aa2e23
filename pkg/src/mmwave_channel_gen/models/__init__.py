"""Pydantic models for channel data, dataset records and run configuration."""

from mmwave_channel_gen.models.channel import Link, LinkCondition, Path, wrap_azimuth
from mmwave_channel_gen.models.records import ConditionRecord, LinkRecord, PathRecord
from mmwave_channel_gen.models.training import LinkStateTrainConfig, VaeTrainConfig

__all__ = [
    # Training
    "LinkStateTrainConfig",
    "VaeTrainConfig",
    # Channel data
    "Path",
    "LinkCondition",
    "Link",
    "wrap_azimuth",
    # File records
    "PathRecord",
    "ConditionRecord",
    "LinkRecord",
]
