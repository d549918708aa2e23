"""Configuration module for the mmWave channel model."""

from mmwave_channel_gen.config.logging_setup import configure_logging
from mmwave_channel_gen.config.settings import Settings, get_settings
from mmwave_channel_gen.config.standards import (
    K_MAX,
    L_MAX_DB,
    LINK_STATE_ORDER,
    PATH_VECTOR_DIM,
    SPEED_OF_LIGHT,
    CellType,
    LinkState,
)

__all__ = [
    "Settings",
    "get_settings",
    "configure_logging",
    "K_MAX",
    "L_MAX_DB",
    "LINK_STATE_ORDER",
    "PATH_VECTOR_DIM",
    "SPEED_OF_LIGHT",
    "CellType",
    "LinkState",
]
