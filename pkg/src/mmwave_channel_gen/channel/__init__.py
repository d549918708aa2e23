"""Deterministic transforms between link data and network-facing vectors."""

from mmwave_channel_gen.channel.features import (
    FeatureMode,
    condition_feature_matrix,
    condition_features,
)
from mmwave_channel_gen.channel.geometry import (
    LosGeometry,
    angle_offsets,
    angular_separation,
    direction_angles,
    friis_path_loss,
    los_geometry,
    los_path,
    wrap_azimuths,
)
from mmwave_channel_gen.channel.paths import decode_paths, encode_path_matrix, encode_paths
from mmwave_channel_gen.channel.scaler import (
    StandardScaler,
    scaler_apply,
    scaler_fit,
    scaler_invert,
)

__all__ = [
    "FeatureMode",
    "condition_features",
    "condition_feature_matrix",
    "LosGeometry",
    "angle_offsets",
    "angular_separation",
    "direction_angles",
    "los_geometry",
    "los_path",
    "friis_path_loss",
    "wrap_azimuths",
    "encode_paths",
    "encode_path_matrix",
    "decode_paths",
    "StandardScaler",
    "scaler_fit",
    "scaler_apply",
    "scaler_invert",
]
