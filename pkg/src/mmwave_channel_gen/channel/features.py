"""Fixed transform from link conditions to the 5-d network features.

Link-state features: (d_h, d_z, d_3d, is_aerial, is_terrestrial).
VAE features:        (d_h, d_z, d_3d, is_aerial, is_los).
"""

import math
from collections.abc import Sequence
from enum import Enum

import numpy as np
from numpy.typing import NDArray

from mmwave_channel_gen.config.standards import CellType, LinkState
from mmwave_channel_gen.errors import InvalidConditionError
from mmwave_channel_gen.models.channel import LinkCondition


class FeatureMode(str, Enum):
    """Which network the features feed."""

    LINK_STATE = "link_state"
    VAE = "vae"


def condition_features(
    u: LinkCondition,
    mode: FeatureMode = FeatureMode.LINK_STATE,
    state: LinkState | None = None,
) -> NDArray[np.float64]:
    """Map a link condition to its 5-d feature vector.

    Args:
        u: Link condition
        mode: LINK_STATE or VAE
        state: Link state, required in VAE mode (LOS or NLOS)

    Returns:
        Feature vector of length 5

    Raises:
        InvalidConditionError: For a zero displacement or a missing/NoLink state in VAE mode
    """
    dx, dy, dz = u.d
    d_h = math.hypot(dx, dy)
    d_3d = math.hypot(dx, dy, dz)
    if d_3d <= 0.0:
        raise InvalidConditionError("Zero-length displacement")

    is_aerial = 1.0 if u.cell_type is CellType.AERIAL else 0.0
    if mode is FeatureMode.LINK_STATE:
        last = 1.0 - is_aerial
    else:
        if state not in (LinkState.LOS, LinkState.NLOS):
            raise InvalidConditionError(f"VAE features need a LOS or NLOS state, got {state}")
        last = 1.0 if state is LinkState.LOS else 0.0
    return np.array([d_h, dz, d_3d, is_aerial, last])


def condition_feature_matrix(
    conditions: Sequence[LinkCondition],
    mode: FeatureMode = FeatureMode.LINK_STATE,
    states: Sequence[LinkState] | None = None,
) -> NDArray[np.float64]:
    """Stack features for many conditions into an (n, 5) matrix."""
    if mode is FeatureMode.VAE:
        if states is None or len(states) != len(conditions):
            raise InvalidConditionError("VAE features need one state per condition")
        rows = [condition_features(u, mode, s) for u, s in zip(conditions, states, strict=True)]
    else:
        rows = [condition_features(u, mode) for u in conditions]
    if not rows:
        return np.zeros((0, 5))
    return np.vstack(rows)
