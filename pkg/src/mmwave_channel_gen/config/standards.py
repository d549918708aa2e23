"""Physical constants, model dimensions and published defaults."""

from enum import Enum
from typing import Final


class LinkState(str, Enum):
    """Link states predicted by the first stage, in categorical order."""

    LOS = "los"
    NLOS = "nlos"
    NO_LINK = "nolink"


class CellType(str, Enum):
    """gNB deployment types."""

    TERRESTRIAL = "terrestrial"
    AERIAL = "aerial"


# Sampling and serialization rely on this order
LINK_STATE_ORDER: Final[tuple[LinkState, ...]] = (
    LinkState.LOS,
    LinkState.NLOS,
    LinkState.NO_LINK,
)

SPEED_OF_LIGHT: Final[float] = 299_792_458.0

# Path vector conventions
K_MAX: Final[int] = 20
L_MAX_DB: Final[float] = 200.0
PATH_FIELDS: Final[int] = 6
PATH_VECTOR_DIM: Final[int] = K_MAX * PATH_FIELDS
ABSENT_THRESHOLD_DB: Final[float] = 195.0
PADDING_BLOCK: Final[tuple[float, ...]] = (L_MAX_DB, 0.0, 0.0, 0.0, 0.0, 0.0)

# Network dimensions
CONDITION_DIM: Final[int] = 5
LATENT_DIM: Final[int] = 20
LOG_VAR_CLAMP: Final[float] = 10.0

# Link-state predictor defaults
LINK_STATE_HIDDEN: Final[tuple[int, ...]] = (25, 10)
LINK_STATE_EPOCHS: Final[int] = 50
LINK_STATE_LEARNING_RATE: Final[float] = 1e-3

# Path VAE defaults
ENCODER_HIDDEN: Final[tuple[int, ...]] = (200, 80)
DECODER_HIDDEN: Final[tuple[int, ...]] = (200, 80)
VAE_EPOCHS: Final[int] = 10_000
VAE_LEARNING_RATE: Final[float] = 1e-4

BATCH_SIZE: Final[int] = 100
TRAIN_FRACTION: Final[float] = 0.7

# Adam defaults
ADAM_BETA1: Final[float] = 0.9
ADAM_BETA2: Final[float] = 0.999
ADAM_EPSILON: Final[float] = 1e-7

# Uplink single-cell defaults
DEFAULT_CARRIER_HZ: Final[float] = 28e9
UAV_TX_POWER_DBM: Final[float] = 23.0
BANDWIDTH_HZ: Final[float] = 400e6
MISC_LOSSES_DB: Final[float] = 6.0
NOISE_DENSITY_DBM_HZ: Final[float] = -174.0
UAV_ELEMENTS: Final[int] = 16
GNB_ELEMENTS: Final[int] = 64
FRONT_TO_BACK_DB: Final[float] = 30.0
SECTOR_HPBW_DEG: Final[float] = 90.0
SECTOR_DOWNTILT_DEG: Final[float] = 10.0
SECTOR_AZIMUTHS_DEG: Final[tuple[float, ...]] = (0.0, 120.0, 240.0)

GNB_HEIGHT_M: Final[dict[CellType, float]] = {
    CellType.TERRESTRIAL: 2.0,
    CellType.AERIAL: 30.0,
}

# Evaluation
STRONGEST_PATHS: Final[int] = 10
SNR_REALIZATIONS: Final[int] = 100

MODEL_FORMAT_VERSION: Final[str] = "1.0"
