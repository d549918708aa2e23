"""Uplink link budget: UAV transmitter to a (possibly sectored) gNB."""

import math
from collections.abc import Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from mmwave_channel_gen.antenna.patterns import ArraySpec, OrientationKind, directional_gain
from mmwave_channel_gen.config.standards import (
    BANDWIDTH_HZ,
    GNB_ELEMENTS,
    MISC_LOSSES_DB,
    NOISE_DENSITY_DBM_HZ,
    SECTOR_AZIMUTHS_DEG,
    SECTOR_DOWNTILT_DEG,
    UAV_ELEMENTS,
    UAV_TX_POWER_DBM,
    CellType,
)
from mmwave_channel_gen.models.channel import Link


class LinkBudget(BaseModel):
    """Transmit power, bandwidth and lumped losses of the uplink."""

    model_config = ConfigDict(frozen=True)

    tx_power_dbm: float = Field(default=UAV_TX_POWER_DBM)
    bandwidth_hz: float = Field(default=BANDWIDTH_HZ, gt=0)
    misc_losses_db: float = Field(default=MISC_LOSSES_DB, description="Includes the noise figure")
    noise_density_dbm_hz: float = Field(default=NOISE_DENSITY_DBM_HZ)

    @property
    def noise_power_dbm(self) -> float:
        return self.noise_density_dbm_hz + 10.0 * math.log10(self.bandwidth_hz)


def default_arrays(cell_type: CellType) -> tuple[ArraySpec, list[ArraySpec]]:
    """UAV array and gNB sector arrays for a cell type.

    The UAV array faces down. Terrestrial gNBs have three downtilted sectors;
    aerial gNBs have one up-facing array.
    """
    uav = ArraySpec(element_count=UAV_ELEMENTS, orientation=OrientationKind.DOWN_FACING)
    if cell_type is CellType.AERIAL:
        return uav, [ArraySpec(element_count=GNB_ELEMENTS, orientation=OrientationKind.UP_FACING)]
    sectors = [
        ArraySpec(
            element_count=GNB_ELEMENTS,
            orientation=OrientationKind.SECTOR_DOWNTILT,
            tilt_deg=SECTOR_DOWNTILT_DEG,
            sector_azimuth_deg=azimuth,
        )
        for azimuth in SECTOR_AZIMUTHS_DEG
    ]
    return uav, sectors


def received_power_dbm(
    link: Link,
    tx_array: ArraySpec,
    rx_array: ArraySpec,
    budget: LinkBudget,
) -> float | None:
    """Received power through one rx array, or None for a link without paths."""
    if not link.paths:
        return None
    losses = np.array([p.path_loss for p in link.paths])
    tx_gain = directional_gain(
        tx_array, [p.aod_azimuth for p in link.paths], [p.aod_elevation for p in link.paths]
    )
    rx_gain = directional_gain(
        rx_array, [p.aoa_azimuth for p in link.paths], [p.aoa_elevation for p in link.paths]
    )
    terms = tx_gain + rx_gain - losses
    peak = float(terms.max())
    combined = peak + 10.0 * math.log10(float(np.sum(10.0 ** ((terms - peak) / 10.0))))
    return budget.tx_power_dbm - budget.misc_losses_db + combined


def link_snr(
    link: Link,
    tx_array: ArraySpec,
    rx_arrays: Sequence[ArraySpec],
    budget: LinkBudget | None = None,
) -> float | None:
    """Wideband SNR in dB on the best rx sector.

    Paths combine noncoherently; every path sees the full array gain at both
    ends, tapered by the element pattern in its own direction.

    Returns:
        SNR in dB, or None when the link has no paths
    """
    budget = budget or LinkBudget()
    if not rx_arrays:
        raise ValueError("At least one rx array is required")
    powers = [received_power_dbm(link, tx_array, rx, budget) for rx in rx_arrays]
    present = [p for p in powers if p is not None]
    if not present:
        return None
    return max(present) - budget.noise_power_dbm
