"""Antenna patterns, link budget and median-SNR maps."""

from mmwave_channel_gen.antenna.budget import LinkBudget, default_arrays, link_snr, received_power_dbm
from mmwave_channel_gen.antenna.patterns import (
    ArraySpec,
    ElementPattern,
    OrientationKind,
    array_gain,
    directional_gain,
    element_gain,
    relative_angles,
)
from mmwave_channel_gen.antenna.snr_map import GnbSpec, SnrGrid, SnrMap, median_snr, snr_map, write_snr_map

__all__ = [
    "ElementPattern",
    "ArraySpec",
    "OrientationKind",
    "element_gain",
    "array_gain",
    "relative_angles",
    "directional_gain",
    "LinkBudget",
    "default_arrays",
    "received_power_dbm",
    "link_snr",
    "GnbSpec",
    "SnrGrid",
    "SnrMap",
    "median_snr",
    "snr_map",
    "write_snr_map",
]
