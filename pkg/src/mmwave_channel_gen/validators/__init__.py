"""Validators for input files."""

from mmwave_channel_gen.validators.dataset import DatasetValidationResult, validate_dataset_file

__all__ = [
    "DatasetValidationResult",
    "validate_dataset_file",
]
