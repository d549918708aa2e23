"""Dataset file validation.

Scans a JSON-lines link file without stopping at the first problem and
reports every bad line as ``"<line>: <field>: <message>"``.
"""

import json
from dataclasses import dataclass, field
from pathlib import Path

from mmwave_channel_gen.config.standards import LinkState
from mmwave_channel_gen.data.dataset import record_to_link
from mmwave_channel_gen.errors import DatasetFormatError


@dataclass
class DatasetValidationResult:
    """Result of dataset file validation."""

    is_valid: bool
    line_count: int = 0
    link_count: int = 0
    state_counts: dict[str, int] = field(default_factory=dict)
    errors: list[str] = field(default_factory=list)

    def to_dict(self) -> dict[str, object]:
        """Convert to dictionary for the validate command."""
        return {
            "is_valid": self.is_valid,
            "line_count": self.line_count,
            "link_count": self.link_count,
            "state_counts": self.state_counts,
            "errors": self.errors,
        }


def validate_dataset_file(path: str | Path, max_errors: int = 100) -> DatasetValidationResult:
    """Validate every record of a dataset file.

    Args:
        path: JSON-lines dataset
        max_errors: Stop collecting after this many errors

    Returns:
        DatasetValidationResult; a missing file is reported as an error, not raised
    """
    file_path = Path(path)
    if not file_path.is_file():
        return DatasetValidationResult(is_valid=False, errors=[f"{file_path}: file not found"])

    result = DatasetValidationResult(is_valid=True, state_counts={s.value: 0 for s in LinkState})
    with file_path.open("r", encoding="utf-8") as f:
        for line_number, line in enumerate(f, start=1):
            text = line.strip()
            if not text:
                continue
            result.line_count += 1
            try:
                link = record_to_link(json.loads(text), line_number)
            except json.JSONDecodeError as e:
                result.errors.append(f"{line_number}: (root): invalid JSON ({e.msg})")
            except DatasetFormatError as e:
                result.errors.append(f"{line_number}: {e.field or '(root)'}: {e.reason}")
            else:
                result.link_count += 1
                result.state_counts[link.state.value] += 1
            if len(result.errors) >= max_errors:
                result.errors.append(f"stopped after {max_errors} errors")
                break

    result.is_valid = not result.errors
    return result

