"""JSON-lines link datasets: load, save, split and CSV export.

One link per line::

    {"d": [dx, dy, dz], "cell_type": "terrestrial", "paths": [
        {"loss_db": 101.4, "aoa_az": 180.0, "aoa_el": 0.0,
         "aod_az": 0.0, "aod_el": 0.0, "delay_s": 3.3e-07}, ...]}

Absent paths are omitted; files never carry 200 dB padding. The link state
is derived on ingest: NoLink without paths, LOS when a path matches the
direct-path geometry, NLOS otherwise.
"""

import json
import logging
from collections.abc import Iterator, Sequence
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path as FilePath
from typing import Any

import numpy as np
import pandas as pd
from pydantic import ValidationError

from mmwave_channel_gen.channel.geometry import LosGeometry, angular_separation, los_geometry
from mmwave_channel_gen.config.settings import get_settings
from mmwave_channel_gen.config.standards import K_MAX, TRAIN_FRACTION, LinkState
from mmwave_channel_gen.errors import DatasetFormatError
from mmwave_channel_gen.models.channel import Link, LinkCondition, Path
from mmwave_channel_gen.models.records import ConditionRecord, LinkRecord
from mmwave_channel_gen.rng import derive_rng

logger = logging.getLogger(__name__)


class SourceKind(str, Enum):
    """Where a dataset came from."""

    FILE = "file"
    ORACLE = "oracle"


class SplitTag(str, Enum):
    """Split assignment of one link."""

    TRAIN = "train"
    TEST = "test"


@dataclass
class Dataset:
    """Links plus their provenance and optional train/test tags."""

    links: list[Link]
    source: SourceKind = SourceKind.FILE
    source_info: dict[str, Any] = field(default_factory=dict)
    split: list[SplitTag] | None = None
    split_seed: int | None = None

    def __len__(self) -> int:
        return len(self.links)

    def _tagged(self, tag: SplitTag) -> list[Link]:
        if self.split is None:
            raise ValueError("Dataset has not been split; call split_train_test first")
        return [link for link, t in zip(self.links, self.split, strict=True) if t is tag]

    @property
    def train_links(self) -> list[Link]:
        return self._tagged(SplitTag.TRAIN)

    @property
    def test_links(self) -> list[Link]:
        return self._tagged(SplitTag.TEST)


def _format_error(e: ValidationError, line_number: int | None) -> DatasetFormatError:
    first = e.errors()[0]
    where = ".".join(str(part) for part in first["loc"]) or None
    return DatasetFormatError(first["msg"], line_number=line_number, field=where)


def iter_json_lines(path: str | FilePath) -> Iterator[tuple[int, Any]]:
    """Yield (line_number, parsed object) for every nonblank line.

    Raises:
        DatasetFormatError: On a line that is not valid JSON
    """
    with FilePath(path).open("r", encoding="utf-8") as f:
        for line_number, line in enumerate(f, start=1):
            text = line.strip()
            if not text:
                continue
            try:
                yield line_number, json.loads(text)
            except json.JSONDecodeError as e:
                raise DatasetFormatError(f"invalid JSON ({e.msg})", line_number=line_number) from e


def _matches_los(path: Path, geometry: LosGeometry, angle_tol_deg: float, delay_tol_s: float) -> bool:
    if abs(path.delay - geometry.delay_s) > delay_tol_s:
        return False
    aod_error = angular_separation(path.aod_azimuth, path.aod_elevation, geometry.aod_azimuth, geometry.aod_elevation)
    aoa_error = angular_separation(path.aoa_azimuth, path.aoa_elevation, geometry.aoa_azimuth, geometry.aoa_elevation)
    return aod_error <= angle_tol_deg and aoa_error <= angle_tol_deg


def link_from_paths(
    condition: LinkCondition,
    paths: Sequence[Path],
    line_number: int | None = None,
) -> Link:
    """Derive the state of an unlabeled path list and assemble a canonical Link.

    The strongest path matching the direct-path geometry within the configured
    angle and delay tolerances becomes the LOS path and is snapped to the exact
    geometry. More than 20 paths are truncated to the strongest, with a warning.
    """
    if not paths:
        return Link(condition=condition, state=LinkState.NO_LINK)

    settings = get_settings()
    geometry = los_geometry(condition.d)
    matches = [
        i
        for i, p in enumerate(paths)
        if _matches_los(p, geometry, settings.los_angle_tolerance_deg, settings.los_delay_tolerance_s)
    ]

    los: Path | None = None
    others = list(paths)
    if matches:
        best = min(matches, key=lambda i: paths[i].path_loss)
        los = Path(
            path_loss=paths[best].path_loss,
            aoa_azimuth=geometry.aoa_azimuth,
            aoa_elevation=geometry.aoa_elevation,
            aod_azimuth=geometry.aod_azimuth,
            aod_elevation=geometry.aod_elevation,
            delay=geometry.delay_s,
        )
        others = [p for i, p in enumerate(paths) if i != best]

    room = K_MAX - (1 if los is not None else 0)
    if len(others) > room:
        where = f"line {line_number}: " if line_number is not None else ""
        logger.warning("%s%d paths exceed the %d-path limit; keeping the strongest", where, len(paths), K_MAX)
        others = sorted(others, key=lambda p: p.path_loss)[:room]

    state = LinkState.LOS if los is not None else LinkState.NLOS
    return Link.build(condition, state, los, others)


def record_to_link(record: Any, line_number: int | None = None) -> Link:
    """Validate one parsed record and convert it to a Link.

    Raises:
        DatasetFormatError: For malformed or out-of-range records
    """
    try:
        parsed = LinkRecord.model_validate(record)
        condition = parsed.to_condition()
    except ValidationError as e:
        raise _format_error(e, line_number) from e
    return link_from_paths(condition, [p.to_path() for p in parsed.paths], line_number)


def load_dataset(path: str | FilePath) -> Dataset:
    """Load a JSON-lines dataset.

    Raises:
        FileNotFoundError: If the file does not exist
        DatasetFormatError: With the line number and field of the first bad record
    """
    links = [record_to_link(record, n) for n, record in iter_json_lines(path)]
    logger.info("Loaded %d links from %s", len(links), path)
    return Dataset(links=links, source=SourceKind.FILE, source_info={"path": str(path)})


def load_conditions(path: str | FilePath) -> list[LinkCondition]:
    """Load link conditions; ``paths`` and other extra keys are ignored.

    Raises:
        DatasetFormatError: For malformed records or zero displacements
    """
    conditions: list[LinkCondition] = []
    for n, record in iter_json_lines(path):
        try:
            conditions.append(ConditionRecord.model_validate(record).to_condition())
        except ValidationError as e:
            raise _format_error(e, n) from e
    return conditions


def save_dataset(links: Sequence[Link], path: str | FilePath) -> None:
    """Write links as JSON lines, including the informational state."""
    with FilePath(path).open("w", encoding="utf-8") as f:
        for link in links:
            f.write(json.dumps(link.to_dict()) + "\n")
    logger.info("Wrote %d links to %s", len(links), path)


def save_conditions(conditions: Sequence[LinkCondition], path: str | FilePath) -> None:
    """Write link conditions as JSON lines."""
    with FilePath(path).open("w", encoding="utf-8") as f:
        for u in conditions:
            f.write(json.dumps(u.to_dict()) + "\n")


def links_frame(links: Sequence[Link]) -> pd.DataFrame:
    """One row per path; a NoLink link contributes one row with empty path fields."""
    rows: list[dict[str, Any]] = []
    for index, link in enumerate(links):
        base = {
            "link_index": index,
            "dx": link.condition.d[0],
            "dy": link.condition.d[1],
            "dz": link.condition.d[2],
            "cell_type": link.condition.cell_type.value,
            "state": link.state.value,
        }
        if not link.paths:
            rows.append(base | {"path_index": None})
        for k, p in enumerate(link.paths):
            rows.append(base | {"path_index": k} | p.to_dict())
    columns = [
        "link_index", "dx", "dy", "dz", "cell_type", "state", "path_index",
        "loss_db", "aoa_az", "aoa_el", "aod_az", "aod_el", "delay_s",
    ]  # fmt: skip
    return pd.DataFrame(rows, columns=columns)


def export_csv(links: Sequence[Link], path: str | FilePath) -> None:
    """Interoperability export, one row per path."""
    links_frame(links).to_csv(path, index=False, na_rep="")


def split_train_test(dataset: Dataset, fraction: float = TRAIN_FRACTION, seed: int = 0) -> Dataset:
    """Assign round(fraction * n) links to Train uniformly at random, the rest to Test.

    Raises:
        ValueError: If the dataset is empty or the fraction is outside (0, 1)
    """
    if not 0.0 < fraction < 1.0:
        raise ValueError(f"fraction must be in (0, 1), got {fraction}")
    n = len(dataset.links)
    if n == 0:
        raise ValueError("Cannot split an empty dataset")
    n_train = int(round(fraction * n))
    order = derive_rng(seed).permutation(n)
    tags = np.full(n, SplitTag.TEST, dtype=object)
    tags[order[:n_train]] = SplitTag.TRAIN
    return Dataset(
        links=list(dataset.links),
        source=dataset.source,
        source_info=dict(dataset.source_info),
        split=list(tags),
        split_seed=seed,
    )
