"""Plot-ready CSV files and a summary JSON for a comparison report."""

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import pandas as pd

from mmwave_channel_gen.evaluation.compare import ComparisonReport

logger = logging.getLogger(__name__)

SUMMARY_FILE = "summary.json"
ECDF_COLUMNS = ["source", "value", "cdf"]
LOSMAP_COLUMNS = ["dh_lo", "dh_hi", "dz_lo", "dz_hi", "p", "count"]
ANGDIST_COLUMNS = ["d_lo", "d_hi", "ang_lo", "ang_hi", "mass"]


@dataclass
class ReportFiles:
    """A report as read back from disk, keyed by the file-name suffix."""

    summary: dict[str, Any]
    ecdfs: dict[str, pd.DataFrame] = field(default_factory=dict)
    los_maps: dict[str, pd.DataFrame] = field(default_factory=dict)
    angular: dict[str, pd.DataFrame] = field(default_factory=dict)


def _write_csv(frame: pd.DataFrame, path: Path, written: list[Path]) -> None:
    frame.to_csv(path, index=False, na_rep="")
    written.append(path)


def write_report(report: ComparisonReport, outdir: str | Path) -> list[Path]:
    """Write every table of a report plus ``summary.json`` under ``outdir``.

    Returns:
        Paths of the files written, in write order
    """
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []

    for cell_type, by_source in report.ecdfs.items():
        frames = [ecdf.to_frame().assign(source=name) for name, ecdf in by_source.items()]
        _write_csv(pd.concat(frames, ignore_index=True)[ECDF_COLUMNS], out / f"ecdf_{cell_type}.csv", written)

    for source, hist in report.los_maps.items():
        frame = hist.to_frame("dh", "dz", "p")
        _write_csv(frame[LOSMAP_COLUMNS], out / f"losmap_{source}.csv", written)

    for angle, by_source in report.angular.items():
        for source, hist in by_source.items():
            frame = hist.to_frame("d", "ang", "mass")
            _write_csv(frame[ANGDIST_COLUMNS], out / f"angdist_{angle}_{source}.csv", written)

    summary_path = out / SUMMARY_FILE
    summary_path.write_text(json.dumps(report.summary(), indent=2, sort_keys=True) + "\n", encoding="utf-8")
    written.append(summary_path)
    logger.info("Wrote %d report files to %s", len(written), out)
    return written


def read_report(outdir: str | Path) -> ReportFiles:
    """Read a report directory written by :func:`write_report`.

    Raises:
        FileNotFoundError: If ``summary.json`` is missing
    """
    out = Path(outdir)
    summary = json.loads((out / SUMMARY_FILE).read_text(encoding="utf-8"))
    files = ReportFiles(summary=summary)
    for path in sorted(out.glob("ecdf_*.csv")):
        files.ecdfs[path.stem.removeprefix("ecdf_")] = pd.read_csv(path)
    for path in sorted(out.glob("losmap_*.csv")):
        files.los_maps[path.stem.removeprefix("losmap_")] = pd.read_csv(path)
    for path in sorted(out.glob("angdist_*.csv")):
        files.angular[path.stem.removeprefix("angdist_")] = pd.read_csv(path)
    return files
