"""Evaluation: path-loss statistics, state maps, angular distributions and reports."""

from mmwave_channel_gen.evaluation.compare import (
    ComparisonReport,
    LinkSource,
    ReplaySource,
    compare_model_to_test,
)
from mmwave_channel_gen.evaluation.histograms import (
    AngleKind,
    Histogram2D,
    MapSource,
    angular_distribution,
    angular_spread,
    los_prob_map,
    model_prob_grid,
    state_prob_map,
)
from mmwave_channel_gen.evaluation.report import ReportFiles, read_report, write_report
from mmwave_channel_gen.evaluation.stats import Ecdf, circular_std, ecdf, ks_statistic, omni_path_loss

__all__ = [
    # Statistics
    "omni_path_loss",
    "Ecdf",
    "ecdf",
    "ks_statistic",
    "circular_std",
    # Histograms
    "Histogram2D",
    "MapSource",
    "AngleKind",
    "los_prob_map",
    "state_prob_map",
    "model_prob_grid",
    "angular_distribution",
    "angular_spread",
    # Comparison
    "LinkSource",
    "ReplaySource",
    "ComparisonReport",
    "compare_model_to_test",
    "write_report",
    "read_report",
    "ReportFiles",
]
