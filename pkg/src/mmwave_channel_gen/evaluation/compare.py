"""Model-versus-test comparison: one generated link per test condition."""

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import Any, Protocol, runtime_checkable

import numpy as np
from numpy.typing import ArrayLike

from mmwave_channel_gen.config.standards import LINK_STATE_ORDER, CellType
from mmwave_channel_gen.evaluation.histograms import (
    AngleKind,
    Histogram2D,
    MapSource,
    StateProbabilitySource,
    angular_distribution,
    angular_spread,
    los_prob_map,
)
from mmwave_channel_gen.evaluation.stats import Ecdf, ecdf, ks_statistic, omni_path_loss, present_values
from mmwave_channel_gen.generative.generator import ChannelModel
from mmwave_channel_gen.generative.link_state import state_recall
from mmwave_channel_gen.models.channel import Link, LinkCondition

logger = logging.getLogger(__name__)

TEST_SOURCE = "test"
MODEL_SOURCE = "model"
SOURCES = (TEST_SOURCE, MODEL_SOURCE)


@runtime_checkable
class LinkSource(Protocol):
    """Anything that produces one link per condition from a seed."""

    def sample_links(self, conditions: Sequence[LinkCondition], seed: int) -> list[Link]: ...


@dataclass
class ReplaySource:
    """Replays a fixed list of links, ignoring the seed."""

    links: Sequence[Link]

    def sample_links(self, conditions: Sequence[LinkCondition], seed: int) -> list[Link]:
        if [link.condition for link in self.links] != list(conditions):
            raise ValueError("ReplaySource can only replay the conditions it was built from")
        return list(self.links)


def _nan_to_none(value: float) -> float | None:
    return None if math.isnan(value) else value


@dataclass
class ComparisonReport:
    """Everything :func:`compare_model_to_test` measures."""

    seed: int
    ks: dict[str, float | None] = field(default_factory=dict)
    counts: dict[str, dict[str, int]] = field(default_factory=dict)
    excluded: dict[str, dict[str, int]] = field(default_factory=dict)
    state_confusion: dict[str, dict[str, float]] = field(default_factory=dict)
    state_recall: dict[str, float | None] | None = None
    ecdfs: dict[str, dict[str, Ecdf]] = field(default_factory=dict)
    los_maps: dict[str, Histogram2D] = field(default_factory=dict)
    angular: dict[str, dict[str, Histogram2D]] = field(default_factory=dict)
    angular_spread: dict[str, dict[str, list[float | None]]] = field(default_factory=dict)

    def summary(self) -> dict[str, Any]:
        """JSON-ready scalar summary."""
        return {
            "seed": self.seed,
            "ks": self.ks,
            "counts": self.counts,
            "excluded": self.excluded,
            "state_confusion": self.state_confusion,
            "state_recall": self.state_recall,
            "angular_spread": self.angular_spread,
        }


def _omni_by_cell(links: Sequence[Link], cell_type: CellType) -> tuple[list[float], int]:
    return present_values(omni_path_loss(link) for link in links if link.condition.cell_type is cell_type)


def _state_confusion(test_links: Sequence[Link], generated: Sequence[Link]) -> dict[str, dict[str, float]]:
    confusion: dict[str, dict[str, float]] = {}
    for true_state in LINK_STATE_ORDER:
        rows = [g.state for t, g in zip(test_links, generated, strict=True) if t.state is true_state]
        if not rows:
            continue
        confusion[true_state.value] = {
            s.value: sum(1 for r in rows if r is s) / len(rows) for s in LINK_STATE_ORDER
        }
    return confusion


def compare_model_to_test(
    source: LinkSource,
    test_links: Sequence[Link],
    master_seed: int,
    dh_edges: ArrayLike | None = None,
    dz_edges: ArrayLike | None = None,
    distance_edges: ArrayLike | None = None,
    angle_edges: ArrayLike | None = None,
) -> ComparisonReport:
    """Generate one link per test condition and compare the two link sets.

    NoLink links have no omnidirectional loss; they are excluded from the KS
    statistic and counted per source in ``excluded``.

    Args:
        source: Trained model or any other link source
        test_links: Held-out links
        master_seed: Seed for the generated links

    Returns:
        ComparisonReport, deterministic per seed

    Raises:
        ValueError: If the test set is empty
    """
    if not test_links:
        raise ValueError("compare_model_to_test needs a nonempty test set")
    conditions = [link.condition for link in test_links]
    generated = source.sample_links(conditions, master_seed)
    by_source = {TEST_SOURCE: list(test_links), MODEL_SOURCE: generated}
    report = ComparisonReport(seed=master_seed)

    for cell_type in CellType:
        values: dict[str, list[float]] = {}
        report.counts[cell_type.value] = {}
        report.excluded[cell_type.value] = {}
        for name, links in by_source.items():
            kept, absent = _omni_by_cell(links, cell_type)
            values[name] = kept
            report.counts[cell_type.value][name] = len(kept)
            report.excluded[cell_type.value][name] = absent
        if values[TEST_SOURCE] and values[MODEL_SOURCE]:
            report.ks[cell_type.value] = ks_statistic(values[TEST_SOURCE], values[MODEL_SOURCE])
            report.ecdfs[cell_type.value] = {name: ecdf(v) for name, v in values.items()}
        else:
            report.ks[cell_type.value] = None
        logger.info("omni path-loss KS (%s): %s", cell_type.value, report.ks[cell_type.value])

    report.state_confusion = _state_confusion(test_links, generated)
    if isinstance(source, ChannelModel):
        recall = state_recall(source.link_state, test_links)
        report.state_recall = {s.value: r for s, r in recall.items()}

    report.los_maps[TEST_SOURCE] = los_prob_map(test_links, dh_edges, dz_edges)
    if isinstance(source, StateProbabilitySource):
        report.los_maps[MODEL_SOURCE] = los_prob_map(
            test_links, dh_edges, dz_edges, MapSource.MODEL, model=source
        )
    else:
        report.los_maps[MODEL_SOURCE] = los_prob_map(generated, dh_edges, dz_edges)

    for kind in AngleKind:
        report.angular[kind.value] = {}
        report.angular_spread[kind.value] = {}
        for name, links in by_source.items():
            report.angular[kind.value][name] = angular_distribution(links, distance_edges, angle_edges, kind)
            spread = angular_spread(links, distance_edges, kind)
            report.angular_spread[kind.value][name] = [_nan_to_none(float(v)) for v in np.asarray(spread)]
    return report
