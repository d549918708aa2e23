"""Tests for the synthetic oracle channel."""

import math

import numpy as np
import pytest

from mmwave_channel_gen.channel.geometry import friis_path_loss, los_path
from mmwave_channel_gen.config.standards import CellType, LinkState
from mmwave_channel_gen.data.dataset import Dataset, SourceKind
from mmwave_channel_gen.data.oracle import (
    CELL_TYPE_CYCLE,
    OracleParams,
    angular_scale_deg,
    oracle_generate,
    oracle_link,
    oracle_nlos_paths,
    oracle_state_probs,
    sample_conditions,
)
from mmwave_channel_gen.models.channel import LinkCondition
from mmwave_channel_gen.rng import derive_rng


class TestOracleStateProbs:
    """Tests for the analytic state probabilities."""

    def test_directly_below_is_los(self) -> None:
        """Test that zero horizontal distance gives P(LOS) = 1."""
        u = LinkCondition(d=(0.0, 0.0, -80.0), cell_type=CellType.TERRESTRIAL)

        assert oracle_state_probs(OracleParams(), u) == pytest.approx((1.0, 0.0, 0.0))

    def test_known_value(self) -> None:
        """Test the closed form at a terrestrial condition."""
        u = LinkCondition(d=(100.0, 0.0, -50.0), cell_type=CellType.TERRESTRIAL)
        p_los = math.exp(-100.0 / (50.0 + 2.0 * 50.0))
        p_nolink = (1.0 - p_los) * (u.distance / 500.0) ** 2

        assert oracle_state_probs(OracleParams(), u) == pytest.approx((p_los, 1.0 - p_los - p_nolink, p_nolink))

    def test_height_floored_at_zero(self) -> None:
        """Test that a UAV below the gNB uses the ground-level decay length."""
        below = LinkCondition(d=(100.0, 0.0, 20.0), cell_type=CellType.AERIAL)

        assert oracle_state_probs(OracleParams(), below)[0] == pytest.approx(math.exp(-2.0))

    def test_far_links_are_outages(self) -> None:
        """Test that beyond the outage distance every non-LOS link is NoLink."""
        u = LinkCondition(d=(600.0, 0.0, 0.0), cell_type=CellType.TERRESTRIAL)

        _, p_nlos, p_nolink = oracle_state_probs(OracleParams(), u)

        assert p_nlos == 0.0
        assert p_nolink == pytest.approx(1.0, abs=1e-5)

    def test_distribution(self) -> None:
        """Test nonnegative probabilities summing to one."""
        params = OracleParams()
        for u in sample_conditions(200, seed=3):
            probs = oracle_state_probs(params, u)

            assert min(probs) >= 0.0
            assert sum(probs) == pytest.approx(1.0)


class TestOracleLink:
    """Tests for oracle link sampling."""

    def test_state_frequencies(self) -> None:
        """Test that sampled states follow the analytic probabilities."""
        params = OracleParams()
        u = LinkCondition(d=(120.0, 60.0, -40.0), cell_type=CellType.AERIAL)
        expected = oracle_state_probs(params, u)

        links = [oracle_link(params, u, derive_rng(8, i)) for i in range(20_000)]

        for state, p in zip((LinkState.LOS, LinkState.NLOS, LinkState.NO_LINK), expected, strict=True):
            share = sum(1 for link in links if link.state is state) / len(links)
            assert share == pytest.approx(p, abs=0.02)

    def test_los_link_structure(self) -> None:
        """Test the direct path and sorted NLOS paths of LOS links."""
        params = OracleParams()
        u = LinkCondition(d=(10.0, 0.0, -60.0), cell_type=CellType.TERRESTRIAL)
        direct = los_path(u.d, params.carrier_hz)

        for i in range(50):
            link = oracle_link(params, u, derive_rng(2, i))
            if link.state is not LinkState.LOS:
                continue
            assert link.paths[0] == direct
            assert len(link.paths) <= 20
            assert all(p.path_loss > direct.path_loss for p in link.nlos_paths)


class TestOracleNlosPaths:
    """Tests for oracle_nlos_paths."""

    def test_zero_count(self, aerial_condition: LinkCondition) -> None:
        """Test that no paths are drawn for a zero count."""
        assert oracle_nlos_paths(OracleParams(), aerial_condition, 0, np.random.default_rng(0)) == []

    def test_path_properties(self, aerial_condition: LinkCondition) -> None:
        """Test increasing losses above free space and delays after LOS."""
        params = OracleParams()
        friis = friis_path_loss(aerial_condition.distance, params.carrier_hz)

        paths = oracle_nlos_paths(params, aerial_condition, 5, np.random.default_rng(4))

        losses = [p.path_loss for p in paths]
        assert len(paths) == 5
        assert losses == sorted(losses)
        assert losses[0] > friis
        assert all(p.delay > aerial_condition.los_delay for p in paths)

    def test_angular_scale_shrinks_with_distance(self) -> None:
        """Test that angle spread decreases with distance."""
        params = OracleParams()

        assert angular_scale_deg(params, 0.0) == pytest.approx(70.0)
        assert angular_scale_deg(params, 50.0) > angular_scale_deg(params, 400.0) > 10.0


class TestOracleGenerate:
    """Tests for oracle_generate and sample_conditions."""

    def test_deterministic(self) -> None:
        """Test that equal seeds reproduce the dataset."""
        conditions = sample_conditions(50, seed=1)

        first = oracle_generate(OracleParams(), conditions, 6)
        second = oracle_generate(OracleParams(), conditions, 6)

        assert first.links == second.links
        assert first.source is SourceKind.ORACLE
        assert first.source_info["seed"] == 6

    def test_fixture_has_every_state(self, oracle_dataset: Dataset) -> None:
        """Test that the small oracle dataset covers all three states."""
        states = {link.state for link in oracle_dataset.links}

        assert states == {LinkState.LOS, LinkState.NLOS, LinkState.NO_LINK}

    def test_condition_ranges(self) -> None:
        """Test horizontal range, altitudes and the cell-type cycle."""
        conditions = sample_conditions(300, seed=2)

        for i, u in enumerate(conditions):
            assert u.cell_type is CELL_TYPE_CYCLE[i % 3]
            assert u.horizontal_distance <= 500.0
            gnb_height = 30.0 if u.cell_type is CellType.AERIAL else 2.0
            assert -1e-9 <= gnb_height - u.d[2] <= 130.0 + 1e-9

    def test_sample_conditions_deterministic(self) -> None:
        """Test that equal seeds give equal conditions."""
        assert sample_conditions(10, 4) == sample_conditions(10, 4)

    def test_sample_conditions_needs_one(self) -> None:
        """Test that at least one condition is requested."""
        with pytest.raises(ValueError):
            sample_conditions(0, 1)
