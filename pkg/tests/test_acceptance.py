"""End-to-end checks of full-size models against the synthetic oracle.

These train on 15000 oracle links and take a long time; run them with
``pytest -m slow``.
"""

import numpy as np
import pytest

from mmwave_channel_gen.config.standards import K_MAX, CellType, LinkState
from mmwave_channel_gen.data.dataset import Dataset
from mmwave_channel_gen.data.oracle import OracleParams, oracle_state_probs
from mmwave_channel_gen.evaluation.compare import compare_model_to_test
from mmwave_channel_gen.evaluation.histograms import AngleKind, angular_spread
from mmwave_channel_gen.generative.generator import ChannelModel, generate_batch
from mmwave_channel_gen.generative.link_state import state_indices
from mmwave_channel_gen.models.channel import LinkCondition

pytestmark = pytest.mark.slow


class TestLinkStateRecovery:
    """Tests for the trained link-state stage against the analytic oracle."""

    @pytest.mark.parametrize("cell_type", list(CellType))
    def test_los_probability_grid(self, full_model: ChannelModel, cell_type: CellType) -> None:
        """Test mean absolute P(LOS) error over a 20x20 grid."""
        params = OracleParams()
        conditions = [
            LinkCondition(d=(float(dh), 0.0, -float(height)), cell_type=cell_type)
            for dh in np.linspace(10.0, 490.0, 20)
            for height in np.linspace(0.0, 100.0, 20)
        ]
        expected = np.array([oracle_state_probs(params, u)[0] for u in conditions])

        predicted = full_model.state_probs(conditions)[:, 0]

        assert float(np.mean(np.abs(predicted - expected))) <= 0.05

    def test_held_out_accuracy(self, full_model: ChannelModel, oracle_split_full: Dataset) -> None:
        """Test held-out accuracy against the best achievable on the same links."""
        test_links = oracle_split_full.test_links
        params = OracleParams()
        oracle_probs = np.array([oracle_state_probs(params, link.condition) for link in test_links])
        labels = state_indices(test_links)

        predicted = np.argmax(full_model.state_probs([link.condition for link in test_links]), axis=1)

        bayes = float(np.mean(np.argmax(oracle_probs, axis=1) == labels))
        assert float(np.mean(predicted == labels)) >= bayes - 0.03


class TestDistributionMatch:
    """Tests for generated links against fresh oracle draws."""

    def test_omni_path_loss_ks(self, full_model: ChannelModel, fresh_draw: Dataset) -> None:
        """Test the omni path-loss KS distance per cell type."""
        report = compare_model_to_test(full_model, fresh_draw.links, master_seed=24)

        for cell_type in CellType:
            assert report.counts[cell_type.value]["test"] + report.excluded[cell_type.value]["test"] >= 3000
            ks = report.ks[cell_type.value]
            assert ks is not None
            assert ks <= 0.07

    def test_angular_spread_shrinks_with_distance(self, full_model: ChannelModel, fresh_draw: Dataset) -> None:
        """Test that departure-azimuth spread is smaller far away than close in."""
        links = generate_batch(full_model, [link.condition for link in fresh_draw.links], 1, master_seed=25)

        spread = angular_spread(links, distance_edges=[0.0, 100.0, 200.0, 300.0, 400.0, 550.0], which_angle=AngleKind.AOD_AZ)

        occupied = spread[~np.isnan(spread)]
        assert occupied[-1] < occupied[0]


class TestGeneratedInvariants:
    """Tests for structural invariants over many generated links."""

    def test_hundred_thousand_links(self, full_model: ChannelModel, fresh_draw: Dataset) -> None:
        """Test path counts, ordering, angle ranges and delays on 10^5 links."""
        conditions = [link.condition for link in fresh_draw.links[:1000]]

        links = generate_batch(full_model, conditions, 100, master_seed=26)

        assert len(links) == 100_000
        for link in links:
            assert len(link.paths) <= K_MAX
            losses = [p.path_loss for p in link.nlos_paths]
            assert losses == sorted(losses)
            for p in link.paths:
                assert -180.0 <= p.aoa_azimuth < 180.0
                assert -180.0 <= p.aod_azimuth < 180.0
                assert -90.0 <= p.aoa_elevation <= 90.0
                assert p.delay >= link.condition.los_delay - 1e-15
            if link.state is LinkState.NO_LINK:
                assert not link.paths
