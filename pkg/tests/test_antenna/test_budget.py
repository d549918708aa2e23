"""Tests for the uplink budget and SNR."""

import math

import pytest

from mmwave_channel_gen.antenna.budget import LinkBudget, default_arrays, link_snr, received_power_dbm
from mmwave_channel_gen.antenna.patterns import OrientationKind, array_gain
from mmwave_channel_gen.channel.geometry import friis_path_loss, los_path
from mmwave_channel_gen.config.standards import CellType, LinkState
from mmwave_channel_gen.models.channel import Link, LinkCondition

CARRIER_HZ = 28e9


def _los_only(d: tuple[float, float, float], cell_type: CellType) -> Link:
    u = LinkCondition(d=d, cell_type=cell_type)
    return Link.build(u, LinkState.LOS, los_path(u.d, CARRIER_HZ), [])


class TestLinkBudget:
    """Tests for LinkBudget."""

    def test_defaults(self) -> None:
        """Test the default uplink parameters."""
        budget = LinkBudget()

        assert budget.tx_power_dbm == 23.0
        assert budget.bandwidth_hz == 4e8
        assert budget.misc_losses_db == 6.0

    def test_noise_power(self) -> None:
        """Test thermal noise over 400 MHz."""
        assert LinkBudget().noise_power_dbm == pytest.approx(-174.0 + 10.0 * math.log10(4e8))


class TestDefaultArrays:
    """Tests for default_arrays function."""

    def test_aerial(self) -> None:
        """Test one up-facing array at an aerial gNB."""
        uav, rx = default_arrays(CellType.AERIAL)

        assert uav.orientation is OrientationKind.DOWN_FACING
        assert uav.element_count == 16
        assert len(rx) == 1
        assert rx[0].orientation is OrientationKind.UP_FACING
        assert rx[0].element_count == 64

    def test_terrestrial(self) -> None:
        """Test three downtilted sectors at a terrestrial gNB."""
        _, rx = default_arrays(CellType.TERRESTRIAL)

        assert [sector.boresight for sector in rx] == [(0.0, -10.0), (120.0, -10.0), (240.0, -10.0)]


class TestLinkSnr:
    """Tests for link_snr and received_power_dbm."""

    def test_vertical_aerial_link(self) -> None:
        """Test the SNR of a LOS link straight above an aerial gNB."""
        link = _los_only((0.0, 0.0, -100.0), CellType.AERIAL)
        uav, rx = default_arrays(CellType.AERIAL)
        budget = LinkBudget()
        expected = (
            23.0
            + array_gain(16)
            + array_gain(64)
            - friis_path_loss(100.0, CARRIER_HZ)
            - 6.0
            - budget.noise_power_dbm
        )

        snr = link_snr(link, uav, rx)

        assert snr == pytest.approx(expected, abs=1e-6)
        assert snr == pytest.approx(33.69, abs=0.01)

    def test_extra_path_raises_power(self) -> None:
        """Test that a second path adds power noncoherently."""
        u = LinkCondition(d=(0.0, 0.0, -100.0), cell_type=CellType.AERIAL)
        direct = los_path(u.d, CARRIER_HZ)
        echo = direct.model_copy(update={"delay": direct.delay + 1e-8})
        uav, rx = default_arrays(CellType.AERIAL)
        budget = LinkBudget()

        single = received_power_dbm(Link.build(u, LinkState.LOS, direct, []), uav, rx[0], budget)
        double = received_power_dbm(Link.build(u, LinkState.LOS, direct, [echo]), uav, rx[0], budget)

        assert single is not None and double is not None
        assert double - single == pytest.approx(10.0 * math.log10(2.0))

    def test_best_sector(self) -> None:
        """Test that the sector facing the UAV sets the SNR."""
        azimuth = math.radians(120.0)
        link = _los_only((-150.0 * math.cos(azimuth), -150.0 * math.sin(azimuth), -20.0), CellType.TERRESTRIAL)
        uav, sectors = default_arrays(CellType.TERRESTRIAL)
        budget = LinkBudget()

        powers = [received_power_dbm(link, uav, sector, budget) for sector in sectors]

        first, facing, third = (p for p in powers if p is not None)
        assert facing > max(first, third)
        assert link_snr(link, uav, sectors, budget) == pytest.approx(facing - budget.noise_power_dbm)

    def test_nolink_has_no_snr(self, nolink_link: Link) -> None:
        """Test that a link without paths has no SNR."""
        uav, rx = default_arrays(nolink_link.condition.cell_type)

        assert link_snr(nolink_link, uav, rx) is None

    def test_needs_rx_arrays(self, los_link: Link) -> None:
        """Test that at least one receive array is required."""
        uav, _ = default_arrays(CellType.AERIAL)

        with pytest.raises(ValueError, match="rx array"):
            link_snr(los_link, uav, [])
