"""Tests for path-vector encoding and decoding."""

import numpy as np
import pytest

from mmwave_channel_gen.channel.geometry import los_geometry, los_path
from mmwave_channel_gen.channel.paths import decode_paths, encode_path_matrix, encode_paths
from mmwave_channel_gen.config.standards import PATH_VECTOR_DIM, CellType, LinkState
from mmwave_channel_gen.errors import PathVectorError
from mmwave_channel_gen.models.channel import Link, LinkCondition, Path
from tests.conftest import make_path


def _random_nlos_link(rng: np.random.Generator) -> Link:
    d = tuple(float(v) for v in rng.uniform(-300.0, 300.0, 3))
    u = LinkCondition(d=d, cell_type=CellType.AERIAL)
    geometry = los_geometry(d)
    count = int(rng.integers(1, 21))
    paths = []
    for _ in range(count):
        paths.append(
            Path(
                path_loss=float(rng.uniform(80.0, 190.0)),
                aoa_azimuth=float(rng.uniform(-180.0, 180.0)),
                aoa_elevation=float(rng.uniform(-90.0, 90.0)),
                aod_azimuth=float(rng.uniform(-180.0, 180.0)),
                aod_elevation=float(rng.uniform(-90.0, 90.0)),
                delay=geometry.delay_s + float(rng.exponential(1e-7)),
            )
        )
    return Link.build(u, LinkState.NLOS, None, paths)


class TestEncodePaths:
    """Tests for encode_paths."""

    def test_path_on_los_direction(self, terrestrial_condition: LinkCondition) -> None:
        """Test a single path along the LOS direction with the LOS delay."""
        link = Link.build(terrestrial_condition, LinkState.NLOS, None, [make_path(123.0, terrestrial_condition)])

        vec = encode_paths(link)

        assert vec.shape == (PATH_VECTOR_DIM,)
        assert np.allclose(vec[:6], [123.0, 0.0, 0.0, 0.0, 0.0, 0.0], atol=1e-12)
        padding = vec[6:].reshape(19, 6)
        assert np.all(padding[:, 0] == 200.0)
        assert np.all(padding[:, 1:] == 0.0)

    def test_excludes_los_path(self, los_link: Link) -> None:
        """Test that only the NLOS paths of a LOS link are encoded."""
        vec = encode_paths(los_link).reshape(20, 6)

        assert list(vec[:2, 0]) == [120.0, 140.0]
        assert vec[2, 0] == 200.0

    def test_nolink_rejected(self, nolink_link: Link) -> None:
        """Test that NoLink links have no path vector."""
        with pytest.raises(PathVectorError):
            encode_paths(nolink_link)

    def test_blocks_sorted_by_loss(self, nlos_link: Link) -> None:
        """Test ascending loss order of the blocks."""
        losses = encode_paths(nlos_link).reshape(20, 6)[:3, 0]

        assert list(losses) == [110.0, 125.0, 131.5]

    def test_azimuth_offsets_wrapped(self, terrestrial_condition: LinkCondition) -> None:
        """Test that +181 and -179 degree offsets encode identically."""
        u = terrestrial_condition
        plus = Link.build(u, LinkState.NLOS, None, [make_path(130.0, u, (181.0, 0.0), (181.0, 0.0))])
        minus = Link.build(u, LinkState.NLOS, None, [make_path(130.0, u, (-179.0, 0.0), (-179.0, 0.0))])

        assert np.allclose(encode_paths(plus), encode_paths(minus), atol=1e-9)
        assert encode_paths(plus)[1] == pytest.approx(-179.0)

    def test_permutation_invariant(self, nlos_link: Link) -> None:
        """Test that input order does not change the encoding."""
        shuffled = Link(
            condition=nlos_link.condition,
            state=LinkState.NLOS,
            paths=nlos_link.paths,
        )
        rebuilt = Link.build(nlos_link.condition, LinkState.NLOS, None, reversed(nlos_link.paths))

        assert np.array_equal(encode_paths(shuffled), encode_paths(rebuilt))

    def test_early_delay_clamped(self, terrestrial_condition: LinkCondition) -> None:
        """Test that a delay before the LOS delay encodes zero excess."""
        u = terrestrial_condition
        link = Link.build(u, LinkState.NLOS, None, [make_path(150.0, u, excess_delay=-1e-9)])

        assert encode_paths(link)[5] == 0.0

    def test_matrix(self, nlos_link: Link, los_link: Link) -> None:
        """Test stacking several links."""
        assert encode_path_matrix([nlos_link, los_link]).shape == (2, PATH_VECTOR_DIM)
        assert encode_path_matrix([]).shape == (0, PATH_VECTOR_DIM)


class TestDecodePaths:
    """Tests for decode_paths."""

    def test_all_padding(self, terrestrial_condition: LinkCondition) -> None:
        """Test that an all-padding vector decodes to no paths."""
        vec = np.tile([200.0, 0.0, 0.0, 0.0, 0.0, 0.0], 20)

        assert decode_paths(vec, terrestrial_condition) == []

    def test_single_block_on_los_direction(self, terrestrial_condition: LinkCondition) -> None:
        """Test a zero-offset block at d = (100, 0, 0)."""
        vec = np.tile([200.0, 0.0, 0.0, 0.0, 0.0, 0.0], 20)
        vec[:6] = [100.0, 0.0, 0.0, 0.0, 0.0, 0.0]

        paths = decode_paths(vec, terrestrial_condition)

        assert len(paths) == 1
        assert paths[0].path_loss == 100.0
        assert paths[0].delay == pytest.approx(333.564e-9, abs=1e-12)
        assert paths[0].aod_azimuth == pytest.approx(0.0)
        assert paths[0].aoa_azimuth == -180.0

    def test_threshold_drops_block(self, terrestrial_condition: LinkCondition) -> None:
        """Test that a block at 196 dB is dropped with a 195 dB threshold."""
        vec = np.tile([200.0, 0.0, 0.0, 0.0, 0.0, 0.0], 20)
        vec[:6] = [150.0, 1.0, 1.0, 1.0, 1.0, 1e-8]
        vec[6:12] = [196.0, 0.0, 0.0, 0.0, 0.0, 0.0]

        paths = decode_paths(vec, terrestrial_condition, absent_threshold_db=195.0)

        assert [p.path_loss for p in paths] == [150.0]

    def test_raised_threshold_keeps_block(self, terrestrial_condition: LinkCondition) -> None:
        """Test that the threshold is configurable."""
        vec = np.tile([200.0, 0.0, 0.0, 0.0, 0.0, 0.0], 20)
        vec[:6] = [196.0, 0.0, 0.0, 0.0, 0.0, 0.0]

        assert len(decode_paths(vec, terrestrial_condition, absent_threshold_db=198.0)) == 1

    def test_clamps_and_sorts(self, terrestrial_condition: LinkCondition) -> None:
        """Test loss, elevation and delay clamping plus loss ordering."""
        vec = np.tile([200.0, 0.0, 0.0, 0.0, 0.0, 0.0], 20)
        vec[:6] = [140.0, 0.0, 120.0, 0.0, -150.0, -5e-9]
        vec[6:12] = [-3.0, 0.0, 0.0, 0.0, 0.0, 0.0]

        paths = decode_paths(vec, terrestrial_condition)

        assert paths[0].path_loss > 0.0
        assert paths[1].path_loss == 140.0
        assert paths[1].aoa_elevation == 90.0
        assert paths[1].aod_elevation == -90.0
        assert paths[1].delay == pytest.approx(terrestrial_condition.los_delay)

    def test_wrong_length(self, terrestrial_condition: LinkCondition) -> None:
        """Test that the vector must have 120 entries."""
        with pytest.raises(PathVectorError):
            decode_paths(np.zeros(119), terrestrial_condition)

    def test_non_finite(self, terrestrial_condition: LinkCondition) -> None:
        """Test that NaN entries are rejected."""
        vec = np.tile([200.0, 0.0, 0.0, 0.0, 0.0, 0.0], 20)
        vec[3] = np.nan

        with pytest.raises(PathVectorError):
            decode_paths(vec, terrestrial_condition)

    def test_never_more_than_twenty(self, terrestrial_condition: LinkCondition) -> None:
        """Test that decoding yields at most 20 paths."""
        vec = np.tile([100.0, 0.0, 0.0, 0.0, 0.0, 0.0], 20)

        assert len(decode_paths(vec, terrestrial_condition)) == 20


class TestRoundTrip:
    """Tests for decode after encode on random links."""

    def test_recovers_nlos_paths(self) -> None:
        """Test angle error <= 1e-9 degrees and delay error <= 1e-15 s."""
        rng = np.random.default_rng(17)
        for _ in range(50):
            link = _random_nlos_link(rng)

            decoded = decode_paths(encode_paths(link), link.condition)

            assert len(decoded) == len(link.paths)
            for original, restored in zip(link.paths, decoded, strict=True):
                assert restored.path_loss == pytest.approx(original.path_loss, abs=1e-12)
                for name in ("aoa_azimuth", "aod_azimuth"):
                    diff = (getattr(restored, name) - getattr(original, name) + 180.0) % 360.0 - 180.0
                    assert abs(diff) <= 1e-9
                assert restored.aoa_elevation == pytest.approx(original.aoa_elevation, abs=1e-9)
                assert restored.aod_elevation == pytest.approx(original.aod_elevation, abs=1e-9)
                assert abs(restored.delay - original.delay) <= 1e-15

    def test_los_link_keeps_nlos_part(self) -> None:
        """Test that a LOS link round-trips its NLOS paths."""
        u = LinkCondition(d=(50.0, -20.0, -40.0), cell_type=CellType.TERRESTRIAL)
        nlos = [make_path(130.0, u, (25.0, 3.0), (-40.0, 6.0), 3e-8)]
        link = Link.build(u, LinkState.LOS, los_path(u.d, 28e9), nlos)

        decoded = decode_paths(encode_paths(link), u)

        assert len(decoded) == 1
        assert decoded[0].path_loss == 130.0
