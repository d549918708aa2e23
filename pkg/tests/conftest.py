"""Pytest configuration and fixtures."""

import logging
from collections.abc import Iterator

import pytest

from mmwave_channel_gen.channel.geometry import los_path
from mmwave_channel_gen.config.settings import get_settings
from mmwave_channel_gen.config.standards import CellType, LinkState
from mmwave_channel_gen.data.dataset import Dataset, split_train_test
from mmwave_channel_gen.data.oracle import OracleParams, oracle_generate, sample_conditions
from mmwave_channel_gen.generative.generator import ChannelModel, train_channel_model
from mmwave_channel_gen.models.channel import Link, LinkCondition, Path
from mmwave_channel_gen.models.training import LinkStateTrainConfig, VaeTrainConfig

SMALL_ORACLE_SIZE = 900
SMALL_ORACLE_SEED = 11


@pytest.fixture(autouse=True)
def mock_env_vars(monkeypatch: pytest.MonkeyPatch) -> Iterator[None]:
    """Pin environment-driven settings for every test."""
    monkeypatch.setenv("MMWCHAN_LOG_LEVEL", "WARNING")
    monkeypatch.setenv("MMWCHAN_PROGRESS_EVERY_BATCHES", "1000")
    monkeypatch.delenv("MMWCHAN_ABSENT_THRESHOLD_DB", raising=False)
    monkeypatch.delenv("MMWCHAN_CARRIER_FREQUENCY_HZ", raising=False)
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def clear_settings_cache() -> None:
    """Clear the settings LRU cache."""
    get_settings.cache_clear()


@pytest.fixture(autouse=True)
def reset_package_logger() -> Iterator[None]:
    """Undo CLI logging setup so caplog sees package records."""
    package_logger = logging.getLogger("mmwave_channel_gen")
    yield
    for handler in list(package_logger.handlers):
        package_logger.removeHandler(handler)
    package_logger.setLevel(logging.NOTSET)
    package_logger.propagate = True


def make_path(
    loss: float,
    u: LinkCondition,
    aoa_offset: tuple[float, float] = (0.0, 0.0),
    aod_offset: tuple[float, float] = (0.0, 0.0),
    excess_delay: float = 0.0,
) -> Path:
    """A path described by its offsets from the LOS direction of ``u``."""
    direct = los_path(u.d, 28e9)
    return Path(
        path_loss=loss,
        aoa_azimuth=direct.aoa_azimuth + aoa_offset[0],
        aoa_elevation=direct.aoa_elevation + aoa_offset[1],
        aod_azimuth=direct.aod_azimuth + aod_offset[0],
        aod_elevation=direct.aod_elevation + aod_offset[1],
        delay=direct.delay + excess_delay,
    )


@pytest.fixture
def terrestrial_condition() -> LinkCondition:
    """UAV 100 m west of a terrestrial gNB at equal height."""
    return LinkCondition(d=(100.0, 0.0, 0.0), cell_type=CellType.TERRESTRIAL)


@pytest.fixture
def aerial_condition() -> LinkCondition:
    """UAV at a slant toward an aerial gNB."""
    return LinkCondition(d=(30.0, 40.0, -10.0), cell_type=CellType.AERIAL)


@pytest.fixture
def nlos_link(terrestrial_condition: LinkCondition) -> Link:
    """NLOS link with three scattered paths."""
    u = terrestrial_condition
    paths = [
        make_path(125.0, u, (20.0, 5.0), (-15.0, 2.0), 4e-8),
        make_path(110.0, u, (-170.0, -3.0), (35.0, 1.0), 1e-8),
        make_path(131.5, u, (90.0, 10.0), (-60.0, -4.0), 9e-8),
    ]
    return Link.build(u, LinkState.NLOS, None, paths)


@pytest.fixture
def los_link(terrestrial_condition: LinkCondition) -> Link:
    """LOS link: the direct path plus two NLOS paths."""
    u = terrestrial_condition
    nlos = [
        make_path(140.0, u, (45.0, 0.0), (-30.0, 0.0), 2e-8),
        make_path(120.0, u, (-10.0, 2.0), (12.0, -1.0), 5e-9),
    ]
    return Link.build(u, LinkState.LOS, los_path(u.d, 28e9), nlos)


@pytest.fixture
def nolink_link(aerial_condition: LinkCondition) -> Link:
    """Link without paths."""
    return Link(condition=aerial_condition, state=LinkState.NO_LINK)


@pytest.fixture(scope="session")
def oracle_dataset() -> Dataset:
    """Small synthetic dataset drawn from the oracle."""
    conditions = sample_conditions(SMALL_ORACLE_SIZE, SMALL_ORACLE_SEED)
    return oracle_generate(OracleParams(), conditions, SMALL_ORACLE_SEED)


@pytest.fixture(scope="session")
def oracle_split(oracle_dataset: Dataset) -> Dataset:
    """The small oracle dataset split 70/30."""
    return split_train_test(oracle_dataset, 0.7, seed=3)


@pytest.fixture(scope="session")
def small_model(oracle_split: Dataset) -> ChannelModel:
    """Channel model trained for a handful of epochs on the small oracle split."""
    result = train_channel_model(
        oracle_split.train_links,
        LinkStateTrainConfig(epochs=5, batch_size=50, seed=5),
        VaeTrainConfig(epochs=3, batch_size=50, learning_rate=1e-3, seed=5),
        split_seed=oracle_split.split_seed,
    )
    return result.model


FULL_ORACLE_SIZE = 15_000
FRESH_ORACLE_SIZE = 9_000
FULL_VAE_EPOCHS = 1_000


@pytest.fixture(scope="session")
def oracle_split_full() -> Dataset:
    """Full-size oracle dataset, split 70/30."""
    dataset = oracle_generate(OracleParams(), sample_conditions(FULL_ORACLE_SIZE, seed=21), seed=21)
    return split_train_test(dataset, 0.7, seed=21)


@pytest.fixture(scope="session")
def full_model(oracle_split_full: Dataset) -> ChannelModel:
    """Model trained with the default link-state schedule and a long VAE run."""
    result = train_channel_model(
        oracle_split_full.train_links,
        LinkStateTrainConfig(seed=22),
        VaeTrainConfig(epochs=FULL_VAE_EPOCHS, seed=22),
        split_seed=oracle_split_full.split_seed,
    )
    return result.model


@pytest.fixture(scope="session")
def fresh_draw() -> Dataset:
    """Independent oracle links: 6000 terrestrial and 3000 aerial."""
    return oracle_generate(OracleParams(), sample_conditions(FRESH_ORACLE_SIZE, seed=23), seed=23)
