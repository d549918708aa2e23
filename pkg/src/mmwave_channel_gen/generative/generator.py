"""Two-stage channel generator: condition in, complete Link out."""

import json
import logging
from collections import Counter
from collections.abc import Sequence
from dataclasses import dataclass, field
from pathlib import Path as FilePath
from typing import Any

import numpy as np

from mmwave_channel_gen.channel.geometry import friis_path_loss, los_geometry, los_path
from mmwave_channel_gen.config.standards import (
    DEFAULT_CARRIER_HZ,
    K_MAX,
    L_MAX_DB,
    MODEL_FORMAT_VERSION,
    LinkState,
)
from mmwave_channel_gen.errors import ModelFormatError, ModelVersionError
from mmwave_channel_gen.generative.link_state import (
    LinkStateNet,
    predict_state_probs_batch,
    sample_state,
    train_link_state,
)
from mmwave_channel_gen.generative.path_vae import GenerationMode, PathVae, generate_nlos, train_vae
from mmwave_channel_gen.models.channel import Link, LinkCondition, Path
from mmwave_channel_gen.models.training import LinkStateTrainConfig, VaeTrainConfig
from mmwave_channel_gen.rng import condition_key, derive_rng

logger = logging.getLogger(__name__)

__all__ = [
    "ChannelModel",
    "ChannelTrainingResult",
    "friis_path_loss",
    "generate_batch",
    "generate_link",
    "load_model",
    "los_geometry",
    "save_model",
    "train_channel_model",
]


@dataclass(frozen=True)
class ChannelModel:
    """Link-state predictor and path VAE trained on the same split."""

    link_state: LinkStateNet
    path_vae: PathVae
    carrier_frequency_hz: float = DEFAULT_CARRIER_HZ
    split_seed: int | None = None
    version: str = MODEL_FORMAT_VERSION

    @property
    def k_max(self) -> int:
        return K_MAX

    @property
    def l_max_db(self) -> float:
        return L_MAX_DB

    @property
    def absent_threshold_db(self) -> float:
        return self.path_vae.absent_threshold_db

    def sample_links(self, conditions: Sequence[LinkCondition], seed: int) -> list[Link]:
        """One generated link per condition."""
        return generate_batch(self, conditions, 1, seed)

    def state_probs(self, conditions: Sequence[LinkCondition]) -> np.ndarray:
        return predict_state_probs_batch(self.link_state, conditions)

    def to_dict(self) -> dict[str, Any]:
        return {
            "version": self.version,
            "carrier_frequency_hz": self.carrier_frequency_hz,
            "link_state": self.link_state.to_dict(),
            "path_vae": self.path_vae.to_dict(),
            "k_max": self.k_max,
            "l_max_db": self.l_max_db,
            "absent_threshold_db": self.absent_threshold_db,
            "split_seed": self.split_seed,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "ChannelModel":
        version = data.get("version")
        if version != MODEL_FORMAT_VERSION:
            raise ModelVersionError(version, MODEL_FORMAT_VERSION)
        try:
            split_seed = data.get("split_seed")
            return cls(
                link_state=LinkStateNet.from_dict(data["link_state"]),
                path_vae=PathVae.from_dict(data["path_vae"]),
                carrier_frequency_hz=float(data["carrier_frequency_hz"]),
                split_seed=int(split_seed) if split_seed is not None else None,
                version=version,
            )
        except (KeyError, TypeError, ValueError) as e:
            raise ModelFormatError(f"Malformed model file: {e}") from e


@dataclass
class ChannelTrainingResult:
    """Trained model plus both loss traces."""

    model: ChannelModel
    link_state_trace: list[float] = field(default_factory=list)
    vae_trace: list[float] = field(default_factory=list)
    link_state_initial_loss: float = float("nan")
    vae_initial_loss: float = float("nan")
    warnings: list[str] = field(default_factory=list)


def train_channel_model(
    train_links: Sequence[Link],
    link_state_config: LinkStateTrainConfig | None = None,
    vae_config: VaeTrainConfig | None = None,
    carrier_frequency_hz: float = DEFAULT_CARRIER_HZ,
    split_seed: int | None = None,
) -> ChannelTrainingResult:
    """Train both stages on one training split.

    Args:
        train_links: Training links (all states)
        link_state_config: Link-state predictor configuration
        vae_config: Path VAE configuration
        carrier_frequency_hz: Carrier used for the LOS free-space loss
        split_seed: Seed of the split the links came from, recorded in the model

    Returns:
        ChannelTrainingResult with the assembled model and traces
    """
    ls = train_link_state(train_links, link_state_config)
    vae = train_vae(train_links, vae_config)
    model = ChannelModel(
        link_state=ls.net,
        path_vae=vae.vae,
        carrier_frequency_hz=carrier_frequency_hz,
        split_seed=split_seed,
    )
    return ChannelTrainingResult(
        model=model,
        link_state_trace=ls.loss_trace,
        vae_trace=vae.loss_trace,
        link_state_initial_loss=ls.initial_loss,
        vae_initial_loss=vae.initial_loss,
        warnings=ls.warnings,
    )


def _floor_loss(path: Path, floor_db: float) -> Path:
    if path.path_loss >= floor_db:
        return path
    return path.model_copy(update={"path_loss": floor_db})


def generate_link(
    model: ChannelModel,
    u: LinkCondition,
    rng: np.random.Generator,
    state: LinkState | None = None,
    mode: GenerationMode = GenerationMode.SAMPLE,
) -> Link:
    """Generate one link at condition ``u``.

    The state is drawn from the link-state predictor unless ``state`` forces
    it. Generated NLOS losses are floored at the free-space loss so the LOS
    path, when present, is the strongest.

    An NLOS draw whose decoded paths are all absent is reported as NoLink.
    Generated NoLink frequencies can therefore exceed the NoLink probability
    of the link-state predictor, and NLOS frequencies fall short of it by
    the same amount. :func:`generate_batch` counts these conversions.

    Args:
        model: Trained channel model
        u: Link condition
        rng: Stream for the state draw and the VAE draws
        state: Force this state instead of sampling one
        mode: SAMPLE or MEAN generation of the NLOS paths

    Returns:
        A Link satisfying the ordering and K_MAX invariants
    """
    link, _ = _generate_link(model, u, rng, state, mode)
    return link


def _generate_link(
    model: ChannelModel,
    u: LinkCondition,
    rng: np.random.Generator,
    state: LinkState | None,
    mode: GenerationMode,
) -> tuple[Link, bool]:
    """Generate one link and report whether an empty NLOS draw became NoLink."""
    s = state if state is not None else sample_state(model.link_state, u, rng)
    if s is LinkState.NO_LINK:
        return Link(condition=u, state=LinkState.NO_LINK), False

    floor_db = friis_path_loss(u.distance, model.carrier_frequency_hz)
    nlos = [
        _floor_loss(p, floor_db)
        for p in generate_nlos(model.path_vae, u, s, rng, mode)
    ]
    nlos = [p for p in nlos if p.path_loss < L_MAX_DB]

    if s is LinkState.LOS:
        # The weakest NLOS path gives way to the LOS path
        return Link.build(u, s, los_path(u.d, model.carrier_frequency_hz), nlos[: K_MAX - 1]), False
    if not nlos:
        logger.debug("NLOS draw at %s produced no paths; reporting NoLink", u.d)
        return Link(condition=u, state=LinkState.NO_LINK), True
    return Link.build(u, s, None, nlos[:K_MAX]), False


def generate_batch(
    model: ChannelModel,
    conditions: Sequence[LinkCondition],
    n_per_condition: int,
    master_seed: int,
    mode: GenerationMode = GenerationMode.SAMPLE,
) -> list[Link]:
    """Generate ``n_per_condition`` links for each condition, condition-major.

    Each realization draws from its own stream keyed by the master seed, a
    fingerprint of the condition, the occurrence of that condition in the
    list and the realization index. Reordering the conditions therefore
    reorders the output blocks without changing their contents.

    NLOS draws that decode to no paths come back as NoLink; their number is
    logged at debug level.

    Raises:
        ValueError: If ``n_per_condition`` is negative
    """
    if n_per_condition < 0:
        raise ValueError(f"n_per_condition must be >= 0, got {n_per_condition}")
    seen: Counter[int] = Counter()
    links: list[Link] = []
    empty_nlos = 0
    for u in conditions:
        key = condition_key(u)
        occurrence = seen[key]
        seen[key] += 1
        for r in range(n_per_condition):
            rng = derive_rng(master_seed, key, occurrence, r)
            link, converted = _generate_link(model, u, rng, None, mode)
            empty_nlos += converted
            links.append(link)
    if empty_nlos:
        logger.debug("%d of %d generated links were empty NLOS draws reported as NoLink", empty_nlos, len(links))
    return links


def save_model(model: ChannelModel, path: str | FilePath) -> None:
    """Write a model as a single JSON document."""
    text = json.dumps(model.to_dict(), indent=2, sort_keys=True)
    FilePath(path).write_text(text + "\n", encoding="utf-8")
    logger.info("Wrote model to %s", path)


def load_model(path: str | FilePath) -> ChannelModel:
    """Read a model written by :func:`save_model`.

    Raises:
        FileNotFoundError: If the file does not exist
        ModelVersionError: If the format version is missing or unsupported
        ModelFormatError: If the file is not a valid model document
    """
    text = FilePath(path).read_text(encoding="utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ModelFormatError(f"{path}: not valid JSON ({e.msg} at line {e.lineno})") from e
    if not isinstance(data, dict):
        raise ModelFormatError(f"{path}: model file must hold a JSON object")
    return ChannelModel.from_dict(data)
