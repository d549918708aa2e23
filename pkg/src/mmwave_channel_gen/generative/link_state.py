"""First stage: predict P(LOS), P(NLOS), P(NoLink) from the link condition."""

import logging
from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import Any

import numpy as np
from numpy.typing import NDArray

from mmwave_channel_gen.channel.features import FeatureMode, condition_feature_matrix, condition_features
from mmwave_channel_gen.channel.scaler import StandardScaler, scaler_fit
from mmwave_channel_gen.config.settings import get_settings
from mmwave_channel_gen.config.standards import CONDITION_DIM, LINK_STATE_ORDER, LinkState
from mmwave_channel_gen.errors import TrainingDataError
from mmwave_channel_gen.models.channel import Link, LinkCondition
from mmwave_channel_gen.models.training import LinkStateTrainConfig
from mmwave_channel_gen.nn.mlp import (
    Activation,
    MlpModel,
    backward_from_logits,
    init_params,
    mlp_forward,
    mlp_forward_logits,
)
from mmwave_channel_gen.nn.optim import AdamState, adam_step
from mmwave_channel_gen.rng import derive_rng

logger = logging.getLogger(__name__)

FloatArray = NDArray[np.float64]
N_STATES = len(LINK_STATE_ORDER)


@dataclass(frozen=True)
class LinkStateNet:
    """Standard scaler followed by a softmax MLP over the three link states."""

    scaler: StandardScaler
    mlp: MlpModel

    def to_dict(self) -> dict[str, Any]:
        return {"scaler": self.scaler.to_dict(), "mlp": self.mlp.to_dict()}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "LinkStateNet":
        return cls(
            scaler=StandardScaler.from_dict(data["scaler"]),
            mlp=MlpModel.from_dict(data["mlp"]),
        )


@dataclass
class LinkStateTrainingResult:
    """Trained predictor plus its training trace."""

    net: LinkStateNet
    initial_loss: float
    loss_trace: list[float] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)


def state_indices(links: Sequence[Link]) -> NDArray[np.int64]:
    """Categorical index of each link's state in (LOS, NLOS, NoLink) order."""
    lookup = {state: i for i, state in enumerate(LINK_STATE_ORDER)}
    return np.array([lookup[link.state] for link in links], dtype=np.int64)


def _log_softmax(logits: FloatArray) -> FloatArray:
    shifted = logits - logits.max(axis=1, keepdims=True)
    return np.asarray(shifted - np.log(np.exp(shifted).sum(axis=1, keepdims=True)))


def _cross_entropy(mlp: MlpModel, x: FloatArray, labels: NDArray[np.int64], weights: FloatArray) -> float:
    log_p = _log_softmax(mlp_forward_logits(mlp, x))
    return float(np.mean(-weights * log_p[np.arange(len(labels)), labels]))


def train_link_state(
    train_links: Sequence[Link],
    config: LinkStateTrainConfig | None = None,
) -> LinkStateTrainingResult:
    """Fit the link-state predictor by minibatch Adam on cross-entropy.

    The scaler is fit on the training features only. Minibatch order is
    reshuffled every epoch from a stream derived from (seed, epoch).

    Args:
        train_links: Labeled training links
        config: Training configuration (defaults when omitted)

    Returns:
        LinkStateTrainingResult with the final net and per-epoch mean loss

    Raises:
        TrainingDataError: If there are fewer than two training links
    """
    config = config or LinkStateTrainConfig()
    if len(train_links) < 2:
        raise TrainingDataError(f"Link-state training needs at least 2 links, got {len(train_links)}")

    features = condition_feature_matrix([link.condition for link in train_links])
    scaler = scaler_fit(features)
    x = scaler.apply(features)
    labels = state_indices(train_links)
    onehot = np.eye(N_STATES)[labels]

    warnings: list[str] = []
    counts = np.bincount(labels, minlength=N_STATES)
    for state, count in zip(LINK_STATE_ORDER, counts, strict=True):
        if count == 0:
            message = f"State {state.value} is absent from the training data"
            logger.warning(message)
            warnings.append(message)

    if config.class_weighting:
        class_weight = np.where(counts > 0, len(labels) / (N_STATES * np.maximum(counts, 1)), 0.0)
        weights = class_weight[labels]
    else:
        weights = np.ones(len(labels))

    widths = (CONDITION_DIM, *config.hidden, N_STATES)
    mlp = init_params(widths, config.seed, output_activation=Activation.SOFTMAX)
    state = AdamState.for_params(mlp.parameters(), config.learning_rate)
    initial_loss = _cross_entropy(mlp, x, labels, weights)

    progress_every = get_settings().progress_every_batches
    n = len(labels)
    trace: list[float] = []
    for epoch in range(config.epochs):
        order = derive_rng(config.seed, epoch + 1).permutation(n)
        batch_losses: list[float] = []
        for b, start in enumerate(range(0, n, config.batch_size)):
            idx = order[start : start + config.batch_size]
            xb, yb, wb = x[idx], onehot[idx], weights[idx]
            logits = mlp_forward_logits(mlp, xb)
            log_p = _log_softmax(logits)
            batch_losses.append(float(np.mean(-wb * np.sum(yb * log_p, axis=1))))

            logit_grad = wb[:, None] * (np.exp(log_p) - yb) / len(idx)
            grads, _ = backward_from_logits(mlp, xb, logit_grad)
            params, state = adam_step(mlp.parameters(), grads, state)
            mlp = mlp.with_parameters(params)
            if (b + 1) % progress_every == 0:
                logger.info("link-state epoch %d batch %d loss %.5f", epoch + 1, b + 1, batch_losses[-1])
        trace.append(float(np.mean(batch_losses)))
        logger.debug("link-state epoch %d/%d loss %.6f", epoch + 1, config.epochs, trace[-1])

    logger.info("link-state training done: loss %.5f -> %.5f", initial_loss, trace[-1])
    return LinkStateTrainingResult(
        net=LinkStateNet(scaler=scaler, mlp=mlp),
        initial_loss=initial_loss,
        loss_trace=trace,
        warnings=warnings,
    )


def predict_state_probs_batch(net: LinkStateNet, conditions: Sequence[LinkCondition]) -> FloatArray:
    """(n, 3) matrix of state probabilities in (LOS, NLOS, NoLink) order."""
    features = condition_feature_matrix(conditions)
    if features.shape[0] == 0:
        return np.zeros((0, N_STATES))
    return mlp_forward(net.mlp, net.scaler.apply(features))


def predict_state_probs(net: LinkStateNet, u: LinkCondition) -> tuple[float, float, float]:
    """Probabilities (p_los, p_nlos, p_nolink) for one condition."""
    features = condition_features(u, FeatureMode.LINK_STATE)
    p = mlp_forward(net.mlp, net.scaler.apply(features))
    return float(p[0]), float(p[1]), float(p[2])


def sample_state_from_probs(probs: Sequence[float], rng: np.random.Generator) -> LinkState:
    """Inverse-CDF categorical draw over (LOS, NLOS, NoLink)."""
    r = rng.random()
    cumulative = np.cumsum(np.asarray(probs, dtype=np.float64))
    index = int(np.searchsorted(cumulative, r, side="right"))
    return LINK_STATE_ORDER[min(index, N_STATES - 1)]


def sample_state(net: LinkStateNet, u: LinkCondition, rng: np.random.Generator) -> LinkState:
    """Draw a link state from the predicted probabilities."""
    return sample_state_from_probs(predict_state_probs(net, u), rng)


def state_recall(net: LinkStateNet, links: Sequence[Link]) -> dict[LinkState, float | None]:
    """Per-class recall of the argmax prediction; None for classes with no links."""
    if not links:
        return dict.fromkeys(LINK_STATE_ORDER)
    predicted = np.argmax(predict_state_probs_batch(net, [link.condition for link in links]), axis=1)
    labels = state_indices(links)
    recall: dict[LinkState, float | None] = {}
    for i, state in enumerate(LINK_STATE_ORDER):
        mask = labels == i
        recall[state] = float(np.mean(predicted[mask] == i)) if mask.any() else None
    return recall
