"""Second stage: conditional VAE over the 120-d NLOS path vector.

The encoder maps (condition, path vector) to a diagonal Gaussian over the
latent z; the decoder maps (condition, z) to a diagonal Gaussian over the
path vector. Both networks emit means followed by log-variances, and every
log-variance is clamped to [-10, 10] before exponentiation.
"""

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass, field
from enum import Enum
from typing import Any

import numpy as np
from numpy.typing import ArrayLike, NDArray

from mmwave_channel_gen.channel.features import FeatureMode, condition_feature_matrix, condition_features
from mmwave_channel_gen.channel.paths import decode_paths, encode_path_matrix, encode_paths
from mmwave_channel_gen.channel.scaler import StandardScaler, scaler_fit
from mmwave_channel_gen.config.settings import get_settings
from mmwave_channel_gen.config.standards import (
    ABSENT_THRESHOLD_DB,
    CONDITION_DIM,
    LATENT_DIM,
    LOG_VAR_CLAMP,
    PATH_VECTOR_DIM,
    LinkState,
)
from mmwave_channel_gen.errors import InvalidConditionError, NonFiniteError, NotTrainedError, TrainingDataError
from mmwave_channel_gen.models.channel import Link, LinkCondition, Path
from mmwave_channel_gen.models.training import VaeTrainConfig
from mmwave_channel_gen.nn.mlp import MlpModel, backward_from_logits, init_params, mlp_forward
from mmwave_channel_gen.nn.optim import AdamState, adam_step
from mmwave_channel_gen.rng import derive_rng

logger = logging.getLogger(__name__)

FloatArray = NDArray[np.float64]
LOG_2PI = math.log(2.0 * math.pi)


class GenerationMode(str, Enum):
    """SAMPLE draws z and the output; MEAN uses z = 0 and the decoder mean."""

    SAMPLE = "sample"
    MEAN = "mean"


@dataclass(frozen=True)
class PathVae:
    """Encoder/decoder pair with the scalers fit on its training data."""

    encoder: MlpModel
    decoder: MlpModel
    cond_scaler: StandardScaler | None = None
    data_scaler: StandardScaler | None = None
    latent_dim: int = LATENT_DIM
    absent_threshold_db: float = ABSENT_THRESHOLD_DB

    def __post_init__(self) -> None:
        if self.encoder.input_width != CONDITION_DIM + PATH_VECTOR_DIM:
            raise ValueError(f"encoder input must be {CONDITION_DIM} + {PATH_VECTOR_DIM}")
        if self.encoder.output_width != 2 * self.latent_dim:
            raise ValueError(f"encoder output must be {self.latent_dim} + {self.latent_dim}")
        if self.decoder.input_width != CONDITION_DIM + self.latent_dim:
            raise ValueError(f"decoder input must be {CONDITION_DIM} + {self.latent_dim}")
        if self.decoder.output_width != 2 * PATH_VECTOR_DIM:
            raise ValueError(f"decoder output must be {PATH_VECTOR_DIM} + {PATH_VECTOR_DIM}")

    @property
    def is_trained(self) -> bool:
        return self.cond_scaler is not None and self.data_scaler is not None

    def parameters(self) -> list[FloatArray]:
        return self.encoder.parameters() + self.decoder.parameters()

    def with_parameters(self, params: Sequence[FloatArray]) -> "PathVae":
        n_enc = len(self.encoder.parameters())
        return PathVae(
            encoder=self.encoder.with_parameters(params[:n_enc]),
            decoder=self.decoder.with_parameters(params[n_enc:]),
            cond_scaler=self.cond_scaler,
            data_scaler=self.data_scaler,
            latent_dim=self.latent_dim,
            absent_threshold_db=self.absent_threshold_db,
        )

    def to_dict(self) -> dict[str, Any]:
        if self.cond_scaler is None or self.data_scaler is None:
            raise NotTrainedError("Cannot serialize a path VAE without fitted scalers")
        return {
            "encoder": self.encoder.to_dict(),
            "decoder": self.decoder.to_dict(),
            "cond_scaler": self.cond_scaler.to_dict(),
            "data_scaler": self.data_scaler.to_dict(),
            "latent_dim": self.latent_dim,
            "absent_threshold_db": self.absent_threshold_db,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "PathVae":
        return cls(
            encoder=MlpModel.from_dict(data["encoder"]),
            decoder=MlpModel.from_dict(data["decoder"]),
            cond_scaler=StandardScaler.from_dict(data["cond_scaler"]),
            data_scaler=StandardScaler.from_dict(data["data_scaler"]),
            latent_dim=int(data["latent_dim"]),
            absent_threshold_db=float(data["absent_threshold_db"]),
        )


@dataclass
class ElboResult:
    """ELBO of one sample with its reconstruction and KL parts."""

    elbo: float
    recon: float
    kl: float

    def to_dict(self) -> dict[str, float]:
        return {"elbo": self.elbo, "recon": self.recon, "kl": self.kl}


@dataclass
class VaeTrainingResult:
    """Trained VAE plus its -ELBO trace."""

    vae: PathVae
    initial_loss: float
    loss_trace: list[float] = field(default_factory=list)


def clamp_log_var(log_var: ArrayLike) -> FloatArray:
    return np.clip(np.asarray(log_var, dtype=np.float64), -LOG_VAR_CLAMP, LOG_VAR_CLAMP)


def kl_diag_gaussian(mu: ArrayLike, log_var: ArrayLike) -> float:
    """KL(N(mu, diag(exp(log_var))) || N(0, I)), summed over dimensions."""
    m = np.asarray(mu, dtype=np.float64)
    lv = np.asarray(log_var, dtype=np.float64)
    return float(0.5 * np.sum(m * m + np.exp(lv) - lv - 1.0))


def gaussian_log_likelihood(x: ArrayLike, mu: ArrayLike, log_var: ArrayLike) -> float:
    """Sum over dimensions of log N(x_d; mu_d, exp(log_var_d))."""
    xv = np.asarray(x, dtype=np.float64)
    m = np.asarray(mu, dtype=np.float64)
    lv = np.asarray(log_var, dtype=np.float64)
    return float(-0.5 * np.sum(LOG_2PI + lv + (xv - m) ** 2 * np.exp(-lv)))


def reparam_sample(mu: ArrayLike, log_var: ArrayLike, rng: np.random.Generator) -> FloatArray:
    """z = mu + exp(log_var / 2) * eps with eps ~ N(0, I)."""
    m = np.asarray(mu, dtype=np.float64)
    eps = rng.standard_normal(m.shape)
    return np.asarray(m + np.exp(0.5 * clamp_log_var(log_var)) * eps)


def _split(out: FloatArray, width: int) -> tuple[FloatArray, FloatArray, FloatArray]:
    raw_lv = out[..., width:]
    return out[..., :width], clamp_log_var(raw_lv), raw_lv


def _require_finite(name: str, value: float | FloatArray) -> None:
    if not np.all(np.isfinite(value)):
        raise NonFiniteError(f"Non-finite {name} term", block=name)


def elbo(vae: PathVae, x: ArrayLike, cond: ArrayLike, rng: np.random.Generator) -> ElboResult:
    """Single-sample ELBO estimate for one scaled (x, condition) pair.

    Args:
        vae: Path VAE
        x: Scaled 120-d path vector
        cond: Scaled 5-d condition vector
        rng: Stream for the reparameterized latent draw

    Raises:
        NonFiniteError: If the reconstruction or KL term is not finite
    """
    xv = np.asarray(x, dtype=np.float64)
    cv = np.asarray(cond, dtype=np.float64)
    mu_z, lv_z, _ = _split(mlp_forward(vae.encoder, np.concatenate([cv, xv])), vae.latent_dim)
    z = reparam_sample(mu_z, lv_z, rng)
    mu_x, lv_x, _ = _split(mlp_forward(vae.decoder, np.concatenate([cv, z])), PATH_VECTOR_DIM)

    recon = gaussian_log_likelihood(xv, mu_x, lv_x)
    _require_finite("reconstruction", recon)
    kl = kl_diag_gaussian(mu_z, lv_z)
    _require_finite("kl", kl)
    return ElboResult(elbo=recon - kl, recon=recon, kl=kl)


def negative_elbo_and_grads(
    vae: PathVae,
    x: FloatArray,
    cond: FloatArray,
    eps: FloatArray,
) -> tuple[float, list[FloatArray]]:
    """Batch-mean -ELBO and its gradient for a frozen latent noise draw.

    Args:
        vae: Path VAE
        x: (batch, 120) scaled path vectors
        cond: (batch, 5) scaled conditions
        eps: (batch, latent_dim) standard-normal noise for the reparameterization

    Returns:
        Loss and gradient blocks congruent with ``vae.parameters()``
    """
    batch = x.shape[0]
    enc_in = np.hstack([cond, x])
    mu_z, lv_z, raw_lv_z = _split(mlp_forward(vae.encoder, enc_in), vae.latent_dim)
    sigma_z = np.exp(0.5 * lv_z)
    z = mu_z + sigma_z * eps

    dec_in = np.hstack([cond, z])
    mu_x, lv_x, raw_lv_x = _split(mlp_forward(vae.decoder, dec_in), PATH_VECTOR_DIM)
    inv_var_x = np.exp(-lv_x)
    resid = x - mu_x

    recon = -0.5 * np.sum(LOG_2PI + lv_x + resid**2 * inv_var_x, axis=1)
    kl = 0.5 * np.sum(mu_z**2 + np.exp(lv_z) - lv_z - 1.0, axis=1)
    loss = float(np.mean(kl - recon))
    _require_finite("reconstruction", recon)
    _require_finite("kl", kl)

    # Clamped log-variances pass no gradient
    mask_x = np.abs(raw_lv_x) < LOG_VAR_CLAMP
    mask_z = np.abs(raw_lv_z) < LOG_VAR_CLAMP

    d_mu_x = -resid * inv_var_x / batch
    d_lv_x = 0.5 * (1.0 - resid**2 * inv_var_x) * mask_x / batch
    dec_grads, dec_in_grad = backward_from_logits(vae.decoder, dec_in, np.hstack([d_mu_x, d_lv_x]))

    g_z = dec_in_grad[:, CONDITION_DIM:]
    d_mu_z = g_z + mu_z / batch
    d_lv_z = (g_z * eps * 0.5 * sigma_z + 0.5 * (np.exp(lv_z) - 1.0) / batch) * mask_z
    enc_grads, _ = backward_from_logits(vae.encoder, enc_in, np.hstack([d_mu_z, d_lv_z]))
    return loss, enc_grads + dec_grads


def negative_elbo(vae: PathVae, x: FloatArray, cond: FloatArray, eps: FloatArray) -> float:
    """Batch-mean -ELBO for a frozen latent noise draw."""
    mu_z, lv_z, _ = _split(mlp_forward(vae.encoder, np.hstack([cond, x])), vae.latent_dim)
    z = mu_z + np.exp(0.5 * lv_z) * eps
    mu_x, lv_x, _ = _split(mlp_forward(vae.decoder, np.hstack([cond, z])), PATH_VECTOR_DIM)
    recon = -0.5 * np.sum(LOG_2PI + lv_x + (x - mu_x) ** 2 * np.exp(-lv_x), axis=1)
    kl = 0.5 * np.sum(mu_z**2 + np.exp(lv_z) - lv_z - 1.0, axis=1)
    return float(np.mean(kl - recon))


def init_vae(config: VaeTrainConfig | None = None) -> PathVae:
    """Untrained VAE with freshly initialized encoder and decoder."""
    config = config or VaeTrainConfig()
    encoder = init_params(
        (CONDITION_DIM + PATH_VECTOR_DIM, *config.encoder_hidden, 2 * config.latent_dim),
        config.seed,
    )
    decoder = init_params(
        (CONDITION_DIM + config.latent_dim, *config.decoder_hidden, 2 * PATH_VECTOR_DIM),
        config.seed + 1,
    )
    return PathVae(
        encoder=encoder,
        decoder=decoder,
        latent_dim=config.latent_dim,
        absent_threshold_db=get_settings().absent_threshold_db,
    )


def vae_training_arrays(links: Sequence[Link]) -> tuple[FloatArray, FloatArray]:
    """Raw (conditions, path vectors) for the LOS/NLOS links of a set."""
    usable = [link for link in links if link.state is not LinkState.NO_LINK]
    cond = condition_feature_matrix(
        [link.condition for link in usable], FeatureMode.VAE, [link.state for link in usable]
    )
    return cond, encode_path_matrix(usable)


def train_vae(
    train_links: Sequence[Link],
    config: VaeTrainConfig | None = None,
) -> VaeTrainingResult:
    """Fit the path VAE by minimizing the batch-mean -ELBO with Adam.

    NoLink links are excluded; scalers are fit on the remaining training links.
    One latent sample is drawn per datum per step.

    Raises:
        TrainingDataError: If fewer usable links than one batch remain
    """
    config = config or VaeTrainConfig()
    raw_cond, raw_x = vae_training_arrays(train_links)
    n = raw_x.shape[0]
    if n < config.batch_size:
        raise TrainingDataError(
            f"Path VAE training needs at least one batch ({config.batch_size}) of LOS/NLOS links, got {n}"
        )

    cond_scaler = scaler_fit(raw_cond)
    data_scaler = scaler_fit(raw_x)
    cond = cond_scaler.apply(raw_cond)
    x = data_scaler.apply(raw_x)

    untrained = init_vae(config)
    vae = PathVae(
        encoder=untrained.encoder,
        decoder=untrained.decoder,
        cond_scaler=cond_scaler,
        data_scaler=data_scaler,
        latent_dim=config.latent_dim,
        absent_threshold_db=untrained.absent_threshold_db,
    )
    state = AdamState.for_params(vae.parameters(), config.learning_rate)
    initial_eps = derive_rng(config.seed, 0).standard_normal((n, config.latent_dim))
    initial_loss = negative_elbo(vae, x, cond, initial_eps)

    progress_every = get_settings().progress_every_batches
    trace: list[float] = []
    for epoch in range(config.epochs):
        rng = derive_rng(config.seed, epoch + 1)
        order = rng.permutation(n)
        batch_losses: list[float] = []
        for b, start in enumerate(range(0, n, config.batch_size)):
            idx = order[start : start + config.batch_size]
            eps = rng.standard_normal((len(idx), config.latent_dim))
            loss, grads = negative_elbo_and_grads(vae, x[idx], cond[idx], eps)
            params, state = adam_step(vae.parameters(), grads, state)
            vae = vae.with_parameters(params)
            batch_losses.append(loss)
            if (b + 1) % progress_every == 0:
                logger.info("vae epoch %d batch %d -elbo %.4f", epoch + 1, b + 1, loss)
        trace.append(float(np.mean(batch_losses)))
        logger.debug("vae epoch %d/%d -elbo %.5f", epoch + 1, config.epochs, trace[-1])

    logger.info("vae training done: -elbo %.4f -> %.4f", initial_loss, trace[-1])
    return VaeTrainingResult(vae=vae, initial_loss=initial_loss, loss_trace=trace)


def _require_trained(vae: PathVae) -> tuple[StandardScaler, StandardScaler]:
    if vae.cond_scaler is None or vae.data_scaler is None:
        raise NotTrainedError("Path VAE has no fitted scalers; train it first")
    return vae.cond_scaler, vae.data_scaler


def reconstruct(vae: PathVae, link: Link) -> tuple[FloatArray, FloatArray]:
    """Scaled path vector of a link and its decode-mean-of-encode-mean reconstruction."""
    cond_scaler, data_scaler = _require_trained(vae)
    c = cond_scaler.apply(condition_features(link.condition, FeatureMode.VAE, link.state))
    x = data_scaler.apply(encode_paths(link))
    mu_z = mlp_forward(vae.encoder, np.concatenate([c, x]))[: vae.latent_dim]
    mu_x = mlp_forward(vae.decoder, np.concatenate([c, mu_z]))[:PATH_VECTOR_DIM]
    return x, mu_x


def generate_nlos_vector(
    vae: PathVae,
    u: LinkCondition,
    s: LinkState,
    rng: np.random.Generator,
    mode: GenerationMode = GenerationMode.SAMPLE,
) -> FloatArray:
    """Unscaled 120-d NLOS path vector drawn from the decoder."""
    cond_scaler, data_scaler = _require_trained(vae)
    if s not in (LinkState.LOS, LinkState.NLOS):
        raise InvalidConditionError(f"NLOS paths are generated for LOS or NLOS states, not {s}")

    c = cond_scaler.apply(condition_features(u, FeatureMode.VAE, s))
    if mode is GenerationMode.SAMPLE:
        z = rng.standard_normal(vae.latent_dim)
    else:
        z = np.zeros(vae.latent_dim)
    mu_x, lv_x, _ = _split(mlp_forward(vae.decoder, np.concatenate([c, z])), PATH_VECTOR_DIM)
    if mode is GenerationMode.SAMPLE:
        x = mu_x + np.exp(0.5 * lv_x) * rng.standard_normal(PATH_VECTOR_DIM)
    else:
        x = mu_x
    return data_scaler.invert(x)


def generate_nlos(
    vae: PathVae,
    u: LinkCondition,
    s: LinkState,
    rng: np.random.Generator,
    mode: GenerationMode = GenerationMode.SAMPLE,
) -> list[Path]:
    """Draw the NLOS paths of a link in state ``s`` at condition ``u``.

    Raises:
        NotTrainedError: If the VAE has no fitted scalers
        InvalidConditionError: If ``s`` is NoLink
    """
    vector = generate_nlos_vector(vae, u, s, rng, mode)
    return decode_paths(vector, u, vae.absent_threshold_db)
