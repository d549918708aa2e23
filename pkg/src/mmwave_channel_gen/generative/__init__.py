"""Two-stage generative model: link-state predictor and conditional path VAE."""

from mmwave_channel_gen.generative.generator import (
    ChannelModel,
    ChannelTrainingResult,
    generate_batch,
    generate_link,
    load_model,
    save_model,
    train_channel_model,
)
from mmwave_channel_gen.generative.link_state import (
    LinkStateNet,
    LinkStateTrainingResult,
    predict_state_probs,
    predict_state_probs_batch,
    sample_state,
    sample_state_from_probs,
    state_recall,
    train_link_state,
)
from mmwave_channel_gen.generative.path_vae import (
    ElboResult,
    GenerationMode,
    PathVae,
    VaeTrainingResult,
    elbo,
    generate_nlos,
    gaussian_log_likelihood,
    kl_diag_gaussian,
    reconstruct,
    reparam_sample,
    train_vae,
)

__all__ = [
    # Link state
    "LinkStateNet",
    "LinkStateTrainingResult",
    "train_link_state",
    "predict_state_probs",
    "predict_state_probs_batch",
    "sample_state",
    "sample_state_from_probs",
    "state_recall",
    # Path VAE
    "PathVae",
    "ElboResult",
    "GenerationMode",
    "VaeTrainingResult",
    "train_vae",
    "elbo",
    "kl_diag_gaussian",
    "gaussian_log_likelihood",
    "reparam_sample",
    "generate_nlos",
    "reconstruct",
    # Pipeline
    "ChannelModel",
    "ChannelTrainingResult",
    "train_channel_model",
    "generate_link",
    "generate_batch",
    "save_model",
    "load_model",
]
