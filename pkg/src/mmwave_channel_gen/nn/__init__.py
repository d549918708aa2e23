"""Dense-network numerics: forward/backward passes, Adam and gradient checks."""

from mmwave_channel_gen.nn.gradcheck import GradCheckResult, check_gradients
from mmwave_channel_gen.nn.mlp import (
    Activation,
    MlpModel,
    backward_from_logits,
    count_params,
    init_params,
    mlp_backward,
    mlp_forward,
    softmax,
)
from mmwave_channel_gen.nn.optim import AdamState, adam_step

__all__ = [
    "Activation",
    "MlpModel",
    "init_params",
    "count_params",
    "mlp_forward",
    "mlp_backward",
    "backward_from_logits",
    "softmax",
    "AdamState",
    "adam_step",
    "GradCheckResult",
    "check_gradients",
]
