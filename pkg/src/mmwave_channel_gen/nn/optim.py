"""Adam optimizer over lists of parameter blocks."""

from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import NDArray

from mmwave_channel_gen.config.standards import ADAM_BETA1, ADAM_BETA2, ADAM_EPSILON
from mmwave_channel_gen.errors import NonFiniteError, ShapeMismatchError

FloatArray = NDArray[np.float64]


@dataclass
class AdamState:
    """Moment estimates and hyperparameters of an Adam run."""

    first_moment: list[FloatArray] = field(repr=False)
    second_moment: list[FloatArray] = field(repr=False)
    learning_rate: float
    step_count: int = 0
    beta1: float = ADAM_BETA1
    beta2: float = ADAM_BETA2
    epsilon: float = ADAM_EPSILON

    @classmethod
    def for_params(
        cls,
        params: Sequence[FloatArray],
        learning_rate: float,
        beta1: float = ADAM_BETA1,
        beta2: float = ADAM_BETA2,
        epsilon: float = ADAM_EPSILON,
    ) -> "AdamState":
        """Zero moments congruent with ``params``."""
        if learning_rate <= 0:
            raise ValueError(f"learning_rate must be > 0, got {learning_rate}")
        return cls(
            first_moment=[np.zeros_like(p) for p in params],
            second_moment=[np.zeros_like(p) for p in params],
            learning_rate=learning_rate,
            beta1=beta1,
            beta2=beta2,
            epsilon=epsilon,
        )


def adam_step(
    params: Sequence[FloatArray],
    grads: Sequence[FloatArray],
    state: AdamState,
) -> tuple[list[FloatArray], AdamState]:
    """Apply one bias-corrected Adam update.

    Inputs are left untouched; new parameter arrays and a new state are returned.

    Args:
        params: Parameter blocks
        grads: Gradient blocks, congruent with ``params``
        state: Optimizer state from the previous step

    Returns:
        Updated parameters and the advanced state

    Raises:
        ShapeMismatchError: If grads or moments are not congruent with params
        NonFiniteError: If a gradient block contains NaN or Inf
    """
    if state.learning_rate <= 0:
        raise ValueError(f"learning_rate must be > 0, got {state.learning_rate}")
    if not (len(params) == len(grads) == len(state.first_moment) == len(state.second_moment)):
        raise ShapeMismatchError(
            "Parameter, gradient and moment block counts differ",
            expected=len(params),
            actual=len(grads),
        )

    t = state.step_count + 1
    bc1 = 1.0 - state.beta1**t
    bc2 = 1.0 - state.beta2**t

    new_params: list[FloatArray] = []
    new_m: list[FloatArray] = []
    new_v: list[FloatArray] = []
    for i, (p, g, m, v) in enumerate(
        zip(params, grads, state.first_moment, state.second_moment, strict=True)
    ):
        if g.shape != p.shape or m.shape != p.shape:
            raise ShapeMismatchError(
                f"Block {i}: gradient shape {g.shape} != parameter shape {p.shape}",
                expected=p.shape,
                actual=g.shape,
            )
        if not np.all(np.isfinite(g)):
            raise NonFiniteError(f"Non-finite gradient in parameter block {i}", block=i)

        m = state.beta1 * m + (1.0 - state.beta1) * g
        v = state.beta2 * v + (1.0 - state.beta2) * (g * g)
        m_hat = m / bc1
        v_hat = v / bc2
        new_params.append(p - state.learning_rate * m_hat / (np.sqrt(v_hat) + state.epsilon))
        new_m.append(m)
        new_v.append(v)

    new_state = AdamState(
        first_moment=new_m,
        second_moment=new_v,
        learning_rate=state.learning_rate,
        step_count=t,
        beta1=state.beta1,
        beta2=state.beta2,
        epsilon=state.epsilon,
    )
    return new_params, new_state
