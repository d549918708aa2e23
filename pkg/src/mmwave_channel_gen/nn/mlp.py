"""Dense multilayer perceptrons with manual backpropagation.

Weights are stored as (outputs, inputs) matrices and every forward pass works
on a batch of row vectors, so a single input is just a batch of one.
"""

from collections.abc import Sequence
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Any

import numpy as np
from numpy.typing import ArrayLike, NDArray

from mmwave_channel_gen.errors import ShapeMismatchError

FloatArray = NDArray[np.float64]


class Activation(str, Enum):
    """Supported layer activations."""

    RELU = "relu"
    LINEAR = "linear"
    SOFTMAX = "softmax"


@dataclass(frozen=True)
class MlpModel:
    """A fully connected network.

    Attributes:
        layer_widths: Input width, hidden widths, output width
        weights: Per-layer (out, in) weight matrices
        biases: Per-layer bias vectors
        hidden_activation: Activation after every hidden layer
        output_activation: Activation of the final layer
    """

    layer_widths: tuple[int, ...]
    weights: list[FloatArray] = field(repr=False)
    biases: list[FloatArray] = field(repr=False)
    hidden_activation: Activation = Activation.RELU
    output_activation: Activation = Activation.LINEAR

    def __post_init__(self) -> None:
        n_layers = len(self.layer_widths) - 1
        if len(self.weights) != n_layers or len(self.biases) != n_layers:
            raise ShapeMismatchError(
                f"Expected {n_layers} weight/bias blocks, got {len(self.weights)}/{len(self.biases)}",
                expected=n_layers,
                actual=len(self.weights),
            )
        for i, (w, b) in enumerate(zip(self.weights, self.biases, strict=True)):
            expected = (self.layer_widths[i + 1], self.layer_widths[i])
            if w.shape != expected:
                raise ShapeMismatchError(
                    f"Layer {i} weight shape {w.shape} != {expected}",
                    expected=expected,
                    actual=w.shape,
                )
            if b.shape != (self.layer_widths[i + 1],):
                raise ShapeMismatchError(
                    f"Layer {i} bias length {b.shape[0]} != {self.layer_widths[i + 1]}",
                    expected=self.layer_widths[i + 1],
                    actual=b.shape[0],
                )

    @property
    def input_width(self) -> int:
        return self.layer_widths[0]

    @property
    def output_width(self) -> int:
        return self.layer_widths[-1]

    def parameters(self) -> list[FloatArray]:
        """Parameter blocks in the order W0, b0, W1, b1, ..."""
        blocks: list[FloatArray] = []
        for w, b in zip(self.weights, self.biases, strict=True):
            blocks.extend((w, b))
        return blocks

    def with_parameters(self, params: Sequence[FloatArray]) -> "MlpModel":
        """Return a copy of this model holding the given parameter blocks."""
        return replace(
            self,
            weights=[np.array(p, dtype=np.float64) for p in params[0::2]],
            biases=[np.array(p, dtype=np.float64) for p in params[1::2]],
        )

    def is_finite(self) -> bool:
        return all(bool(np.all(np.isfinite(p))) for p in self.parameters())

    def to_dict(self) -> dict[str, Any]:
        """Convert to the portable JSON layout (row-major flattened weights)."""
        return {
            "widths": list(self.layer_widths),
            "weights": [w.ravel().tolist() for w in self.weights],
            "biases": [b.tolist() for b in self.biases],
            "hidden_activation": self.hidden_activation.value,
            "output_activation": self.output_activation.value,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "MlpModel":
        widths = tuple(int(w) for w in data["widths"])
        weights = [
            np.asarray(flat, dtype=np.float64).reshape(widths[i + 1], widths[i])
            for i, flat in enumerate(data["weights"])
        ]
        biases = [np.asarray(b, dtype=np.float64) for b in data["biases"]]
        return cls(
            layer_widths=widths,
            weights=weights,
            biases=biases,
            hidden_activation=Activation(data.get("hidden_activation", "relu")),
            output_activation=Activation(data.get("output_activation", "linear")),
        )


def count_params(layer_widths: Sequence[int]) -> int:
    """Number of weights and biases in a dense network.

    Args:
        layer_widths: Input width, hidden widths, output width

    Returns:
        Sum over layers of fan_in * fan_out + fan_out
    """
    return sum(a * b + b for a, b in zip(layer_widths[:-1], layer_widths[1:], strict=True))


def init_params(
    layer_widths: Sequence[int],
    rng_seed: int,
    hidden_activation: Activation = Activation.RELU,
    output_activation: Activation = Activation.LINEAR,
) -> MlpModel:
    """Create a network with fan-balanced uniform weights and zero biases.

    Args:
        layer_widths: Input width, hidden widths, output width
        rng_seed: Seed for the weight draw

    Returns:
        Freshly initialized model

    Raises:
        ValueError: If fewer than two widths are given or any width is < 1
    """
    widths = tuple(int(w) for w in layer_widths)
    if len(widths) < 2:
        raise ValueError("layer_widths needs at least an input and an output width")
    if any(w < 1 for w in widths):
        raise ValueError(f"All layer widths must be >= 1, got {widths}")

    rng = np.random.default_rng(rng_seed)
    weights: list[FloatArray] = []
    biases: list[FloatArray] = []
    for fan_in, fan_out in zip(widths[:-1], widths[1:], strict=True):
        bound = np.sqrt(6.0 / (fan_in + fan_out))
        weights.append(rng.uniform(-bound, bound, size=(fan_out, fan_in)))
        biases.append(np.zeros(fan_out))
    return MlpModel(widths, weights, biases, hidden_activation, output_activation)


def softmax(logits: ArrayLike) -> FloatArray:
    """Row-wise softmax, shifted by the row maximum."""
    z = np.asarray(logits, dtype=np.float64)
    shifted = z - np.max(z, axis=-1, keepdims=True)
    e = np.exp(shifted)
    return np.asarray(e / np.sum(e, axis=-1, keepdims=True))


def _activate(pre: FloatArray, activation: Activation) -> FloatArray:
    if activation is Activation.RELU:
        return np.maximum(pre, 0.0)
    if activation is Activation.SOFTMAX:
        return softmax(pre)
    return pre


def _as_batch(model: MlpModel, inputs: ArrayLike) -> tuple[FloatArray, bool]:
    x = np.asarray(inputs, dtype=np.float64)
    single = x.ndim == 1
    batch = x.reshape(1, -1) if single else x
    if batch.ndim != 2 or batch.shape[1] != model.input_width:
        actual = batch.shape[-1] if batch.ndim >= 1 else 0
        raise ShapeMismatchError(
            f"Input length {actual} does not match network input width {model.input_width}",
            expected=model.input_width,
            actual=actual,
        )
    return batch, single


def _forward_cached(model: MlpModel, batch: FloatArray) -> tuple[FloatArray, list[FloatArray], list[FloatArray]]:
    layer_inputs: list[FloatArray] = []
    pre_activations: list[FloatArray] = []
    h = batch
    last = len(model.weights) - 1
    for i, (w, b) in enumerate(zip(model.weights, model.biases, strict=True)):
        layer_inputs.append(h)
        pre = h @ w.T + b
        pre_activations.append(pre)
        h = _activate(pre, model.output_activation if i == last else model.hidden_activation)
    return h, layer_inputs, pre_activations


def mlp_forward(model: MlpModel, inputs: ArrayLike) -> FloatArray:
    """Evaluate the network.

    Args:
        model: Network to evaluate
        inputs: A single input vector or a (batch, input_width) matrix

    Returns:
        Output vector, or a (batch, output_width) matrix for batched input

    Raises:
        ShapeMismatchError: If the input width does not match the network
    """
    batch, single = _as_batch(model, inputs)
    out, _, _ = _forward_cached(model, batch)
    return out[0] if single else out


def mlp_forward_logits(model: MlpModel, inputs: ArrayLike) -> FloatArray:
    """Evaluate the network up to the last pre-activation."""
    batch, single = _as_batch(model, inputs)
    _, _, pre = _forward_cached(model, batch)
    return pre[-1][0] if single else pre[-1]


def backward_from_logits(
    model: MlpModel,
    inputs: ArrayLike,
    logit_grad: ArrayLike,
) -> tuple[list[FloatArray], FloatArray]:
    """Backpropagate a gradient given at the final pre-activation.

    Classifiers use this with the (p - y) cross-entropy gradient, which avoids
    dividing by small probabilities.

    Returns:
        Gradient blocks congruent with ``model.parameters()`` and the gradient
        with respect to the inputs
    """
    batch, single = _as_batch(model, inputs)
    delta = np.asarray(logit_grad, dtype=np.float64)
    if single:
        delta = delta.reshape(1, -1)
    if delta.shape != (batch.shape[0], model.output_width):
        raise ShapeMismatchError(
            f"Output gradient shape {delta.shape} != {(batch.shape[0], model.output_width)}",
            expected=(batch.shape[0], model.output_width),
            actual=delta.shape,
        )

    _, layer_inputs, pre_activations = _forward_cached(model, batch)
    grads: list[FloatArray] = [np.empty(0)] * (2 * len(model.weights))
    for i in range(len(model.weights) - 1, -1, -1):
        grads[2 * i] = delta.T @ layer_inputs[i]
        grads[2 * i + 1] = delta.sum(axis=0)
        delta = delta @ model.weights[i]
        if i > 0:
            # Hidden activation is relu
            delta = delta * (pre_activations[i - 1] > 0.0)
    input_grad = delta[0] if single else delta
    return grads, input_grad


def mlp_backward(
    model: MlpModel,
    inputs: ArrayLike,
    loss_grad_at_output: ArrayLike,
) -> list[FloatArray]:
    """Gradient of a loss with respect to every weight and bias.

    The forward intermediates are recomputed from ``inputs``.

    Args:
        model: Network the loss was computed with
        inputs: Input vector or batch matrix
        loss_grad_at_output: dLoss/dOutput, same shape as the network output

    Returns:
        Gradient blocks congruent with ``model.parameters()``

    Raises:
        ShapeMismatchError: If the gradient does not match the output layer
    """
    g = np.asarray(loss_grad_at_output, dtype=np.float64)
    if model.output_activation is Activation.SOFTMAX:
        batch, single = _as_batch(model, inputs)
        g2 = g.reshape(1, -1) if single else g
        if g2.shape != (batch.shape[0], model.output_width):
            raise ShapeMismatchError(
                f"Output gradient shape {g2.shape} != {(batch.shape[0], model.output_width)}",
                expected=(batch.shape[0], model.output_width),
                actual=g2.shape,
            )
        p = mlp_forward(model, batch)
        g2 = p * (g2 - np.sum(g2 * p, axis=1, keepdims=True))
        g = g2[0] if single else g2
    grads, _ = backward_from_logits(model, inputs, g)
    return grads
