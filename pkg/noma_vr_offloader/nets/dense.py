"""Dense feed-forward networks with tanh hidden layers and analytic backpropagation."""

import itertools
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from noma_vr_offloader.core.errors import DomainError, UsageError

_net_ids = itertools.count()


def orthogonal(rng: np.random.Generator, shape: Tuple[int, int], gain: float) -> np.ndarray:
    rows, cols = shape
    flat = rng.standard_normal((max(rows, cols), min(rows, cols)))
    q, r = np.linalg.qr(flat)
    q *= np.sign(np.diag(r))
    if rows < cols:
        q = q.T
    return gain * q[:rows, :cols]


@dataclass
class ForwardCache:
    net_id: int
    version: int
    activations: List[np.ndarray]
    squeeze: bool


class DenseNet:
    """Weights are stored (fan_in, fan_out); inputs are row vectors or (batch, fan_in) matrices.

    Every parameter change bumps ``version``; a cache from an older version is stale.
    """

    def __init__(
        self,
        layer_sizes: Sequence[int],
        rng: Optional[np.random.Generator] = None,
        hidden_gain: float = float(np.sqrt(2.0)),
        output_gain: float = 1.0,
    ):
        if len(layer_sizes) < 2 or any(int(size) < 1 for size in layer_sizes):
            raise DomainError(f"invalid layer sizes {list(layer_sizes)}")
        self.layer_sizes: Tuple[int, ...] = tuple(int(size) for size in layer_sizes)
        self.weights: List[np.ndarray] = []
        self.biases: List[np.ndarray] = []
        n_layers = len(self.layer_sizes) - 1
        for layer, (fan_in, fan_out) in enumerate(zip(self.layer_sizes[:-1], self.layer_sizes[1:])):
            if rng is None:
                weight = np.zeros((fan_in, fan_out))
            else:
                gain = output_gain if layer == n_layers - 1 else hidden_gain
                weight = orthogonal(rng, (fan_in, fan_out), gain)
            self.weights.append(weight.astype(np.float64))
            self.biases.append(np.zeros(fan_out, dtype=np.float64))
        self.version = 0
        self._id = next(_net_ids)

    @property
    def params(self) -> List[np.ndarray]:
        return [p for pair in zip(self.weights, self.biases) for p in pair]

    @property
    def param_count(self) -> int:
        return sum(p.size for p in self.params)

    @property
    def input_size(self) -> int:
        return self.layer_sizes[0]

    @property
    def output_size(self) -> int:
        return self.layer_sizes[-1]

    def mark_updated(self) -> None:
        self.version += 1

    def forward(self, inputs: np.ndarray) -> Tuple[np.ndarray, ForwardCache]:
        x = np.asarray(inputs, dtype=np.float64)
        squeeze = x.ndim == 1
        if squeeze:
            x = x[None, :]
        if x.ndim != 2 or x.shape[1] != self.input_size:
            raise DomainError(f"input shape {np.shape(inputs)} does not match input size {self.input_size}")

        activations = [x]
        last = len(self.weights) - 1
        for layer, (weight, bias) in enumerate(zip(self.weights, self.biases)):
            z = activations[-1] @ weight + bias
            activations.append(z if layer == last else np.tanh(z))

        output = activations[-1]
        cache = ForwardCache(net_id=self._id, version=self.version, activations=activations, squeeze=squeeze)
        return (output[0] if squeeze else output), cache

    def predict(self, inputs: np.ndarray) -> np.ndarray:
        output, _ = self.forward(inputs)
        return output

    def backward(self, cache: ForwardCache, output_grad: np.ndarray) -> List[np.ndarray]:
        """Gradients of a scalar loss w.r.t. ``params`` given dLoss/dOutput."""
        if cache.net_id != self._id or cache.version != self.version:
            raise UsageError("forward cache is stale: parameters changed or cache belongs to another net")
        grad = np.asarray(output_grad, dtype=np.float64)
        if cache.squeeze:
            grad = grad[None, :]
        expected = cache.activations[-1].shape
        if grad.shape != expected:
            raise DomainError(f"output gradient shape {grad.shape} does not match output shape {expected}")

        grads: List[np.ndarray] = []
        for layer in range(len(self.weights) - 1, -1, -1):
            layer_input = cache.activations[layer]
            grads.append(grad.sum(axis=0))
            grads.append(layer_input.T @ grad)
            if layer > 0:
                grad = (grad @ self.weights[layer].T) * (1.0 - np.square(layer_input))
        grads.reverse()
        return grads

    def copy(self) -> "DenseNet":
        clone = DenseNet(self.layer_sizes)
        clone.load_from(self)
        return clone

    def load_from(self, other: "DenseNet") -> None:
        if other.layer_sizes != self.layer_sizes:
            raise DomainError(f"layer sizes {other.layer_sizes} do not match {self.layer_sizes}")
        for target, source in zip(self.params, other.params):
            target[...] = source
        self.mark_updated()

    def flat_params(self) -> np.ndarray:
        return np.concatenate([p.reshape(-1) for p in self.params])

    def set_flat_params(self, flat: np.ndarray) -> None:
        flat = np.asarray(flat, dtype=np.float64)
        if flat.size != self.param_count:
            raise DomainError(f"expected {self.param_count} scalars, found {flat.size}")
        offset = 0
        for param in self.params:
            param[...] = flat[offset : offset + param.size].reshape(param.shape)
            offset += param.size
        self.mark_updated()
