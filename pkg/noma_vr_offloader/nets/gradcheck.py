"""Central finite-difference verification of DenseNet.backward."""

from typing import Optional, Sequence

import numpy as np

from noma_vr_offloader.nets.dense import DenseNet


RELATIVE_ERROR_FLOOR = 1e-3


def relative_error(analytic: np.ndarray, numeric: np.ndarray, floor: float = RELATIVE_ERROR_FLOOR) -> np.ndarray:
    """Elementwise |a - n| / max(|a|, |n|, floor)."""
    return np.abs(analytic - numeric) / np.maximum(np.maximum(np.abs(analytic), np.abs(numeric)), floor)


def gradient_check(
    net: DenseNet,
    rng: np.random.Generator,
    batch_size: int = 3,
    step: float = 1e-5,
    max_params: Optional[int] = None,
) -> float:
    """Max relative error between analytic and central-difference gradients of a random linear loss.

    With ``max_params`` set, a random subset of that many scalars is probed.
    """
    inputs = rng.standard_normal((batch_size, net.input_size))
    coeffs = rng.standard_normal((batch_size, net.output_size)) / np.sqrt(batch_size * net.output_size)

    def loss() -> float:
        return float(np.sum(coeffs * net.predict(inputs)))

    _, cache = net.forward(inputs)
    analytic = np.concatenate([g.reshape(-1) for g in net.backward(cache, coeffs)])

    flat = net.flat_params()
    probes: Sequence[int]
    if max_params is None or max_params >= flat.size:
        probes = range(flat.size)
    else:
        probes = rng.choice(flat.size, size=max_params, replace=False)

    worst = 0.0
    for index in probes:
        original = flat[index]
        flat[index] = original + step
        net.set_flat_params(flat)
        plus = loss()
        flat[index] = original - step
        net.set_flat_params(flat)
        minus = loss()
        flat[index] = original
        numeric = (plus - minus) / (2.0 * step)
        worst = max(worst, float(relative_error(np.array(analytic[index]), np.array(numeric))))
    net.set_flat_params(flat)
    return worst


def random_layer_sizes(
    rng: np.random.Generator,
    max_input: int = 26,
    max_hidden: int = 128,
    max_output: int = 1024,
    max_hidden_layers: int = 2,
) -> list:
    hidden = [int(rng.integers(1, max_hidden + 1)) for _ in range(int(rng.integers(0, max_hidden_layers + 1)))]
    return [int(rng.integers(1, max_input + 1)), *hidden, int(rng.integers(1, max_output + 1))]
