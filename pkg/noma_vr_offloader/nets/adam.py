"""Bias-corrected Adam over a list of parameter arrays, updated in place."""

from dataclasses import dataclass, field
from typing import List, Sequence

import numpy as np

from noma_vr_offloader.core.errors import DomainError, TrainingFault


@dataclass
class AdamState:
    lr: float
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8
    first_moment: List[np.ndarray] = field(default_factory=list)
    second_moment: List[np.ndarray] = field(default_factory=list)
    step_count: int = 0

    @classmethod
    def for_params(cls, params: Sequence[np.ndarray], lr: float, **kwargs) -> "AdamState":
        return cls(
            lr=lr,
            first_moment=[np.zeros_like(p) for p in params],
            second_moment=[np.zeros_like(p) for p in params],
            **kwargs,
        )


def adam_update(params: Sequence[np.ndarray], grads: Sequence[np.ndarray], state: AdamState) -> Sequence[np.ndarray]:
    """Descend along ``grads``; pass negated gradients to ascend."""
    if len(params) != len(grads) or len(params) != len(state.first_moment):
        raise DomainError(
            f"{len(params)} params, {len(grads)} grads, {len(state.first_moment)} moment slots do not match"
        )
    for param, grad in zip(params, grads):
        if param.shape != grad.shape:
            raise DomainError(f"gradient shape {grad.shape} does not match parameter shape {param.shape}")
        if not np.all(np.isfinite(grad)):
            raise TrainingFault("non-finite gradient passed to Adam")

    state.step_count += 1
    correction1 = 1.0 - state.beta1**state.step_count
    correction2 = 1.0 - state.beta2**state.step_count
    for param, grad, m, v in zip(params, grads, state.first_moment, state.second_moment):
        m *= state.beta1
        m += (1.0 - state.beta1) * grad
        v *= state.beta2
        v += (1.0 - state.beta2) * np.square(grad)
        param -= state.lr * (m / correction1) / (np.sqrt(v / correction2) + state.eps)
    return params


def clip_by_global_norm(grads: Sequence[np.ndarray], max_norm: float) -> List[np.ndarray]:
    if max_norm <= 0:
        return list(grads)
    norm = float(np.sqrt(sum(float(np.sum(np.square(g))) for g in grads)))
    if norm <= max_norm or norm == 0.0:
        return list(grads)
    scale = max_norm / norm
    return [g * scale for g in grads]
