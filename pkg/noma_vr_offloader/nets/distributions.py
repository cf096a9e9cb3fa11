"""Categorical distribution over joint actions, parameterised by logits."""

from typing import Tuple

import numpy as np

from noma_vr_offloader.core.errors import DomainError


def log_softmax(logits: np.ndarray) -> np.ndarray:
    shifted = logits - np.max(logits, axis=-1, keepdims=True)
    return shifted - np.log(np.sum(np.exp(shifted), axis=-1, keepdims=True))


class CategoricalDist:
    """Accepts a single logit vector or a (batch, actions) matrix."""

    def __init__(self, logits: np.ndarray):
        logits = np.asarray(logits, dtype=np.float64)
        if logits.ndim not in (1, 2) or logits.shape[-1] < 1:
            raise DomainError(f"logits must be a non-empty vector or matrix, got shape {logits.shape}")
        if not np.all(np.isfinite(logits)):
            raise DomainError("logits contain non-finite values")
        self.logits = logits
        self.log_probs = log_softmax(logits)

    @property
    def n_actions(self) -> int:
        return self.logits.shape[-1]

    @property
    def probs(self) -> np.ndarray:
        return np.exp(self.log_probs)

    def log_prob(self, actions) -> np.ndarray:
        if self.log_probs.ndim == 1:
            return self.log_probs[actions]
        actions = np.asarray(actions, dtype=np.int64)
        return self.log_probs[np.arange(self.log_probs.shape[0]), actions]

    def entropy(self) -> np.ndarray:
        return -np.sum(self.probs * self.log_probs, axis=-1)

    def greedy(self) -> int:
        if self.logits.ndim != 1:
            raise DomainError("greedy selection needs a single logit vector")
        return int(np.argmax(self.logits))


def sample_action(dist: CategoricalDist, rng: np.random.Generator, greedy: bool = False) -> Tuple[int, float]:
    """Draw one action (or the arg-max, lowest index on ties) and its log-probability."""
    if dist.logits.ndim != 1:
        raise DomainError("sample_action needs a single logit vector")
    if greedy:
        action = dist.greedy()
    else:
        cumulative = np.cumsum(dist.probs)
        action = int(np.searchsorted(cumulative, rng.random() * cumulative[-1], side="right"))
        action = min(action, dist.n_actions - 1)
    return action, float(dist.log_probs[action])


def entropy(dist: CategoricalDist) -> float:
    return float(dist.entropy()) if dist.logits.ndim == 1 else float(np.mean(dist.entropy()))
