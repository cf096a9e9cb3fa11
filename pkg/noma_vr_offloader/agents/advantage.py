"""Generalised advantage estimation with one channel per reward component."""

from typing import Tuple

import numpy as np

from noma_vr_offloader.core.errors import DomainError


def compute_gae(
    rewards: np.ndarray,
    values: np.ndarray,
    terminated: np.ndarray,
    gamma: float,
    gae_lambda: float,
) -> Tuple[np.ndarray, np.ndarray]:
    """Backward-recursive GAE, independently per reward channel.

    ``rewards`` is (T,) or (T, K); ``values`` holds V(s^0..s^T) with the last row the
    bootstrap for the state after the final transition. The recursion restarts after
    every terminated transition. Returns (advantages, value_targets) shaped like rewards,
    targets being advantages + V(s^t).
    """
    rewards = np.asarray(rewards, dtype=np.float64)
    values = np.asarray(values, dtype=np.float64)
    terminated = np.asarray(terminated, dtype=bool)
    flat = rewards.ndim == 1
    if flat:
        rewards = rewards[:, None]
        values = values.reshape(-1, 1) if values.ndim == 1 else values

    steps = rewards.shape[0]
    if values.shape != (steps + 1, rewards.shape[1]):
        raise DomainError(f"values shape {values.shape} does not match {(steps + 1, rewards.shape[1])}")
    if terminated.shape != (steps,):
        raise DomainError(f"terminated flags shape {terminated.shape} does not match ({steps},)")

    advantages = np.zeros_like(rewards)
    running = np.zeros(rewards.shape[1])
    for t in range(steps - 1, -1, -1):
        live = 0.0 if terminated[t] else 1.0
        delta = rewards[t] + gamma * live * values[t + 1] - values[t]
        running = delta + gamma * gae_lambda * live * running
        advantages[t] = running

    targets = advantages + values[:-1]
    if flat:
        return advantages[:, 0], targets[:, 0]
    return advantages, targets
