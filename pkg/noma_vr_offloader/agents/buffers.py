"""On-policy trajectory storage and the off-policy replay ring."""

from dataclasses import dataclass
from typing import List

import numpy as np

from noma_vr_offloader.agents.models import Transition
from noma_vr_offloader.core.errors import DomainError, UsageError


@dataclass
class RolloutBatch:
    observations: np.ndarray
    actions: np.ndarray
    log_probs: np.ndarray
    rewards: np.ndarray
    next_observations: np.ndarray
    terminated: np.ndarray

    def __len__(self) -> int:
        return len(self.actions)


class TrajectoryBuffer:
    """Transitions of one rollout, possibly spanning several episodes."""

    def __init__(self):
        self._transitions: List[Transition] = []

    def __len__(self) -> int:
        return len(self._transitions)

    def add(self, transition: Transition) -> None:
        if self._transitions and len(transition.rewards) != len(self._transitions[0].rewards):
            raise DomainError(
                f"transition carries {len(transition.rewards)} reward channels, "
                f"buffer holds {len(self._transitions[0].rewards)}"
            )
        self._transitions.append(transition)

    @property
    def transitions(self) -> List[Transition]:
        return self._transitions

    def as_batch(self) -> RolloutBatch:
        if not self._transitions:
            raise UsageError("trajectory buffer is empty")
        items = self._transitions
        return RolloutBatch(
            observations=np.stack([t.observation for t in items]),
            actions=np.array([t.action for t in items], dtype=np.int64),
            log_probs=np.array([t.log_prob for t in items], dtype=np.float64),
            rewards=np.stack([np.asarray(t.rewards, dtype=np.float64) for t in items]),
            next_observations=np.stack([t.next_observation for t in items]),
            terminated=np.array([t.terminated for t in items], dtype=bool),
        )

    def assign_advantages(self, advantages: np.ndarray, value_targets: np.ndarray) -> None:
        if len(advantages) != len(self._transitions) or len(value_targets) != len(self._transitions):
            raise DomainError("advantage/target count does not match the number of transitions")
        for transition, advantage, target in zip(self._transitions, advantages, value_targets):
            transition.advantages = advantage
            transition.value_targets = target

    def clear(self) -> None:
        self._transitions.clear()


class ReplayBuffer:
    """Fixed-capacity ring of (s, a, per-user rewards, s', terminated)."""

    def __init__(self, capacity: int, observation_size: int, n_rewards: int):
        if capacity < 1:
            raise DomainError(f"replay capacity must be >= 1, got {capacity}")
        self.capacity = capacity
        self.cursor = 0
        self.size = 0
        self.observations = np.zeros((capacity, observation_size))
        self.actions = np.zeros(capacity, dtype=np.int64)
        self.rewards = np.zeros((capacity, n_rewards))
        self.next_observations = np.zeros((capacity, observation_size))
        self.terminated = np.zeros(capacity, dtype=bool)

    def __len__(self) -> int:
        return self.size

    def push(self, transition: Transition) -> None:
        slot = self.cursor
        self.observations[slot] = transition.observation
        self.actions[slot] = transition.action
        self.rewards[slot] = transition.rewards
        self.next_observations[slot] = transition.next_observation
        self.terminated[slot] = transition.terminated
        self.cursor = (self.cursor + 1) % self.capacity
        self.size = min(self.size + 1, self.capacity)

    def sample(self, batch_size: int, rng: np.random.Generator) -> RolloutBatch:
        if batch_size > self.size:
            raise UsageError(f"cannot sample {batch_size} transitions from a buffer holding {self.size}")
        picks = rng.choice(self.size, size=batch_size, replace=False)
        return RolloutBatch(
            observations=self.observations[picks],
            actions=self.actions[picks],
            log_probs=np.zeros(batch_size),
            rewards=self.rewards[picks],
            next_observations=self.next_observations[picks],
            terminated=self.terminated[picks],
        )
