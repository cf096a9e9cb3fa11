"""Hyper-parameters and transition records shared by the learning agents."""

from dataclasses import dataclass, fields
from typing import Any, Dict, Optional

import numpy as np

from noma_vr_offloader.core.errors import ConfigError

AGENT_KINDS = ("hrppo", "ppo", "hrdqn", "random")


@dataclass(frozen=True)
class AgentConfig:
    gamma: float = 0.99
    gae_lambda: float = 0.95
    clip_epsilon: float = 0.2
    epochs: int = 10
    batch_size: int = 64
    rollout_length: int = 2048
    actor_lr: float = 3e-4
    critic_lr: float = 1e-3
    entropy_coef: float = 0.01
    max_grad_norm: float = 0.5
    normalize_advantages: bool = True
    paper_exact_clip: bool = False
    target_sync_period: int = 10
    hidden_layers: int = 2
    hidden_units: int = 128
    replay_capacity: int = 50000
    dqn_lr: float = 1e-3
    dqn_learning_starts: int = 1000
    epsilon_start: float = 1.0
    epsilon_end: float = 0.05
    epsilon_fraction: float = 0.3

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        if not 0 < self.gamma <= 1:
            raise ConfigError(f"gamma must lie in (0, 1], got {self.gamma}")
        if not 0 <= self.gae_lambda <= 1:
            raise ConfigError(f"gae_lambda must lie in [0, 1], got {self.gae_lambda}")
        if not 0 < self.clip_epsilon < 1:
            raise ConfigError(f"clip_epsilon must lie in (0, 1), got {self.clip_epsilon}")
        for name in ("epochs", "batch_size", "rollout_length", "target_sync_period", "hidden_units", "replay_capacity"):
            if getattr(self, name) < 1:
                raise ConfigError(f"{name} must be >= 1, got {getattr(self, name)}")
        if self.hidden_layers < 0:
            raise ConfigError(f"hidden_layers must be >= 0, got {self.hidden_layers}")
        for name in ("actor_lr", "critic_lr", "dqn_lr", "entropy_coef", "max_grad_norm", "dqn_learning_starts"):
            if getattr(self, name) < 0:
                raise ConfigError(f"{name} must be >= 0, got {getattr(self, name)}")
        for name in ("epsilon_start", "epsilon_end"):
            if not 0 <= getattr(self, name) <= 1:
                raise ConfigError(f"{name} must lie in [0, 1], got {getattr(self, name)}")
        if not 0 < self.epsilon_fraction <= 1:
            raise ConfigError(f"epsilon_fraction must lie in (0, 1], got {self.epsilon_fraction}")

    def hidden_sizes(self) -> tuple:
        return (self.hidden_units,) * self.hidden_layers

    def to_dict(self) -> Dict[str, Any]:
        return {f.name: getattr(self, f.name) for f in fields(self)}


@dataclass
class Transition:
    observation: np.ndarray
    action: int
    log_prob: float
    rewards: np.ndarray
    next_observation: np.ndarray
    terminated: bool
    advantages: Optional[np.ndarray] = None
    value_targets: Optional[np.ndarray] = None
