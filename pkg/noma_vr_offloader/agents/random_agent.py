"""Uniformly random channel assignment: the no-allocation baseline."""

import logging

import numpy as np

from noma_vr_offloader.agents.base import Agent, EvalHook, eval_schedule
from noma_vr_offloader.core.errors import DomainError
from noma_vr_offloader.env import EnvConfig, OffloadingEnv

logger = logging.getLogger(__name__)


def random_agent_act(rng: np.random.Generator, action_space_size: int) -> int:
    if action_space_size < 1:
        raise DomainError(f"action space size must be >= 1, got {action_space_size}")
    return int(rng.integers(action_space_size))


class RandomAgent(Agent):
    kind = "random"

    def __init__(self, env_config: EnvConfig):
        self.action_space_size = env_config.action_space_size

    def act(self, observation: np.ndarray, rng: np.random.Generator, greedy: bool = True) -> int:
        return random_agent_act(rng, self.action_space_size)

    def train(self, env: OffloadingEnv, total_steps: int, eval_interval: int, on_eval: EvalHook) -> None:
        logger.info("Random agent has nothing to learn; emitting eval points only")
        for step in eval_schedule(total_steps, eval_interval):
            on_eval(step)
