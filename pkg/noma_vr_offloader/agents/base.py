"""Common agent interface and greedy policies restored from checkpoints."""

from abc import ABC, abstractmethod
from typing import Callable, List, Optional

import numpy as np

from noma_vr_offloader.env import OffloadingEnv
from noma_vr_offloader.nets import KIND_POLICY, Checkpoint, DenseNet

Policy = Callable[[np.ndarray, np.random.Generator], int]
EvalHook = Callable[[int], None]

# SeedSequence stream tags, combined with the campaign seed
AGENT_STREAM = 1
EVAL_STREAM = 2


def agent_rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([seed, AGENT_STREAM]))


def eval_schedule(total_steps: int, eval_interval: int) -> List[int]:
    """Env-step counts at which an eval point is emitted: 0, k, 2k, ... and the final step."""
    steps = list(range(0, total_steps + 1, eval_interval))
    if steps[-1] != total_steps:
        steps.append(total_steps)
    return steps


def build_mlp(
    input_size: int,
    hidden_sizes: tuple,
    output_size: int,
    rng: np.random.Generator,
    output_gain: float = 1.0,
) -> DenseNet:
    return DenseNet([input_size, *hidden_sizes, output_size], rng=rng, output_gain=output_gain)


def q_head_totals(net: DenseNet, observation: np.ndarray, n_users: int) -> np.ndarray:
    """Sum over per-user Q heads of every joint action."""
    q = net.predict(observation)
    return q.reshape(n_users, -1).sum(axis=0)


class Agent(ABC):
    kind: str

    @abstractmethod
    def act(self, observation: np.ndarray, rng: np.random.Generator, greedy: bool = True) -> int:
        raise NotImplementedError

    @abstractmethod
    def train(self, env: OffloadingEnv, total_steps: int, eval_interval: int, on_eval: EvalHook) -> None:
        """Interact for ``total_steps`` env steps, calling ``on_eval`` at every eval_schedule step."""
        raise NotImplementedError

    def checkpoint(self) -> Optional[Checkpoint]:
        return None

    def policy(self) -> Policy:
        return lambda observation, rng: self.act(observation, rng, greedy=True)


def policy_from_checkpoint(checkpoint: Checkpoint) -> Policy:
    net = checkpoint.net
    if checkpoint.kind == KIND_POLICY:
        return lambda observation, rng: int(np.argmax(net.predict(observation)))
    return lambda observation, rng: int(np.argmax(q_head_totals(net, observation, checkpoint.n_users)))
