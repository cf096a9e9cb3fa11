"""Greedy evaluation rollouts and the metrics reported at each eval point."""

import logging
from typing import List, Optional

import numpy as np

from noma_vr_offloader.agents.base import EVAL_STREAM, Policy, policy_from_checkpoint
from noma_vr_offloader.core.errors import DomainError
from noma_vr_offloader.env import EnvConfig, OffloadingEnv
from noma_vr_offloader.experiment.models import EpisodeSummary, MetricsRow
from noma_vr_offloader.nets import Checkpoint

logger = logging.getLogger(__name__)

# Eval episodes draw from their own episode seeds so they never replay a training episode.
EVAL_EPISODE_BASE = 1_000_000


def eval_rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([seed, EVAL_STREAM]))


def run_episode(env: OffloadingEnv, policy: Policy, rng: np.random.Generator, episode_seed: int) -> EpisodeSummary:
    """Roll ``policy`` through one episode.

    Successful frames are the per-user mean of non-failed slots; slots never executed
    after early termination earn nothing.
    """
    _, observation = env.reset(episode_seed)
    n_users = env.config.n_users
    reward = 0.0
    energy = 0.0
    failures = np.zeros(n_users, dtype=np.int64)
    successes = np.zeros(n_users, dtype=np.int64)
    rates: List[float] = []
    executed = 0
    while True:
        outcome = env.step(policy(observation, rng))
        info = outcome.info
        executed += 1
        reward += float(outcome.rewards.sum())
        energy += float(info.energy.sum())
        failures += info.failure
        successes += 1 - info.failure
        rates.extend(info.rate[info.assignment > 0].tolist())
        if outcome.terminated:
            break
        observation = outcome.observation
    return EpisodeSummary(
        reward=reward,
        successful_frames=float(successes.mean()),
        energy_j=energy,
        executed_slots=executed,
        failures_per_user=failures.tolist(),
        rates=rates,
    )


def evaluate_policy(
    policy: Policy,
    env_config: EnvConfig,
    n_episodes: int,
    seed: int,
    step: int = 0,
) -> MetricsRow:
    if n_episodes < 1:
        raise DomainError(f"n_episodes must be >= 1, got {n_episodes}")
    env = OffloadingEnv(env_config)
    rng = eval_rng(seed)
    episodes = [run_episode(env, policy, rng, EVAL_EPISODE_BASE + k) for k in range(n_episodes)]

    rewards = np.array([e.reward for e in episodes])
    rates = [r for e in episodes for r in e.rates]
    row = MetricsRow(
        step=step,
        reward=float(rewards.mean()),
        reward_std=float(rewards.std()),
        successful_frames=float(np.mean([e.successful_frames for e in episodes])),
        energy_j=float(np.mean([e.energy_j for e in episodes])),
        avg_rate_mbps=float(np.mean(rates)) / 1e6 if rates else 0.0,
        rate_defined=bool(rates),
    )
    logger.debug(
        f"eval step {step}: reward={row.reward:.3f} frames={row.successful_frames:.2f} energy={row.energy_j:.4g}"
    )
    return row


def evaluate_checkpoint(
    checkpoint: Checkpoint,
    env_config: EnvConfig,
    n_episodes: int,
    seed: int,
    step: Optional[int] = None,
) -> MetricsRow:
    """Greedy evaluation of a restored network; refuses checkpoints built for other dimensions."""
    checkpoint.require(env_config.n_users, env_config.n_channels, env_config.observation_size)
    return evaluate_policy(policy_from_checkpoint(checkpoint), env_config, n_episodes, seed, step or 0)
