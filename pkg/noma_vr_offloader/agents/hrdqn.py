"""Hybrid-reward DQN: one Q head per user over the joint action space.

Acting is epsilon-greedy on the sum of the heads; every head regresses toward its own
user's reward plus the discounted target-network value of a shared next action chosen
by the summed target heads.
"""

import logging
from dataclasses import dataclass
from typing import List

import numpy as np

from noma_vr_offloader.agents.base import Agent, EvalHook, agent_rng, build_mlp, q_head_totals
from noma_vr_offloader.agents.buffers import ReplayBuffer, RolloutBatch
from noma_vr_offloader.agents.models import AgentConfig, Transition
from noma_vr_offloader.agents.random_agent import random_agent_act
from noma_vr_offloader.core.errors import ConfigError, DomainError, TrainingFault, UsageError
from noma_vr_offloader.env import MAX_JOINT_ACTIONS, EnvConfig, OffloadingEnv
from noma_vr_offloader.nets import KIND_Q_HEADS, AdamState, Checkpoint, DenseNet, adam_update, clip_by_global_norm

logger = logging.getLogger(__name__)

MAX_Q_OUTPUTS = 2**18


@dataclass
class QUpdate:
    loss: float
    grads: List[np.ndarray]


def hrdqn_update(batch: RolloutBatch, q_net: DenseNet, target_net: DenseNet, gamma: float) -> QUpdate:
    """Squared TD error summed over heads, averaged over the batch, and its gradient."""
    size, n_heads = batch.rewards.shape
    if q_net.output_size % n_heads != 0 or q_net.output_size != target_net.output_size:
        raise DomainError(f"Q outputs {q_net.output_size} cannot be split into {n_heads} heads")
    rows = np.arange(size)

    next_q = target_net.predict(batch.next_observations).reshape(size, n_heads, -1)
    shared_next = np.argmax(next_q.sum(axis=1), axis=1)
    bootstrap = next_q[rows, :, shared_next]
    live = (~batch.terminated).astype(np.float64)[:, None]
    targets = batch.rewards + gamma * live * bootstrap

    q, cache = q_net.forward(batch.observations)
    q = q.reshape(size, n_heads, -1)
    error = q[rows, :, batch.actions] - targets

    output_grad = np.zeros_like(q)
    output_grad[rows, :, batch.actions] = 2.0 * error / size
    grads = q_net.backward(cache, output_grad.reshape(size, -1))
    return QUpdate(loss=float(np.sum(np.square(error)) / size), grads=grads)


class HRDQNAgent(Agent):
    kind = "hrdqn"

    def __init__(self, env_config: EnvConfig, config: AgentConfig, seed: int):
        actions = env_config.action_space_size
        if actions > MAX_JOINT_ACTIONS or env_config.n_users * actions > MAX_Q_OUTPUTS:
            raise ConfigError(
                f"n_users/n_channels give {env_config.n_users} Q heads over {actions} joint actions; "
                f"the Q network is limited to {MAX_Q_OUTPUTS} outputs"
            )
        self.env_config = env_config
        self.config = config
        self.rng = agent_rng(seed)
        self.n_users = env_config.n_users
        self.action_space_size = actions

        self.q_net = build_mlp(
            env_config.observation_size, config.hidden_sizes(), self.n_users * actions, self.rng, output_gain=1.0
        )
        self.target_net = self.q_net.copy()
        self.optimizer = AdamState.for_params(self.q_net.params, lr=config.dqn_lr)
        self.replay = ReplayBuffer(config.replay_capacity, env_config.observation_size, self.n_users)
        self.update_count = 0

    def epsilon(self, step: int, total_steps: int) -> float:
        horizon = max(1.0, self.config.epsilon_fraction * total_steps)
        progress = min(1.0, step / horizon)
        return self.config.epsilon_start + progress * (self.config.epsilon_end - self.config.epsilon_start)

    def act(self, observation: np.ndarray, rng: np.random.Generator, greedy: bool = True) -> int:
        return int(np.argmax(q_head_totals(self.q_net, observation, self.n_users)))

    def checkpoint(self) -> Checkpoint:
        return Checkpoint(
            kind=KIND_Q_HEADS,
            n_users=self.env_config.n_users,
            n_channels=self.env_config.n_channels,
            net=self.q_net.copy(),
        )

    def train(self, env: OffloadingEnv, total_steps: int, eval_interval: int, on_eval: EvalHook) -> None:
        episode = 0
        _, observation = env.reset(episode)
        on_eval(0)
        warmup = max(self.config.batch_size, self.config.dqn_learning_starts)
        for step in range(1, total_steps + 1):
            if self.rng.random() < self.epsilon(step - 1, total_steps):
                action = random_agent_act(self.rng, self.action_space_size)
            else:
                action = self.act(observation, self.rng)
            outcome = env.step(action)
            self.replay.push(
                Transition(
                    observation=observation,
                    action=action,
                    log_prob=0.0,
                    rewards=outcome.rewards,
                    next_observation=outcome.observation,
                    terminated=outcome.terminated,
                )
            )
            if outcome.terminated:
                episode += 1
                _, observation = env.reset(episode)
            else:
                observation = outcome.observation

            if len(self.replay) >= warmup:
                try:
                    self.learn()
                except (DomainError, UsageError, TrainingFault) as e:
                    raise TrainingFault(str(e), step) from e

            if step % eval_interval == 0 or step == total_steps:
                on_eval(step)
        logger.info(f"hrdqn finished {total_steps} env steps over {episode} episodes, {self.update_count} updates")

    def learn(self) -> float:
        batch = self.replay.sample(self.config.batch_size, self.rng)
        update = hrdqn_update(batch, self.q_net, self.target_net, self.config.gamma)
        adam_update(self.q_net.params, clip_by_global_norm(update.grads, self.config.max_grad_norm), self.optimizer)
        self.q_net.mark_updated()
        self.update_count += 1
        if self.update_count % self.config.target_sync_period == 0:
            self.target_net.load_from(self.q_net)
        return update.loss
