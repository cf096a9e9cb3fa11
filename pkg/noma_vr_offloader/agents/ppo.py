"""PPO and its hybrid-reward variant (HRPPO).

HRPPO keeps one critic head per user, runs GAE per user against a periodically synced
target critic, and drives the actor with the sum of the per-user advantages. Plain PPO
is the same loop with the per-user rewards summed before discounting and a single head.
"""

import logging
from dataclasses import dataclass
from typing import Any, Callable, List

import numpy as np

from noma_vr_offloader.agents.advantage import compute_gae
from noma_vr_offloader.agents.base import Agent, EvalHook, Policy, agent_rng, build_mlp
from noma_vr_offloader.agents.buffers import RolloutBatch, TrajectoryBuffer
from noma_vr_offloader.agents.models import AgentConfig, Transition
from noma_vr_offloader.core.errors import ConfigError, DomainError, TrainingFault, UsageError
from noma_vr_offloader.env import MAX_JOINT_ACTIONS, EnvConfig, OffloadingEnv
from noma_vr_offloader.nets import (
    KIND_POLICY,
    AdamState,
    CategoricalDist,
    Checkpoint,
    DenseNet,
    adam_update,
    clip_by_global_norm,
    sample_action,
)

logger = logging.getLogger(__name__)


@dataclass
class PolicyGradient:
    grads: List[np.ndarray]
    objective: float
    entropy: float
    clip_fraction: float
    faults: int


@dataclass
class CriticLoss:
    loss: float
    grads: List[np.ndarray]


def clipped_surrogate(ratio: np.ndarray, advantage: np.ndarray, clip_epsilon: float, paper_exact: bool = False):
    """Per-sample clipped objective and the mask of samples whose ratio term carries gradient.

    Canonical form: min(r*A, clip(r)*A). The literal form min(r, clip(r))*A differs for A < 0.
    """
    clipped_ratio = np.clip(ratio, 1.0 - clip_epsilon, 1.0 + clip_epsilon)
    if paper_exact:
        factor = np.minimum(ratio, clipped_ratio)
        return factor * advantage, ratio <= clipped_ratio
    unclipped = ratio * advantage
    clipped = clipped_ratio * advantage
    return np.minimum(unclipped, clipped), unclipped <= clipped


def ppo_policy_gradient(
    actor: DenseNet,
    observations: np.ndarray,
    actions: np.ndarray,
    behavior_log_probs: np.ndarray,
    advantages: np.ndarray,
    config: AgentConfig,
) -> PolicyGradient:
    """Ascent gradient of the mean clipped surrogate plus entropy bonus.

    ``advantages`` is (B, N) for the hybrid variant, summed over users, or (B,) for plain PPO.
    Samples with a non-finite ratio are dropped and counted in ``faults``.
    """
    advantages = np.asarray(advantages, dtype=np.float64)
    if advantages.ndim == 2:
        advantages = advantages.sum(axis=1)
    batch = len(actions)
    if advantages.shape != (batch,) or len(behavior_log_probs) != batch or len(observations) != batch:
        raise DomainError("observations, actions, log-probs and advantages must share the batch dimension")
    if config.normalize_advantages and batch > 1:
        advantages = (advantages - advantages.mean()) / (advantages.std() + 1e-8)

    logits, cache = actor.forward(observations)
    dist = CategoricalDist(logits)
    log_probs = dist.log_prob(actions)
    with np.errstate(over="ignore", invalid="ignore"):
        ratio = np.exp(log_probs - behavior_log_probs)
    valid = np.isfinite(ratio)
    faults = int(batch - valid.sum())
    if faults:
        logger.warning(f"Excluded {faults} samples with non-finite importance ratio")
    count = max(int(valid.sum()), 1)

    safe_ratio = np.where(valid, ratio, 1.0)
    surrogate, active = clipped_surrogate(safe_ratio, advantages, config.clip_epsilon, config.paper_exact_clip)
    sample_entropy = dist.entropy()

    probs = dist.probs
    one_hot = np.zeros_like(probs)
    one_hot[np.arange(batch), actions] = 1.0
    weight = np.where(valid & active, safe_ratio * advantages, 0.0)
    grad_logits = weight[:, None] * (one_hot - probs)
    grad_logits -= config.entropy_coef * probs * (dist.log_probs + sample_entropy[:, None])
    grad_logits[~valid] = 0.0
    grad_logits /= count

    grads = actor.backward(cache, grad_logits)
    objective = float(np.sum(surrogate[valid]) / count + config.entropy_coef * np.sum(sample_entropy[valid]) / count)
    clip_fraction = float(np.mean(~active[valid])) if valid.any() else 0.0
    return PolicyGradient(
        grads=grads,
        objective=objective,
        entropy=float(np.mean(sample_entropy)),
        clip_fraction=clip_fraction,
        faults=faults,
    )


def hybrid_critic_loss(critic: DenseNet, observations: np.ndarray, value_targets: np.ndarray) -> CriticLoss:
    """Batch mean of the per-sample sum over heads of squared value errors."""
    value_targets = np.asarray(value_targets, dtype=np.float64)
    if value_targets.ndim == 1:
        value_targets = value_targets[:, None]
    if value_targets.shape[1] != critic.output_size:
        raise DomainError(f"critic has {critic.output_size} heads, targets carry {value_targets.shape[1]}")

    values, cache = critic.forward(observations)
    error = values - value_targets
    batch = error.shape[0]
    loss = float(np.sum(np.square(error)) / batch)
    grads = critic.backward(cache, 2.0 * error / batch)
    return CriticLoss(loss=loss, grads=grads)


class PPOAgent(Agent):
    def __init__(self, env_config: EnvConfig, config: AgentConfig, seed: int, hybrid: bool = True):
        if env_config.action_space_size > MAX_JOINT_ACTIONS:
            raise ConfigError(
                f"n_users/n_channels give {env_config.action_space_size} joint actions; "
                f"policy heads are limited to {MAX_JOINT_ACTIONS}"
            )
        self.kind = "hrppo" if hybrid else "ppo"
        self.hybrid = hybrid
        self.env_config = env_config
        self.config = config
        self.rng = agent_rng(seed)

        hidden = config.hidden_sizes()
        observation_size = env_config.observation_size
        heads = env_config.n_users if hybrid else 1
        self.actor = build_mlp(observation_size, hidden, env_config.action_space_size, self.rng, output_gain=0.01)
        self.critic = build_mlp(observation_size, hidden, heads, self.rng, output_gain=1.0)
        self.behavior_actor = self.actor.copy()
        self.target_critic = self.critic.copy()
        self.actor_optimizer = AdamState.for_params(self.actor.params, lr=config.actor_lr)
        self.critic_optimizer = AdamState.for_params(self.critic.params, lr=config.critic_lr)
        self.update_count = 0
        self.faults = 0

    def act(self, observation: np.ndarray, rng: np.random.Generator, greedy: bool = True) -> int:
        action, _ = sample_action(CategoricalDist(self.actor.predict(observation)), rng, greedy=greedy)
        return action

    def checkpoint(self) -> Checkpoint:
        return Checkpoint(
            kind=KIND_POLICY,
            n_users=self.env_config.n_users,
            n_channels=self.env_config.n_channels,
            net=self.actor.copy(),
        )

    def _reward_channels(self, rewards: np.ndarray) -> np.ndarray:
        return rewards if self.hybrid else np.array([rewards.sum()])

    def train(self, env: OffloadingEnv, total_steps: int, eval_interval: int, on_eval: EvalHook) -> None:
        episode = 0
        _, observation = env.reset(episode)
        step = 0
        on_eval(step)
        while step < total_steps:
            buffer = TrajectoryBuffer()
            while len(buffer) < self.config.rollout_length and step < total_steps:
                dist = CategoricalDist(self.behavior_actor.predict(observation))
                action, log_prob = sample_action(dist, self.rng)
                outcome = env.step(action)
                buffer.add(
                    Transition(
                        observation=observation,
                        action=action,
                        log_prob=log_prob,
                        rewards=self._reward_channels(outcome.rewards),
                        next_observation=outcome.observation,
                        terminated=outcome.terminated,
                    )
                )
                step += 1
                if outcome.terminated:
                    episode += 1
                    _, observation = env.reset(episode)
                else:
                    observation = outcome.observation
                if step % eval_interval == 0 or step == total_steps:
                    on_eval(step)

            try:
                self.update(buffer)
            except (DomainError, UsageError, TrainingFault) as e:
                raise TrainingFault(str(e), step) from e
        logger.info(f"{self.kind} finished {step} env steps over {episode} episodes, {self.update_count} updates")

    def update(self, buffer: TrajectoryBuffer) -> None:
        """One update phase: GAE against the target critic, then K epochs of minibatch steps."""
        batch = buffer.as_batch()
        advantages, targets = self._advantages(batch)
        buffer.assign_advantages(advantages, targets)

        size = len(batch)
        for _ in range(self.config.epochs):
            order = self.rng.permutation(size)
            for start in range(0, size, self.config.batch_size):
                picks = order[start : start + self.config.batch_size]
                self._minibatch_step(batch, picks, advantages[picks], targets[picks])

        self.behavior_actor.load_from(self.actor)

    def _advantages(self, batch: RolloutBatch):
        values = np.empty((len(batch) + 1, self.critic.output_size))
        values[:-1] = self.target_critic.predict(batch.observations)
        if batch.terminated[-1]:
            values[-1] = 0.0
        else:
            values[-1] = self.target_critic.predict(batch.next_observations[-1])
        return compute_gae(batch.rewards, values, batch.terminated, self.config.gamma, self.config.gae_lambda)

    def _minibatch_step(self, batch: RolloutBatch, picks: np.ndarray, advantages, targets) -> None:
        gradient = ppo_policy_gradient(
            self.actor,
            batch.observations[picks],
            batch.actions[picks],
            batch.log_probs[picks],
            advantages,
            self.config,
        )
        self.faults += gradient.faults
        ascent = clip_by_global_norm(gradient.grads, self.config.max_grad_norm)
        adam_update(self.actor.params, [-g for g in ascent], self.actor_optimizer)
        self.actor.mark_updated()

        critic = hybrid_critic_loss(self.critic, batch.observations[picks], targets)
        adam_update(
            self.critic.params,
            clip_by_global_norm(critic.grads, self.config.max_grad_norm),
            self.critic_optimizer,
        )
        self.critic.mark_updated()

        self.update_count += 1
        if self.update_count % self.config.target_sync_period == 0:
            self.target_critic.load_from(self.critic)
        logger.debug(
            f"update {self.update_count}: objective={gradient.objective:.4f} "
            f"critic_loss={critic.loss:.4f} clip_fraction={gradient.clip_fraction:.3f}"
        )


@dataclass
class TrainingRun:
    """What an HRPPO or PPO run leaves behind: the learning curve and the final greedy checkpoint."""

    curve: List[Any]
    checkpoint: Checkpoint
    agent: PPOAgent


def hrppo_train(
    env: OffloadingEnv,
    config: AgentConfig,
    seed: int,
    total_steps: int,
    eval_interval: int,
    evaluate: Callable[[int, Policy], Any],
    hybrid: bool = True,
) -> TrainingRun:
    """Train a fresh agent; ``evaluate(step, greedy_policy)`` gives one curve entry per eval point."""
    agent = PPOAgent(env.config, config, seed, hybrid=hybrid)
    curve: List[Any] = []
    agent.train(env, total_steps, eval_interval, lambda step: curve.append(evaluate(step, agent.policy())))
    return TrainingRun(curve=curve, checkpoint=agent.checkpoint(), agent=agent)
