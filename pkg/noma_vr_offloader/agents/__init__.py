"""Learning agents: HRPPO, PPO, HRDQN and the random baseline."""

from .advantage import compute_gae
from .base import Agent, Policy, agent_rng, eval_schedule, policy_from_checkpoint
from .buffers import ReplayBuffer, RolloutBatch, TrajectoryBuffer
from .factory import build_agent
from .hrdqn import HRDQNAgent, hrdqn_update
from .models import AGENT_KINDS, AgentConfig, Transition
from .ppo import PPOAgent, TrainingRun, clipped_surrogate, hrppo_train, hybrid_critic_loss, ppo_policy_gradient
from .random_agent import RandomAgent, random_agent_act

__all__ = [
    "AGENT_KINDS",
    "Agent",
    "AgentConfig",
    "HRDQNAgent",
    "PPOAgent",
    "Policy",
    "RandomAgent",
    "ReplayBuffer",
    "RolloutBatch",
    "TrajectoryBuffer",
    "TrainingRun",
    "Transition",
    "agent_rng",
    "build_agent",
    "clipped_surrogate",
    "compute_gae",
    "eval_schedule",
    "hrdqn_update",
    "hrppo_train",
    "hybrid_critic_loss",
    "policy_from_checkpoint",
    "ppo_policy_gradient",
    "random_agent_act",
]
