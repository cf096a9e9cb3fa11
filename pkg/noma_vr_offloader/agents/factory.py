"""Agent construction by kind name."""

from noma_vr_offloader.agents.base import Agent
from noma_vr_offloader.agents.hrdqn import HRDQNAgent
from noma_vr_offloader.agents.models import AGENT_KINDS, AgentConfig
from noma_vr_offloader.agents.ppo import PPOAgent
from noma_vr_offloader.agents.random_agent import RandomAgent
from noma_vr_offloader.core.errors import ConfigError
from noma_vr_offloader.env import EnvConfig


def build_agent(kind: str, env_config: EnvConfig, config: AgentConfig, seed: int) -> Agent:
    if kind == "hrppo":
        return PPOAgent(env_config, config, seed, hybrid=True)
    if kind == "ppo":
        return PPOAgent(env_config, config, seed, hybrid=False)
    if kind == "hrdqn":
        return HRDQNAgent(env_config, config, seed)
    if kind == "random":
        return RandomAgent(env_config)
    raise ConfigError(f"unknown agent '{kind}'; expected one of {', '.join(AGENT_KINDS)}")
