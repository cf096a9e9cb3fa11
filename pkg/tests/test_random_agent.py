"""Tests for the random baseline and agent construction"""

import numpy as np
import pytest

from noma_vr_offloader.agents import AgentConfig, HRDQNAgent, PPOAgent, RandomAgent, build_agent, eval_schedule, random_agent_act
from noma_vr_offloader.core.errors import ConfigError, DomainError
from noma_vr_offloader.env import OffloadingEnv
from noma_vr_offloader.experiment import evaluate_policy


class TestRandomAgent:
    """Test the no-allocation baseline"""

    def test_actions_cover_the_space(self):
        rng = np.random.default_rng(0)
        actions = {random_agent_act(rng, 4) for _ in range(200)}
        assert actions == {0, 1, 2, 3}

    def test_invalid_space(self):
        with pytest.raises(DomainError):
            random_agent_act(np.random.default_rng(0), 0)

    def test_train_only_emits_eval_points(self, tiny_env_config):
        steps = []
        RandomAgent(tiny_env_config).train(OffloadingEnv(tiny_env_config), 25, 10, steps.append)
        assert steps == [0, 10, 20, 25]

    def test_no_checkpoint(self, tiny_env_config):
        assert RandomAgent(tiny_env_config).checkpoint() is None

    def test_learning_curve_is_flat(self, tiny_env_config):
        policy = RandomAgent(tiny_env_config).policy()
        first = evaluate_policy(policy, tiny_env_config, 3, seed=4, step=0)
        later = evaluate_policy(policy, tiny_env_config, 3, seed=4, step=100)
        assert first.reward == later.reward
        assert first.successful_frames == later.successful_frames


def test_eval_schedule_includes_final_step():
    assert eval_schedule(100, 50) == [0, 50, 100]
    assert eval_schedule(120, 50) == [0, 50, 100, 120]


class TestBuildAgent:
    """Test agent construction by kind"""

    @pytest.mark.parametrize(
        "kind,cls", [("hrppo", PPOAgent), ("ppo", PPOAgent), ("hrdqn", HRDQNAgent), ("random", RandomAgent)]
    )
    def test_kinds(self, kind, cls, tiny_env_config, tiny_agent_config):
        agent = build_agent(kind, tiny_env_config, tiny_agent_config, seed=0)
        assert isinstance(agent, cls)
        assert agent.kind == kind

    def test_unknown_kind(self, tiny_env_config):
        with pytest.raises(ConfigError, match="unknown agent 'sac'"):
            build_agent("sac", tiny_env_config, AgentConfig(), seed=0)
