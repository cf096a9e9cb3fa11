"""Shared fixtures: small scenarios that keep training and search fast."""

import numpy as np
import pytest

from noma_vr_offloader.agents import AgentConfig
from noma_vr_offloader.core.config import RunConfig
from noma_vr_offloader.env import EnvConfig, SlotDraw, UserPopulation, VuProfile
from noma_vr_offloader.experiment import ExperimentSpec


@pytest.fixture
def tiny_env_config():
    """Two users, one channel, five slots, two or three tolerated failures each"""
    return EnvConfig(n_users=2, n_channels=1, frames_per_second=5, target_fps_min=2, target_fps_max=3)


@pytest.fixture
def tiny_agent_config():
    return AgentConfig(
        rollout_length=16,
        batch_size=8,
        epochs=2,
        hidden_layers=1,
        hidden_units=8,
        dqn_learning_starts=8,
        target_sync_period=2,
    )


@pytest.fixture
def tiny_run(tmp_path, tiny_env_config, tiny_agent_config):
    def build(agent="random", seeds=(0, 1), total_steps=20, eval_interval=10, out="run", workers=1):
        return RunConfig(
            env=tiny_env_config,
            agent=tiny_agent_config,
            experiment=ExperimentSpec(
                agent=agent,
                total_steps=total_steps,
                eval_interval=eval_interval,
                seeds=tuple(seeds),
                out_dir=str(tmp_path / out),
                eval_episodes=2,
                workers=workers,
            ),
        )

    return build


def make_profile(user_id, distance=1.0, tx_power=0.1, cpu=2e9, battery_weight=1.0, tolerance=1, frames=5):
    return VuProfile(
        user_id=user_id,
        position=(0.0, 0.0),
        distance=distance,
        tx_power=tx_power,
        cpu=cpu,
        battery_weight=battery_weight,
        target_fps=frames - tolerance,
        initial_tolerance=tolerance,
    )


def constant_slots(n_users, n_channels, frame_bits=221184.0, cycles_per_bit=50.0, fading=1.0):
    draw = SlotDraw(
        frame_bits=np.full(n_users, frame_bits),
        cycles_per_bit=np.full(n_users, cycles_per_bit),
        fading=np.full((n_users, n_channels), fading),
    )
    return lambda t: draw


@pytest.fixture
def profile_factory():
    return make_profile


@pytest.fixture
def population_factory():
    def build(*profiles):
        return UserPopulation(profiles=tuple(profiles))

    return build


@pytest.fixture
def slot_factory():
    return constant_slots
