"""Multi-user VR computation offloading over NOMA downlink channels."""

from .action_codec import action_space_size, decode_action, encode_action
from .environment import OffloadingEnv, build_observation, sample_population, sample_slot
from .models import (
    MAX_JOINT_ACTIONS,
    EnvConfig,
    EnvState,
    SlotDraw,
    StepInfo,
    StepOutcome,
    UserPopulation,
    VuProfile,
)
from .physics import channel_rates, local_delay, local_energy, offload_delay

__all__ = [
    "MAX_JOINT_ACTIONS",
    "EnvConfig",
    "EnvState",
    "OffloadingEnv",
    "SlotDraw",
    "StepInfo",
    "StepOutcome",
    "UserPopulation",
    "VuProfile",
    "action_space_size",
    "build_observation",
    "channel_rates",
    "decode_action",
    "encode_action",
    "local_delay",
    "local_energy",
    "offload_delay",
    "sample_population",
    "sample_slot",
]
