"""Scenario parameters, per-user profiles and per-slot state of the offloading environment."""

from dataclasses import dataclass, field, fields
from functools import cached_property
from typing import Any, Dict, Tuple

import numpy as np

from noma_vr_offloader.core.errors import ConfigError

MAX_JOINT_ACTIONS = 65536


@dataclass(frozen=True)
class EnvConfig:
    n_users: int = 5
    n_channels: int = 3
    frames_per_second: int = 90
    area_side: float = 30.0
    min_distance: float = 1.0
    bandwidth_per_channel: float = 1.8e6
    noise_psd: float = 10 ** (-20.4)
    path_loss_exponent: float = 2.0
    frame_bits_min: float = 221184.0
    frame_bits_max: float = 235929.6
    cycles_per_bit_min: float = 50.0
    cycles_per_bit_max: float = 100.0
    vsp_cpu: float = 1e11
    user_cpu_min: float = 2e9
    user_cpu_max: float = 4e9
    tx_power_min: float = 0.05
    tx_power_max: float = 0.2
    energy_coeff: float = 1e-27
    battery_weight_min: float = 0.0
    battery_weight_max: float = 1.0
    target_fps_min: int = 75
    target_fps_max: int = 80
    weight_failure: float = 1.0
    weight_energy: float = 0.5
    r_success: float = 0.1
    r_fail: float = 0.5
    r_terminal_scale: float = 10.0
    rng_seed: int = 0

    def __post_init__(self):
        self.validate()

    @property
    def slot_duration(self) -> float:
        return 1.0 / self.frames_per_second

    @property
    def action_space_size(self) -> int:
        return (self.n_channels + 1) ** self.n_users

    @property
    def observation_size(self) -> int:
        return 2 * self.n_users + self.n_users * self.n_channels + 1

    def validate(self) -> None:
        if self.n_users < 1:
            raise ConfigError(f"n_users must be >= 1, got {self.n_users}")
        if self.n_channels < 1:
            raise ConfigError(f"n_channels must be >= 1, got {self.n_channels}")
        if self.frames_per_second < 1:
            raise ConfigError(f"frames_per_second must be >= 1, got {self.frames_per_second}")
        if abs(self.slot_duration * self.frames_per_second - 1.0) > 1e-12:
            raise ConfigError("slot_duration * frames_per_second must equal 1")

        for low, high in (
            ("frame_bits_min", "frame_bits_max"),
            ("cycles_per_bit_min", "cycles_per_bit_max"),
            ("user_cpu_min", "user_cpu_max"),
            ("tx_power_min", "tx_power_max"),
            ("battery_weight_min", "battery_weight_max"),
            ("target_fps_min", "target_fps_max"),
        ):
            if getattr(self, low) > getattr(self, high):
                raise ConfigError(f"{low} ({getattr(self, low)}) exceeds {high} ({getattr(self, high)})")

        for name in (
            "area_side",
            "min_distance",
            "bandwidth_per_channel",
            "noise_psd",
            "path_loss_exponent",
            "frame_bits_min",
            "cycles_per_bit_min",
            "vsp_cpu",
            "user_cpu_min",
            "tx_power_min",
            "energy_coeff",
        ):
            if not getattr(self, name) > 0:
                raise ConfigError(f"{name} must be > 0, got {getattr(self, name)}")

        if self.battery_weight_min < 0 or self.battery_weight_max > 1:
            raise ConfigError("battery weights must lie in [0, 1]")
        if self.target_fps_min < 0 or self.target_fps_max > self.frames_per_second:
            raise ConfigError(
                f"target_fps range [{self.target_fps_min}, {self.target_fps_max}] "
                f"must lie within [0, frames_per_second={self.frames_per_second}]"
            )
        for name in ("weight_failure", "weight_energy", "r_success", "r_fail", "r_terminal_scale"):
            if getattr(self, name) < 0:
                raise ConfigError(f"{name} must be >= 0, got {getattr(self, name)}")

    def to_dict(self) -> Dict[str, Any]:
        return {f.name: getattr(self, f.name) for f in fields(self)}


@dataclass(frozen=True)
class VuProfile:
    user_id: int
    position: Tuple[float, float]
    distance: float
    tx_power: float
    cpu: float
    battery_weight: float
    target_fps: int
    initial_tolerance: int


@dataclass(frozen=True)
class UserPopulation:
    """The frozen per-episode user profiles, with column views for vectorised physics."""

    profiles: Tuple[VuProfile, ...]

    def __len__(self) -> int:
        return len(self.profiles)

    @cached_property
    def distance(self) -> np.ndarray:
        return np.array([p.distance for p in self.profiles], dtype=np.float64)

    @cached_property
    def tx_power(self) -> np.ndarray:
        return np.array([p.tx_power for p in self.profiles], dtype=np.float64)

    @cached_property
    def cpu(self) -> np.ndarray:
        return np.array([p.cpu for p in self.profiles], dtype=np.float64)

    @cached_property
    def battery_weight(self) -> np.ndarray:
        return np.array([p.battery_weight for p in self.profiles], dtype=np.float64)

    @cached_property
    def initial_tolerance(self) -> np.ndarray:
        return np.array([p.initial_tolerance for p in self.profiles], dtype=np.int64)


@dataclass(frozen=True)
class SlotDraw:
    """Stochastic inputs of one slot: frame sizes, cycles per bit, and fading power gains."""

    frame_bits: np.ndarray
    cycles_per_bit: np.ndarray
    fading: np.ndarray


@dataclass
class EnvState:
    t: int
    frame_bits: np.ndarray
    cycles_per_bit: np.ndarray
    tolerance_left: np.ndarray
    fading: np.ndarray
    channel_gain: np.ndarray
    failure_total: np.ndarray
    energy_total: np.ndarray
    terminated: bool = False

    def copy(self) -> "EnvState":
        return EnvState(
            t=self.t,
            frame_bits=self.frame_bits.copy(),
            cycles_per_bit=self.cycles_per_bit.copy(),
            tolerance_left=self.tolerance_left.copy(),
            fading=self.fading.copy(),
            channel_gain=self.channel_gain.copy(),
            failure_total=self.failure_total.copy(),
            energy_total=self.energy_total.copy(),
            terminated=self.terminated,
        )


@dataclass
class StepInfo:
    """Per-user diagnostics of one slot. Unpopulated delays are NaN."""

    t: int
    assignment: np.ndarray
    rate: np.ndarray
    offload_delay: np.ndarray
    local_delay: np.ndarray
    energy: np.ndarray
    failure: np.ndarray
    tolerance_exhausted: bool = False


@dataclass
class StepOutcome:
    observation: np.ndarray
    rewards: np.ndarray
    terminated: bool
    info: StepInfo = field(repr=False)
