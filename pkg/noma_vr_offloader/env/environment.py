"""Episode lifecycle of the multi-user VR offloading environment."""

import logging
from typing import Callable, Optional, Tuple

import numpy as np

from noma_vr_offloader.core.errors import UsageError
from noma_vr_offloader.env.action_codec import decode_action
from noma_vr_offloader.env.models import (
    EnvConfig,
    EnvState,
    SlotDraw,
    StepInfo,
    StepOutcome,
    UserPopulation,
    VuProfile,
)
from noma_vr_offloader.env import physics

logger = logging.getLogger(__name__)

SlotSource = Callable[[int], SlotDraw]

# Fading power gains outside [1e-3, 10] occur with probability ~1e-3; the observation
# maps that span (times the path-loss range) onto roughly [-1, 1].
_FADING_LOW = 1e-3
_FADING_HIGH = 10.0


def episode_rng(config: EnvConfig, episode_seed: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([config.rng_seed, episode_seed]))


def sample_population(config: EnvConfig, rng: np.random.Generator) -> UserPopulation:
    n = config.n_users
    positions = rng.uniform(0.0, config.area_side, size=(n, 2))
    centre = np.full(2, config.area_side / 2.0)
    distances = np.maximum(np.linalg.norm(positions - centre, axis=1), config.min_distance)
    tx_power = rng.uniform(config.tx_power_min, config.tx_power_max, size=n)
    cpu = rng.uniform(config.user_cpu_min, config.user_cpu_max, size=n)
    battery = rng.uniform(config.battery_weight_min, config.battery_weight_max, size=n)
    target_fps = rng.integers(config.target_fps_min, config.target_fps_max + 1, size=n)

    profiles = tuple(
        VuProfile(
            user_id=i,
            position=(float(positions[i, 0]), float(positions[i, 1])),
            distance=float(distances[i]),
            tx_power=float(tx_power[i]),
            cpu=float(cpu[i]),
            battery_weight=float(battery[i]),
            target_fps=int(target_fps[i]),
            initial_tolerance=int(config.frames_per_second - target_fps[i]),
        )
        for i in range(n)
    )
    return UserPopulation(profiles=profiles)


def sample_slot(config: EnvConfig, rng: np.random.Generator) -> SlotDraw:
    n, m = config.n_users, config.n_channels
    return SlotDraw(
        frame_bits=rng.uniform(config.frame_bits_min, config.frame_bits_max, size=n),
        cycles_per_bit=rng.uniform(config.cycles_per_bit_min, config.cycles_per_bit_max, size=n),
        fading=rng.exponential(1.0, size=(n, m)),
    )


def gain_log_bounds(config: EnvConfig) -> Tuple[float, float]:
    max_distance = max(config.area_side * np.sqrt(2.0) / 2.0, config.min_distance)
    low = np.log10(_FADING_LOW * max_distance ** (-config.path_loss_exponent))
    high = np.log10(_FADING_HIGH * config.min_distance ** (-config.path_loss_exponent))
    return float(low), float(high)


def build_observation(state: EnvState, population: UserPopulation, config: EnvConfig) -> np.ndarray:
    """[D/D_max] ++ [tolerance/T] ++ [scaled log10 gain per (n, m)] ++ [(T - t)/T]."""
    frames = config.frames_per_second
    low, high = gain_log_bounds(config)
    log_gain = np.log10(state.channel_gain + 1e-30)
    scaled_gain = 2.0 * (log_gain - low) / (high - low) - 1.0
    return np.concatenate(
        (
            state.frame_bits / config.frame_bits_max,
            state.tolerance_left / frames,
            scaled_gain.reshape(-1),
            [(frames - state.t) / frames],
        )
    ).astype(np.float64)


class OffloadingEnv:
    """One simulated second of T frame slots shared by N users over M NOMA channels.

    Single-threaded; independent instances share no state.
    """

    def __init__(self, config: EnvConfig):
        self.config = config
        self.population: Optional[UserPopulation] = None
        self.state: Optional[EnvState] = None
        self._slot_source: Optional[SlotSource] = None

    def reset(self, episode_seed: int) -> Tuple[EnvState, np.ndarray]:
        rng = episode_rng(self.config, episode_seed)
        population = sample_population(self.config, rng)
        return self.reset_with(population, lambda _t: sample_slot(self.config, rng))

    def reset_with(self, population: UserPopulation, slot_source: SlotSource) -> Tuple[EnvState, np.ndarray]:
        """Start an episode from explicit profiles and a per-slot draw provider."""
        self.population = population
        self._slot_source = slot_source
        n = self.config.n_users
        draw = slot_source(0)
        self.state = EnvState(
            t=0,
            frame_bits=draw.frame_bits,
            cycles_per_bit=draw.cycles_per_bit,
            tolerance_left=population.initial_tolerance.copy(),
            fading=draw.fading,
            channel_gain=physics.channel_gain(draw.fading, population.distance, self.config.path_loss_exponent),
            failure_total=np.zeros(n, dtype=np.int64),
            energy_total=np.zeros(n, dtype=np.float64),
        )
        return self.state, self.observation()

    def observation(self) -> np.ndarray:
        if self.state is None or self.population is None:
            raise UsageError("environment has not been reset")
        return build_observation(self.state, self.population, self.config)

    def step(self, action_index: int) -> StepOutcome:
        if self.state is None or self.population is None or self._slot_source is None:
            raise UsageError("environment has not been reset")
        state = self.state
        if state.terminated:
            raise UsageError("cannot step a terminated episode; call reset() first")

        config = self.config
        population = self.population
        assignment = np.array(decode_action(action_index, config.n_users, config.n_channels), dtype=np.int64)
        rate = physics.channel_rates(state.channel_gain, assignment, population.tx_power, config)

        offloaded = assignment > 0
        served = offloaded & (rate > 0)
        offload_delay = np.full(config.n_users, np.nan)
        offload_delay[offloaded] = np.inf
        offload_delay[served] = physics.offload_delay(
            state.frame_bits[served], state.cycles_per_bit[served], rate[served], config
        )

        local = ~offloaded
        local_delay = np.full(config.n_users, np.nan)
        local_delay[local] = physics.local_delay(
            state.frame_bits[local], state.cycles_per_bit[local], population.cpu[local]
        )
        energy = np.zeros(config.n_users, dtype=np.float64)
        energy[local] = physics.local_energy(
            state.frame_bits[local],
            state.cycles_per_bit[local],
            population.cpu[local],
            population.battery_weight[local],
            config,
        )

        delay = np.where(offloaded, offload_delay, local_delay)
        failure = (delay > config.slot_duration).astype(np.int64)

        remaining = state.tolerance_left - failure
        exhausted = bool(np.any((failure == 1) & (remaining <= 0)))
        state.tolerance_left = np.maximum(remaining, 0)
        state.failure_total += failure
        state.energy_total += energy

        rewards = (
            config.weight_failure * (config.r_success * (1 - failure) - config.r_fail * failure)
            - config.weight_energy * energy
        )
        slot = state.t
        if exhausted:
            frames = config.frames_per_second
            rewards = rewards - config.r_terminal_scale * (frames - slot) / frames
            logger.debug(f"Tolerance exhausted at slot {slot}; episode ends")

        state.t = slot + 1
        state.terminated = exhausted or state.t >= config.frames_per_second

        if not state.terminated:
            draw = self._slot_source(state.t)
            state.frame_bits = draw.frame_bits
            state.cycles_per_bit = draw.cycles_per_bit
            state.fading = draw.fading
            state.channel_gain = physics.channel_gain(draw.fading, population.distance, config.path_loss_exponent)

        info = StepInfo(
            t=slot,
            assignment=assignment,
            rate=rate,
            offload_delay=offload_delay,
            local_delay=local_delay,
            energy=energy,
            failure=failure,
            tolerance_exhausted=exhausted,
        )
        return StepOutcome(
            observation=self.observation(),
            rewards=rewards.astype(np.float64),
            terminated=state.terminated,
            info=info,
        )
