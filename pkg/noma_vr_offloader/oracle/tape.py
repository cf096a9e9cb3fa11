"""Tiny instances with a pre-drawn randomness tape, and their text fixture format.

Fixture format, one record per line, ``#`` starts a comment::

    config <key> <value>
    user <id> <x> <y> <distance> <tx_power> <cpu> <battery_weight> <target_fps>
    slot <t> frame_bits <v_1> ... <v_N>
    slot <t> cycles_per_bit <v_1> ... <v_N>
    slot <t> fading <g_11> ... <g_1M> ... <g_NM>

Floats are written with ``repr`` so a save/load round trip is exact.
"""

import logging
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Dict, List, Tuple, Union

import numpy as np

from noma_vr_offloader.core.errors import DomainError
from noma_vr_offloader.env import EnvConfig, OffloadingEnv, SlotDraw, UserPopulation, VuProfile
from noma_vr_offloader.env.environment import episode_rng, sample_population, sample_slot

logger = logging.getLogger(__name__)

MAX_USERS = 3
MAX_CHANNELS = 2
MAX_SLOTS = 6
MAX_SEQUENCES = 2**20


@dataclass(frozen=True)
class TinyInstance:
    config: EnvConfig
    population: UserPopulation
    tape: Tuple[SlotDraw, ...]

    def __post_init__(self):
        config = self.config
        if len(self.tape) != config.frames_per_second:
            raise DomainError(f"tape holds {len(self.tape)} slots, config needs {config.frames_per_second}")
        if len(self.population) != config.n_users:
            raise DomainError(f"{len(self.population)} profiles for {config.n_users} users")

    @property
    def sequence_count(self) -> int:
        return self.config.action_space_size**self.config.frames_per_second

    def check_enumerable(self) -> None:
        config = self.config
        if (
            config.n_users > MAX_USERS
            or config.n_channels > MAX_CHANNELS
            or config.frames_per_second > MAX_SLOTS
            or self.sequence_count > MAX_SEQUENCES
        ):
            raise DomainError(
                f"instance N={config.n_users}, M={config.n_channels}, T={config.frames_per_second} "
                f"has {self.sequence_count} action sequences; enumeration is limited to "
                f"N<={MAX_USERS}, M<={MAX_CHANNELS}, T<={MAX_SLOTS}, {MAX_SEQUENCES} sequences"
            )

    def slot_source(self):
        return lambda t: self.tape[t]

    def env(self) -> OffloadingEnv:
        """A fresh env-core instance already reset onto this tape."""
        env = OffloadingEnv(self.config)
        env.reset_with(self.population, self.slot_source())
        return env


def make_tiny_instance(config: EnvConfig, episode_seed: int) -> TinyInstance:
    rng = episode_rng(config, episode_seed)
    population = sample_population(config, rng)
    tape = tuple(sample_slot(config, rng) for _ in range(config.frames_per_second))
    instance = TinyInstance(config=config, population=population, tape=tape)
    instance.check_enumerable()
    return instance


def _floats(values) -> str:
    return " ".join(repr(float(v)) for v in np.asarray(values).reshape(-1))


def save_instance(path: Union[str, Path], instance: TinyInstance) -> None:
    lines = ["# noma-vr-offloader tiny instance"]
    for f in fields(instance.config):
        lines.append(f"config {f.name} {getattr(instance.config, f.name)!r}")
    for p in instance.population.profiles:
        lines.append(
            f"user {p.user_id} {p.position[0]!r} {p.position[1]!r} {p.distance!r} "
            f"{p.tx_power!r} {p.cpu!r} {p.battery_weight!r} {p.target_fps}"
        )
    for t, draw in enumerate(instance.tape):
        lines.append(f"slot {t} frame_bits {_floats(draw.frame_bits)}")
        lines.append(f"slot {t} cycles_per_bit {_floats(draw.cycles_per_bit)}")
        lines.append(f"slot {t} fading {_floats(draw.fading)}")
    Path(path).write_text("\n".join(lines) + "\n")


def load_instance(path: Union[str, Path]) -> TinyInstance:
    config_values: Dict[str, object] = {}
    users: List[VuProfile] = []
    slots: Dict[int, Dict[str, np.ndarray]] = {}
    types = {f.name: f.type for f in fields(EnvConfig)}

    for number, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if parts[0] == "config":
                name, value = parts[1], parts[2]
                if name not in types:
                    raise DomainError(f"line {number}: unknown config key '{name}'")
                config_values[name] = int(value) if types[name] in (int, "int") else float(value)
            elif parts[0] == "user":
                user_id, x, y, distance, power, cpu, battery, fps = parts[1:9]
                users.append(
                    VuProfile(
                        user_id=int(user_id),
                        position=(float(x), float(y)),
                        distance=float(distance),
                        tx_power=float(power),
                        cpu=float(cpu),
                        battery_weight=float(battery),
                        target_fps=int(fps),
                        initial_tolerance=0,
                    )
                )
            elif parts[0] == "slot":
                slots.setdefault(int(parts[1]), {})[parts[2]] = np.array([float(v) for v in parts[3:]])
            else:
                raise DomainError(f"line {number}: unknown record '{parts[0]}'")
        except (IndexError, ValueError) as e:
            if isinstance(e, DomainError):
                raise
            raise DomainError(f"line {number}: malformed record '{line}'") from e

    config = EnvConfig(**config_values)  # type: ignore[arg-type]
    frames = config.frames_per_second
    profiles = tuple(
        VuProfile(**{**u.__dict__, "initial_tolerance": frames - u.target_fps}) for u in sorted(users, key=lambda u: u.user_id)
    )
    tape = []
    for t in range(frames):
        if t not in slots or set(slots[t]) != {"frame_bits", "cycles_per_bit", "fading"}:
            raise DomainError(f"slot {t} is missing from the tape")
        tape.append(
            SlotDraw(
                frame_bits=slots[t]["frame_bits"],
                cycles_per_bit=slots[t]["cycles_per_bit"],
                fading=slots[t]["fading"].reshape(config.n_users, config.n_channels),
            )
        )
    return TinyInstance(config=config, population=UserPopulation(profiles=profiles), tape=tuple(tape))


def tiny_config(n_users: int = 2, n_channels: int = 1, frames: int = 5, rng_seed: int = 0) -> EnvConfig:
    """Default physics on a short horizon, with tolerances of 2 or 3 failures per user."""
    return EnvConfig(
        n_users=n_users,
        n_channels=n_channels,
        frames_per_second=frames,
        target_fps_min=max(frames - 3, 0),
        target_fps_max=max(frames - 2, 0),
        rng_seed=rng_seed,
    )
