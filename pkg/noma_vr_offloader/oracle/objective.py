"""Episode logs and an objective recomputed from raw per-slot diagnostics."""

from dataclasses import dataclass, field
from typing import List, Sequence

import numpy as np

from noma_vr_offloader.core.errors import DomainError
from noma_vr_offloader.env import EnvConfig, EnvState, OffloadingEnv, StepInfo, encode_action


@dataclass
class EpisodeLog:
    config: EnvConfig
    steps: List[StepInfo] = field(default_factory=list)

    @property
    def executed_slots(self) -> int:
        return len(self.steps)

    @property
    def actions(self) -> List[int]:
        return [encode_action(s.assignment.tolist(), self.config.n_channels) for s in self.steps]


def state_objective(state: EnvState, config: EnvConfig) -> float:
    """w1 * total failures + w2 * total energy, from the env's running totals."""
    return config.weight_failure * int(state.failure_total.sum()) + config.weight_energy * float(
        state.energy_total.sum()
    )


def recompute_objective(log: EpisodeLog) -> float:
    """The episode objective re-derived from logged delays, independent of logged failure flags.

    The log must start at slot 0, be contiguous, and end on a terminating slot.
    """
    config = log.config
    if not log.steps:
        raise DomainError("episode log is empty")
    for expected_t, step in enumerate(log.steps):
        if step.t != expected_t:
            raise DomainError(f"episode log skips from slot {expected_t - 1} to slot {step.t}")
    last = log.steps[-1]
    if not last.tolerance_exhausted and last.t != config.frames_per_second - 1:
        raise DomainError(
            f"episode log is incomplete: ends at slot {last.t} without termination "
            f"(episode has {config.frames_per_second} slots)"
        )

    failures = 0
    energy_total = np.zeros(config.n_users, dtype=np.float64)
    for step in log.steps:
        delay = np.where(step.assignment > 0, step.offload_delay, step.local_delay)
        if np.any(np.isnan(delay)):
            raise DomainError(f"slot {step.t} is missing a delay for its chosen mode")
        failures += int(np.count_nonzero(delay > config.slot_duration))
        energy_total += step.energy
    return config.weight_failure * failures + config.weight_energy * float(energy_total.sum())


def run_actions(env: OffloadingEnv, actions: Sequence[int], config: EnvConfig) -> EpisodeLog:
    """Step an already reset env through ``actions`` until it terminates."""
    log = EpisodeLog(config=config)
    for action in actions:
        outcome = env.step(int(action))
        log.steps.append(outcome.info)
        if outcome.terminated:
            return log
    raise DomainError(f"{len(actions)} actions did not reach the end of the episode")
