"""Exhaustive search for the best offloading sequence on a tiny instance.

The per-slot physics here is a scalar reimplementation, separate from env-core, so
that the two can certify each other.
"""

import logging
import math
from dataclasses import dataclass
from typing import List, Sequence, Tuple

from noma_vr_offloader.core.errors import DomainError
from noma_vr_offloader.env import decode_action
from noma_vr_offloader.oracle.objective import EpisodeLog, run_actions
from noma_vr_offloader.oracle.tape import TinyInstance

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SlotResult:
    failures: Tuple[int, ...]
    energy: Tuple[float, ...]


@dataclass(frozen=True)
class SearchResult:
    """Best sequence found. For an infeasible instance ``actions`` stops at the terminating slot."""

    actions: Tuple[int, ...]
    objective: float
    feasible: bool
    sequences_checked: int


def _slot_result(instance: TinyInstance, t: int, assignment: Sequence[int]) -> SlotResult:
    config = instance.config
    draw = instance.tape[t]
    profiles = instance.population.profiles
    n = config.n_users
    width = config.bandwidth_per_channel
    noise = width * config.noise_psd
    iota = config.slot_duration

    gain = [
        [float(draw.fading[i][m]) * profiles[i].distance ** (-config.path_loss_exponent) for m in range(config.n_channels)]
        for i in range(n)
    ]
    rate = [0.0] * n
    for channel in range(1, config.n_channels + 1):
        users = [i for i in range(n) if assignment[i] == channel]
        users.sort(key=lambda i: (-(profiles[i].tx_power * gain[i][channel - 1]), i))
        later = 0.0
        later_power = [0.0] * len(users)
        for k in range(len(users) - 1, -1, -1):
            later_power[k] = later
            later = later + profiles[users[k]].tx_power
        for k, i in enumerate(users):
            g = gain[i][channel - 1]
            sinr = profiles[i].tx_power * g / (later_power[k] * g + noise)
            rate[i] = width * math.log2(1.0 + sinr)

    failures = []
    energy = []
    for i in range(n):
        bits = float(draw.frame_bits[i])
        cycles = float(draw.cycles_per_bit[i])
        cpu = profiles[i].cpu
        if assignment[i] > 0:
            delay = bits * cycles / config.vsp_cpu + bits / rate[i] if rate[i] > 0 else math.inf
            energy.append(0.0)
        else:
            delay = bits * cycles / cpu
            energy.append(profiles[i].battery_weight * bits * cycles * (config.energy_coeff * (cpu * cpu)))
        failures.append(1 if delay > iota else 0)
    return SlotResult(failures=tuple(failures), energy=tuple(energy))


def slot_table(instance: TinyInstance) -> List[List[SlotResult]]:
    """Outcome of every joint action in every slot; outcomes do not depend on tolerance state."""
    config = instance.config
    actions = config.action_space_size
    return [
        [_slot_result(instance, t, decode_action(a, config.n_users, config.n_channels)) for a in range(actions)]
        for t in range(config.frames_per_second)
    ]


def _objective(instance: TinyInstance, failures: int, energy: Sequence[float]) -> float:
    config = instance.config
    return config.weight_failure * failures + config.weight_energy * sum(energy)


@dataclass(frozen=True)
class SequenceScore:
    objective: float
    feasible: bool
    executed_slots: int
    failures: int

    def rank_key(self, n_users: int, frames: int) -> Tuple[int, int, float]:
        """Feasible sequences first by objective; the rest by failures with unexecuted slots charged."""
        if self.feasible:
            return (0, 0, self.objective)
        return (1, self.failures + n_users * (frames - self.executed_slots), self.objective)


def sequence_objective(instance: TinyInstance, actions: Sequence[int], table=None) -> SequenceScore:
    """Score of one action sequence; the objective covers executed slots only."""
    config = instance.config
    table = table if table is not None else slot_table(instance)
    tolerance = [p.initial_tolerance for p in instance.population.profiles]
    failures = 0
    energy = [0.0] * config.n_users
    executed = 0
    exhausted = False
    for t, action in enumerate(actions[: config.frames_per_second]):
        result = table[t][action]
        for i in range(config.n_users):
            if result.failures[i]:
                tolerance[i] -= 1
                exhausted = exhausted or tolerance[i] <= 0
                tolerance[i] = max(tolerance[i], 0)
            energy[i] = energy[i] + result.energy[i]
        failures += sum(result.failures)
        executed = t + 1
        if exhausted:
            break
    return SequenceScore(
        objective=_objective(instance, failures, energy),
        feasible=not exhausted and executed == config.frames_per_second,
        executed_slots=executed,
        failures=failures,
    )


def exhaustive_search(instance: TinyInstance) -> SearchResult:
    """Enumerate all (M+1)^(N*T) sequences; ties go to the lexicographically smallest.

    When no sequence keeps every tolerance above zero, the result ranks sequences by
    failures (slots never executed count as a failure for every user), then objective.
    """
    instance.check_enumerable()
    config = instance.config
    n, frames, actions = config.n_users, config.frames_per_second, config.action_space_size
    table = slot_table(instance)
    logger.info(f"Enumerating {instance.sequence_count} action sequences")

    best_feasible = None
    best_infeasible = None
    checked = 0
    path: List[int] = []

    def visit(t: int, tolerance: Tuple[int, ...], failures: int, energy: Tuple[float, ...]) -> None:
        nonlocal best_feasible, best_infeasible, checked
        for action in range(actions):
            result = table[t][action]
            exhausted = False
            left = list(tolerance)
            for i in range(n):
                if result.failures[i]:
                    left[i] -= 1
                    exhausted = exhausted or left[i] <= 0
                    left[i] = max(left[i], 0)
            total_failures = failures + sum(result.failures)
            total_energy = tuple(e + r for e, r in zip(energy, result.energy))
            path.append(action)
            if exhausted or t + 1 == frames:
                checked += actions ** (frames - t - 1)
                objective = _objective(instance, total_failures, total_energy)
                if exhausted:
                    key = (total_failures + n * (frames - t - 1), objective)
                    if best_infeasible is None or key < best_infeasible[0]:
                        best_infeasible = (key, tuple(path), objective)
                elif best_feasible is None or objective < best_feasible[0]:
                    best_feasible = (objective, tuple(path))
            else:
                visit(t + 1, tuple(left), total_failures, total_energy)
            path.pop()

    start = tuple(p.initial_tolerance for p in instance.population.profiles)
    if any(tol <= 0 for tol in start):
        logger.warning("A user starts with zero tolerance; any failure ends the episode")
    visit(0, start, 0, (0.0,) * n)

    if best_feasible is not None:
        objective, sequence = best_feasible
        return SearchResult(actions=sequence, objective=objective, feasible=True, sequences_checked=checked)
    if best_infeasible is None:
        raise DomainError("search visited no sequence")
    _, sequence, objective = best_infeasible
    logger.warning(f"No sequence keeps every tolerance above zero; best infeasible objective {objective:.6g}")
    return SearchResult(actions=sequence, objective=objective, feasible=False, sequences_checked=checked)


def replay_sequence(instance: TinyInstance, actions: Sequence[int]) -> EpisodeLog:
    """Drive env-core through ``actions`` on the instance's tape."""
    return run_actions(instance.env(), actions, instance.config)
