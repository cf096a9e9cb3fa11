"""Cross-checks of env-core against the exhaustive oracle on one tiny instance."""

import logging
from dataclasses import dataclass, field
from typing import List

import numpy as np

from noma_vr_offloader.oracle.objective import recompute_objective, run_actions, state_objective
from noma_vr_offloader.oracle.search import (
    SearchResult,
    exhaustive_search,
    sequence_objective,
    slot_table,
)
from noma_vr_offloader.oracle.tape import TinyInstance

logger = logging.getLogger(__name__)

TOLERANCE = 1e-9


@dataclass
class Certification:
    search: SearchResult
    replay_objective: float
    recomputed_objective: float
    samples: int
    problems: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.problems


def _close(a: float, b: float) -> bool:
    return abs(a - b) <= TOLERANCE * max(1.0, abs(a), abs(b))


def certify_instance(instance: TinyInstance, n_samples: int, rng: np.random.Generator) -> Certification:
    """Search, replay the winner through env-core, and compare against random action sequences."""
    config = instance.config
    frames, actions = config.frames_per_second, config.action_space_size
    result = exhaustive_search(instance)

    env = instance.env()
    log = run_actions(env, list(result.actions), config)
    replay_objective = state_objective(env.state, config)
    report = Certification(
        search=result,
        replay_objective=replay_objective,
        recomputed_objective=recompute_objective(log),
        samples=n_samples,
    )
    if not _close(replay_objective, result.objective):
        report.problems.append(f"replayed objective {replay_objective!r} != oracle {result.objective!r}")
    if not _close(report.recomputed_objective, result.objective):
        report.problems.append(f"recomputed objective {report.recomputed_objective!r} != oracle {result.objective!r}")

    table = slot_table(instance)
    best_key = sequence_objective(instance, result.actions, table).rank_key(config.n_users, frames)
    for _ in range(n_samples):
        sequence = rng.integers(actions, size=frames).tolist()
        score = sequence_objective(instance, sequence, table)
        sample_env = instance.env()
        run_actions(sample_env, sequence, config)
        env_objective = state_objective(sample_env.state, config)
        if not _close(env_objective, score.objective):
            report.problems.append(f"sequence {sequence}: env {env_objective!r} != oracle {score.objective!r}")
        key = score.rank_key(config.n_users, frames)
        if key[:2] < best_key[:2] or (key[:2] == best_key[:2] and key[2] < best_key[2] - TOLERANCE):
            report.problems.append(f"sequence {sequence} beats the oracle optimum")
    if report.problems:
        logger.warning(f"Instance failed certification: {report.problems[0]}")
    return report
