"""Side-by-side comparison of finished campaigns and the directional learning checks."""

from dataclasses import dataclass
from pathlib import Path
from typing import List, Union

import numpy as np
import pandas as pd

from noma_vr_offloader.core.config import ConfigManager
from noma_vr_offloader.core.errors import ConfigError
from noma_vr_offloader.experiment.campaign import CONFIG_FILE, FINAL_FILE
from noma_vr_offloader.experiment.metrics_writer import pooled_std
from noma_vr_offloader.experiment.models import SUMMARY_METRICS

REWARD_SIGMAS = 3.0
FRAMES_RATIO = 1.3
ENERGY_RATIO = 0.1


@dataclass
class LearningCheck:
    name: str
    passed: bool
    detail: str
    gating: bool = True


def load_final(out_dir: Union[str, Path]) -> pd.DataFrame:
    out_dir = Path(out_dir)
    if not (out_dir / FINAL_FILE).exists():
        raise ConfigError(f"{out_dir} holds no {FINAL_FILE}; run a campaign there first")
    return pd.read_csv(out_dir / FINAL_FILE)


def comparison_table(out_dirs: List[Union[str, Path]]) -> pd.DataFrame:
    """One row per campaign: final-window metrics as mean ± population std across seeds."""
    records = []
    for out_dir in out_dirs:
        final = load_final(out_dir)
        run = ConfigManager(Path(out_dir) / CONFIG_FILE).effective()
        record = {
            "agent": run.experiment.agent,
            "n_users": run.env.n_users,
            "seeds": len(final),
        }
        for metric in SUMMARY_METRICS:
            record[metric] = f"{final[metric].mean():.4g} ± {final[metric].std(ddof=0):.2g}"
        reached = final["steps_to_90pct"][final["steps_to_90pct"] >= 0]
        record["steps_to_90pct"] = int(reached.median()) if not reached.empty else -1
        records.append(record)
    return pd.DataFrame(records)


def learning_checks(learner: pd.DataFrame, baseline: pd.DataFrame) -> List[LearningCheck]:
    """Compare a learner's final table with the random baseline's.

    The reward margin is measured in standard deviations of the baseline's episode rewards,
    pooled over seeds from each seed's mean and ``reward_std``.
    """
    base_reward = float(baseline["reward"].mean())
    base_sigma = pooled_std(baseline["reward"], baseline["reward_std"])
    reward = float(learner["reward"].mean())
    base_frames = float(baseline["successful_frames"].mean())
    frames = float(learner["successful_frames"].mean())
    base_energy = float(baseline["energy_j"].mean())
    energy = float(learner["energy_j"].mean())
    return [
        LearningCheck(
            name="reward",
            passed=reward > base_reward and reward - base_reward >= REWARD_SIGMAS * base_sigma,
            detail=f"reward {reward:.4g} vs random {base_reward:.4g} (σ {base_sigma:.3g}, need +{REWARD_SIGMAS:g}σ)",
        ),
        LearningCheck(
            name="successful_frames",
            passed=frames >= FRAMES_RATIO * base_frames,
            detail=f"successful frames {frames:.2f} vs random {base_frames:.2f} (need ×{FRAMES_RATIO})",
        ),
        LearningCheck(
            name="energy",
            passed=energy <= ENERGY_RATIO * base_energy,
            detail=f"energy {energy:.4g} J vs random {base_energy:.4g} J (need ≤ {ENERGY_RATIO:.0%})",
        ),
    ]


def ordering_check(first: pd.DataFrame, second: pd.DataFrame, min_wins: int = 2) -> LearningCheck:
    """Seeds on which ``first`` ends with at least ``second``'s final reward; indicative only."""
    merged = first.merge(second, on="seed", suffixes=("_first", "_second"))
    wins = int(np.sum(merged["reward_first"] >= merged["reward_second"]))
    speed_first = merged["steps_to_90pct_first"].median()
    speed_second = merged["steps_to_90pct_second"].median()
    return LearningCheck(
        name="ordering",
        passed=wins >= min_wins,
        detail=(
            f"higher final reward on {wins}/{len(merged)} seeds; "
            f"median steps to 90%: {speed_first:.0f} vs {speed_second:.0f}"
        ),
        gating=False,
    )
