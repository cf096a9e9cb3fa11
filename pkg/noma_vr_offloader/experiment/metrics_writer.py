"""Metrics, summary and final-window CSV files."""

import logging
from pathlib import Path
from typing import Iterable, List, Optional, Sequence, Union

import numpy as np
import pandas as pd

from noma_vr_offloader.core.errors import DomainError
from noma_vr_offloader.experiment.models import METRIC_COLUMNS, SUMMARY_METRICS, MetricsRow

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def metrics_frame(rows: Iterable[MetricsRow]) -> pd.DataFrame:
    rows = list(rows)
    steps = [row.step for row in rows]
    if any(b <= a for a, b in zip(steps, steps[1:])):
        raise DomainError(f"metrics rows must be strictly increasing in step, got {steps}")
    return pd.DataFrame([row.as_record() for row in rows], columns=list(METRIC_COLUMNS))


def write_metrics(rows: Iterable[MetricsRow], path: PathLike) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    metrics_frame(rows).to_csv(path, index=False)
    return path


def load_metrics(path: PathLike) -> pd.DataFrame:
    frame = pd.read_csv(path)
    if tuple(frame.columns) != METRIC_COLUMNS:
        raise DomainError(f"{path} has columns {list(frame.columns)}, expected {list(METRIC_COLUMNS)}")
    return frame


def summarize(frames: Sequence[pd.DataFrame]) -> pd.DataFrame:
    """Per eval step, mean and population std across seeds of every reported metric."""
    if not frames:
        raise DomainError("nothing to summarize")
    combined = pd.concat(frames, ignore_index=True)
    grouped = combined.groupby("step", sort=True)[list(SUMMARY_METRICS)]
    means = grouped.mean()
    stds = grouped.std(ddof=0)
    summary = pd.DataFrame(index=means.index)
    for metric in SUMMARY_METRICS:
        summary[f"{metric}_mean"] = means[metric]
        summary[f"{metric}_std"] = stds[metric]
    return summary.reset_index()


FINAL_COLUMNS = ("seed", "reward", "reward_std", "successful_frames", "energy_j", "avg_rate_mbps", "steps_to_90pct")


def pooled_std(means, stds) -> float:
    """Population std of the episodes behind several eval rows of equal episode count."""
    means = np.asarray(means, dtype=np.float64)
    stds = np.asarray(stds, dtype=np.float64)
    return float(np.sqrt(np.mean(np.square(stds)) + np.var(means)))


def final_window_rows(frame: pd.DataFrame, total_steps: int, window_steps: int) -> pd.DataFrame:
    """Eval rows in the last ``window_steps`` env steps, or the last row when none fall there."""
    window = frame[frame["step"] >= total_steps - window_steps]
    return frame.tail(1) if window.empty else window


def final_window(frame: pd.DataFrame, total_steps: int, window_steps: int) -> pd.Series:
    """Mean of the metrics over the final-window eval rows."""
    return final_window_rows(frame, total_steps, window_steps)[list(SUMMARY_METRICS)].mean()


def steps_to_fraction(frame: pd.DataFrame, final_reward: float, fraction: float = 0.9) -> Optional[int]:
    """First eval step whose reward covers ``fraction`` of the way from the first to the final reward."""
    if frame.empty:
        return None
    first = float(frame["reward"].iloc[0])
    threshold = first + fraction * (final_reward - first)
    rewards = frame["reward"].to_numpy()
    reached = rewards >= threshold if final_reward >= first else rewards <= threshold
    hits = np.flatnonzero(reached)
    return int(frame["step"].iloc[hits[0]]) if hits.size else None


def final_table(frames: dict, total_steps: int, window_steps: int) -> pd.DataFrame:
    """One row per seed: final-window metrics, the episode reward spread behind them and steps_to_90pct."""
    records: List[dict] = []
    for seed, frame in sorted(frames.items()):
        rows = final_window_rows(frame, total_steps, window_steps)
        final = rows[list(SUMMARY_METRICS)].mean()
        record = {"seed": seed, **{metric: float(final[metric]) for metric in SUMMARY_METRICS}}
        record["reward_std"] = pooled_std(rows["reward"], rows["reward_std"])
        reached = steps_to_fraction(frame, record["reward"])
        record["steps_to_90pct"] = -1 if reached is None else reached
        records.append(record)
    return pd.DataFrame(records, columns=list(FINAL_COLUMNS))


def write_frame(frame: pd.DataFrame, path: PathLike) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(path, index=False)
    logger.debug(f"Wrote {len(frame)} rows to {path}")
    return path
