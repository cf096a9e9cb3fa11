"""Experiment harness: evaluation, metrics files and campaign reporting.

``campaign`` and ``report`` depend on ``noma_vr_offloader.core.config`` and are
imported from their modules directly.
"""

from .evaluator import evaluate_checkpoint, evaluate_policy, run_episode
from .metrics_writer import final_table, load_metrics, summarize, write_metrics
from .models import CampaignResult, EpisodeSummary, ExperimentSpec, MetricsRow, SeedResult
from .progress_reporter import ProgressReporter

__all__ = [
    "CampaignResult",
    "EpisodeSummary",
    "ExperimentSpec",
    "MetricsRow",
    "ProgressReporter",
    "SeedResult",
    "evaluate_checkpoint",
    "evaluate_policy",
    "final_table",
    "load_metrics",
    "run_episode",
    "summarize",
    "write_metrics",
]
