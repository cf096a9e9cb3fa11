"""Campaign execution: one training run per seed, then cross-seed aggregation."""

import logging
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Dict, List

import pandas as pd

from noma_vr_offloader.agents import build_agent
from noma_vr_offloader.core.config import ConfigManager, RunConfig, with_seed
from noma_vr_offloader.env import OffloadingEnv
from noma_vr_offloader.experiment.evaluator import evaluate_policy
from noma_vr_offloader.experiment.metrics_writer import (
    final_table,
    load_metrics,
    summarize,
    write_frame,
    write_metrics,
)
from noma_vr_offloader.experiment.models import CampaignResult, MetricsRow, SeedResult
from noma_vr_offloader.experiment.progress_reporter import ProgressReporter
from noma_vr_offloader.nets import save_checkpoint

logger = logging.getLogger(__name__)

SUMMARY_FILE = "summary.csv"
FINAL_FILE = "final.csv"
CONFIG_FILE = "effective_config.yaml"


def metrics_file(out_dir: Path, seed: int) -> Path:
    return out_dir / f"metrics_seed{seed}.csv"


def checkpoint_file(out_dir: Path, seed: int) -> Path:
    return out_dir / f"checkpoint_seed{seed}.ckpt"


def run_seed(run: RunConfig, seed: int, report: bool = False) -> SeedResult:
    """Train one agent for one seed, evaluating at every eval point, and write its files."""
    seeded = with_seed(run, seed)
    spec = seeded.experiment
    out_dir = spec.out_path
    agent = build_agent(spec.agent, seeded.env, seeded.agent, seed)
    env = OffloadingEnv(seeded.env)
    rows: List[MetricsRow] = []

    def on_eval(step: int) -> None:
        row = evaluate_policy(agent.policy(), seeded.env, spec.eval_episodes, seed, step)
        rows.append(row)
        logger.info(f"seed {seed} step {step}: reward {row.reward:.3f}, frames {row.successful_frames:.2f}")
        if report:
            ProgressReporter.print_eval_point(seed, row)

    logger.info(f"Training {spec.agent} for {spec.total_steps} env steps (seed {seed})")
    agent.train(env, spec.total_steps, spec.eval_interval, on_eval)

    metrics_path = write_metrics(rows, metrics_file(out_dir, seed))
    checkpoint = agent.checkpoint()
    checkpoint_path = None
    if checkpoint is not None:
        checkpoint_path = checkpoint_file(out_dir, seed)
        save_checkpoint(checkpoint_path, checkpoint)
    logger.info(f"Seed {seed} finished; metrics in {metrics_path}")
    return SeedResult(seed=seed, rows=rows, metrics_path=metrics_path, checkpoint_path=checkpoint_path)


def _run_seed_job(job) -> SeedResult:
    run, seed = job
    return run_seed(run, seed)


def aggregate(run: RunConfig, seeds: List[int]) -> Dict[str, pd.DataFrame]:
    """Summary and final-window tables recomputed from the per-seed metrics files."""
    spec = run.experiment
    frames = {seed: load_metrics(metrics_file(spec.out_path, seed)) for seed in seeds}
    return {
        "summary": summarize([frames[seed] for seed in seeds]),
        "final": final_table(frames, spec.total_steps, spec.final_window_steps),
    }


def run_campaign(run: RunConfig, report: bool = False) -> CampaignResult:
    spec = run.experiment
    out_dir = spec.out_path
    out_dir.mkdir(parents=True, exist_ok=True)
    logger.info(f"Campaign {spec.agent}: seeds {list(spec.seeds)}, {spec.workers} worker(s), output {out_dir}")

    if spec.workers > 1 and len(spec.seeds) > 1:
        with ProcessPoolExecutor(max_workers=min(spec.workers, len(spec.seeds))) as executor:
            seeds = list(executor.map(_run_seed_job, [(run, seed) for seed in spec.seeds]))
    else:
        seeds = [run_seed(run, seed, report=report) for seed in spec.seeds]

    tables = aggregate(run, list(spec.seeds))
    summary_path = write_frame(tables["summary"], out_dir / SUMMARY_FILE)
    final_path = write_frame(tables["final"], out_dir / FINAL_FILE)
    config_path = out_dir / CONFIG_FILE
    ConfigManager.dump(run, config_path)

    result = CampaignResult(
        spec=spec,
        seeds=seeds,
        summary_path=summary_path,
        final_path=final_path,
        config_path=config_path,
    )
    if report:
        ProgressReporter.print_campaign_summary(result, tables["final"])
    return result
