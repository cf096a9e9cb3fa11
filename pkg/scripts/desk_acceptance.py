"""Run HRPPO, PPO and the random baseline at desk scale and print the directional learning checks.

Five users on three channels establish the HRPPO-vs-random checks; seven users give the
indicative HRPPO-vs-PPO ordering.

Example:
    .venv/bin/python scripts/desk_acceptance.py --out results/desk --workers 3
"""

import argparse
import logging
from pathlib import Path
from typing import Dict

import pandas as pd

from noma_vr_offloader.core.config import ConfigManager
from noma_vr_offloader.experiment import ProgressReporter
from noma_vr_offloader.experiment.campaign import run_campaign
from noma_vr_offloader.experiment.report import comparison_table, learning_checks, ordering_check


def campaign(out: Path, agent: str, n_users: int, workers: int, steps: int) -> pd.DataFrame:
    manager = ConfigManager(preset="desk")
    manager.update(
        {
            "agent": agent,
            "n_users": n_users,
            "total_steps": steps,
            "workers": workers,
            "out_dir": str(out / f"{agent}_n{n_users}"),
        }
    )
    result = run_campaign(manager.effective())
    print(f"  {agent} (N={n_users}) finished: {result.final_path}")
    return pd.read_csv(result.final_path)


def main() -> None:
    p = argparse.ArgumentParser()
    p.add_argument("--out", default="results/desk")
    p.add_argument("--workers", type=int, default=3)
    p.add_argument("--steps", type=int, default=30000)
    p.add_argument("--skip-ordering", action="store_true", help="Skip the seven-user HRPPO-vs-PPO runs")
    args = p.parse_args()

    logging.basicConfig(level=logging.WARNING)
    out = Path(args.out)

    ProgressReporter.print_banner("VR Offloader - Desk Acceptance")
    finals: Dict[str, pd.DataFrame] = {
        agent: campaign(out, agent, 5, args.workers, args.steps) for agent in ("random", "hrppo", "ppo")
    }
    checks = learning_checks(finals["hrppo"], finals["random"])

    if not args.skip_ordering:
        hrppo = campaign(out, "hrppo", 7, args.workers, args.steps)
        ppo = campaign(out, "ppo", 7, args.workers, args.steps)
        checks.append(ordering_check(hrppo, ppo))

    ProgressReporter.print_comparison(
        comparison_table([out / f"{agent}_n5" for agent in ("random", "hrppo", "ppo")])
    )
    ProgressReporter.print_check_results(
        "DESK ACCEPTANCE",
        [check.passed for check in checks],
        [f"{check.detail}{'' if check.gating else ' (reported only)'}" for check in checks],
    )
    if not all(check.passed for check in checks if check.gating):
        raise SystemExit(2)


if __name__ == "__main__":
    main()
