"""Run all four agents with the paper preset for five to eight users and write a comparison table.

This takes many hours; seeds run in a process pool.

Example:
    .venv/bin/python scripts/paper_campaign.py --out results/paper --workers 11
"""

import argparse
import logging
from pathlib import Path

from noma_vr_offloader.agents import AGENT_KINDS
from noma_vr_offloader.core.config import ConfigManager
from noma_vr_offloader.experiment import ProgressReporter
from noma_vr_offloader.experiment.campaign import run_campaign
from noma_vr_offloader.experiment.metrics_writer import write_frame
from noma_vr_offloader.experiment.report import comparison_table

USER_COUNTS = (5, 6, 7, 8)


def main() -> None:
    p = argparse.ArgumentParser()
    p.add_argument("--out", default="results/paper")
    p.add_argument("--workers", type=int, default=4)
    p.add_argument("--users", type=int, nargs="+", default=list(USER_COUNTS))
    p.add_argument("--agents", nargs="+", default=list(AGENT_KINDS), choices=AGENT_KINDS)
    args = p.parse_args()

    logging.basicConfig(level=logging.INFO, format="%(asctime)s %(levelname)s %(name)s: %(message)s")
    out = Path(args.out)

    ProgressReporter.print_banner("VR Offloader - Paper-Scale Campaign")
    dirs = []
    for n_users in args.users:
        for agent in args.agents:
            manager = ConfigManager(preset="paper")
            target = out / f"{agent}_n{n_users}"
            manager.update({"agent": agent, "n_users": n_users, "workers": args.workers, "out_dir": str(target)})
            run_campaign(manager.effective(), report=True)
            dirs.append(target)

    table = comparison_table(dirs)
    ProgressReporter.print_comparison(table)
    path = write_frame(table, out / "comparison.csv")
    print(f"\n📄 Comparison: {path}")


if __name__ == "__main__":
    main()
