"""Console reporting for campaigns, evaluations and checks."""

from typing import List

import pandas as pd

from noma_vr_offloader.experiment.models import CampaignResult, MetricsRow


class ProgressReporter:
    @staticmethod
    def print_banner(title: str) -> None:
        print("\n" + "╔" + "═" * 58 + "╗")
        print(f"║ {title:<57}║")
        print("╚" + "═" * 58 + "╝\n")

    @staticmethod
    def print_eval_point(seed: int, row: MetricsRow) -> None:
        rate = f"{row.avg_rate_mbps:.3f} Mbps" if row.rate_defined else "n/a"
        print(
            f"  seed {seed} step {row.step:>7}: reward {row.reward:9.3f}  "
            f"frames {row.successful_frames:6.2f}  energy {row.energy_j:.4g} J  rate {rate}"
        )

    @staticmethod
    def print_metrics_row(row: MetricsRow) -> None:
        print(f"📈 Reward: {row.reward:.4f} (std {row.reward_std:.4f})")
        print(f"🎞️  Successful frames: {row.successful_frames:.2f}")
        print(f"🔋 Energy: {row.energy_j:.6g} J")
        if row.rate_defined:
            print(f"📡 Average rate: {row.avg_rate_mbps:.4f} Mbps")
        else:
            print("📡 Average rate: n/a (no frame offloaded)")

    @staticmethod
    def print_campaign_summary(result: CampaignResult, final: pd.DataFrame) -> None:
        print("\n" + "=" * 60)
        print(f"CAMPAIGN SUMMARY ({result.spec.agent})")
        print("=" * 60)
        print(f"📊 Seeds run: {len(result.seeds)}")
        print(f"📊 Env steps per seed: {result.spec.total_steps}")
        print(
            f"📈 Final reward: {final['reward'].mean():.3f} ± {final['reward'].std(ddof=0):.3f}"
        )
        print(f"🎞️  Final successful frames: {final['successful_frames'].mean():.2f}")
        print(f"🔋 Final energy: {final['energy_j'].mean():.6g} J")
        print(f"📄 Summary: {result.summary_path}")
        print(f"📄 Final window: {result.final_path}")
        print("=" * 60)

    @staticmethod
    def print_check_results(title: str, outcomes: List[bool], details: List[str]) -> None:
        print("\n" + "=" * 60)
        print(title)
        print("=" * 60)
        for passed, detail in zip(outcomes, details):
            print(f"{'✅' if passed else '❌'} {detail}")
        passed_count = sum(outcomes)
        print(f"\n📊 Passed: {passed_count}/{len(outcomes)}")
        print("=" * 60)

    @staticmethod
    def print_comparison(table: pd.DataFrame) -> None:
        print("\n" + "=" * 60)
        print("FINAL-WINDOW COMPARISON")
        print("=" * 60)
        print(table.to_string(index=False))
        print("=" * 60)
