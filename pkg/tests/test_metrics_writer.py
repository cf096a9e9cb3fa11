"""Tests for the metrics, summary and final-window files"""

import numpy as np
import pandas as pd
import pytest

from noma_vr_offloader.core.errors import DomainError
from noma_vr_offloader.experiment import MetricsRow, final_table, load_metrics, summarize, write_metrics
from noma_vr_offloader.experiment.metrics_writer import final_window, metrics_frame, steps_to_fraction

HEADER = "step,reward,reward_std,successful_frames,energy_j,avg_rate_mbps,rate_defined"


def row(step, reward, frames=80.0, energy=1.0, rate=2.0, defined=True, spread=0.0):
    return MetricsRow(
        step=step,
        reward=reward,
        reward_std=spread,
        successful_frames=frames,
        energy_j=energy,
        avg_rate_mbps=rate,
        rate_defined=defined,
    )


def curve(rewards, interval=10):
    return metrics_frame([row(i * interval, r) for i, r in enumerate(rewards)])


class TestMetricsFile:
    """Test the per-seed metrics CSV"""

    def test_header(self, tmp_path):
        path = write_metrics([row(0, -1.0), row(10, 0.5, defined=False, rate=0.0)], tmp_path / "m.csv")
        lines = path.read_text().splitlines()
        assert lines[0] == HEADER
        assert lines[2].endswith(",0")
        assert len(lines) == 3

    def test_no_rows_writes_header_only(self, tmp_path):
        path = write_metrics([], tmp_path / "empty.csv")
        assert path.read_text().splitlines() == [HEADER]
        assert load_metrics(path).empty

    def test_steps_must_increase(self, tmp_path):
        with pytest.raises(DomainError, match="strictly increasing"):
            write_metrics([row(10, 0.0), row(10, 1.0)], tmp_path / "m.csv")
        with pytest.raises(DomainError):
            metrics_frame([row(20, 0.0), row(10, 1.0)])

    def test_load_round_trip(self, tmp_path):
        path = write_metrics([row(0, -1.25), row(50, 3.5)], tmp_path / "m.csv")
        frame = load_metrics(path)
        assert frame["step"].tolist() == [0, 50]
        assert frame["reward"].tolist() == [-1.25, 3.5]

    def test_load_rejects_other_columns(self, tmp_path):
        path = tmp_path / "other.csv"
        path.write_text("step,reward\n0,1.0\n")
        with pytest.raises(DomainError, match="columns"):
            load_metrics(path)


class TestSummary:
    """Test cross-seed aggregation"""

    def test_mean_and_population_std(self):
        summary = summarize([curve([0.0, 2.0]), curve([2.0, 6.0])])
        assert summary["step"].tolist() == [0, 10]
        assert summary["reward_mean"].tolist() == [1.0, 4.0]
        assert summary["reward_std"].tolist() == [1.0, 2.0]
        assert summary["energy_j_std"].tolist() == [0.0, 0.0]
        assert "rate_defined_mean" not in summary.columns

    def test_single_seed_has_zero_std(self):
        summary = summarize([curve([1.0, 2.0, 3.0])])
        assert summary["reward_std"].tolist() == [0.0, 0.0, 0.0]

    def test_nothing_to_summarize(self):
        with pytest.raises(DomainError):
            summarize([])


class TestFinalWindow:
    """Test the end-of-training statistics"""

    def test_window_averages_last_rows(self):
        frame = curve([0.0, 1.0, 2.0, 4.0], interval=100)
        final = final_window(frame, total_steps=300, window_steps=100)
        assert final["reward"] == pytest.approx(3.0)

    def test_empty_window_uses_last_row(self):
        frame = metrics_frame([row(0, 0.0), row(90, 5.0)])
        assert final_window(frame, total_steps=100, window_steps=0)["reward"] == 5.0

    def test_steps_to_fraction_rising(self):
        frame = curve([0.0, 5.0, 9.5, 10.0])
        assert steps_to_fraction(frame, 10.0) == 20

    def test_steps_to_fraction_falling(self):
        frame = curve([10.0, 0.5, 0.0])
        assert steps_to_fraction(frame, 0.0) == 10

    def test_flat_curve_reaches_at_first_step(self):
        assert steps_to_fraction(curve([1.0, 1.0]), 1.0) == 0

    def test_never_reached(self):
        frame = curve([0.0, 1.0, 10.0])
        assert steps_to_fraction(frame, 20.0) is None

    def test_final_table(self):
        table = final_table({1: curve([0.0, 10.0]), 0: curve([0.0, 0.0, 4.0])}, total_steps=20, window_steps=0)
        assert table.columns.tolist() == [
            "seed",
            "reward",
            "reward_std",
            "successful_frames",
            "energy_j",
            "avg_rate_mbps",
            "steps_to_90pct",
        ]
        assert table["seed"].tolist() == [0, 1]
        assert table["reward"].tolist() == [4.0, 10.0]
        assert table["steps_to_90pct"].tolist() == [20, 10]
        assert isinstance(table, pd.DataFrame)

    def test_final_reward_std_pools_episodes_of_the_window(self):
        frame = metrics_frame([row(0, -9.0, spread=5.0), row(100, 1.0, spread=1.0), row(200, 3.0, spread=1.0)])
        table = final_table({0: frame}, total_steps=200, window_steps=100)
        assert table["reward"].iloc[0] == pytest.approx(2.0)
        assert table["reward_std"].iloc[0] == pytest.approx(np.sqrt(2.0))

    def test_single_row_window_keeps_its_spread(self):
        table = final_table({0: metrics_frame([row(0, 0.0), row(10, -20.0, spread=4.0)])}, total_steps=10, window_steps=0)
        assert table["reward_std"].iloc[0] == pytest.approx(4.0)
