"""Tests for CLI commands"""

from unittest.mock import patch

import pytest

from noma_vr_offloader.cli.commands import (
    EXIT_CONFIG_ERROR,
    EXIT_RUNTIME_FAULT,
    build_parser,
    cmd_show_config,
    main,
)

TINY_SCENARIO = """\
n_users: 2
n_channels: 1
frames_per_second: 5
target_fps_min: 2
target_fps_max: 3
rollout_length: 16
batch_size: 8
epochs: 2
hidden_layers: 1
hidden_units: 8
dqn_learning_starts: 8
eval_episodes: 2
"""


@pytest.fixture
def tiny_config_file(tmp_path):
    """Config file describing a two-user, five-slot scenario"""
    path = tmp_path / "tiny.yaml"
    path.write_text(TINY_SCENARIO)
    return path


@pytest.fixture
def trained_campaign(tmp_path, tiny_config_file):
    """Output directory of a finished single-seed hrppo campaign"""
    out = tmp_path / "hrppo"
    main(
        [
            "train",
            "-c",
            str(tiny_config_file),
            "--agent",
            "hrppo",
            "--seed",
            "0",
            "--steps",
            "20",
            "--eval-interval",
            "10",
            "-o",
            str(out),
        ]
    )
    return out


class TestShowConfig:
    """Test 'show-config' command"""

    def test_defaults(self, capsys):
        """Test that defaults are shown without a config file"""
        main(["show-config"])
        captured = capsys.readouterr()
        assert "n_users:" in captured.out
        assert "(defaults only)" in captured.out
        assert "total_steps:" in captured.out

    def test_file_values_are_shown(self, capsys, tiny_config_file):
        """Test that file values replace defaults"""
        main(["show-config", "-c", str(tiny_config_file), "--preset", "paper"])
        captured = capsys.readouterr()
        assert str(tiny_config_file) in captured.out
        assert "200000" in captured.out

    def test_unknown_key_exits_with_config_error(self, capsys, tmp_path):
        """Test that an unknown key is named and exits 1"""
        path = tmp_path / "bad.yaml"
        path.write_text("n_user: 3\n")
        with pytest.raises(SystemExit) as exc_info:
            main(["show-config", "-c", str(path)])
        assert exc_info.value.code == EXIT_CONFIG_ERROR
        assert "n_user" in capsys.readouterr().out

    def test_missing_file_exits_with_config_error(self, tmp_path):
        """Test that a missing config file is a config error"""
        with pytest.raises(SystemExit) as exc_info:
            main(["show-config", "-c", str(tmp_path / "absent.yaml")])
        assert exc_info.value.code == EXIT_CONFIG_ERROR

    def test_handler_reads_parsed_args(self, capsys):
        """Test calling the handler directly with parsed arguments"""
        args = build_parser().parse_args(["show-config", "--preset", "desk"])
        cmd_show_config(args)
        assert "Effective Configuration" in capsys.readouterr().out


class TestTrainAndEval:
    """Test 'train' and 'eval' commands"""

    def test_train_writes_campaign_files(self, capsys, trained_campaign):
        """Test a tiny training campaign end to end"""
        assert (trained_campaign / "metrics_seed0.csv").exists()
        assert (trained_campaign / "checkpoint_seed0.ckpt").exists()
        assert (trained_campaign / "summary.csv").exists()
        assert (trained_campaign / "final.csv").exists()
        assert (trained_campaign / "effective_config.yaml").exists()
        assert "✅ Training complete" in capsys.readouterr().out

    def test_train_passes_overrides(self, tiny_config_file, tmp_path):
        """Test that CLI flags override the config file"""
        with patch("noma_vr_offloader.cli.commands.run_campaign") as mock_run:
            main(
                [
                    "train",
                    "-c",
                    str(tiny_config_file),
                    "--agent",
                    "ppo",
                    "--seeds",
                    "2..4",
                    "--workers",
                    "3",
                    "--paper-exact-clip",
                    "-o",
                    str(tmp_path / "x"),
                ]
            )
        run = mock_run.call_args.args[0]
        assert run.experiment.agent == "ppo"
        assert run.experiment.seeds == (2, 3, 4)
        assert run.experiment.workers == 3
        assert run.agent.paper_exact_clip is True
        assert run.env.n_users == 2

    def test_seed_and_seeds_are_exclusive(self):
        """Test that --seed and --seeds cannot be combined"""
        with pytest.raises(SystemExit) as exc_info:
            main(["train", "--seed", "1", "--seeds", "0..2"])
        assert exc_info.value.code == EXIT_CONFIG_ERROR

    def test_eval_prints_metrics(self, capsys, trained_campaign):
        """Test greedy evaluation of a written checkpoint"""
        capsys.readouterr()
        main(
            [
                "eval",
                "-c",
                str(trained_campaign / "effective_config.yaml"),
                "--checkpoint",
                str(trained_campaign / "checkpoint_seed0.ckpt"),
                "--episodes",
                "2",
            ]
        )
        captured = capsys.readouterr()
        assert "📈 Reward:" in captured.out
        assert "🎞️  Successful frames:" in captured.out

    def test_eval_dimension_mismatch_is_runtime_fault(self, capsys, trained_campaign):
        """Test that a checkpoint for another scenario is refused"""
        with pytest.raises(SystemExit) as exc_info:
            main(["eval", "--checkpoint", str(trained_campaign / "checkpoint_seed0.ckpt")])
        assert exc_info.value.code == EXIT_RUNTIME_FAULT
        assert "checkpoint dimensions" in capsys.readouterr().out

    def test_eval_missing_checkpoint(self, tmp_path):
        """Test that an unreadable checkpoint path is a runtime fault"""
        with pytest.raises(SystemExit) as exc_info:
            main(["eval", "--checkpoint", str(tmp_path / "none.ckpt")])
        assert exc_info.value.code == EXIT_RUNTIME_FAULT


class TestChecks:
    """Test 'oracle-check' and 'gradcheck' commands"""

    def test_oracle_check_passes(self, capsys):
        """Test certification of one tiny instance"""
        main(["oracle-check", "--instances", "1", "--samples", "20"])
        captured = capsys.readouterr()
        assert "ORACLE CHECK" in captured.out
        assert "Passed: 1/1" in captured.out

    def test_oracle_check_refuses_large_instances(self):
        """Test that instances beyond the enumeration limit are a config error"""
        with pytest.raises(SystemExit) as exc_info:
            main(["oracle-check", "--instances", "1", "--users", "4"])
        assert exc_info.value.code != 0

    def test_gradcheck_passes(self, capsys):
        """Test finite-difference checks of two random nets"""
        main(["gradcheck", "--nets", "2"])
        output = capsys.readouterr().out
        assert "Passed: 2/2" in output
        assert "max(|analytic|, |numeric|, 0.001)" in output
        assert "pass at ≤ 1e-06" in output

    def test_gradcheck_failure_exits_with_runtime_fault(self, capsys):
        """Test that a failed gradient check exits 2"""
        with patch("noma_vr_offloader.cli.commands.gradient_check", return_value=1.0):
            with pytest.raises(SystemExit) as exc_info:
                main(["gradcheck", "--nets", "1"])
        assert exc_info.value.code == EXIT_RUNTIME_FAULT
        assert "❌" in capsys.readouterr().out


class TestCompare:
    """Test 'compare' command"""

    def test_compare_prints_table(self, capsys, trained_campaign):
        """Test the comparison of a finished campaign"""
        main(["compare", "--out", str(trained_campaign)])
        captured = capsys.readouterr()
        assert "FINAL-WINDOW COMPARISON" in captured.out
        assert "hrppo" in captured.out

    def test_compare_missing_directory(self, tmp_path):
        """Test comparison of a directory without results"""
        with pytest.raises(SystemExit) as exc_info:
            main(["compare", "--out", str(tmp_path)])
        assert exc_info.value.code == EXIT_CONFIG_ERROR


def test_no_command_prints_help(capsys):
    """Test that no command prints help and exits 1"""
    with pytest.raises(SystemExit) as exc_info:
        main([])
    assert exc_info.value.code == EXIT_CONFIG_ERROR
    assert "usage:" in capsys.readouterr().out


def test_unknown_agent_is_config_error():
    """Test that an invalid flag value exits 1"""
    with pytest.raises(SystemExit) as exc_info:
        main(["train", "--agent", "sarsa"])
    assert exc_info.value.code == EXIT_CONFIG_ERROR


def test_version(capsys):
    """Test --version"""
    with pytest.raises(SystemExit) as exc_info:
        main(["--version"])
    assert exc_info.value.code == 0
    assert "vr-offloader" in capsys.readouterr().out
