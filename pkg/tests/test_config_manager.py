"""Tests for ConfigManager and the effective run configuration"""

import pytest

from noma_vr_offloader.agents import AgentConfig
from noma_vr_offloader.core.config import (
    ConfigManager,
    RunConfig,
    format_seeds,
    load_config,
    parse_seeds,
    with_seed,
)
from noma_vr_offloader.core.errors import ConfigError
from noma_vr_offloader.env import EnvConfig
from noma_vr_offloader.experiment import ExperimentSpec


@pytest.fixture
def config_file(tmp_path):
    def write(text):
        path = tmp_path / "run.yaml"
        path.write_text(text)
        return path

    return write


class TestSeeds:
    """Test seed list syntax"""

    def test_inclusive_range(self):
        assert parse_seeds("0..2") == (0, 1, 2)
        assert parse_seeds(" 3 .. 5 ") == (3, 4, 5)

    def test_comma_list(self):
        assert parse_seeds("0,1,2") == (0, 1, 2)
        assert parse_seeds("7") == (7,)

    def test_empty_range(self):
        with pytest.raises(ConfigError, match="empty"):
            parse_seeds("5..2")

    def test_garbage(self):
        with pytest.raises(ConfigError):
            parse_seeds("a,b")

    def test_format(self):
        assert format_seeds((0, 1, 2)) == "0..2"
        assert format_seeds((0, 2, 5)) == "0,2,5"
        assert format_seeds((4,)) == "4"


class TestDefaults:
    """Test documented defaults and presets"""

    def test_no_file_gives_defaults(self):
        run = ConfigManager().effective()
        assert run.env == EnvConfig()
        assert run.agent == AgentConfig()
        assert run.experiment == ExperimentSpec()
        assert run.experiment.total_steps == 30000
        assert run.experiment.seeds == (0, 1, 2)

    def test_paper_preset(self):
        run = ConfigManager(preset="paper").effective()
        assert run.experiment.total_steps == 200000
        assert run.experiment.seeds == tuple(range(11))
        assert run.experiment.eval_interval == 50

    def test_unknown_preset(self):
        with pytest.raises(ConfigError, match="preset"):
            ConfigManager(preset="huge")

    def test_overriding_one_key_keeps_other_defaults(self, config_file):
        run = ConfigManager(config_file("n_users: 8\n")).effective()
        assert run.env.n_users == 8
        assert run.env.to_dict() == {**EnvConfig().to_dict(), "n_users": 8}
        assert run.agent == AgentConfig()
        assert run.experiment == ExperimentSpec()


class TestFileParsing:
    """Test the flat YAML format"""

    def test_values_are_typed(self, config_file):
        path = config_file(
            "# scenario\nn_users: 4\nbandwidth_per_channel: 2e6\nnormalize_advantages: false\n"
            "seeds: 0..4\nagent: ppo\ntotal_steps: 1e4\n"
        )
        run = ConfigManager(path).effective()
        assert run.env.n_users == 4
        assert run.env.bandwidth_per_channel == 2e6
        assert run.agent.normalize_advantages is False
        assert run.experiment.seeds == (0, 1, 2, 3, 4)
        assert run.experiment.agent == "ppo"
        assert run.experiment.total_steps == 10000

    def test_unknown_key_is_named(self, config_file):
        with pytest.raises(ConfigError, match="unknown config key 'n_user'"):
            ConfigManager(config_file("n_users: 4\nn_user: 5\n")).effective()

    def test_malformed_number_reports_line(self, config_file):
        with pytest.raises(ConfigError, match=r"'gamma' \(line 3\)"):
            ConfigManager(config_file("n_users: 4\n# comment\ngamma: 0.9x\n")).effective()

    def test_fractional_integer_is_rejected(self, config_file):
        with pytest.raises(ConfigError, match="n_users"):
            ConfigManager(config_file("n_users: 2.5\n")).effective()

    def test_nested_values_are_rejected(self, config_file):
        with pytest.raises(ConfigError, match="single value"):
            ConfigManager(config_file("n_users:\n  a: 1\n")).effective()

    def test_duplicate_key(self, config_file):
        with pytest.raises(ConfigError, match="given twice"):
            ConfigManager(config_file("n_users: 2\nn_users: 3\n")).effective()

    def test_not_a_mapping(self, config_file):
        with pytest.raises(ConfigError, match="'key: value'"):
            ConfigManager(config_file("- 1\n- 2\n")).effective()

    def test_equals_sign_line_names_the_expected_format(self, config_file):
        with pytest.raises(ConfigError, match=r"line 2: expected one 'key: value' pair per line, found 'n_users=8'"):
            ConfigManager(config_file("# users\nn_users=8\n")).effective()

    def test_empty_file_gives_defaults(self, config_file):
        assert ConfigManager(config_file("")).effective() == ConfigManager().effective()

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError, match="not found"):
            ConfigManager(tmp_path / "absent.yaml").load()

    def test_invalid_value_is_config_error(self, config_file):
        with pytest.raises(ConfigError, match="gamma"):
            ConfigManager(config_file("gamma: 1.5\n")).effective()

    def test_preset_in_file(self, config_file):
        run = ConfigManager(config_file("preset: paper\ntotal_steps: 1000\n")).effective()
        assert run.experiment.total_steps == 1000
        assert run.experiment.eval_interval == 50


class TestLayering:
    """Test precedence: preset < file < explicit overrides"""

    def test_overrides_win(self, config_file):
        manager = ConfigManager(config_file("total_steps: 5000\nagent: ppo\n"), preset="paper")
        manager.update({"agent": "hrdqn", "total_steps": None, "seeds": "1..2"})
        run = manager.effective()
        assert run.experiment.agent == "hrdqn"
        assert run.experiment.total_steps == 5000
        assert run.experiment.seeds == (1, 2)
        assert run.experiment.eval_interval == 50

    def test_get(self, config_file):
        manager = ConfigManager(config_file("n_channels: 2\n"))
        assert manager.get("n_channels") == 2
        assert manager.get("total_steps") == 30000
        assert manager.get("missing", "x") == "x"

    def test_set_unknown_key(self):
        with pytest.raises(ConfigError, match="unknown config key"):
            ConfigManager().set("learning_rate", 0.1)

    def test_action_space_bound(self, config_file):
        with pytest.raises(ConfigError, match="joint actions"):
            ConfigManager(config_file("n_users: 9\n")).effective()

    def test_random_agent_has_no_action_space_bound(self, config_file):
        run = ConfigManager(config_file("n_users: 9\nagent: random\n")).effective()
        assert run.env.action_space_size == 4**9


class TestDump:
    """Test the effective-config dump"""

    def test_dump_reloads_identically(self, tmp_path):
        run = ConfigManager(preset="paper").effective()
        path = tmp_path / "effective.yaml"
        ConfigManager.dump(run, path)
        assert ConfigManager(path).effective() == run

    def test_dump_of_custom_run(self, tmp_path):
        run = RunConfig(
            env=EnvConfig(n_users=3, noise_psd=1.234567890123e-21),
            agent=AgentConfig(paper_exact_clip=True, actor_lr=1e-5),
            experiment=ExperimentSpec(agent="ppo", seeds=(2, 5), out_dir=str(tmp_path / "out dir")),
        )
        path = tmp_path / "effective.yaml"
        ConfigManager.dump(run, path)
        text = path.read_text()
        assert "# env" in text
        assert "seeds: \"2,5\"" in text
        assert ConfigManager(path).effective() == run

    def test_save_and_load(self, tmp_path):
        manager = ConfigManager(tmp_path / "saved.yaml")
        manager.save({"n_users": 3, "seeds": (0, 1)})
        assert manager.load() == {"n_users": 3, "seeds": (0, 1)}


def test_with_seed_sets_env_master_seed():
    run = ConfigManager().effective()
    assert with_seed(run, 7).env.rng_seed == 7
    assert with_seed(run, 7).agent == run.agent


def test_load_config_reads_experiment(tmp_path):
    path = tmp_path / "run.yaml"
    path.write_text("agent: hrdqn\nseeds: 3,5\n")
    spec = load_config(path).experiment
    assert spec.agent == "hrdqn"
    assert spec.seeds == (3, 5)
    assert spec.total_steps == 30000
