"""Tests for exhaustive search and objective certification"""

from pathlib import Path

import numpy as np
import pytest

from noma_vr_offloader.agents import build_agent
from noma_vr_offloader.core.errors import DomainError
from noma_vr_offloader.env import EnvConfig, OffloadingEnv, SlotDraw
from noma_vr_offloader.oracle import (
    TinyInstance,
    certify_instance,
    exhaustive_search,
    load_instance,
    make_tiny_instance,
    recompute_objective,
    replay_sequence,
    run_actions,
    save_instance,
    sequence_objective,
    slot_table,
    state_objective,
    tiny_config,
)

FIXTURE = Path(__file__).parent / "fixtures" / "tiny_instance.txt"


@pytest.fixture
def fixture_instance():
    return load_instance(FIXTURE)


class TestInstanceFiles:
    """Test the tiny-instance text format"""

    def test_load_fixture(self, fixture_instance):
        assert fixture_instance.config.n_users == 2
        assert fixture_instance.config.frames_per_second == 3
        assert len(fixture_instance.tape) == 3
        assert [p.initial_tolerance for p in fixture_instance.population.profiles] == [1, 1]
        assert fixture_instance.tape[0].fading.shape == (2, 1)

    def test_save_then_load_is_exact(self, tmp_path):
        instance = make_tiny_instance(tiny_config(), episode_seed=3)
        path = tmp_path / "instance.txt"
        save_instance(path, instance)
        restored = load_instance(path)
        assert restored.config == instance.config
        assert restored.population.profiles == instance.population.profiles
        for original, loaded in zip(instance.tape, restored.tape):
            np.testing.assert_array_equal(loaded.frame_bits, original.frame_bits)
            np.testing.assert_array_equal(loaded.cycles_per_bit, original.cycles_per_bit)
            np.testing.assert_array_equal(loaded.fading, original.fading)

    def test_unknown_record_names_line(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("config n_users 2\nchannel 0 1\n")
        with pytest.raises(DomainError, match="line 2"):
            load_instance(path)

    def test_missing_slot(self, tmp_path):
        lines = [line for line in FIXTURE.read_text().splitlines() if not line.startswith("slot 2")]
        path = tmp_path / "short.txt"
        path.write_text("\n".join(lines))
        with pytest.raises(DomainError, match="slot 2"):
            load_instance(path)


class TestExhaustiveSearch:
    """Test the brute-force optimum"""

    def test_fixture_optimum(self, fixture_instance):
        result = exhaustive_search(fixture_instance)
        assert result.actions == (3, 3, 3)
        assert result.objective == 0.0
        assert result.feasible
        assert result.sequences_checked == 4**3

    def test_replay_reproduces_optimum(self, fixture_instance):
        result = exhaustive_search(fixture_instance)
        log = replay_sequence(fixture_instance, result.actions)
        assert log.actions == list(result.actions)
        assert recompute_objective(log) == result.objective

    def test_infeasible_instance_keeps_cheapest_failure(self, fixture_instance):
        hopeless = tuple(
            SlotDraw(frame_bits=np.full(2, 1e12), cycles_per_bit=draw.cycles_per_bit, fading=draw.fading)
            for draw in fixture_instance.tape
        )
        instance = TinyInstance(config=fixture_instance.config, population=fixture_instance.population, tape=hopeless)
        result = exhaustive_search(instance)
        assert not result.feasible
        assert result.actions == (3,)
        assert result.objective == pytest.approx(2.0)

    def test_refuses_oversized_instance(self):
        config = EnvConfig(n_users=3, n_channels=2, frames_per_second=6, target_fps_min=3, target_fps_max=4)
        with pytest.raises(DomainError, match="enumeration is limited"):
            make_tiny_instance(config, episode_seed=0)

    def test_refuses_too_many_users(self):
        with pytest.raises(DomainError):
            make_tiny_instance(tiny_config(n_users=4, frames=2), episode_seed=0)

    @pytest.mark.parametrize("episode_seed", range(5))
    def test_certifies_random_instances(self, episode_seed):
        instance = make_tiny_instance(tiny_config(2, 1, 5), episode_seed)
        report = certify_instance(instance, 200, np.random.default_rng(episode_seed))
        assert report.passed, report.problems
        assert report.replay_objective == pytest.approx(report.search.objective, rel=1e-12, abs=1e-12)


def test_oracle_and_env_agree_on_random_sequences():
    instance = make_tiny_instance(tiny_config(2, 1, 5), episode_seed=11)
    rng = np.random.default_rng(0)
    for _ in range(1000):
        sequence = rng.integers(4, size=5).tolist()
        score = sequence_objective(instance, sequence)
        env = instance.env()
        log = run_actions(env, sequence, instance.config)
        assert log.executed_slots == score.executed_slots
        assert state_objective(env.state, instance.config) == pytest.approx(score.objective, rel=1e-12, abs=1e-15)


class TestRecomputeObjective:
    """Test the objective rebuilt from logged delays"""

    def test_matches_env_accumulators_on_full_episodes(self):
        config = EnvConfig()
        env = OffloadingEnv(config)
        rng = np.random.default_rng(1)
        for episode in range(100):
            env.reset(episode)
            log = run_actions(env, rng.integers(config.action_space_size, size=90).tolist(), config)
            expected = state_objective(env.state, config)
            assert recompute_objective(log) == pytest.approx(expected, rel=1e-9)

    def test_incomplete_log_is_refused(self):
        config = EnvConfig()
        env = OffloadingEnv(config)
        env.reset(0)
        log = run_actions(env, [0] * 90, config)
        log.steps = log.steps[:-1]
        with pytest.raises(DomainError, match="incomplete"):
            recompute_objective(log)

    def test_gap_in_log_is_refused(self, fixture_instance):
        log = replay_sequence(fixture_instance, (3, 3, 3))
        del log.steps[1]
        with pytest.raises(DomainError, match="skips"):
            recompute_objective(log)

    def test_empty_log_is_refused(self, fixture_instance):
        log = replay_sequence(fixture_instance, (3, 3, 3))
        log.steps = []
        with pytest.raises(DomainError, match="empty"):
            recompute_objective(log)


def rollout(instance, choose):
    env = instance.env()
    observation = env.observation()
    actions = []
    while True:
        action = choose(env.state.t, observation)
        outcome = env.step(action)
        actions.append(action)
        if outcome.terminated:
            return actions
        observation = outcome.observation


def assert_no_better_than(best, other):
    assert best[:2] <= other[:2]
    if best[:2] == other[:2]:
        assert best[2] <= other[2] + 1e-12


class TestOptimumBoundsPolicies:
    """Test that no policy beats the exhaustive optimum on the same tape"""

    @pytest.mark.parametrize("episode_seed", range(4))
    def test_optimum_is_no_worse_than_greedy_and_trained_policies(self, episode_seed, tiny_agent_config):
        instance = make_tiny_instance(tiny_config(2, 1, 5), episode_seed)
        config = instance.config
        table = slot_table(instance)
        result = exhaustive_search(instance)
        best = sequence_objective(instance, result.actions, table).rank_key(config.n_users, config.frames_per_second)

        def slot_cost(t, action):
            outcome = table[t][action]
            return config.weight_failure * sum(outcome.failures) + config.weight_energy * sum(outcome.energy)

        rng = np.random.default_rng(episode_seed)
        policies = {
            "all local": lambda t, observation: 0,
            "myopic": lambda t, observation: min(range(config.action_space_size), key=lambda a: (slot_cost(t, a), a)),
            "random": lambda t, observation: int(rng.integers(config.action_space_size)),
        }
        for kind in ("hrppo", "hrdqn"):
            agent = build_agent(kind, config, tiny_agent_config, seed=episode_seed)
            agent.train(OffloadingEnv(config), 64, 32, lambda step: None)
            policies[kind] = lambda t, observation, agent=agent: agent.act(observation, rng)

        for choose in policies.values():
            score = sequence_objective(instance, rollout(instance, choose), table)
            assert_no_better_than(best, score.rank_key(config.n_users, config.frames_per_second))
