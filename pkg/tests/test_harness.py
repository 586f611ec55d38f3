import math

import numpy as np
import pytest

from groverdyn import (
    ConfigurationError,
    ExperimentConfig,
    averaged_success,
    build_state,
    compare_run,
    load_state,
    resolve_state,
    save_state,
    sweep_marked_sets,
)
from groverdyn.harness import _sample_marked_sets
from helpers import two_cycle_state
from groverdyn import MarkedSet


def test_build_state_eta_and_basis():
    eta = build_state("eta", 3)
    assert np.allclose(eta.amplitudes, np.full(8, 1 / math.sqrt(8)))
    basis = build_state("basis", 3, k=5)
    assert basis.amplitudes[5] == 1.0
    assert np.sum(np.abs(basis.amplitudes)) == 1.0


def test_build_state_ghz():
    ghz = build_state("ghz", 3)
    expected = np.zeros(8, dtype=complex)
    expected[0] = expected[7] = 1 / math.sqrt(2)
    assert np.allclose(ghz.amplitudes, expected)


def test_build_state_w():
    w = build_state("w", 3)
    expected = np.zeros(8, dtype=complex)
    expected[[1, 2, 4]] = 1 / math.sqrt(3)
    assert np.allclose(w.amplitudes, expected)


def test_build_state_zero_mean():
    state = build_state("zero_mean", 6, seed=9)
    assert abs(np.mean(state.amplitudes)) < 1e-16
    assert averaged_success(state) < 10 / math.sqrt(64)


def test_build_state_haar_is_seed_deterministic():
    a = build_state("haar", 5, seed=123)
    b = build_state("haar", 5, seed=123)
    c = build_state("haar", 5, seed=124)
    assert np.array_equal(a.amplitudes, b.amplitudes)
    assert not np.array_equal(a.amplitudes, c.amplitudes)


def test_build_state_k_uniform():
    state = build_state("k_uniform", 4, k=5)
    assert np.allclose(state.amplitudes[:5], 1 / math.sqrt(5))
    assert np.all(state.amplitudes[5:] == 0)
    assert abs(averaged_success(state) - 5 / 16) < 1e-12


def test_build_state_errors():
    with pytest.raises(ValueError, match="unknown state builder"):
        build_state("bell", 2)
    with pytest.raises(ValueError, match="seed"):
        build_state("haar", 3)
    with pytest.raises(ValueError, match="k_uniform"):
        build_state("k_uniform", 3, k=0)
    with pytest.raises(ValueError, match="basis"):
        build_state("basis", 3, k=8)
    with pytest.raises(ValueError):
        build_state("eta", 25)


def test_resolve_state_round_trip(tmp_path):
    path = tmp_path / "w.json"
    save_state(build_state("w", 4), path)
    state = resolve_state(str(path), 4)
    assert np.allclose(state.amplitudes, build_state("w", 4).amplitudes)
    with pytest.raises(ValueError, match="n="):
        resolve_state(str(path), 5)


def test_resolve_state_hints_for_parameterized_builders():
    with pytest.raises(ValueError, match="state make"):
        resolve_state("k_uniform", 4)


def test_config_validation():
    with pytest.raises(ValueError):
        ExperimentConfig(n=0, r=1)
    with pytest.raises(ValueError):
        ExperimentConfig(n=3, r=8)
    with pytest.raises(ValueError):
        ExperimentConfig(n=3, r=2, marked=(1,))
    with pytest.raises(ValueError):
        ExperimentConfig(n=3, r=1, samples=0)


def test_sweep_eta_exhaustive_single_marked():
    summary = sweep_marked_sets(ExperimentConfig(n=8, r=1, state_spec="eta"))
    assert summary.exhaustive
    assert summary.num_sets == 256
    assert summary.mean_p >= 0.99
    assert abs(summary.analytic_prediction - 1.0) < 1e-12


def test_sweep_ghz_matches_prediction():
    summary = sweep_marked_sets(ExperimentConfig(n=8, r=1, state_spec="ghz"))
    num_states = 256
    assert abs(summary.mean_p - 2 / num_states) < 10 / math.sqrt(num_states)
    assert abs(summary.analytic_prediction - 2 / num_states) < 1e-12


def test_sampled_sweep_is_deterministic_and_consistent():
    config = ExperimentConfig(n=8, r=1, state_spec="haar", samples=120, seed=5)
    first = sweep_marked_sets(config)
    second = sweep_marked_sets(config)
    assert first.p_values == second.p_values
    assert not first.exhaustive

    exhaustive = sweep_marked_sets(
        ExperimentConfig(n=8, r=1, state_spec="haar", seed=5)
    )
    assert exhaustive.exhaustive
    spread = 3 * max(first.std_error, 1e-6)
    assert abs(first.mean_p - exhaustive.mean_p) <= spread


def test_sample_marked_sets_unique_and_seeded():
    sets = _sample_marked_sets(64, 2, 100, seed=3)
    assert len(sets) == len(set(sets)) == 100
    assert all(len(s) == 2 and s[0] < s[1] for s in sets)
    assert sets == _sample_marked_sets(64, 2, 100, seed=3)


def test_sampling_without_seed_is_configuration_error():
    with pytest.raises(ConfigurationError, match="seed"):
        sweep_marked_sets(
            ExperimentConfig(n=10, r=2, state_spec="eta", samples=50, seed=None)
        )


def test_forced_exhaustive_beyond_limit_is_configuration_error():
    with pytest.raises(ConfigurationError, match="exceeds"):
        sweep_marked_sets(
            ExperimentConfig(n=10, r=2, state_spec="eta", exhaustive=True)
        )


def test_sample_count_capped_at_population():
    summary = sweep_marked_sets(
        ExperimentConfig(n=4, r=1, state_spec="eta", samples=1000, seed=1)
    )
    assert summary.num_sets == 16
    assert summary.exhaustive


def test_compare_run_eta():
    config = ExperimentConfig(n=10, r=1, state_spec="eta", marked=(7,), t_max=100)
    report = compare_run(config)
    assert report.tau == 25
    assert len(report.rows) == 101
    assert report.max_abs_err < 1e-10


def test_compare_run_ghz_default_horizon():
    config = ExperimentConfig(n=8, r=1, state_spec="ghz", marked=(0,))
    report = compare_run(config)
    assert report.rows[-1].t == 4 * report.tau
    assert report.max_abs_err < 1e-10


def test_compare_run_two_cycle_state(tmp_path):
    marked = MarkedSet(16, (0, 5))
    state = two_cycle_state(marked)
    path = tmp_path / "twocycle.json"
    save_state(state, path)
    config = ExperimentConfig(
        n=4, r=2, state_spec=str(path), marked=(0, 5), t_max=40
    )
    report = compare_run(config)
    assert report.delta_p < 1e-12
    p_values = [row.p_sim for row in report.rows]
    assert max(p_values) - min(p_values) < 1e-12
    assert report.max_abs_err < 1e-12


def test_compare_run_requires_marked_set():
    with pytest.raises(ConfigurationError, match="marked"):
        compare_run(ExperimentConfig(n=4, r=1, state_spec="eta"))
