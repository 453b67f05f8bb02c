import math

import numpy as np
import pytest

from leorsma import experiment
from leorsma.experiment import (RSMA_OPT, SweepConfig, alpha_search,
                                crossover_distance, default_alpha_grid,
                                default_distance_grid, evaluate_point,
                                iteration_epsilons, run_sweep)
from leorsma.precoding import Scheme

ALPHAS = default_alpha_grid()


def test_default_grids():
    grid = default_distance_grid()
    assert len(grid) == 80
    assert grid[0] == pytest.approx(500.0) and grid[-1] == pytest.approx(200e3)
    assert len(ALPHAS) == 101 and ALPHAS[0] == 0.0 and ALPHAS[-1] == 1.0
    with pytest.raises(ValueError):
        default_alpha_grid(0.3)


def test_perfect_csit_is_deterministic(scenario):
    mean, err = evaluate_point(scenario, 80e3, 'SDMA', 1.0, 0.0, 500, 3)
    assert err == 0.0
    single, _ = evaluate_point(scenario, 80e3, 'SDMA', 1.0, 0.0, 1, 99)
    assert mean == single


def test_evaluate_point_reproducible(scenario):
    a = evaluate_point(scenario, 80e3, 'RSMA', 0.4, 0.2, 300, 11)
    b = evaluate_point(scenario, 80e3, 'RSMA', 0.4, 0.2, 300, 11)
    c = evaluate_point(scenario, 80e3, 'RSMA', 0.4, 0.2, 300, 12)
    assert a == b and a != c
    assert a[1] > 0


def test_epsilon_stream_prefix_stable():
    short = iteration_epsilons(2, 0.2, 100, 5, 50e3)
    long = iteration_epsilons(2, 0.2, 1000, 5, 50e3)
    np.testing.assert_array_equal(long[:100], short)
    assert np.abs(long).max() <= 0.2
    other = iteration_epsilons(2, 0.2, 100, 5, 51e3)
    assert not np.array_equal(other, short)


def test_alpha_search_perfect_csit_extremes(scenario):
    assert alpha_search(scenario, 20e3, ALPHAS, 0.0, 1, 0)[0] == 0.0
    assert alpha_search(scenario, 150e3, ALPHAS, 0.0, 1, 0)[0] == 1.0


def test_alpha_search_singleton(scenario):
    alpha, r = alpha_search(scenario, 60e3, [0.5], 0.2, 200, 1)
    assert alpha == 0.5
    assert r == evaluate_point(scenario, 60e3, 'RSMA', 0.5, 0.2, 200, 1)[0]


def test_alpha_search_ties_prefer_smaller_alpha(scenario):
    alpha, _ = alpha_search(scenario, 60e3, [0.3, 0.3, 0.3], 0.0, 1, 0)
    assert alpha == 0.3
    means = np.array([1.0, 2.0, 2.0])
    assert experiment._argmax_alpha((0.1, 0.2, 0.3), means) == (1, 0.2)


def test_alpha_search_uses_common_random_numbers(scenario, monkeypatch):
    seen = []
    original = experiment.build_precoders

    def spy(scheme, H_est, s, alpha=1.0):
        seen.append((alpha, np.array(H_est)))
        return original(scheme, H_est, s, alpha)

    monkeypatch.setattr(experiment, 'build_precoders', spy)
    alpha_search(scenario, 70e3, ALPHAS[::10], 0.2, 50, 4)
    assert [a for a, _ in seen] == list(ALPHAS[::10])
    for _, H_est in seen[1:]:
        np.testing.assert_array_equal(H_est, seen[0][1])


def test_rsma_opt_dominates_fixed_alphas(scenario):
    cfg = SweepConfig(distance_grid=[30e3, 90e3], iterations=200, delta_eps=0.2,
                      seed=8, schemes=('SDMA', 'OMA', 'RSMA', RSMA_OPT),
                      fixed_alphas=(0.0, 0.25, 0.5, 0.75, 1.0))
    res = run_sweep(cfg, scenario)
    for d in cfg.distance_grid:
        rows = [r for r in res.rows if r.distance == d]
        opt = [r for r in rows if r.scheme == RSMA_OPT][0].mean_rate
        assert all(opt >= r.mean_rate for r in rows)
    sdma = res.column('SDMA', 'mean_rate')
    rsma1 = res.column('RSMA', 'mean_rate', alpha=1.0)
    np.testing.assert_array_equal(sdma, rsma1)


def test_sweep_rows_and_correlation_column(scenario):
    cfg = SweepConfig(distance_grid=[500.0, 100e3, 600e3 / math.sqrt(8)],
                      delta_eps=0.0, schemes=('SDMA', 'OMA', RSMA_OPT))
    res = run_sweep(cfg, scenario)
    assert len(res.rows) == 9
    assert [r.scheme for r in res.rows[:3]] == ['SDMA', 'OMA', RSMA_OPT]
    rho = res.column('OMA', 'rho')
    assert rho[0] == pytest.approx(1.0, abs=1e-4)
    assert rho[-1] < 1e-2
    assert all(r.iterations == 1 and r.std_error == 0 for r in res.rows)


def test_oma_curve_flat_and_rsma_opt_dominates(scenario):
    cfg = SweepConfig(distance_grid=default_distance_grid(points=12),
                      delta_eps=0.0)
    res = run_sweep(cfg, scenario)
    _, oma = res.curve('OMA')
    _, sdma = res.curve('SDMA')
    _, opt = res.curve(RSMA_OPT)
    assert np.all(np.abs(oma - 3.1) < 0.15)
    assert np.all(opt >= np.maximum(sdma, oma))


def test_sweep_independent_of_worker_count(scenario):
    cfg = SweepConfig(distance_grid=[1e3, 60e3, 150e3], iterations=100,
                      delta_eps=0.2, seed=21, alpha_grid=ALPHAS[::5])
    a = run_sweep(cfg, scenario, workers=1)
    b = run_sweep(cfg, scenario, workers=3)
    assert a.rows == b.rows


def test_sweep_row_independent_of_grid(scenario):
    cfg1 = SweepConfig(distance_grid=[60e3], iterations=100, delta_eps=0.2,
                       seed=2, schemes=('SDMA',))
    cfg2 = SweepConfig(distance_grid=[10e3, 60e3, 90e3], iterations=100,
                       delta_eps=0.2, seed=2, schemes=('SDMA',))
    r1 = run_sweep(cfg1, scenario).rows[0]
    r2 = [r for r in run_sweep(cfg2, scenario).rows if r.distance == 60e3][0]
    assert r1 == r2
    assert r1.mean_rate == evaluate_point(scenario, 60e3, 'SDMA', 1.0, 0.2, 100, 2)[0]


def test_iteration_overrides(scenario):
    cfg = SweepConfig(distance_grid=[10e3, 50e3], iterations=30, delta_eps=0.2,
                      iteration_overrides=[(50e3, 70)], schemes=('OMA',))
    assert [r.iterations for r in run_sweep(cfg, scenario).rows] == [30, 70]


def test_monte_carlo_convergence(scenario):
    m1, _ = evaluate_point(scenario, 100e3, 'SDMA', 1.0, 0.2, 2000, 17)
    m2, e2 = evaluate_point(scenario, 100e3, 'SDMA', 1.0, 0.2, 4000, 17)
    assert abs(m2 - m1) < 3 * e2


@pytest.mark.parametrize("kwargs", [
    dict(iterations=0), dict(distance_grid=[2.0, 1.0]), dict(distance_grid=[]),
    dict(alpha_grid=[0.5, 0.2]), dict(alpha_grid=[1.2]), dict(delta_eps=-0.1),
    dict(schemes=('NOMA',)), dict(schemes=('RSMA',)), dict(seed=-1),
])
def test_sweep_config_validation(kwargs):
    with pytest.raises(ValueError):
        SweepConfig(**kwargs)


def test_crossover_distance():
    d = [0.0, 10.0, 20.0, 30.0]
    assert crossover_distance(d, [1, 2, 3, 4], [2, 2.5, 2.5, 2.5]) == pytest.approx(15.0)
    assert crossover_distance(d, [1, 1, 1, 1], [2, 2, 2, 2]) is None
