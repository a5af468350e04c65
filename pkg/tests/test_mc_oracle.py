import math

import numpy as np
import pytest

from coldcloud import (
    BeamParams,
    CloudParams,
    EffNumInputs,
    Realization,
    binary_count_check,
    covariance_exact,
    effective_count,
    ensemble_stats,
    mean_number,
    propagate,
    sample_cloud,
    substream_seed,
    time_scales,
    variance,
    weighted_counts,
)

# small desk ensemble: collimated narrow probe where the closed forms hold
CLOUD = CloudParams(n_total=1e3, sigma_r=1e-3, sigma_v=0.1, g=9.81)
BEAM = BeamParams(w0=10e-6, wavelength=1e-9)
INPUTS = EffNumInputs(CLOUD, BEAM)


class TestSubstreamSeed:
    def test_deterministic(self):
        assert substream_seed(123, 7) == substream_seed(123, 7)

    def test_64_bit_range_and_distinct(self):
        seeds = {substream_seed(99, i) for i in range(2000)}
        assert len(seeds) == 2000
        assert all(0 <= s < 2**64 for s in seeds)

    def test_master_seed_matters(self):
        assert substream_seed(1, 0) != substream_seed(2, 0)


class TestSampleCloud:
    def test_same_seed_identical(self):
        a = sample_cloud(CLOUD, 4242)
        b = sample_cloud(CLOUD, 4242)
        assert a.count == b.count
        np.testing.assert_array_equal(a.positions, b.positions)
        np.testing.assert_array_equal(a.velocities, b.velocities)

    def test_count_is_poisson_distributed(self):
        counts = np.array([sample_cloud(CLOUD, substream_seed(5, i)).count for i in range(400)])
        # Poisson(1e3): mean and variance both 1e3
        se_mean = math.sqrt(CLOUD.n_total / counts.size)
        assert abs(counts.mean() - CLOUD.n_total) <= 3.0 * se_mean
        assert abs(counts.var(ddof=1) / CLOUD.n_total - 1.0) <= 4.0 * math.sqrt(2.0 / counts.size)

    def test_position_and_velocity_spreads(self):
        pos = np.concatenate(
            [sample_cloud(CLOUD, substream_seed(6, i)).positions for i in range(300)]
        )
        vel = np.concatenate(
            [sample_cloud(CLOUD, substream_seed(6, i)).velocities for i in range(300)]
        )
        n_axis = pos.size
        tol = 4.0 * math.sqrt(2.0 / n_axis)
        assert abs(pos.var(ddof=1) / CLOUD.sigma_r**2 - 1.0) < tol
        assert abs(vel.var(ddof=1) / CLOUD.sigma_v**2 - 1.0) < tol

    def test_rejects_empty_cloud(self):
        with pytest.raises(ValueError):
            sample_cloud(CloudParams(0.0, 1e-3, 0.1), 1)


class TestPropagate:
    def test_identity_at_zero_time(self):
        r0 = np.array([1.0, 2.0, 3.0])
        np.testing.assert_array_equal(propagate(r0, np.array([0.1, 0.2, 0.3]), 9.81, 0.0), r0)

    def test_free_fall_drop(self):
        r = propagate(np.zeros(3), np.zeros(3), 9.81, 0.1)
        assert r[2] == pytest.approx(-0.04905, rel=1e-12)
        assert r[0] == r[1] == 0.0

    def test_straight_line_without_gravity(self):
        r = propagate(np.array([1.0, 0.0, 0.0]), np.array([0.0, 2.0, -1.0]), 0.0, 0.5)
        np.testing.assert_allclose(r, [1.0, 1.0, -0.5], rtol=1e-15)

    def test_rejects_negative_time(self):
        with pytest.raises(ValueError):
            propagate(np.zeros(3), np.zeros(3), 9.81, -0.1)


class TestEffectiveCount:
    def test_empty_realization(self):
        empty = Realization(np.empty((0, 3)), np.empty((0, 3)), 0)
        assert effective_count(BEAM, empty, 9.81, 0.01) == 0.0

    def test_single_resting_atom_on_axis(self):
        one = Realization(np.zeros((1, 3)), np.zeros((1, 3)), 1)
        assert effective_count(BEAM, one, 0.0, 0.02) == 1.0

    def test_bounded_by_atom_count(self):
        real = sample_cloud(CLOUD, 777)
        for t in (0.0, 0.01, 0.03):
            n = effective_count(BEAM, real, CLOUD.g, t)
            assert 0.0 <= n <= real.count


class TestEnsembleStats:
    def test_deterministic_and_thread_invariant(self):
        times = [0.0, 0.01]
        a = ensemble_stats(CLOUD, BEAM, times, 150, seed=11)
        b = ensemble_stats(CLOUD, BEAM, times, 150, seed=11)
        c = ensemble_stats(CLOUD, BEAM, times, 150, seed=11, threads=4)
        for x, y in ((a, b), (a, c)):
            np.testing.assert_array_equal(x.mean, y.mean)
            np.testing.assert_array_equal(x.covariance, y.covariance)
            np.testing.assert_array_equal(x.se_covariance, y.se_covariance)

    def test_seed_changes_results(self):
        a = ensemble_stats(CLOUD, BEAM, [0.0], 100, seed=1)
        b = ensemble_stats(CLOUD, BEAM, [0.0], 100, seed=2)
        assert not np.array_equal(a.mean, b.mean)

    def test_matrix_invariants(self):
        stats = ensemble_stats(CLOUD, BEAM, [0.0, 0.005, 0.012], 200, seed=3)
        np.testing.assert_array_equal(stats.covariance, stats.covariance.T)
        np.testing.assert_array_equal(np.diag(stats.covariance), stats.variance)
        assert stats.realization_count == 200

    def test_agrees_with_closed_forms(self):
        # denser cloud than the other tests: the covariance estimator needs
        # a reasonable fraction of realizations with atoms in the beam
        cloud = CloudParams(n_total=4e3, sigma_r=1e-3, sigma_v=0.1, g=9.81)
        inp = EffNumInputs(cloud, BEAM)
        times = np.array([0.0, 0.006, 0.012, 0.02])
        stats = ensemble_stats(cloud, BEAM, times, 2500, seed=321)
        mean_z = (stats.mean - mean_number(inp, times)) / stats.se_mean
        var_z = (stats.variance - variance(inp, times)) / stats.se_variance
        assert np.all(np.abs(mean_z) < 3.0)
        assert np.all(np.abs(var_z) < 3.0)
        for j in range(times.size):
            for k in range(j + 1, times.size):
                th = covariance_exact(inp, 0.5 * (times[j] + times[k]), times[j] - times[k])
                z = (stats.covariance[j, k] - th) / stats.se_covariance[j, k]
                assert abs(z) < 3.0

    def test_variance_to_mean_ratio_half(self):
        # tau_w/tau_r = 0.01 without gravity: the soft weight halves the
        # Poisson variance; jackknife the ratio from raw counts
        cloud = CloudParams(1e3, 1e-3, 0.1, 0.0)
        beam = BeamParams(w0=20e-6, wavelength=1e-9)
        values = weighted_counts(cloud, beam, [0.0], 4000, seed=99)[:, 0]
        n = values.size
        mean = values.mean()
        var = values.var(ddof=1)
        centered = values - mean
        rest = centered.sum() - centered
        loo_var = (np.sum(centered**2) - centered**2 - rest**2 / (n - 1)) / (n - 2)
        loo_mean = mean - centered / (n - 1)
        loo = loo_var / loo_mean
        se = math.sqrt((n - 1) / n * np.sum((loo - loo.mean()) ** 2))
        assert abs(var / mean - 0.5) <= 3.0 * se

    def test_standard_error_shrinks_like_sqrt_n(self):
        a = ensemble_stats(CLOUD, BEAM, [0.0], 600, seed=50)
        b = ensemble_stats(CLOUD, BEAM, [0.0], 2400, seed=50)
        ratio = a.se_mean[0] / b.se_mean[0]
        assert 1.7 < ratio < 2.3  # expect 2 for 4x the realizations

    def test_rejects_tiny_ensembles(self):
        with pytest.raises(ValueError):
            ensemble_stats(CLOUD, BEAM, [0.0], 1, seed=0)


class TestBinaryCountCheck:
    def test_whole_space_is_poisson(self):
        box = ((-np.inf, -np.inf, -np.inf), (np.inf, np.inf, np.inf))
        report = binary_count_check(CLOUD, box, [0.0, 0.01], 2000, seed=8)
        assert report.all_consistent
        np.testing.assert_allclose(report.ratio, 1.0, atol=4.0 * np.max(report.ratio_se))

    def test_centered_box_stays_poisson(self):
        half = 0.5 * CLOUD.sigma_r
        box = ((-half, -half, -half), (half, half, half))
        report = binary_count_check(CLOUD, box, [0.0, 0.005], 2000, seed=9)
        assert report.all_consistent

    def test_box_under_fallen_cloud_stays_poisson(self):
        ts = time_scales(CLOUD, BEAM)
        drop = -0.5 * CLOUD.g * ts.tau_g**2
        s = CLOUD.sigma_r
        box = ((-2 * s, -2 * s, drop - 2 * s), (2 * s, 2 * s, drop + 2 * s))
        report = binary_count_check(CLOUD, box, [ts.tau_g], 2000, seed=10)
        assert report.all_consistent

    def test_rejects_bad_boxes(self):
        with pytest.raises(ValueError):
            binary_count_check(CLOUD, ((0, 0, 0), (0, 0, 0)), [0.0], 10, seed=1)
        with pytest.raises(ValueError):
            binary_count_check(CLOUD, ((0, 0), (1, 1)), [0.0], 10, seed=1)
