"""Independent Monte Carlo ground truth for the weighted-count statistics.

Every closed form in the package can be checked against this sampler: draw
a Poisson-distributed number of atoms from the initial Gaussian phase
space, fly them ballistically, sum the beam weights, and estimate
mean/variance/covariance across many independent realizations.

Reproducibility contract: each realization uses its own generator seeded by
a splitmix64 mix of the master seed and the realization index, and all
statistics are reductions over a fully materialized (realization, time)
array.  Results are therefore bit-identical no matter how many threads the
realizations are spread over.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .beam import BeamParams, weight
from .cloud import CloudParams

__all__ = [
    "Realization",
    "EnsembleStats",
    "BinaryCountReport",
    "substream_seed",
    "sample_cloud",
    "propagate",
    "effective_count",
    "weighted_counts",
    "ensemble_stats",
    "binary_count_check",
]

_MASK64 = (1 << 64) - 1


def substream_seed(master_seed: int, index: int) -> int:
    """Derive the per-realization seed: splitmix64 of master seed and index.

    The mix decorrelates consecutive indices completely, so realizations
    can be generated in any order (or in parallel) with identical results.
    """
    z = (master_seed + 0x9E3779B97F4A7C15 * (index + 1)) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (z ^ (z >> 31)) & _MASK64


@dataclass(frozen=True)
class Realization:
    """One sampled cloud: atom positions and velocities at release."""

    positions: np.ndarray
    velocities: np.ndarray
    count: int


@dataclass(frozen=True)
class EnsembleStats:
    """Sample statistics of the weighted count over many realizations.

    ``covariance`` is the (time, time) sample covariance matrix; its
    diagonal is ``variance`` by construction.  All standard errors are
    jackknife estimates (the one for the mean coincides with the usual
    s/sqrt(n)).
    """

    times: np.ndarray
    mean: np.ndarray
    variance: np.ndarray
    covariance: np.ndarray
    se_mean: np.ndarray
    se_variance: np.ndarray
    se_covariance: np.ndarray
    realization_count: int
    seed: int


@dataclass(frozen=True)
class BinaryCountReport:
    """Poisson check for an indicator (hard-edged) detection volume.

    For a 0/1 weight the count must stay Poissonian at all times, so the
    variance/mean ratio is 1 up to sampling error.  ``consistent`` flags
    |ratio - 1| <= 3 standard errors per time.
    """

    times: np.ndarray
    mean: np.ndarray
    variance: np.ndarray
    ratio: np.ndarray
    ratio_se: np.ndarray
    consistent: np.ndarray

    @property
    def all_consistent(self) -> bool:
        return bool(np.all(self.consistent))


def sample_cloud(c: CloudParams, seed: int) -> Realization:
    """Draw one cloud realization, deterministic for a given seed.

    The atom count is Poisson with mean n_total; positions and velocities
    are i.i.d. isotropic Gaussians (sigma_r, sigma_v).  Draw order is
    fixed: count, then positions, then velocities.
    """
    if not c.n_total > 0:
        raise ValueError("sampling requires a positive mean atom number")
    rng = np.random.Generator(np.random.PCG64(seed))
    count = int(rng.poisson(c.n_total))
    positions = c.sigma_r * rng.standard_normal((count, 3))
    velocities = c.sigma_v * rng.standard_normal((count, 3))
    return Realization(positions=positions, velocities=velocities, count=count)


def propagate(r0, v0, g: float, t: float):
    """Ballistic position r0 + v0*t with the gravity drop -g*t^2/2 along z.

    Accepts single 3-vectors or arrays of shape (..., 3).
    """
    if t < 0:
        raise ValueError("t must be nonnegative")
    r0 = np.asarray(r0, dtype=float)
    v0 = np.asarray(v0, dtype=float)
    out = r0 + v0 * t
    out[..., 2] -= 0.5 * g * t**2
    return out


def effective_count(b: BeamParams, real: Realization, g: float, t: float) -> float:
    """Weighted atom count N(t) = sum of beam weights over the atoms."""
    if real.count == 0:
        return 0.0
    pos = propagate(real.positions, real.velocities, g, t)
    return float(np.sum(weight(b, pos)))


def _weighted_counts_one(c, b, times, seed_i):
    real = sample_cloud(c, seed_i)
    return [effective_count(b, real, c.g, t) for t in times]


def _fill_rows(fill_one, n_realizations: int, out: np.ndarray, threads: int) -> None:
    """Populate out[i] = fill_one(i), optionally with a thread pool.

    Rows are indexed by realization, so scheduling order cannot change the
    result.
    """
    if threads <= 1:
        for i in range(n_realizations):
            out[i] = fill_one(i)
        return

    def run_chunk(lo: int, hi: int) -> None:
        for i in range(lo, hi):
            out[i] = fill_one(i)

    chunk = -(-n_realizations // threads)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        futures = [
            pool.submit(run_chunk, lo, min(lo + chunk, n_realizations))
            for lo in range(0, n_realizations, chunk)
        ]
        for f in futures:
            f.result()


def _jackknife_covariance_se(x: np.ndarray) -> np.ndarray:
    """Jackknife SE of every entry of the sample covariance matrix.

    x is centered data of shape (n, m).  Leave-one-out covariances are
    formed from downdated cross sums, O(n*m^2) total.
    """
    n, m = x.shape
    cross = x.T @ x                                   # (m, m)
    colsum = x.sum(axis=0)                            # (m,), ~0 for centered data
    outer = x[:, :, None] * x[:, None, :]             # (n, m, m)
    rest_sum = colsum[None, :] - x                    # (n, m)
    rest_outer = rest_sum[:, :, None] * rest_sum[:, None, :]
    loo = (cross[None, :, :] - outer - rest_outer / (n - 1)) / (n - 2)
    loo_mean = loo.mean(axis=0)
    return np.sqrt((n - 1) / n * np.sum((loo - loo_mean[None, :, :]) ** 2, axis=0))


def _ensemble_from_values(values: np.ndarray, times: np.ndarray, seed: int) -> EnsembleStats:
    n = values.shape[0]
    mean = values.mean(axis=0)
    centered = values - mean
    cov = centered.T @ centered / (n - 1)
    cov = 0.5 * (cov + cov.T)  # enforce exact symmetry of the BLAS product
    var = np.diag(cov).copy()
    se_cov = _jackknife_covariance_se(centered)
    se_cov = 0.5 * (se_cov + se_cov.T)
    return EnsembleStats(
        times=np.array(times, dtype=float),
        mean=mean,
        variance=var,
        covariance=cov,
        se_mean=np.sqrt(var / n),
        se_variance=np.diag(se_cov).copy(),
        se_covariance=se_cov,
        realization_count=n,
        seed=seed,
    )


def weighted_counts(
    c: CloudParams,
    b: BeamParams,
    times,
    n_realizations: int,
    seed: int,
    threads: int = 1,
) -> np.ndarray:
    """Raw weighted counts N(t), shape (n_realizations, n_times).

    Row i comes from the substream seed of realization i, so the array is
    identical for any thread count.  Useful for statistics beyond what
    ensemble_stats reports (ratio estimators, bootstrap, ...).
    """
    times = np.atleast_1d(np.asarray(times, dtype=float))
    values = np.empty((n_realizations, times.size))

    def fill_one(i: int):
        return _weighted_counts_one(c, b, times, substream_seed(seed, i))

    _fill_rows(fill_one, n_realizations, values, threads)
    return values


def ensemble_stats(
    c: CloudParams,
    b: BeamParams,
    times,
    n_realizations: int,
    seed: int,
    threads: int = 1,
) -> EnsembleStats:
    """Estimate mean/variance/covariance of N(t) over independent clouds.

    Unbiased sample statistics with jackknife standard errors.  Identical
    results for any ``threads`` value.
    """
    if n_realizations < 2:
        raise ValueError("need at least 2 realizations for variance estimates")
    times = np.atleast_1d(np.asarray(times, dtype=float))
    values = weighted_counts(c, b, times, n_realizations, seed, threads)
    return _ensemble_from_values(values, times, seed)


def binary_count_check(
    c: CloudParams,
    box_bounds,
    times,
    n_realizations: int,
    seed: int,
    threads: int = 1,
) -> BinaryCountReport:
    """Poisson sanity check of the sampler with an indicator weight.

    ``box_bounds`` is ((xlo, ylo, zlo), (xhi, yhi, zhi)); infinities select
    all space.  Counts atoms inside the box after free fall and reports the
    variance/mean ratio with a jackknife standard error; a healthy sampler
    gives 1 within noise at every time, independently of any beam-weight
    physics.
    """
    if n_realizations < 2:
        raise ValueError("need at least 2 realizations for variance estimates")
    lo, hi = (np.asarray(side, dtype=float) for side in box_bounds)
    if lo.shape != (3,) or hi.shape != (3,):
        raise ValueError("box_bounds must be a pair of 3-vectors")
    if np.any(lo >= hi):
        raise ValueError("box lower bounds must be below upper bounds")
    times = np.atleast_1d(np.asarray(times, dtype=float))
    counts = np.empty((n_realizations, times.size))

    def fill_one(i: int):
        real = sample_cloud(c, substream_seed(seed, i))
        row = np.empty(times.size)
        for j, t in enumerate(times):
            pos = propagate(real.positions, real.velocities, c.g, t)
            inside = np.all((pos >= lo) & (pos <= hi), axis=-1)
            row[j] = float(np.count_nonzero(inside))
        return row

    _fill_rows(fill_one, n_realizations, counts, threads)

    n = n_realizations
    mean = counts.mean(axis=0)
    centered = counts - mean
    var = np.sum(centered**2, axis=0) / (n - 1)
    ratio = var / mean

    # leave-one-out variance/mean ratios from downdated sums
    colsum = centered.sum(axis=0)
    sq = np.sum(centered**2, axis=0)
    rest_sum = colsum[None, :] - centered
    loo_var = (sq[None, :] - centered**2 - rest_sum**2 / (n - 1)) / (n - 2)
    loo_mean = mean[None, :] - centered / (n - 1)
    loo_ratio = loo_var / loo_mean
    loo_ratio_mean = loo_ratio.mean(axis=0)
    ratio_se = np.sqrt((n - 1) / n * np.sum((loo_ratio - loo_ratio_mean[None, :]) ** 2, axis=0))

    consistent = np.abs(ratio - 1.0) <= 3.0 * ratio_se
    return BinaryCountReport(
        times=times,
        mean=mean,
        variance=var,
        ratio=ratio,
        ratio_se=ratio_se,
        consistent=consistent,
    )
