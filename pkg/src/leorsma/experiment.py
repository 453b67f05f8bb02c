"""
Monte Carlo engine: distance sweeps, exhaustive alpha search and averaging.

Randomness is counter-based. The AoD errors for one distance come from a
stream keyed on ``(seed, distance in millimetres)`` and iteration i always
uses row i of that stream, so

* every scheme and every alpha at a distance sees the same errors
  (common random numbers),
* a distance's rows do not depend on the rest of the grid, and
* results do not depend on how many worker processes share the sweep.
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
import math

import numpy as np

from .channel import apply_aod_error, channel_matrix, correlation
from .precoding import Scheme, build_precoders
from .rates import achievable_rate

__all__ = ['RSMA_OPT', 'SCHEMES', 'default_distance_grid', 'default_alpha_grid',
           'SweepConfig', 'RatePoint', 'SweepResult', 'error_stream',
           'iteration_epsilons', 'rate_samples', 'evaluate_point',
           'alpha_search', 'alpha_table', 'run_sweep', 'crossover_distance']

RSMA_OPT = 'RSMA-opt'
SCHEMES = ('SDMA', 'OMA', 'RSMA', RSMA_OPT)


def default_distance_grid(start=500.0, stop=200e3, points=80):
    """Log-spaced ground distances in meters."""
    return tuple(float(d) for d in np.geomspace(start, stop, points))


def default_alpha_grid(step=0.01):
    """Alphas from 0 to 1 inclusive; `step` must divide 1."""
    count = int(round(1.0 / step))
    if count < 1 or not math.isclose(count * step, 1.0, rel_tol=1e-9):
        raise ValueError("alpha step must divide 1, got {0}".format(step))
    return tuple(i / count for i in range(count + 1))


@dataclass(frozen=True)
class SweepConfig:
    """What to sweep and how hard to average.

    `fixed_alphas` produces one ``RSMA`` row per alpha; ``RSMA-opt`` rows
    search `alpha_grid`. `iteration_overrides` maps selected distances
    (meters) to their own iteration count.
    """
    distance_grid: tuple = field(default_factory=default_distance_grid)
    alpha_grid: tuple = field(default_factory=default_alpha_grid)
    iterations: int = 10000
    delta_eps: float = 0.0
    seed: int = 0
    schemes: tuple = ('SDMA', 'OMA', RSMA_OPT)
    fixed_alphas: tuple = ()
    iteration_overrides: tuple = ()

    def __post_init__(self):
        for name in ('distance_grid', 'alpha_grid', 'schemes', 'fixed_alphas'):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        object.__setattr__(self, 'distance_grid',
                           tuple(float(d) for d in self.distance_grid))
        object.__setattr__(self, 'alpha_grid',
                           tuple(float(a) for a in self.alpha_grid))
        object.__setattr__(self, 'fixed_alphas',
                           tuple(float(a) for a in self.fixed_alphas))
        overrides = dict(self.iteration_overrides)
        object.__setattr__(self, 'iteration_overrides', tuple(sorted(
            (float(d), int(n)) for d, n in overrides.items())))

        if int(self.iterations) != self.iterations or self.iterations < 1:
            raise ValueError("iterations must be a positive integer")
        if any(n < 1 for _, n in self.iteration_overrides):
            raise ValueError("iteration overrides must be >= 1")
        grid = self.distance_grid
        if not grid:
            raise ValueError("distance grid is empty")
        if any(not math.isfinite(d) or d < 0 for d in grid):
            raise ValueError("distances must be finite and >= 0")
        if any(b <= a for a, b in zip(grid, grid[1:])):
            raise ValueError("distance grid must be strictly increasing")
        alphas = self.alpha_grid
        if not alphas:
            raise ValueError("alpha grid is empty")
        if any(not 0.0 <= a <= 1.0 for a in alphas + self.fixed_alphas):
            raise ValueError("alphas must lie in [0, 1]")
        if any(b < a for a, b in zip(alphas, alphas[1:])):
            raise ValueError("alpha grid must be sorted")
        if not math.isfinite(self.delta_eps) or self.delta_eps < 0:
            raise ValueError("delta_eps must be finite and >= 0")
        unknown = set(self.schemes) - set(SCHEMES)
        if unknown:
            raise ValueError("unknown scheme(s): {0}".format(sorted(unknown)))
        if 'RSMA' in self.schemes and not self.fixed_alphas:
            raise ValueError("scheme RSMA needs at least one fixed alpha")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError("seed must be a 64-bit unsigned integer")

    def iterations_at(self, distance):
        """Iterations used at `distance`; 1 under perfect CSIT."""
        if self.delta_eps == 0:
            return 1
        for d, n in self.iteration_overrides:
            if math.isclose(d, distance, rel_tol=0.0, abs_tol=1e-6):
                return n
        return int(self.iterations)


@dataclass(frozen=True)
class RatePoint:
    distance: float
    scheme: str
    alpha: float
    mean_rate: float
    std_error: float
    rho: float
    iterations: int
    seed: int


@dataclass
class SweepResult:
    rows: list

    def curve(self, scheme, alpha=None):
        """Distances and mean rates of one curve, in grid order."""
        sel = [r for r in self.rows if r.scheme == scheme
               and (alpha is None or r.alpha == alpha)]
        return (np.array([r.distance for r in sel]),
                np.array([r.mean_rate for r in sel]))

    def column(self, scheme, attr, alpha=None):
        return np.array([getattr(r, attr) for r in self.rows
                         if r.scheme == scheme
                         and (alpha is None or r.alpha == alpha)])


def _distance_key(distance):
    return int(round(distance * 1000.0))


def error_stream(seed, distance):
    """Random generator owned by one (seed, distance) pair."""
    ss = np.random.SeedSequence(entropy=int(seed),
                                spawn_key=(_distance_key(distance),))
    return np.random.Generator(np.random.Philox(ss))


def iteration_epsilons(k, delta_eps, iterations, seed, distance):
    """AoD-cosine errors, shape (iterations, k); row i is iteration i.

    Prefix-stable: asking for more iterations appends rows and leaves the
    earlier ones unchanged.
    """
    u = error_stream(seed, distance).uniform(-1.0, 1.0, size=(iterations, k))
    return delta_eps * u


def rate_samples(s, distance, scheme, eps, alphas=(1.0,)):
    """Per-iteration rates at `distance` for the errors `eps` (shape (I, K)).

    Returns shape (I,) for SDMA/OMA and (len(alphas), I) for RSMA.
    """
    sd = s.with_user_distance(distance)
    H = channel_matrix(sd)
    H_est = apply_aod_error(np.broadcast_to(H, eps.shape + (sd.antenna_count,)),
                            sd, eps)
    noise = sd.noise_power
    if scheme in (Scheme.SDMA, Scheme.OMA):
        pre = build_precoders(scheme, H_est, sd)
        return achievable_rate(H, pre, noise).sum_rate
    out = np.empty((len(alphas), eps.shape[0]))
    for j, alpha in enumerate(alphas):
        pre = build_precoders(Scheme.RSMA, H_est, sd, alpha)
        out[j] = achievable_rate(H, pre, noise).sum_rate
    return out


def _mean_and_error(samples):
    samples = np.asarray(samples, dtype=float)
    n = samples.shape[-1]
    mean = samples.mean(axis=-1)
    if n < 2:
        return mean, np.zeros_like(mean)
    return mean, samples.std(axis=-1, ddof=1) / math.sqrt(n)


def _epsilons(s, distance, delta_eps, iterations, seed):
    n = 1 if delta_eps == 0 else int(iterations)
    return iteration_epsilons(s.user_count, delta_eps, n, seed, distance)


def evaluate_point(s, distance, scheme, alpha, delta_eps, iterations, seed):
    """Mean achievable rate and its standard error at one operating point.

    With ``delta_eps == 0`` the channel is deterministic and a single
    evaluation is done, giving a standard error of 0.
    """
    eps = _epsilons(s, distance, delta_eps, iterations, seed)
    samples = rate_samples(s, distance, Scheme(scheme), eps, (alpha,))
    mean, err = _mean_and_error(samples.reshape(-1))
    return float(mean), float(err)


def alpha_table(s, distance, alpha_grid, delta_eps, iterations, seed):
    """Mean rate and standard error for every alpha, on shared errors."""
    eps = _epsilons(s, distance, delta_eps, iterations, seed)
    means, errs = _mean_and_error(
        rate_samples(s, distance, Scheme.RSMA, eps, tuple(alpha_grid)))
    return means, errs


def _argmax_alpha(alpha_grid, means):
    # np.argmax returns the first maximum, i.e. the smallest alpha on ties
    j = int(np.argmax(means))
    return j, float(alpha_grid[j])


def alpha_search(s, distance, alpha_grid, delta_eps, iterations, seed):
    """Exhaustive search for the alpha maximizing the Monte Carlo mean rate.

    Returns ``(alpha_opt, rate_opt)``. Ties go to the smaller alpha.
    """
    alpha_grid = tuple(alpha_grid)
    if not alpha_grid:
        raise ValueError("alpha grid is empty")
    means, _ = alpha_table(s, distance, alpha_grid, delta_eps, iterations, seed)
    j, alpha = _argmax_alpha(alpha_grid, means)
    return alpha, float(means[j])


def _sweep_distance(cfg, s, distance):
    sd = s.with_user_distance(distance)
    H = channel_matrix(sd)
    rho = float(correlation(H[0], H[1]))
    n = cfg.iterations_at(distance)
    eps = iteration_epsilons(s.user_count, cfg.delta_eps, n, cfg.seed, distance)

    def row(scheme, alpha, mean, err):
        return RatePoint(distance, scheme, float(alpha), float(mean),
                         float(err), rho, n, cfg.seed)

    rows = []
    for scheme in cfg.schemes:
        if scheme in ('SDMA', 'OMA'):
            mean, err = _mean_and_error(rate_samples(s, distance,
                                                     Scheme(scheme), eps))
            rows.append(row(scheme, 1.0, mean, err))
        elif scheme == 'RSMA':
            means, errs = _mean_and_error(rate_samples(
                s, distance, Scheme.RSMA, eps, cfg.fixed_alphas))
            rows.extend(row(scheme, a, m, e)
                        for a, m, e in zip(cfg.fixed_alphas, means, errs))
        else:
            means, errs = _mean_and_error(rate_samples(
                s, distance, Scheme.RSMA, eps, cfg.alpha_grid))
            j, alpha = _argmax_alpha(cfg.alpha_grid, means)
            rows.append(row(scheme, alpha, means[j], errs[j]))
    return rows


def run_sweep(cfg, s, workers=1):
    """Evaluate every requested scheme at every distance of `cfg`.

    Distances are independent tasks; with ``workers > 1`` they are spread
    over a process pool and collected back in grid order.
    """
    if s.user_count != 2:
        raise ValueError("distance sweeps are defined for two users")
    grid = cfg.distance_grid
    if workers is None or workers <= 1:
        chunks = [_sweep_distance(cfg, s, d) for d in grid]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_sweep_distance, [cfg] * len(grid),
                                   [s] * len(grid), grid))
    return SweepResult([r for chunk in chunks for r in chunk])


def crossover_distance(distances, rate_a, rate_b):
    """First distance where curve `a` overtakes or falls below curve `b`.

    Linear interpolation between the bracketing grid points. Returns None
    if the curves never cross on the grid.
    """
    diff = np.asarray(rate_a, float) - np.asarray(rate_b, float)
    distances = np.asarray(distances, float)
    for i in range(len(diff) - 1):
        if diff[i] == 0:
            return float(distances[i])
        if diff[i] * diff[i + 1] < 0:
            t = diff[i] / (diff[i] - diff[i + 1])
            return float(distances[i] + t * (distances[i + 1] - distances[i]))
    return None
