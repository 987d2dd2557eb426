"""Monte Carlo samples of the extreme eigenvalues.

Two routes: the Kostlan representation of the complex spectral radius, where
max|sigma|^2 has the law of max_k G_k / n with independent G_k ~ Gamma(k),
and dense eigenvalue computations for any ensemble.

Samples are produced in fixed-size tasks. Task i draws from its own stream
seeded by (master_seed, i), and results are concatenated in task order, so the
output does not depend on how many workers ran the tasks.
"""

from __future__ import annotations

import enum
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy import stats

from .errors import DomainError, GinibreError, SizeError
from .scaling import Ensemble, Statistic
from .specfun import log_regularized_gamma

__all__ = [
    "SeedSpec",
    "EntryLaw",
    "EmpiricalCdf",
    "sample_radius_kostlan",
    "sample_extreme_eig",
    "empirical_sup_distance",
    "ks_distance",
    "ks_two_sample",
    "ks_critical_value",
    "dkw_bound",
    "numpy_eigvals",
    "write_samples",
    "EIG_MAX_N",
]

EIG_MAX_N = 4096
KOSTLAN_TASK = 2048
EIG_TASK = 16
_FALLBACK_PROB = 1e-10


@dataclass(frozen=True)
class SeedSpec:
    """Master seed and stream index of one task.

    The generator is PCG64 over ``SeedSequence(master_seed, spawn_key=(stream_id,))``,
    which hashes the pair into an independent stream.
    """

    master_seed: int
    stream_id: int = 0

    def for_task(self, task_index: int) -> "SeedSpec":
        return SeedSpec(self.master_seed, int(task_index))

    def generator(self) -> np.random.Generator:
        seq = np.random.SeedSequence(int(self.master_seed) & (2**64 - 1), spawn_key=(int(self.stream_id),))
        return np.random.Generator(np.random.PCG64(seq))


class EntryLaw(enum.Enum):
    """Entry distributions with mean 0 and unit second absolute moment."""

    COMPLEX_GAUSSIAN = "complex-gaussian"
    REAL_GAUSSIAN = "real-gaussian"
    COMPLEX_RADEMACHER_PHASE = "complex-rademacher"
    COMPLEX_UNIFORM_PHASE = "complex-uniform-phase"

    @property
    def is_complex(self) -> bool:
        return self is not EntryLaw.REAL_GAUSSIAN

    def sample(self, rng: np.random.Generator, size):
        if self is EntryLaw.REAL_GAUSSIAN:
            return rng.standard_normal(size)
        if self is EntryLaw.COMPLEX_GAUSSIAN:
            return (rng.standard_normal(size) + 1j * rng.standard_normal(size)) / math.sqrt(2.0)
        if self is EntryLaw.COMPLEX_RADEMACHER_PHASE:
            re = rng.integers(0, 2, size) * 2 - 1
            im = rng.integers(0, 2, size) * 2 - 1
            return (re + 1j * im) / math.sqrt(2.0)
        return np.exp(2j * math.pi * rng.random(size))


class EmpiricalCdf:
    """Right-continuous step function of a sorted sample."""

    __slots__ = ("values",)

    def __init__(self, values):
        v = np.sort(np.asarray(values, dtype=float).ravel())
        if v.size == 0:
            raise DomainError("empirical CDF needs at least one sample")
        self.values = v

    @property
    def count(self) -> int:
        return int(self.values.size)

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        out = np.searchsorted(self.values, x, side="right") / self.count
        return float(out) if out.ndim == 0 else out

    cdf = __call__

    def __eq__(self, other):
        return isinstance(other, EmpiricalCdf) and np.array_equal(self.values, other.values)

    def __repr__(self):
        return f"EmpiricalCdf(count={self.count})"


def _kostlan_threshold(k_hi: int) -> float:
    """T with P(max_{k <= k_hi} G_k > T) <= 1e-10, using Q(k, T) <= Q(k_hi, T)."""
    target = math.log(_FALLBACK_PROB / k_hi)
    lo, hi = float(k_hi), float(k_hi) + 10.0 * math.sqrt(k_hi) + 50.0
    while log_regularized_gamma(k_hi, hi)[1] > target:
        hi *= 2.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if log_regularized_gamma(k_hi, mid)[1] > target:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-9 * hi:
            break
    return hi


def _kostlan_task(args):
    n, count, seed = args
    rng = seed.generator()
    k0 = max(1, n - int(math.ceil(14.0 * math.sqrt(n))))
    window = np.arange(k0, n + 1, dtype=float)
    out = np.empty(count)
    threshold = _kostlan_threshold(k0 - 1) if k0 > 1 else 0.0
    rows = max(1, (1 << 20) // window.size)
    for start in range(0, count, rows):
        m = min(rows, count - start)
        g = rng.standard_gamma(window, size=(m, window.size))
        best = g.max(axis=1)
        for i in np.nonzero(best < threshold)[0]:
            low = rng.standard_gamma(np.arange(1, k0, dtype=float))
            best[i] = max(best[i], low.max())
        out[start : start + m] = best
    return np.sqrt(out / n)


def _run_tasks(fn, tasks, workers: int):
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, tasks))
    return [fn(t) for t in tasks]


def _split(count: int, size: int):
    return [min(size, count - s) for s in range(0, count, size)]


def sample_radius_kostlan(n: int, count: int, seed: SeedSpec, workers: int = 1) -> EmpiricalCdf:
    """Samples of max|sigma_i| for the complex ensemble from independent Gamma draws.

    Only k in [n - 14 sqrt(n), n] are drawn. The skipped maximum exceeds the
    threshold T with probability <= 1e-10; when the drawn maximum is below T
    the skipped k are drawn as well, so the only approximation is that event.
    """
    n, count = int(n), int(count)
    if n < 1 or count < 1:
        raise DomainError("n and count must be positive")
    sizes = _split(count, KOSTLAN_TASK)
    tasks = [(n, m, seed.for_task(i)) for i, m in enumerate(sizes)]
    parts = _run_tasks(_kostlan_task, tasks, workers)
    return EmpiricalCdf(np.concatenate(parts))


def numpy_eigvals(a: np.ndarray) -> np.ndarray:
    """Reference eigenvalue backend."""
    return np.linalg.eigvals(a)


def _eig_task(args):
    n, count, ensemble, statistic, law, seed, backend = args
    rng = seed.generator()
    out = np.empty(count)
    scale = 1.0 / math.sqrt(n)
    for i in range(count):
        a = law.sample(rng, (n, n)) * scale
        try:
            ev = backend(a)
        except Exception as exc:  # surfaced with what is needed to reproduce
            raise GinibreError(
                f"eigenvalue backend failed at master_seed={seed.master_seed} task={seed.stream_id} sample={i}: {exc}"
            ) from exc
        out[i] = np.max(ev.real) if statistic is Statistic.RIGHTMOST else np.max(np.abs(ev))
    return out


def _default_law(ensemble: Ensemble, law: EntryLaw | None) -> EntryLaw:
    if ensemble is Ensemble.REAL:
        if law not in (None, EntryLaw.REAL_GAUSSIAN):
            raise DomainError("the real ensemble uses real Gaussian entries")
        return EntryLaw.REAL_GAUSSIAN
    if ensemble is Ensemble.COMPLEX:
        if law not in (None, EntryLaw.COMPLEX_GAUSSIAN):
            raise DomainError("the complex ensemble uses complex Gaussian entries")
        return EntryLaw.COMPLEX_GAUSSIAN
    law = law or EntryLaw.COMPLEX_GAUSSIAN
    if not law.is_complex:
        raise DomainError("i.i.d. ensembles take a complex entry law")
    return law


def sample_extreme_eig(
    n: int,
    count: int,
    ensemble: Ensemble,
    statistic: Statistic,
    entry_law: EntryLaw | None = None,
    seed: SeedSpec = SeedSpec(0),
    *,
    backend=numpy_eigvals,
    workers: int = 1,
) -> EmpiricalCdf:
    """Samples of max Re sigma or max |sigma| from dense matrices with entries xi / sqrt(n).

    ``backend`` maps a square matrix to all its eigenvalues and must be
    picklable when ``workers > 1``. For the real ensemble the radius includes
    real eigenvalues.
    """
    n, count = int(n), int(count)
    if n > EIG_MAX_N:
        raise SizeError(f"dense sampler supports n <= {EIG_MAX_N}, got n={n}")
    if n < 1 or count < 1:
        raise DomainError("n and count must be positive")
    ensemble, statistic = Ensemble(ensemble), Statistic(statistic)
    law = _default_law(ensemble, entry_law)
    sizes = _split(count, EIG_TASK)
    tasks = [(n, m, ensemble, statistic, law, seed.for_task(i), backend) for i, m in enumerate(sizes)]
    parts = _run_tasks(_eig_task, tasks, workers)
    return EmpiricalCdf(np.concatenate(parts))


def empirical_sup_distance(ecdf: EmpiricalCdf, model, grid) -> float:
    """max over grid of |F_hat - F_model|; ``model`` is a callable or has ``cdf``."""
    f = model.cdf if hasattr(model, "cdf") else model
    grid = np.asarray(grid, dtype=float)
    return float(np.max(np.abs(ecdf(grid) - np.asarray(f(grid), dtype=float))))


def ks_distance(ecdf: EmpiricalCdf, cdf) -> float:
    """One-sample Kolmogorov-Smirnov statistic against a continuous CDF."""
    f = np.asarray(cdf(ecdf.values), dtype=float)
    m = ecdf.count
    upper = np.arange(1, m + 1) / m - f
    lower = f - np.arange(0, m) / m
    return float(max(upper.max(), lower.max()))


def ks_two_sample(a: EmpiricalCdf, b: EmpiricalCdf) -> float:
    return float(stats.ks_2samp(a.values, b.values).statistic)


def dkw_bound(count: int, alpha: float) -> float:
    """Dvoretzky-Kiefer-Wolfowitz radius sqrt(log(2/alpha) / (2 count))."""
    return math.sqrt(math.log(2.0 / alpha) / (2.0 * count))


def ks_critical_value(m: int, k: int, alpha: float) -> float:
    """Asymptotic two-sample KS critical value c(alpha) sqrt((m + k) / (m k))."""
    return math.sqrt(-0.5 * math.log(alpha / 2.0)) * math.sqrt((m + k) / (m * k))


def write_samples(path, ecdf: EmpiricalCdf, route: str, n: int, seed: int) -> None:
    """One value per line at 17 significant digits, after a provenance header."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"# {route} n={n} seed={seed} count={ecdf.count}\n")
        for v in ecdf.values:
            fh.write(f"{v:.17g}\n")
