"""Berry-Esseen and Wasserstein-1 distances to the Gumbel law, and their rates."""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np
from scipy import integrate, optimize

from .errors import ConvergenceError, DomainError
from .laws import CdfKind, GumbelLaw, build_model, gap_prediction, rate_grid
from .scaling import Ensemble, Statistic, Variant

__all__ = [
    "RateRecord",
    "RateReport",
    "TailSpec",
    "GapScan",
    "sup_distance",
    "w1_distance",
    "fit_rate_constant",
    "kappa_constants",
    "gap_scan",
    "rate_record",
    "rate_report",
    "target_constants",
]


def _as_cdf(f):
    if hasattr(f, "cdf"):
        return f.cdf
    return f


def sup_distance(model, law, grid, *, xtol: float = 1e-6):
    """sup_t |F_model(t) - F_law(t)| and its location.

    A scan over ``grid`` is followed by golden-section refinement on the two
    cells around the best node.

    Returns
    -------
    (float, float)
        The distance and the argmax in t.
    """
    fa, fb = _as_cdf(model), _as_cdf(law)
    grid = np.asarray(grid, dtype=float)
    if grid.size == 0:
        raise DomainError("grid must be non-empty")
    diff = np.abs(np.asarray(fa(grid), dtype=float) - np.asarray(fb(grid), dtype=float))
    i = int(np.argmax(diff))
    best_t, best = float(grid[i]), float(diff[i])
    if 0 < i < grid.size - 1 and best > 0:
        a, b, c = float(grid[i - 1]), float(grid[i]), float(grid[i + 1])

        def neg(t):
            return -abs(float(fa(t)) - float(fb(t)))

        res = optimize.minimize_scalar(neg, bracket=(a, b, c), method="golden", options={"xtol": xtol / max(abs(b), 1.0)})
        if -res.fun > best and a <= res.x <= c:
            best_t, best = float(res.x), float(-res.fun)
    return best, best_t


@dataclass(frozen=True)
class TailSpec:
    """Guard interval, step and the numerically integrated tail extensions."""

    left: float = -3.0
    right: float = 10.0
    step: float = 0.005
    extend_left: float = 3.0
    extend_right: float = 30.0
    tail_step: float = 0.02
    tolerance: float = 1e-4


def _trapezoid(f, a, b, h):
    m = max(2, int(math.ceil((b - a) / h)) + 1)
    t = np.linspace(a, b, m)
    y = f(t)
    return float(integrate.trapezoid(y, t)), y


def w1_distance(model, law, tail_spec: TailSpec = TailSpec()) -> float:
    """Integral of |F_model - F_law| over the line.

    The guard interval is integrated by the trapezoid rule at ``step``. The
    tails are integrated on extensions of the guard; what lies beyond the
    extensions is estimated from the end values, taking one e-fold of decay
    as the remaining width. If that remainder exceeds the tolerance the
    extensions are doubled once, and a second failure raises.
    """
    fa, fb = _as_cdf(model), _as_cdf(law)

    def gap(t):
        return np.abs(np.asarray(fa(t), dtype=float) - np.asarray(fb(t), dtype=float))

    ts = tail_spec
    core, _ = _trapezoid(gap, ts.left, ts.right, ts.step)
    ext_l, ext_r = ts.extend_left, ts.extend_right
    for attempt in range(2):
        left, yl = _trapezoid(gap, ts.left - ext_l, ts.left, ts.tail_step)
        right, yr = _trapezoid(gap, ts.right, ts.right + ext_r, ts.tail_step)
        remainder = float(yl[0] + yr[-1])
        if remainder <= ts.tolerance:
            return core + left + right
        ext_l, ext_r = 2.0 * ext_l, 2.0 * ext_r
    raise ConvergenceError(f"W1 tail remainder {remainder:.3g} exceeds {ts.tolerance:g} after widening")


def fit_rate_constant(ns, distances):
    """Least squares of distance = c log log n / log n through the origin.

    Returns
    -------
    (float, numpy.ndarray)
        The constant and the residuals d - c x.
    """
    ns = np.asarray(ns, dtype=float)
    d = np.asarray(distances, dtype=float)
    if ns.shape != d.shape or ns.size < 3 or np.unique(ns).size < 3:
        raise DomainError("fit needs at least 3 distinct n values")
    if math.log10(ns.max() / ns.min()) < 2.0 - 1e-12:
        raise DomainError("fit needs n values spanning at least two decades")
    x = np.log(np.log(ns)) / np.log(ns)
    c = float(x @ d / (x @ x))
    return c, d - c * x


def _golden_max(f, lo, hi, step, xtol):
    ts = np.arange(lo, hi + 0.5 * step, step)
    vals = f(ts)
    i = int(np.argmax(vals))
    i = min(max(i, 1), ts.size - 2)
    res = optimize.minimize_scalar(
        lambda t: -float(f(np.array(t))), bracket=(ts[i - 1], ts[i], ts[i + 1]), method="golden", options={"xtol": xtol}
    )
    return float(-res.fun), float(res.x)


def _kappa1_fn(t):
    return np.exp(-np.exp(-t) - t) * (4.0 * t * t + 20.0 * t + 35.0)


def _kappa2_fn(t):
    return np.exp(-np.exp(-t) - t) * (t * t + 4.0 * t)


def kappa_constants():
    """sup_t e^{-e^{-t}-t}(4t^2 + 20t + 35) and sup_t e^{-e^{-t}-t}(t^2 + 4t) with their argmaxes.

    Returns
    -------
    (kappa1, t1_star, kappa2, t2_star)
    """
    with np.errstate(over="ignore"):
        k1, t1 = _golden_max(_kappa1_fn, -5.0, 20.0, 0.01, 1e-10)
        k2, t2 = _golden_max(_kappa2_fn, -5.0, 20.0, 0.01, 1e-10)
    return k1, t1, k2, t2


@dataclass(frozen=True)
class GapScan:
    t: np.ndarray
    measured: np.ndarray
    predicted: np.ndarray
    lo: float
    hi: float

    @property
    def in_interval(self) -> np.ndarray:
        return (self.t >= self.lo - 1e-12) & (self.t <= self.hi + 1e-12)

    @property
    def max_ratio(self) -> float:
        m = self.in_interval
        return float(np.max(self.measured[m] / self.predicted[m]))

    @property
    def min_ratio(self) -> float:
        m = self.in_interval
        return float(np.min(self.measured[m] / self.predicted[m]))


def default_kind(statistic: Statistic, ensemble: Ensemble) -> CdfKind:
    """Kostlan product where it is exact, exp(-Tr) otherwise."""
    if statistic is Statistic.RADIUS and ensemble is Ensemble.COMPLEX:
        return CdfKind.KOSTLAN_EXACT
    return CdfKind.EXP_NEG_TRACE


def gap_scan(n, statistic, ensemble=Ensemble.COMPLEX, variant=Variant.STANDARD, kind=None, nodes=None) -> GapScan:
    """Measured |F_model - Lambda_beta| against the leading-order prediction on the rate grid."""
    statistic, ensemble = Statistic(statistic), Ensemble(ensemble)
    kind = CdfKind(kind) if kind is not None else default_kind(statistic, ensemble)
    model = build_model(kind, n, statistic, ensemble, variant)
    grid = rate_grid(n)
    t = grid.nodes if nodes is None else np.asarray(nodes, dtype=float)
    measured = np.abs(model.cdf(t) - GumbelLaw(ensemble.beta).cdf(t))
    predicted = np.asarray(gap_prediction(n, t, statistic, ensemble, model.scheme), dtype=float)
    return GapScan(t, measured, predicted, grid.lo, grid.hi)


@dataclass(frozen=True)
class RateRecord:
    n: float
    sup_distance: float
    argmax_t: float
    w1_distance: float
    prediction_sup: float
    prediction_w1: float


@dataclass(frozen=True)
class RateReport:
    """Per-n distances and the fitted constants of c log log n / log n."""

    statistic: Statistic
    ensemble: Ensemble
    variant: Variant
    kind: CdfKind
    records: tuple
    c_sup: float
    c_w1: float
    residuals_sup: tuple
    residuals_w1: tuple
    target_sup: float | None
    target_w1: float | None
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "statistic": self.statistic.value,
            "ensemble": self.ensemble.value,
            "scheme": self.variant.value,
            "model": self.kind.value,
            "records": [asdict(r) for r in self.records],
            "fit": {
                "basis": "loglog(n)/log(n)",
                "c_sup": self.c_sup,
                "c_w1": self.c_w1,
                "residuals_sup": list(self.residuals_sup),
                "residuals_w1": list(self.residuals_w1),
                "target_sup": self.target_sup,
                "target_w1": self.target_w1,
            },
        }


def target_constants(statistic: Statistic, variant: Variant = Variant.STANDARD):
    """Leading constants of sup and W1 in units of log log n / log n (standard scaling only)."""
    if Variant(variant) is not Variant.STANDARD:
        return None, None
    if Statistic(statistic) is Statistic.RIGHTMOST:
        return 25.0 / (4.0 * math.e), 25.0 / 4.0
    return 2.0 / math.e, 2.0


def rate_record(n, statistic, ensemble=Ensemble.COMPLEX, variant=Variant.STANDARD, kind=None, tail_spec=TailSpec()) -> RateRecord:
    """Sup and W1 distances of one model to its Gumbel limit."""
    statistic, ensemble = Statistic(statistic), Ensemble(ensemble)
    kind = CdfKind(kind) if kind is not None else default_kind(statistic, ensemble)
    if kind in (CdfKind.GUMBEL_LIMIT, CdfKind.EMPIRICAL_MC):
        raise DomainError(f"rate pipeline needs an analytic model, got {kind.value}")
    model = build_model(kind, n, statistic, ensemble, variant)
    law = GumbelLaw(ensemble.beta)
    grid = rate_grid(n)
    sup, arg = sup_distance(model, law, grid.scan_nodes())
    w1 = w1_distance(model, law, tail_spec)

    def pred(t):
        return np.asarray(gap_prediction(n, t, statistic, ensemble, model.scheme), dtype=float)

    ts = np.linspace(-6.0, 40.0, 46001)
    p = pred(ts)
    return RateRecord(float(n), sup, arg, w1, float(p.max()), float(integrate.trapezoid(p, ts)))


def _record_task(args):
    return rate_record(*args)


def rate_report(n_list, statistic, ensemble=Ensemble.COMPLEX, variant=Variant.STANDARD, kind=None, workers: int = 1) -> RateReport:
    """Rate records over ``n_list`` (computed in parallel, merged in input order) and the fits."""
    statistic, ensemble, variant = Statistic(statistic), Ensemble(ensemble), Variant(variant)
    kind = CdfKind(kind) if kind is not None else default_kind(statistic, ensemble)
    n_list = [float(n) for n in n_list]
    tasks = [(n, statistic, ensemble, variant, kind) for n in n_list]
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_record_task, tasks))
    else:
        records = [_record_task(a) for a in tasks]
    ns = [r.n for r in records]
    c_sup, res_sup = fit_rate_constant(ns, [r.sup_distance for r in records])
    c_w1, res_w1 = fit_rate_constant(ns, [r.w1_distance for r in records])
    t_sup, t_w1 = target_constants(statistic, variant)
    return RateReport(
        statistic, ensemble, variant, kind, tuple(records), c_sup, c_w1, tuple(res_sup), tuple(res_w1), t_sup, t_w1
    )
