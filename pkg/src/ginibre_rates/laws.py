"""Limit laws, exact and model CDFs of the extreme statistics, and gap predictions."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np
from scipy import special as _sp

from .errors import DomainError, SchemeError
from .operators import (
    QuadSpec,
    _rightmost_box,
    _real_radius_polar,
    _radius_trace_from_delta,
    annulus_threshold,
)
from .scaling import (
    Ensemble,
    ScalingScheme,
    Statistic,
    Variant,
    optimized_scaling,
    rescale_statistic,
    scaling,
    standard_scaling,
    unscale_statistic,
)
from .specfun import log_regularized_gamma

__all__ = [
    "GumbelLaw",
    "CdfKind",
    "CdfModel",
    "RateGrid",
    "cdf_model",
    "build_model",
    "gumbel_cdf",
    "gumbel_quantile",
    "gumbel_sample",
    "radius_cdf_exact",
    "log_radius_cdf_exact",
    "gap_prediction",
    "rate_grid",
    "standard_scaling",
    "optimized_scaling",
    "rescale_statistic",
    "unscale_statistic",
]

GUARD = (-3.0, 10.0)
RATE_NODES = 400


@dataclass(frozen=True)
class GumbelLaw:
    """Lambda_beta with distribution function exp(-(beta/2) e^{-x})."""

    beta: int = 2

    def __post_init__(self):
        if self.beta not in (1, 2):
            raise DomainError(f"beta must be 1 or 2, got {self.beta!r}")

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        with np.errstate(over="ignore"):
            out = np.exp(-0.5 * self.beta * np.exp(-x))
        return float(out) if out.ndim == 0 else out

    def quantile(self, p):
        p = np.asarray(p, dtype=float)
        if np.any((p <= 0) | (p >= 1)):
            raise DomainError("quantile requires 0 < p < 1")
        out = -np.log(-(2.0 / self.beta) * np.log(p))
        return float(out) if out.ndim == 0 else out

    def sample(self, rng: np.random.Generator, size=None):
        u = rng.random(size)
        # inverse transform; u = 0 has probability 2^-53 and is nudged inward
        u = np.where(u == 0.0, np.finfo(float).tiny, u)
        return self.quantile(u)


def gumbel_cdf(law: GumbelLaw, x):
    return law.cdf(x)


def gumbel_quantile(law: GumbelLaw, p):
    return law.quantile(p)


def gumbel_sample(law: GumbelLaw, rng: np.random.Generator, size=None):
    return law.sample(rng, size)


def _kostlan_chunk(n: int, x: np.ndarray) -> np.ndarray:
    """sum_{k=1}^n log P(k, x) for a batch of x, over the window [lo(x), n].

    P(k, x) = P(n, x) + sum_{k<=j<n} pois(j) and Q(k, x) = Q(lo, x) + sum_{lo<=j<k} pois(j),
    so both tails of every factor come from one vector of Poisson weights.
    """
    lo = np.floor(x - 12.0 * np.sqrt(x + 1.0))
    lo = np.clip(lo, 1, n).astype(np.int64)
    width = int(n - lo.min() + 1)
    j = lo[:, None] + np.arange(width)[None, :]
    valid = j <= n
    jf = np.minimum(j, n).astype(float)
    logx = np.log(x)[:, None]
    pois = np.where(j < n, np.exp(jf * logx - x[:, None] - _sp.gammaln(jf + 1.0)), 0.0)
    log_p_n, _ = log_regularized_gamma(np.full(x.shape, float(n)), x)
    _, log_q_lo = log_regularized_gamma(lo.astype(float), x)
    right = np.cumsum(pois[:, ::-1], axis=1)[:, ::-1]
    left = np.cumsum(pois, axis=1) - pois
    p_k = np.exp(log_p_n)[:, None] + right
    q_k = np.exp(log_q_lo)[:, None] + left
    with np.errstate(divide="ignore", invalid="ignore"):
        logs = np.where(q_k < 0.5, np.log1p(-np.minimum(q_k, 0.5)), np.log(p_k))
    return np.sum(np.where(valid, logs, 0.0), axis=1)


def log_radius_cdf_exact(n: int, r) -> np.ndarray | float:
    """log P(max |sigma_i| <= r) = sum_k log P(k, n r^2) for the complex ensemble."""
    n = int(n)
    if n < 1:
        raise DomainError("n must be >= 1")
    r_arr = np.asarray(r, dtype=float)
    if np.any(r_arr < 0):
        raise DomainError("radius must be non-negative")
    flat = r_arr.ravel()
    out = np.full(flat.shape, -np.inf)
    x = n * flat * flat
    pos = x > 0
    if np.any(pos):
        # the k = n factor alone already underflows the product
        log_p_n, _ = log_regularized_gamma(np.full(x[pos].shape, float(n)), x[pos])
        live = np.zeros(flat.shape, dtype=bool)
        live[np.nonzero(pos)[0][log_p_n > -800.0]] = True
        idx = np.nonzero(live)[0]
        order = idx[np.argsort(x[idx])]
        i = 0
        while i < order.size:
            xi = x[order[i]]
            width = n - max(1, math.floor(xi - 12.0 * math.sqrt(xi + 1.0))) + 1
            m = max(1, (1 << 21) // max(width, 1))
            block = order[i : i + m]
            out[block] = _kostlan_chunk(n, x[block])
            i += m
    out = out.reshape(r_arr.shape)
    return float(out) if out.ndim == 0 else out


def radius_cdf_exact(n: int, r):
    """P(max |sigma_i| <= r) as the product of P(k, n r^2) over k = 1..n.

    Factors with k below nr^2 - 12 sqrt(nr^2 + 1) equal 1 to double precision
    and are skipped, so a CDF point costs O(sqrt(n)).
    """
    return np.exp(log_radius_cdf_exact(n, r))


class CdfKind(enum.Enum):
    GUMBEL_LIMIT = "gumbel"
    EXP_NEG_TRACE = "exp-trace"
    KOSTLAN_EXACT = "kostlan"
    EMPIRICAL_MC = "mc"


@dataclass(frozen=True)
class CdfModel:
    """A CDF of the rescaled statistic t, evaluated through ``cdf``.

    Attributes
    ----------
    kind : CdfKind
    n : float
    statistic : Statistic
    ensemble : Ensemble
    scheme : ScalingScheme
    quad : QuadSpec
        Used by quadrature traces only.
    ecdf : object, optional
        Empirical CDF of raw values for ``EMPIRICAL_MC``.
    """

    kind: CdfKind
    n: float
    statistic: Statistic
    ensemble: Ensemble
    scheme: ScalingScheme
    quad: QuadSpec = field(default_factory=QuadSpec)
    ecdf: object = None

    def __post_init__(self):
        if self.kind is CdfKind.KOSTLAN_EXACT and (
            self.statistic is not Statistic.RADIUS or self.ensemble is not Ensemble.COMPLEX
        ):
            raise DomainError("the Kostlan product is exact only for the complex spectral radius")
        if self.kind is CdfKind.EMPIRICAL_MC and self.ecdf is None:
            raise DomainError("an empirical model needs samples")
        if self.scheme.statistic is not self.statistic:
            raise SchemeError("scheme statistic does not match the model")

    @property
    def beta(self) -> int:
        return self.ensemble.beta

    def trace(self, t: float) -> float:
        """Production-route trace at t (exact for the complex radius, quadrature otherwise)."""
        s = self.scheme
        real = self.ensemble is Ensemble.REAL
        if self.statistic is Statistic.RADIUS:
            try:
                thr = annulus_threshold(s, t)
            except DomainError:
                return math.inf
            if real:
                return _real_radius_polar(s.n, t, self.quad, s, True)
            return _radius_trace_from_delta(s.n, thr.delta)[0]
        return _rightmost_box(s.n, t, self.quad, s, real, real)

    def cdf(self, t):
        t_arr = np.asarray(t, dtype=float)
        flat = t_arr.ravel()
        if self.kind is CdfKind.GUMBEL_LIMIT:
            out = np.asarray(GumbelLaw(self.beta).cdf(flat), dtype=float)
        elif self.kind is CdfKind.EXP_NEG_TRACE:
            half = 0.5 if self.ensemble is Ensemble.REAL else 1.0
            out = np.array([math.exp(-half * self.trace(float(v))) for v in flat])
        elif self.kind is CdfKind.KOSTLAN_EXACT:
            raw = np.maximum(unscale_statistic(flat, self.scheme), 0.0)
            out = np.asarray(radius_cdf_exact(int(self.n), raw), dtype=float)
        else:
            out = np.asarray(self.ecdf(unscale_statistic(flat, self.scheme)), dtype=float)
        out = np.clip(out, 0.0, 1.0).reshape(t_arr.shape)
        return float(out) if out.ndim == 0 else out

    __call__ = cdf


def cdf_model(
    kind,
    n,
    t,
    ensemble=Ensemble.COMPLEX,
    statistic=Statistic.RADIUS,
    variant=Variant.STANDARD,
    *,
    scheme: ScalingScheme | None = None,
    quad: QuadSpec | None = None,
):
    """Value of the chosen CDF model at t (scalar or array)."""
    model = build_model(kind, n, statistic, ensemble, variant, scheme=scheme, quad=quad)
    return model.cdf(t)


def build_model(kind, n, statistic, ensemble=Ensemble.COMPLEX, variant=Variant.STANDARD, *, scheme=None, quad=None, ecdf=None):
    """Construct a :class:`CdfModel`, resolving the scaling scheme when not given."""
    statistic = Statistic(statistic)
    ensemble = Ensemble(ensemble)
    scheme = scheme if scheme is not None else scaling(n, statistic, Variant(variant))
    return CdfModel(CdfKind(kind), float(n), statistic, ensemble, scheme, quad or QuadSpec(), ecdf)


def gap_prediction(n, t, statistic, ensemble=Ensemble.COMPLEX, scheme: ScalingScheme | None = None):
    """Leading-order |F_n(t) - Lambda_beta(t)| of the trace models.

    Standard scaling: (beta/2) e^{-(beta/2) e^{-t} - t} L with L = 25 log log n / (4 log n)
    for the rightmost statistic and 2 log log n / log n for the radius. Optimized
    scaling replaces L by |t^2/2 + 5t/2 + 35/8| / g or |t^2 + 4t| / g'.
    """
    statistic = Statistic(statistic)
    ensemble = Ensemble(ensemble)
    n = float(n)
    if not n >= 16:
        raise DomainError(f"gap prediction needs n >= 16, got n={n:g}")
    t = np.asarray(t, dtype=float)
    half_beta = 0.5 * ensemble.beta
    with np.errstate(over="ignore"):
        shape = half_beta * np.exp(-half_beta * np.exp(-t) - t)
    if scheme is None or scheme.variant is Variant.STANDARD:
        llog, log_n = math.log(math.log(n)), math.log(n)
        lead = 25.0 * llog / (4.0 * log_n) if statistic is Statistic.RIGHTMOST else 2.0 * llog / log_n
    else:
        if statistic is Statistic.RIGHTMOST:
            lead = np.abs(0.5 * t * t + 2.5 * t + 35.0 / 8.0) / scheme.gamma
        else:
            lead = np.abs(t * t + 4.0 * t) / scheme.gamma
    out = shape * lead
    return float(out) if np.ndim(out) == 0 else out


@dataclass(frozen=True)
class RateGrid:
    """[-l1, l2] with its uniform nodes, and the guard interval for tails."""

    lo: float
    hi: float
    nodes: np.ndarray
    guard: tuple = GUARD

    def scan_nodes(self, step: float = 0.025) -> np.ndarray:
        """Union of the rate nodes and a uniform grid over the guard interval."""
        g = np.arange(self.guard[0], self.guard[1] + 0.5 * step, step)
        return np.unique(np.concatenate([self.nodes, g]))


def rate_grid(n) -> RateGrid:
    """l1 = log log n / 4, l2 = (log n)^{1/4}, 400 nodes on [-l1, l2]."""
    n = float(n)
    if not n >= 16:
        raise DomainError(f"rate grid needs n >= 16, got n={n:g}")
    log_n = math.log(n)
    lo = -0.25 * math.log(log_n)
    hi = log_n**0.25
    return RateGrid(lo, hi, np.linspace(lo, hi, RATE_NODES))
