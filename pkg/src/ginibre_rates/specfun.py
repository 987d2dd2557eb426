"""Scalar special functions in log space, usable up to shape parameters ~1e12.

The workhorse is the regularized incomplete gamma pair P(s, x), Q(s, x).
Three evaluation paths are dispatched on (s, x):

* a compensated power series for P when x < s + 1,
* a modified Lentz continued fraction for Q when x >= s + 1,
* Temme's uniform expansion in erfc and c_k(eta) when s is large and x is
  within |eta| <= 1 of s, which is where the other two become slow.

Every path returns the smaller of P and Q through a common scaled form

    small = exp(-s mu^2) / sqrt(2 pi s) * G,      mu^2 = lambda - 1 - log(lambda),

with lambda = x / s, so the complement keeps full relative accuracy and the
exponential prefactor never over- or underflows before the logarithm is taken.
Callers that know lambda - 1 more precisely than x / s - 1 (points within
1e-10 of the unit circle at huge n) can pass it as ``delta``.
"""

from __future__ import annotations

import enum
import math

import numpy as np
from scipy import special as _sp

from ._temme_coeffs import TEMME_D
from .errors import ConvergenceError, DomainError

__all__ = [
    "GammaRatioMode",
    "log_gamma",
    "log_gamma_correction",
    "gamma_ratio_mode",
    "regularized_gamma",
    "log_regularized_gamma",
    "reg_gamma_upper",
    "reg_gamma_lower",
    "erfc",
    "log_erfc",
    "mu",
    "mu_sq_from_excess",
    "gamma_ratio_asymptotic",
]

LOG_2PI = math.log(2.0 * math.pi)
# Temme's expansion is used from this shape upward (7 terms, |eta| <= 1).
UNIFORM_MIN_SHAPE = 100.0
_MAX_ITER = 20000
_EPS = 1e-17

_TEMME = np.array(TEMME_D)[:, ::-1].copy()  # highest power first, for Horner


class GammaRatioMode(enum.Enum):
    SERIES_LOG_SPACE = "series"
    CONTINUED_FRACTION = "continued_fraction"
    UNIFORM_ERFC_ASYMPTOTIC = "uniform_erfc"


def _scalar_or_array(arr, like_scalar):
    if like_scalar:
        return float(np.asarray(arr).reshape(()))
    return arr


def log_gamma(x):
    """ln Gamma(x) for x > 0."""
    arr = np.asarray(x, dtype=float)
    if np.any(~(arr > 0)):
        raise DomainError(f"log_gamma requires x > 0, got {x!r}")
    return _scalar_or_array(_sp.gammaln(arr), arr.ndim == 0)


_STIRLING = (
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
)


def log_gamma_correction(s):
    """ln Gamma(s) - [(s - 1/2) ln s - s + ln(2 pi)/2].

    Stirling's series for s >= 10 so that Gamma-function ratios at s ~ 1e9 do
    not lose nine digits to the cancellation of two ~1e10 logarithms.
    """
    s = np.asarray(s, dtype=float)
    out = np.empty_like(s)
    big = s >= 10.0
    if np.any(big):
        sb = s[big]
        inv2 = 1.0 / (sb * sb)
        acc = np.zeros_like(sb)
        for c in reversed(_STIRLING):
            acc = acc * inv2 + c
        out[big] = acc / sb
    small = ~big
    if np.any(small):
        ss = s[small]
        out[small] = _sp.gammaln(ss) - ((ss - 0.5) * np.log(ss) - ss + 0.5 * LOG_2PI)
    return out


def mu_sq_from_excess(d):
    """lambda - 1 - log(lambda) written in terms of d = lambda - 1 (d > -1)."""
    d = np.asarray(d, dtype=float)
    out = np.empty_like(d)
    near = np.abs(d) < 0.05
    if np.any(near):
        dn = d[near]
        # sum_{m>=2} (-1)^m d^m / m, Horner in d
        acc = np.zeros_like(dn)
        for m in range(24, 1, -1):
            acc = acc * dn + (-1.0) ** m / m
        out[near] = acc * dn * dn
    far = ~near
    if np.any(far):
        df = d[far]
        with np.errstate(divide="ignore"):
            out[far] = df - np.log1p(df)
    return out


def mu(a):
    """sqrt(a - log a - 1), cancellation-free near a = 1."""
    arr = np.asarray(a, dtype=float)
    if np.any(~(arr > 0)):
        raise DomainError(f"mu requires a > 0, got {a!r}")
    return _scalar_or_array(np.sqrt(mu_sq_from_excess(arr - 1.0)), arr.ndim == 0)


def erfc(x):
    """Complementary error function."""
    arr = np.asarray(x, dtype=float)
    return _scalar_or_array(_sp.erfc(arr), arr.ndim == 0)


def log_erfc(x):
    """log erfc(x), finite for arbitrarily large positive x."""
    arr = np.asarray(x, dtype=float)
    out = np.empty_like(arr)
    pos = arr > 0
    out[pos] = np.log(_sp.erfcx(arr[pos])) - arr[pos] ** 2
    out[~pos] = np.log(_sp.erfc(arr[~pos]))
    return _scalar_or_array(out, arr.ndim == 0)


def _prepare(s, x, delta):
    s = np.asarray(s, dtype=float)
    if delta is None:
        if x is None:
            raise DomainError("either x or delta must be given")
        x = np.asarray(x, dtype=float)
        s, x = np.broadcast_arrays(s, x)
        s = s.astype(float)
        x = x.astype(float)
        if np.any(~(s > 0)) or np.any(~(x >= 0)):
            raise DomainError("incomplete gamma requires s > 0 and x >= 0")
        with np.errstate(divide="ignore", invalid="ignore"):
            delta = x / s - 1.0
    else:
        delta = np.asarray(delta, dtype=float)
        s, delta = np.broadcast_arrays(s, delta)
        s = s.astype(float)
        delta = delta.astype(float)
        if np.any(~(s > 0)) or np.any(~(delta >= -1.0)):
            raise DomainError("incomplete gamma requires s > 0 and delta >= -1")
        x = s * (1.0 + delta)
    return s, x, delta


def _modes(s, x, delta):
    mu2 = mu_sq_from_excess(np.maximum(delta, -1.0))
    uniform = (s >= UNIFORM_MIN_SHAPE) & (mu2 <= 0.5)
    series = ~uniform & (x < s + 1.0)
    cf = ~uniform & ~series
    return uniform, series, cf, mu2


def gamma_ratio_mode(s: float, x: float) -> GammaRatioMode:
    """Which evaluation path ``regularized_gamma`` takes for (s, x)."""
    ss, xx, dd = _prepare(s, x, None)
    uniform, series, _, _ = _modes(ss, xx, dd)
    if bool(uniform.reshape(-1)[0]):
        return GammaRatioMode.UNIFORM_ERFC_ASYMPTOTIC
    if bool(series.reshape(-1)[0]):
        return GammaRatioMode.SERIES_LOG_SPACE
    return GammaRatioMode.CONTINUED_FRACTION


def _series_log_g(s, x):
    """log of G_P from the power series, Neumaier-compensated."""
    total = np.ones_like(s)
    comp = np.zeros_like(s)
    term = np.ones_like(s)
    active = np.ones(s.shape, dtype=bool)
    k = 0
    while np.any(active):
        k += 1
        if k > _MAX_ITER:
            raise ConvergenceError("incomplete gamma series did not converge")
        idx = np.nonzero(active)[0]
        term[idx] *= x[idx] / (s[idx] + k)
        t = total[idx] + term[idx]
        comp[idx] += np.where(
            np.abs(total[idx]) >= np.abs(term[idx]),
            (total[idx] - t) + term[idx],
            (term[idx] - t) + total[idx],
        )
        total[idx] = t
        active[idx] = term[idx] > _EPS * total[idx]
    return np.log(total + comp) - log_gamma_correction(s)


def _cf_log_g(s, x):
    """log of G_Q from the Lentz continued fraction (x >= s + 1)."""
    tiny = 1e-300
    b = x + 1.0 - s
    c = np.full_like(s, 1.0 / tiny)
    d = 1.0 / b
    h = d.copy()
    active = np.ones(s.shape, dtype=bool)
    i = 0
    while np.any(active):
        i += 1
        if i > _MAX_ITER:
            raise ConvergenceError("incomplete gamma continued fraction did not converge")
        idx = np.nonzero(active)[0]
        an = -i * (i - s[idx])
        b[idx] += 2.0
        dd = an * d[idx] + b[idx]
        dd = np.where(np.abs(dd) < tiny, tiny, dd)
        cc = b[idx] + an / c[idx]
        cc = np.where(np.abs(cc) < tiny, tiny, cc)
        dd = 1.0 / dd
        step = dd * cc
        d[idx] = dd
        c[idx] = cc
        h[idx] *= step
        active[idx] = np.abs(step - 1.0) > 1e-16
    return np.log(s) + np.log(h) - log_gamma_correction(s)


def _uniform_log_g(s, delta, mu2):
    """log of G for the smaller tail from Temme's expansion (|eta| <= 1)."""
    m = np.sqrt(mu2)
    eta = np.where(delta < 0, -np.sqrt(2.0) * m, np.sqrt(2.0) * m)
    inv_s = 1.0 / s
    acc = np.zeros_like(s)
    for k in range(_TEMME.shape[0] - 1, -1, -1):
        ck = np.zeros_like(s)
        for coef in _TEMME[k]:
            ck = ck * eta + coef
        acc = acc * inv_s + ck
    lead = np.sqrt(0.5 * np.pi * s) * _sp.erfcx(np.sqrt(s) * m)
    g = np.where(delta < 0, lead - acc, lead + acc)
    return np.log(g)


def log_regularized_gamma(s, x=None, *, delta=None):
    """(log P, log Q) of the regularized incomplete gamma functions."""
    scalar = np.ndim(s) == 0 and np.ndim(x if delta is None else delta) == 0
    s, x, delta = _prepare(s, x, delta)
    shape = s.shape
    s, x, delta = s.ravel(), x.ravel(), delta.ravel()
    log_p = np.empty_like(s)
    log_q = np.empty_like(s)

    zero = x == 0
    log_p[zero] = -np.inf
    log_q[zero] = 0.0

    uniform, series, cf, mu2 = _modes(s, x, delta)
    series &= ~zero
    cf &= ~zero
    # small-tail value: exp(-s mu^2 - log(2 pi s)/2) * G
    base = -s * mu2 - 0.5 * (LOG_2PI + np.log(s))
    small_is_p = np.zeros_like(s, dtype=bool)
    log_small = np.empty_like(s)

    if np.any(series):
        log_small[series] = base[series] + _series_log_g(s[series], x[series])
        small_is_p[series] = True
    if np.any(cf):
        log_small[cf] = base[cf] + _cf_log_g(s[cf], x[cf])
    if np.any(uniform):
        log_small[uniform] = base[uniform] + _uniform_log_g(s[uniform], delta[uniform], mu2[uniform])
        small_is_p[uniform] = delta[uniform] < 0

    rest = ~zero
    ls = np.minimum(log_small[rest], 0.0)
    other = np.log1p(-np.exp(ls))
    sp = small_is_p[rest]
    log_p[rest] = np.where(sp, ls, other)
    log_q[rest] = np.where(sp, other, ls)
    log_p = log_p.reshape(shape)
    log_q = log_q.reshape(shape)
    if scalar:
        return float(log_p), float(log_q)
    return log_p, log_q


def regularized_gamma(s, x=None, *, delta=None):
    """(P, Q) = (gamma(s, x), Gamma(s, x)) / Gamma(s), each to full accuracy."""
    log_p, log_q = log_regularized_gamma(s, x, delta=delta)
    return np.exp(log_p) if np.ndim(log_p) else math.exp(log_p), (
        np.exp(log_q) if np.ndim(log_q) else math.exp(log_q)
    )


def reg_gamma_upper(s, x):
    """Q(s, x) = Gamma(s, x) / Gamma(s)."""
    return regularized_gamma(s, x)[1]


def reg_gamma_lower(s, x):
    """P(s, x) = 1 - Q(s, x), computed directly where it is small."""
    return regularized_gamma(s, x)[0]


def gamma_ratio_asymptotic(n, a):
    """Leading uniform approximation of Q(n, n a) for a > 1.

    a mu(a) erfc(sqrt(n) mu(a)) / (sqrt(2) (a - 1)), relative error
    O(1/(n (a - 1))). Kept as an independent cross-check of ``reg_gamma_upper``.
    """
    a_arr = np.asarray(a, dtype=float)
    if np.any(~(a_arr > 1.0)):
        raise DomainError(f"gamma_ratio_asymptotic requires a > 1, got {a!r}")
    if np.any(np.asarray(n) < 1):
        raise DomainError("gamma_ratio_asymptotic requires n >= 1")
    m = np.sqrt(mu_sq_from_excess(a_arr - 1.0))
    log_val = np.log(a_arr * m / (math.sqrt(2.0) * (a_arr - 1.0))) + log_erfc(np.sqrt(n) * m)
    return _scalar_or_array(np.exp(log_val), np.ndim(log_val) == 0)
