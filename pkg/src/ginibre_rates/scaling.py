"""Ensembles, statistics and the centering/scaling constants of the edge."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import ConvergenceError, DomainError, SchemeError

__all__ = [
    "Ensemble",
    "Statistic",
    "Variant",
    "ScalingScheme",
    "standard_scaling",
    "optimized_scaling",
    "scaling",
    "rescale_statistic",
    "unscale_statistic",
    "MIN_N",
]

MIN_N = 16.0
LOG_2PI = math.log(2.0 * math.pi)
LOG_2PI4 = math.log(2.0 * math.pi**4)


class Statistic(enum.Enum):
    RIGHTMOST = "rightmost"
    RADIUS = "radius"


class Ensemble(enum.Enum):
    """Matrix model. ``IID`` means complex i.i.d. entries of a given law."""

    REAL = "real"
    COMPLEX = "complex"
    IID = "iid"

    @property
    def beta(self) -> int:
        return 1 if self is Ensemble.REAL else 2


class Variant(enum.Enum):
    STANDARD = "standard"
    OPTIMIZED = "optimized"


@dataclass(frozen=True)
class ScalingScheme:
    """Edge location 1 + sqrt(gamma/4n) and fluctuation scale sqrt(4 n gamma).

    Attributes
    ----------
    n : float
        Matrix size. Real-valued so that n = e^100 style checks are possible.
    statistic : Statistic
    gamma : float
        gamma_n, gamma'_n or one of their optimized counterparts.
    variant : Variant
    c_n, d_n : float
        Second-order trace constants of the rightmost and radius statistics.
    """

    n: float
    statistic: Statistic
    gamma: float
    variant: Variant
    c_n: float
    d_n: float

    def __post_init__(self):
        if not self.gamma > 0:
            raise SchemeError(f"scaling constant must be positive, got gamma={self.gamma!r}")

    @property
    def center(self) -> float:
        return 1.0 + math.sqrt(self.gamma / (4.0 * self.n))

    @property
    def scale(self) -> float:
        return math.sqrt(4.0 * self.n * self.gamma)

    @property
    def log_n(self) -> float:
        return math.log(self.n)


def _check_n(n) -> float:
    n = float(n)
    if not n >= MIN_N or not math.isfinite(n):
        raise DomainError(f"n must be a finite number >= {MIN_N:g}, got n={n!r}")
    return n


def _constants(n: float):
    llog = math.log(math.log(n))
    c_n = (25.0 * llog + 5.0 * LOG_2PI4 - 35.0) / 4.0
    d_n = 2.0 * llog + LOG_2PI
    return c_n, d_n


def standard_scaling(n, statistic: Statistic) -> ScalingScheme:
    """gamma_n = (log n - 5 log log n - log 2 pi^4)/2 or gamma'_n = log n - 2 log log n - log 2 pi.

    Raises
    ------
    SchemeError
        When the constant is not positive. This happens for the rightmost
        statistic below n ~ 7.6e8 and for the radius below n ~ 165.
    """
    n = _check_n(n)
    statistic = Statistic(statistic)
    log_n = math.log(n)
    llog = math.log(log_n)
    if statistic is Statistic.RIGHTMOST:
        gamma = 0.5 * (log_n - 5.0 * llog - LOG_2PI4)
    else:
        gamma = log_n - 2.0 * llog - LOG_2PI
    if not gamma > 0:
        raise SchemeError(
            f"standard {statistic.value} scaling is undefined at n={n:g}: gamma={gamma:.6g} <= 0"
        )
    c_n, d_n = _constants(n)
    return ScalingScheme(n, statistic, gamma, Variant.STANDARD, c_n, d_n)


def _optimized_root(log_n: float, statistic: Statistic) -> float:
    # log of the defining equation minus log n; strictly increasing in g > 0
    if statistic is Statistic.RIGHTMOST:
        const = math.log(64.0) + 4.0 * math.log(math.pi)
        power, slope = 5.0, 2.0
    else:
        const = LOG_2PI
        power, slope = 2.0, 1.0

    def f(g):
        return const + power * math.log(g) + slope * g - log_n

    def df(g):
        return power / g + slope

    lo, hi = 1e-300, max(log_n, 1.0)
    while f(hi) <= 0:
        hi *= 2.0
    g = 0.5 * hi
    for _ in range(200):
        val = f(g)
        if val > 0:
            hi = g
        else:
            lo = g
        step = g - val / df(g)
        g_new = step if lo < step < hi else 0.5 * (lo + hi)
        if abs(g_new - g) <= 1e-16 * g:
            return g_new
        g = g_new
    if abs(f(g)) <= 1e-13:
        return g
    raise ConvergenceError("optimized scaling root did not converge")


def optimized_scaling(n, statistic: Statistic) -> ScalingScheme:
    """Root of 64 g^5 pi^4 e^{2g} = n (rightmost) or 2 pi g^2 e^g = n (radius)."""
    n = _check_n(n)
    statistic = Statistic(statistic)
    gamma = _optimized_root(math.log(n), statistic)
    c_n, d_n = _constants(n)
    return ScalingScheme(n, statistic, gamma, Variant.OPTIMIZED, c_n, d_n)


def optimized_residual(scheme: ScalingScheme) -> float:
    """Relative residual |lhs - n| / n of the optimized defining equation."""
    g = scheme.gamma
    if scheme.statistic is Statistic.RIGHTMOST:
        log_lhs = math.log(64.0) + 5.0 * math.log(g) + 4.0 * math.log(math.pi) + 2.0 * g
    else:
        log_lhs = LOG_2PI + 2.0 * math.log(g) + g
    return abs(math.expm1(log_lhs - math.log(scheme.n)))


def scaling(n, statistic: Statistic, variant: Variant = Variant.STANDARD) -> ScalingScheme:
    """Dispatch on ``variant``."""
    if Variant(variant) is Variant.STANDARD:
        return standard_scaling(n, statistic)
    return optimized_scaling(n, statistic)


def rescale_statistic(raw, scheme: ScalingScheme):
    """t = sqrt(4 n gamma) (raw - 1 - sqrt(gamma / 4n))."""
    return scheme.scale * (raw - scheme.center)


def unscale_statistic(t, scheme: ScalingScheme):
    """Inverse of :func:`rescale_statistic`."""
    return scheme.center + t / scheme.scale
