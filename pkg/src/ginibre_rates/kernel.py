"""Correlation kernels of the Ginibre ensembles near the spectral edge.

The complex kernel is normalized as

    K(z, w) = (n/pi) exp(-n(|z|^2 + |w|^2)/2) sum_{l<n} (n z conj(w))^l / l!,

whose diagonal is (n/pi) Q(n, n|z|^2). Edge points are addressed in the
rescaled coordinates (x, y) of a rightmost scaling scheme.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy import special as _sp

from .errors import SchemeError, SizeError
from .scaling import ScalingScheme, Statistic
from .specfun import log_regularized_gamma

__all__ = [
    "EdgeCoordinates",
    "OFFDIAG_MAX_N",
    "ktilde_diag",
    "ktilde_diag_excess",
    "ktilde_offdiag",
    "ktilde_offdiag_sq",
    "rescale_point",
    "edge_excess",
    "ktilde_diag_asymptotic",
    "phi_diag",
    "phi_from_imag",
    "s_diag_real",
]

OFFDIAG_MAX_N = 20000
_CHUNK = 1 << 22  # terms per partial-sum block


@dataclass(frozen=True)
class EdgeCoordinates:
    """Rescaled edge point (x, y) of a rightmost scheme."""

    n: float
    x: float
    y: float
    scheme: ScalingScheme

    def __post_init__(self):
        if self.scheme.statistic is not Statistic.RIGHTMOST:
            raise SchemeError("edge coordinates need a rightmost scaling scheme")
        if self.scheme.n != self.n:
            raise SchemeError(f"scheme built for n={self.scheme.n:g}, not n={self.n:g}")


def _as_complex(z):
    arr = np.asarray(z, dtype=complex)
    return arr, arr.ndim == 0


def ktilde_diag_excess(n, delta):
    """(n/pi) Q(n, n(1 + delta)), with delta = |z|^2 - 1 supplied exactly."""
    _, log_q = log_regularized_gamma(n, delta=delta)
    return n / math.pi * np.exp(log_q)


def ktilde_diag(n, z):
    """Diagonal density (n/pi) Q(n, n|z|^2) of the complex Ginibre process."""
    arr, scalar = _as_complex(z)
    _, log_q = log_regularized_gamma(float(n), float(n) * np.abs(arr) ** 2)
    out = n / math.pi * np.exp(log_q)
    return float(out) if scalar else out


def _offdiag_parts(n: int, z, w):
    """Log-scale and scaled complex sum with K(z, w) = (n/pi) e^{scale} (re + i im)."""
    n = int(n)
    if n > OFFDIAG_MAX_N:
        raise SizeError(f"off-diagonal kernel supports n <= {OFFDIAG_MAX_N}, got n={n}")
    if n < 1:
        raise SizeError("n must be positive")
    zz, sz = _as_complex(z)
    ww, sw = _as_complex(w)
    zz, ww = np.broadcast_arrays(zz, ww)
    shape = zz.shape
    zz, ww = zz.ravel(), ww.ravel()
    az, aw = np.abs(zz), np.abs(ww)
    rho = n * (az * aw)
    theta = np.angle(zz) - np.angle(ww)
    base = -0.5 * n * (az * az + aw * aw)

    ls = np.arange(n, dtype=float)
    log_fact = _sp.gammaln(ls + 1.0)
    scale = np.empty(zz.shape, dtype=float)
    re = np.empty(zz.shape, dtype=float)
    im = np.empty(zz.shape, dtype=float)
    step = max(1, _CHUNK // n)
    for start in range(0, zz.size, step):
        sl = slice(start, start + step)
        with np.errstate(divide="ignore", invalid="ignore"):
            log_rho = np.log(rho[sl])[:, None]
            log_mag = ls[None, :] * log_rho - log_fact[None, :]
        log_mag[:, 0] = 0.0  # 0^0 = 1
        peak = np.max(log_mag, axis=1, keepdims=True)
        mag = np.exp(log_mag - peak)
        phase = ls[None, :] * theta[sl, None]
        # numpy reduces along the last axis pairwise, which keeps the error at O(eps log n)
        re[sl] = np.sum(mag * np.cos(phase), axis=1)
        im[sl] = np.sum(mag * np.sin(phase), axis=1)
        scale[sl] = base[sl] + peak[:, 0]
    return scale.reshape(shape), re.reshape(shape), im.reshape(shape), (sz and sw)


def ktilde_offdiag(n: int, z, w):
    """Complex kernel value K(z, w) from log-space partial sums (n <= 20000)."""
    scale, re, im, scalar = _offdiag_parts(n, z, w)
    out = (n / math.pi) * np.exp(scale) * (re + 1j * im)
    return complex(out) if scalar else out


def ktilde_offdiag_sq(n: int, z, w):
    """|K(z, w)|^2 from log-space partial sums of the exponential series.

    Symmetric in (z, w) bit for bit. Supported for n <= 20000.
    """
    scale, re, im, scalar = _offdiag_parts(n, z, w)
    out = (n / math.pi) ** 2 * np.exp(2.0 * scale) * (re * re + im * im)
    return float(out) if scalar else out


def rescale_point(coords: EdgeCoordinates) -> complex:
    """z = 1 + sqrt(g/4n) + x/sqrt(4 g n) + i y/(g n)^{1/4}."""
    s = coords.scheme
    g, n = s.gamma, s.n
    return complex(
        1.0 + math.sqrt(g / (4.0 * n)) + coords.x / math.sqrt(4.0 * g * n),
        coords.y / (g * n) ** 0.25,
    )


def edge_excess(scheme: ScalingScheme, x, y):
    """|z|^2 - 1 at rescaled (x, y), without forming z.

    Equals (g + x + y^2)/sqrt(g n) + (g + x)^2/(4 g n).
    """
    g, n = scheme.gamma, scheme.n
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    root = math.sqrt(g * n)
    return (g + x + y * y) / root + (g + x) ** 2 / (4.0 * g * n)


def ktilde_diag_asymptotic(coords: EdgeCoordinates) -> float:
    """Edge asymptotics of the diagonal in the units of :func:`ktilde_diag`.

    K / (2 (g n)^{3/4}) ~ A e^{-x-y^2} (1 - (1 + u + u^2/2)/g), u = x + y^2,
    where A = n^{1/4} e^{-g/2} / (2 pi sqrt(2 pi) g^{5/4}). For the standard
    scheme A = (log n / 2g)^{5/4} / sqrt(pi); for the optimized one A = 1/sqrt(pi).
    """
    s = coords.scheme
    g, n = s.gamma, s.n
    u = coords.x + coords.y**2
    cap = 4.0 * math.log(n) ** 0.25
    if abs(coords.x) + coords.y**2 > cap:
        warnings.warn(
            f"|x| + y^2 = {abs(coords.x) + coords.y**2:.3g} exceeds the edge regime cap {cap:.3g}",
            RuntimeWarning,
            stacklevel=2,
        )
    log_a = 0.25 * math.log(n) - 0.5 * g - math.log(2.0 * math.pi * math.sqrt(2.0 * math.pi)) - 1.25 * math.log(g)
    corr = 1.0 - (1.0 + u + 0.5 * u * u) / g
    return 2.0 * (g * n) ** 0.75 * math.exp(log_a - u) * corr


def phi_from_imag(n, im):
    """sqrt(2 pi n) v exp(2 n v^2) erfc(sqrt(2n) |v|) for v = Im z, overflow-free."""
    v = np.asarray(im, dtype=float)
    u = math.sqrt(2.0 * n) * np.abs(v)
    # e^{u^2} erfc(u) is erfcx(u), so nothing of size e^{2 n v^2} is ever formed
    return math.sqrt(math.pi) * u * _sp.erfcx(u) * np.sign(v)


def phi_diag(n, z):
    """Real-ensemble weight Phi_n(z, z); vanishes on the real axis and tends to 1 away from it."""
    arr, scalar = _as_complex(z)
    out = phi_from_imag(n, np.abs(arr.imag))
    return float(out) if scalar else out


def s_diag_real(n, z):
    """Density Phi_n(z, z) K(z, z) of non-real eigenvalues of the real ensemble."""
    arr, scalar = _as_complex(z)
    out = phi_from_imag(n, np.abs(arr.imag)) * ktilde_diag(n, arr)
    return float(out) if scalar else out

