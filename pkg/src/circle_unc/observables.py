"""Expectation values, position-space synthesis and windowed angle moments.

The angle operator is only meaningful on a single branch. Everything that
touches phi (moments, the centered vector (phi - <phi>) psi) uses the
branch [phi0 - pi, phi0 + pi] around the packet center phi0. Internally
the state is first recentred, c_m -> c_m exp(i m phi0), so the branch
becomes [-pi, pi] and closed-form Fourier integrals apply:

    (1/2pi) int_{-pi}^{pi} phi   e^{i d phi} dphi = i (-1)^(d+1) / d      (d != 0)
    (1/2pi) int_{-pi}^{pi} phi^2 e^{i d phi} dphi = 2 (-1)^d / d^2        (d != 0)

with values 0 and pi^2/3 at d = 0.
"""
import math
from dataclasses import dataclass

import numpy as np

from . import _pykernels, kernels
from .exceptions import TruncationError
from .states import apply_Z

__all__ = [
    "WindowSpec",
    "PhiMoments",
    "expect_U_power",
    "expect_expJ",
    "expect_J_moments",
    "wavefunction",
    "density",
    "packet_center",
    "default_window",
    "windowed_phi_moments",
    "apply_J",
    "apply_phi_windowed",
    "sawtooth_moment",
    "CENTER_GRID",
]

CENTER_GRID = 4096
_TIE_RTOL = 1e-9
_SQRT_2PI = math.sqrt(2.0 * math.pi)


@dataclass(frozen=True)
class WindowSpec:
    """Branch [phi0 - pi, phi0 + pi] and a quadrature resolution for it."""

    phi0: float = 0.0
    grid_n: int = 4096

    def __post_init__(self):
        if not math.isfinite(self.phi0):
            raise ValueError("phi0 must be finite")
        if self.grid_n < 256 or self.grid_n % 2:
            raise ValueError(f"grid_n must be even and >= 256, got {self.grid_n}")


@dataclass(frozen=True)
class PhiMoments:
    mean_phi: float
    mean_phi2: float
    var_phi: float


def expect_U_power(psi, k):
    """<U^k> = sum_m conj(c_{m+k}) c_m, with U = exp(i phi)."""
    k = int(k)
    if k == 0:
        return complex(np.vdot(psi.coeffs, psi.coeffs))
    c = psi.coeffs
    n = len(c)
    if abs(k) >= n:
        return 0j
    if k > 0:
        return complex(np.vdot(c[k:], c[: n - k]))
    return complex(np.vdot(c[: n + k], c[-k:]))


def expect_expJ(psi, beta):
    """<exp(beta J)> = sum_m exp(beta m) |c_m|^2."""
    logw = beta * psi.ms.astype(float)
    p = np.abs(psi.coeffs) ** 2
    if np.any(logw + np.log(np.where(p > 0, p, 1.0)) > math.log(1e300)):
        raise TruncationError(f"exp({beta} J) weights overflow on m=[{psi.m_min}, {psi.m_max}]")
    return float(np.sum(np.exp(logw) * p))


def expect_J_moments(psi):
    """Return ``(<J>, <J^2>, var J)``; J is diagonal in the |m> basis."""
    p = np.abs(psi.coeffs) ** 2
    m = psi.ms.astype(float)
    mean = float(np.sum(m * p))
    mean2 = float(np.sum(m * m * p))
    return mean, mean2, max(float(np.sum((m - mean) ** 2 * p)), 0.0)


def wavefunction(psi, phis):
    """psi(phi) = (2 pi)^(-1/2) sum_m c_m exp(i m phi)."""
    phis = np.atleast_1d(np.asarray(phis, dtype=float))
    return kernels.synthesize(psi.coeffs, psi.m_min, phis) / _SQRT_2PI


def density(psi, phis):
    return np.abs(wavefunction(psi, phis)) ** 2


def _tie_key(phi):
    # smallest nonnegative representative first
    return (phi < 0, phi)


def _wrap(phi):
    """Map to [-pi, pi)."""
    return (phi + math.pi) % (2.0 * math.pi) - math.pi


def packet_center(psi, grid_n=CENTER_GRID):
    """Most probable angle in [-pi, pi).

    Coarse argmax on ``grid_n`` points, then a parabola through the winning
    triple. Maxima within a relative 1e-9 of each other count as ties and
    are resolved towards the smallest nonnegative angle; a flat density
    therefore yields 0.
    """
    h = 2.0 * math.pi / grid_n
    phis = -math.pi + h * np.arange(grid_n)
    p = density(psi, phis)
    pmax = p.max()
    if pmax - p.min() <= _TIE_RTOL * pmax:
        return 0.0
    left = np.roll(p, 1)
    right = np.roll(p, -1)
    peaks = np.flatnonzero((p >= left) & (p >= right) & (p >= pmax * (1.0 - _TIE_RTOL)))
    candidates = []
    for i in peaks:
        denom = left[i] - 2.0 * p[i] + right[i]
        shift = 0.5 * (left[i] - right[i]) / denom if denom < 0 else 0.0
        candidates.append(_wrap(phis[i] + shift * h))
    if len(candidates) > 1:
        # re-rank refined peaks on the exact density before tie-breaking
        vals = density(psi, candidates)
        top = vals.max()
        candidates = [c for c, v in zip(candidates, vals) if v >= top * (1.0 - _TIE_RTOL)]
    best = min(candidates, key=_tie_key)
    # a tie with -pi is the same point as +pi; keep the [-pi, pi) representative
    return float(best)


def default_window(psi, grid_n=4096):
    return WindowSpec(packet_center(psi), grid_n)


def sawtooth_moment(k, d):
    """(1/2pi) int_{-pi}^{pi} phi^k exp(i d phi) dphi for k in {1, 2}, integer array d."""
    if k not in (1, 2):
        raise ValueError("only k = 1, 2 are tabulated")
    return _pykernels._moment_table(k, np.asarray(d))


def _recentred(psi, phi0):
    return psi.coeffs * np.exp(1j * psi.ms * phi0)


def windowed_phi_moments(psi, window=None, method="analytic"):
    """<phi>, <phi^2> and the variance on the branch around ``window.phi0``.

    ``method="quadrature"`` integrates the density with the trapezoid rule
    on ``window.grid_n`` intervals instead of using the closed forms.
    """
    if window is None:
        window = default_window(psi)
    phi0 = window.phi0
    if method == "analytic":
        m1, m2 = kernels.phi_moment_sums(_recentred(psi, phi0), psi.m_min)
    elif method == "quadrature":
        n = window.grid_n
        x = np.linspace(-math.pi, math.pi, n + 1)
        w = np.full(n + 1, 2.0 * math.pi / n)
        w[0] = w[-1] = math.pi / n
        p = density(psi, x + phi0)
        m1 = float(np.sum(w * x * p))
        m2 = float(np.sum(w * x * x * p))
    else:
        raise ValueError(f"unknown method {method!r}")
    var = max(m2 - m1 * m1, 0.0)
    return PhiMoments(mean_phi=phi0 + m1, mean_phi2=m2 + 2.0 * phi0 * m1 + phi0 * phi0, var_phi=var)


def apply_J(psi):
    """(J c)_m = m c_m, on the same support as ``psi``."""
    return psi.ms * psi.coeffs


def apply_phi_windowed(psi, window=None, m_range=None, centered=False):
    """Coefficients of phi psi on the branch around ``window.phi0``.

    The product has a jump at the branch cut, so its coefficients decay
    only like 1/n; the result is the exact projection onto ``m_range``
    (default: the support of ``psi`` padded by its own width). With
    ``centered=True`` the mean <phi> is subtracted first, giving the vector
    (phi - <phi>) psi that enters the Gram matrix.

    Returns ``(coeffs, m_lo)``.
    """
    if window is None:
        window = default_window(psi)
    phi0 = window.phi0
    if m_range is None:
        width = len(psi.coeffs)
        m_range = (psi.m_min - width, psi.m_max + width)
    m_lo, m_hi = m_range
    out_ms = np.arange(m_lo, m_hi + 1)
    cp = _recentred(psi, phi0)
    # d_n = sum_m c'_m (1/2pi) int phi e^{i(m-n)phi}
    d = kernels.sawtooth_project(cp, psi.m_min, m_lo, m_hi - m_lo + 1)
    if centered:
        shift = windowed_phi_moments(psi, window).mean_phi - phi0
        d = d - shift * psi.on_range(m_lo, m_hi) * np.exp(1j * out_ms * phi0)
    else:
        # phi = phi0 + (phi - phi0) on the branch
        d = d + phi0 * psi.on_range(m_lo, m_hi) * np.exp(1j * out_ms * phi0)
    return d * np.exp(-1j * out_ms * phi0), m_lo


def apply_X_Y(coeffs, m_min, s=1.0):
    """Hermitian parts X = (Z + Z^+)/2, Y = (Z - Z^+)/2i on a common support.

    Returns ``(x, y, m_lo)`` with support [m_min - 1, m_max + 1].
    """
    coeffs = np.asarray(coeffs, dtype=complex)
    n = len(coeffs)
    up, _ = apply_Z(coeffs, m_min, s)
    down, _ = apply_Z(coeffs, m_min, s, dagger=True)
    zc = np.zeros(n + 2, dtype=complex)
    zd = np.zeros(n + 2, dtype=complex)
    zc[2:] = up
    zd[:-2] = down
    return 0.5 * (zc + zd), (zc - zd) / 2j, m_min - 1
