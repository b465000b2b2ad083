"""Reference numpy kernels; used when the compiled extension is unavailable."""
import math

import numpy as np


def synthesize(coeffs, m_min, phis):
    """sum_k c_k exp(i (m_min + k) phi) at every phi."""
    coeffs = np.asarray(coeffs, dtype=complex)
    phis = np.asarray(phis, dtype=float)
    ms = m_min + np.arange(len(coeffs))
    return np.exp(1j * np.outer(phis, ms)) @ coeffs


def _moment_table(k, d):
    out = np.zeros(d.shape, dtype=complex)
    nz = d != 0
    dn = d[nz].astype(float)
    sign = np.where(d[nz] % 2 == 0, 1.0, -1.0)
    if k == 1:
        out[nz] = -1j * sign / dn
    else:
        out[~nz] = math.pi**2 / 3.0
        out[nz] = 2.0 * sign / dn**2
    return out


def phi_moment_sums(cp, m_min):
    """(<phi>, <phi^2>) of a recentred state on the branch [-pi, pi]."""
    cp = np.asarray(cp, dtype=complex)
    ms = m_min + np.arange(len(cp))
    diff = ms[None, :] - ms[:, None]
    m1 = np.real(np.conj(cp) @ _moment_table(1, diff) @ cp)
    m2 = np.real(np.conj(cp) @ _moment_table(2, diff) @ cp)
    return float(m1), float(m2)


def sawtooth_project(cp, m_min, out_lo, out_n):
    """Coefficients n = out_lo .. out_lo + out_n - 1 of phi * psi on [-pi, pi]."""
    cp = np.asarray(cp, dtype=complex)
    ms = m_min + np.arange(len(cp))
    out_ms = out_lo + np.arange(out_n)
    return _moment_table(1, ms[None, :] - out_ms[:, None]) @ cp
