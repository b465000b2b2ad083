"""Brute-force cross-check of the coefficient-space formulas.

Every quantity is recomputed from sampled wavefunctions on a dense uniform
grid: operators act on grid functions (U^k and phi by multiplication,
functions of J by reweighting coefficients and re-synthesizing) and inner
products are trapezoid sums. None of the closed-form Fourier integrals of
the main path are used.
"""
import math
from dataclasses import dataclass

import numpy as np

from .observables import (
    WindowSpec,
    _tie_key,
    default_window,
    expect_expJ,
    expect_J_moments,
    expect_U_power,
    packet_center,
    windowed_phi_moments,
)
from .uncertainty import GramMatrix, gram_matrix, kr_uncertainties

__all__ = [
    "OracleConfig",
    "oracle_expectation",
    "oracle_phi_moments",
    "oracle_gram",
    "oracle_packet_center",
    "oracle_scalars",
    "main_scalars",
    "max_discrepancy",
]


@dataclass(frozen=True)
class OracleConfig:
    grid_n: int = 65536
    phi0_policy: str = "reuse-main"  # or "independent-argmax"

    def __post_init__(self):
        n = self.grid_n
        if n < 4096 or n & (n - 1):
            raise ValueError(f"grid_n must be a power of two >= 4096, got {n}")
        if self.phi0_policy not in ("reuse-main", "independent-argmax"):
            raise ValueError(f"unknown phi0 policy {self.phi0_policy!r}")


def _synth(coeffs, m_min, start, n):
    """psi(start + j h), j = 0..n, h = 2 pi / n, via one inverse FFT."""
    coeffs = np.asarray(coeffs, dtype=complex)
    ms = m_min + np.arange(len(coeffs))
    if len(coeffs) > n:
        raise ValueError("grid too coarse for the coefficient range")
    spec = np.zeros(n, dtype=complex)
    np.add.at(spec, ms % n, coeffs * np.exp(1j * ms * start))
    vals = np.fft.ifft(spec) * n / math.sqrt(2.0 * math.pi)
    return np.append(vals, vals[0])  # closed grid, periodic endpoint


def _weights(n):
    w = np.full(n + 1, 2.0 * math.pi / n)
    w[0] = w[-1] = math.pi / n
    return w


def _integrate(f, n):
    return complex(np.sum(_weights(n) * f))


def oracle_packet_center(psi, config=OracleConfig()):
    """Plain grid argmax of the density on [-pi, pi); same tie rule as the main path."""
    n = config.grid_n
    p = np.abs(_synth(psi.coeffs, psi.m_min, -math.pi, n)[:-1]) ** 2
    phis = -math.pi + 2.0 * math.pi * np.arange(n) / n
    pmax = p.max()
    if pmax - p.min() <= 1e-9 * pmax:
        return 0.0
    # neighbours of a tied maximum differ by O(h^2); use a looser tie window
    idx = np.flatnonzero(p >= pmax * (1.0 - 1e-7))
    groups = np.split(idx, np.flatnonzero(np.diff(idx) > 1) + 1)
    if len(groups) > 1 and groups[0][0] == 0 and groups[-1][-1] == n - 1:
        groups[0] = np.concatenate([groups.pop(), groups[0]])
    tied = [phis[g[np.argmax(p[g])]] for g in groups]
    return float(min(tied, key=_tie_key))


def _phi0(psi, config, phi0):
    if phi0 is not None:
        return float(phi0)
    if config.phi0_policy == "independent-argmax":
        return oracle_packet_center(psi, config)
    return packet_center(psi)


def oracle_expectation(psi, operator, k=2, beta=2.0, phi0=None, config=OracleConfig()):
    """Grid-quadrature expectation of ``U^k``, ``expJ``, ``J``, ``J2``, ``phi`` or ``phi2``."""
    n = config.grid_n
    if operator in ("phi", "phi2"):
        start = _phi0(psi, config, phi0) - math.pi
    else:
        start = -math.pi
    x = start + 2.0 * math.pi * np.arange(n + 1) / n
    psi_x = _synth(psi.coeffs, psi.m_min, start, n)
    ms = psi.ms
    if operator == "U^k":
        other = np.exp(1j * k * x) * psi_x
    elif operator == "expJ":
        other = _synth(np.exp(beta * ms) * psi.coeffs, psi.m_min, start, n)
    elif operator == "J":
        other = _synth(ms * psi.coeffs, psi.m_min, start, n)
    elif operator == "J2":
        other = _synth(ms * ms * psi.coeffs, psi.m_min, start, n)
    elif operator == "phi":
        other = x * psi_x
    elif operator == "phi2":
        other = x * x * psi_x
    else:
        raise ValueError(f"unknown operator {operator!r}")
    return _integrate(np.conj(psi_x) * other, n)


def oracle_phi_moments(psi, phi0=None, config=OracleConfig()):
    phi0 = _phi0(psi, config, phi0)
    m1 = oracle_expectation(psi, "phi", phi0=phi0, config=config).real
    m2 = oracle_expectation(psi, "phi2", phi0=phi0, config=config).real
    return m1, m2, m2 - m1 * m1


def oracle_gram(psi, phi0=None, config=OracleConfig()):
    """Gram matrix for (J, phi) from grid functions (X - <X>) psi."""
    n = config.grid_n
    phi0 = _phi0(psi, config, phi0)
    start = phi0 - math.pi
    x = start + 2.0 * math.pi * np.arange(n + 1) / n
    psi_x = _synth(psi.coeffs, psi.m_min, start, n)
    j_x = _synth(psi.ms * psi.coeffs, psi.m_min, start, n)
    mean_J = _integrate(np.conj(psi_x) * j_x, n).real
    mean_phi = _integrate(x * np.abs(psi_x) ** 2, n).real
    vecs = [j_x - mean_J * psi_x, (x - mean_phi) * psi_x]
    g = np.array([[_integrate(np.conj(a) * b, n) for b in vecs] for a in vecs])
    return GramMatrix(g, ("J", "phi"))


def oracle_scalars(psi, phi0=None, config=OracleConfig()):
    """Oracle values keyed like :func:`main_scalars`."""
    phi0 = _phi0(psi, config, phi0)
    u2 = oracle_expectation(psi, "U^k", k=2, config=config)
    ep = oracle_expectation(psi, "expJ", beta=2.0, config=config).real
    em = oracle_expectation(psi, "expJ", beta=-2.0, config=config).real
    mean_J = oracle_expectation(psi, "J", config=config).real
    mean_J2 = oracle_expectation(psi, "J2", config=config).real
    m1, m2, var_phi = oracle_phi_moments(psi, phi0, config)
    G = oracle_gram(psi, phi0, config)
    out = {
        "U2_re": u2.real,
        "U2_im": u2.imag,
        "expJ_plus2": ep,
        "expJ_minus2": em,
        "mean_J": mean_J,
        "var_J": mean_J2 - mean_J**2,
        "mean_phi": m1,
        "mean_phi2": m2,
        "var_phi": var_phi,
        "G_JJ": G.entries[0, 0].real,
        "G_phiphi": G.entries[1, 1].real,
        "G_Jphi_re": G.entries[0, 1].real,
        "G_Jphi_im": G.entries[0, 1].imag,
        "detG": float(np.linalg.det(G.entries).real),
        "kr_J": 0.25 * math.log(ep * em),
    }
    if abs(u2) > 1e-3:
        out["kr_phi"] = -0.5 * math.log(abs(u2))
    return out


def main_scalars(psi, phi0=None):
    """The same scalars from the coefficient-space path."""
    window = default_window(psi) if phi0 is None else WindowSpec(float(phi0))
    u2 = expect_U_power(psi, 2)
    mean_J, _, var_J = expect_J_moments(psi)
    mom = windowed_phi_moments(psi, window)
    G = gram_matrix(psi, ("J", "phi"), window=window)
    kr_phi, kr_J = kr_uncertainties(psi)
    out = {
        "U2_re": u2.real,
        "U2_im": u2.imag,
        "expJ_plus2": expect_expJ(psi, 2.0),
        "expJ_minus2": expect_expJ(psi, -2.0),
        "mean_J": mean_J,
        "var_J": var_J,
        "mean_phi": mom.mean_phi,
        "mean_phi2": mom.mean_phi2,
        "var_phi": mom.var_phi,
        "G_JJ": G.entries[0, 0].real,
        "G_phiphi": G.entries[1, 1].real,
        "G_Jphi_re": G.entries[0, 1].real,
        "G_Jphi_im": G.entries[0, 1].imag,
        "detG": G.det,
        "kr_J": kr_J,
    }
    if abs(u2) > 1e-3:
        out["kr_phi"] = kr_phi
    return out


def max_discrepancy(psi, config=OracleConfig()):
    """Largest main/oracle mismatch, measured as min(abs error, rel error).

    Returns ``(worst, key, per_key)``; both paths share the main-path packet
    center unless the config asks for an independent argmax.
    """
    phi0 = packet_center(psi) if config.phi0_policy == "reuse-main" else None
    main = main_scalars(psi, phi0)
    orc = oracle_scalars(psi, phi0, config)
    per_key = {}
    for key in main:
        if key not in orc:
            continue
        a, b = main[key], orc[key]
        err = abs(a - b)
        per_key[key] = float(min(err, err / max(abs(b), 1e-300)))
    key = max(per_key, key=per_key.get)
    return per_key[key], key, per_key
