"""Uncertainty measures and relations on the circle.

Two families of measures live here:

* the logarithmic Kowalski-Rembielinski quantities
  ``kr_phi = -1/4 ln|<U^2>|^2`` and ``kr_J = 1/4 ln(<e^{-2J}><e^{2J}>)``;
* the Gram-Robertson matrix ``G_ij = <(X_i - <X_i>) psi | (X_j - <X_j>) psi>``
  with its real symmetric part S (generalized covariances) and real
  antisymmetric part A, and the relations that follow from ``G >= 0``:
  characteristic (C_r(S) >= C_r(A)), Schrodinger (det G >= 0) and
  Heisenberg (gdX1 gdX2 >= |Im G_12|).
"""
import itertools
import math
from dataclasses import asdict, dataclass, field, fields

import numpy as np

from .observables import (
    apply_phi_windowed,
    apply_X_Y,
    default_window,
    expect_expJ,
    expect_J_moments,
    expect_U_power,
    windowed_phi_moments,
)

__all__ = [
    "DELTA0_SQ_DEFAULT",
    "GramMatrix",
    "UncertaintyReport",
    "kr_uncertainties",
    "kr_relation_check",
    "gram_matrix",
    "characteristic_coefficients",
    "characteristic_ur_check",
    "schrodinger_ur",
    "heisenberg_ur",
    "squeezing_flags",
    "zy_intelligent_check",
    "uncertainty_report",
]

# smallest simultaneous value of var_phi and var_J over the coherent family
DELTA0_SQ_DEFAULT = 0.49999

OBSERVABLES = ("J", "phi", "X", "Y")


@dataclass(frozen=True, eq=False)
class GramMatrix:
    entries: np.ndarray
    labels: tuple

    @property
    def n(self):
        return self.entries.shape[0]

    @property
    def S(self):
        return self.entries.real.copy()

    @property
    def A(self):
        return self.entries.imag.copy()

    @property
    def det(self):
        return float(np.linalg.det(self.entries).real)

    def __getitem__(self, key):
        i, j = (self.labels.index(k) if isinstance(k, str) else k for k in key)
        return complex(self.entries[i, j])

    def min_eigenvalue(self):
        return float(np.linalg.eigvalsh(self.entries)[0])

    def is_psd(self, rtol=1e-10):
        return self.min_eigenvalue() >= -rtol * max(float(np.trace(self.entries).real), 1e-300)


def kr_uncertainties(psi):
    """``(kr_phi, kr_J)``; ``kr_phi`` is ``inf`` when <U^2> vanishes."""
    u2 = abs(expect_U_power(psi, 2))
    kr_phi = math.inf if u2 == 0.0 else -0.5 * math.log(u2)
    kr_J = 0.25 * math.log(expect_expJ(psi, -2.0) * expect_expJ(psi, 2.0))
    return kr_phi, kr_J


def kr_relation_check(psi, slack=1e-12):
    kr_phi, kr_J = kr_uncertainties(psi)
    total = kr_phi + kr_J
    return total, total >= 1.0 - slack


def _observable_vectors(psi, labels, window, s=1.0):
    """Centered vectors (X - <X>) psi for the non-phi labels on a shared support."""
    lo, hi = psi.m_min - 1, psi.m_max + 1
    ms = np.arange(lo, hi + 1)
    c = psi.on_range(lo, hi)
    vecs = {}
    if "J" in labels:
        mean_J = expect_J_moments(psi)[0]
        vecs["J"] = (ms - mean_J) * c
    if "X" in labels or "Y" in labels:
        x, y, _ = apply_X_Y(psi.coeffs, psi.m_min, s)
        for name, v in (("X", x), ("Y", y)):
            v = v - np.vdot(c, v) * c
            vecs[name] = v
    if "phi" in labels:
        vecs["phi"], _ = apply_phi_windowed(psi, window, (lo, hi), centered=True)
    return vecs


def gram_matrix(psi, observables=("J", "phi"), window=None, s=1.0):
    """Gram matrix of the centered vectors (X_i - <X_i>) psi.

    ``observables`` is an ordered selection from ``J``, ``phi``, ``X``,
    ``Y`` (X, Y are the Hermitian parts of Z(s)). Entries pairing phi with
    another observable are finite sums, because the other vector lives on
    the support of psi padded by one; the phi-phi entry is the windowed
    variance itself, since (phi - <phi>) psi has infinite bandwidth.
    """
    labels = tuple(observables)
    unknown = set(labels) - set(OBSERVABLES)
    if unknown:
        raise ValueError(f"unsupported observables {sorted(unknown)}")
    if "phi" in labels and window is None:
        window = default_window(psi)
    vecs = _observable_vectors(psi, labels, window, s)
    n = len(labels)
    g = np.empty((n, n), dtype=complex)
    for i, a in enumerate(labels):
        for j, b in enumerate(labels):
            if a == b == "phi":
                g[i, j] = windowed_phi_moments(psi, window).var_phi
            else:
                g[i, j] = np.vdot(vecs[a], vecs[b])
    # Hermitian by construction up to rounding; make it exact
    g = 0.5 * (g + g.conj().T)
    return GramMatrix(g, labels)


def characteristic_coefficients(M, r):
    """Sum of all r x r principal minors of the square matrix ``M``."""
    M = np.asarray(M)
    n = M.shape[0]
    if not 1 <= r <= n:
        raise ValueError(f"r must be in 1..{n}, got {r}")
    return float(
        sum(np.linalg.det(M[np.ix_(idx, idx)]) for idx in itertools.combinations(range(n), r)).real
    )


def characteristic_ur_check(G, atol=1e-10):
    """Rows ``(r, C_r(S), C_r(A), C_r(S) >= C_r(A))`` for r = 1..n."""
    rows = []
    for r in range(1, G.n + 1):
        cs = characteristic_coefficients(G.S, r)
        ca = characteristic_coefficients(G.A, r)
        rows.append((r, cs, ca, cs >= ca - atol))
    return rows


def schrodinger_ur(psi, G=None):
    """Generalized Schrodinger relation for (J, phi): ``(lhs, rhs, lhs - rhs)``."""
    if G is None:
        G = gram_matrix(psi)
    g = G["J", "phi"]
    lhs = G["J", "J"].real * G["phi", "phi"].real
    rhs = g.real**2 + g.imag**2
    return lhs, rhs, lhs - rhs


def heisenberg_ur(psi, G=None):
    if G is None:
        G = gram_matrix(psi)
    lhs = math.sqrt(max(G["J", "J"].real * G["phi", "phi"].real, 0.0))
    return lhs, abs(G["J", "phi"].imag)


def squeezing_flags(psi, delta0_sq=DELTA0_SQ_DEFAULT, G=None):
    """Squeezing of J and phi against |Im G_J,phi| and against delta0_sq."""
    if not delta0_sq > 0:
        raise ValueError("delta0_sq must be positive")
    if G is None:
        G = gram_matrix(psi)
    comm = abs(G["J", "phi"].imag)
    var_J, var_phi = G["J", "J"].real, G["phi", "phi"].real
    return {
        "phi_below_commutator": var_phi < comm,
        "J_below_commutator": var_J < comm,
        "phi_below_delta0": var_phi < delta0_sq,
        "J_below_delta0": var_J < delta0_sq,
    }


def zy_intelligent_check(psi, s=1.0, rtol=1e-8):
    """Heisenberg saturation for X, Y, the Hermitian parts of Z(s).

    Returns ``(dX, dY, half_mean_commutator, is_intelligent)``; the
    half mean commutator is |Im G_XY|.
    """
    G = gram_matrix(psi, ("X", "Y"), s=s)
    dX = math.sqrt(max(G["X", "X"].real, 0.0))
    dY = math.sqrt(max(G["Y", "Y"].real, 0.0))
    half = abs(G["X", "Y"].imag)
    prod = dX * dY
    return dX, dY, half, abs(prod - half) < rtol * prod


@dataclass
class UncertaintyReport:
    kr_phi: float
    kr_J: float
    kr_sum: float
    var_phi: float
    var_J: float
    cov_Jphi: float
    im_G_Jphi: float
    detG: float
    schrodinger_lhs: float
    schrodinger_rhs: float
    squeeze_flags: dict
    mean_phi: float = 0.0
    mean_J: float = 0.0
    window: dict = field(default_factory=dict)

    def to_dict(self):
        return asdict(self)

    @classmethod
    def from_dict(cls, d):
        names = {f.name for f in fields(cls)}
        return cls(**{k: v for k, v in d.items() if k in names})


def uncertainty_report(psi, delta0_sq=DELTA0_SQ_DEFAULT, window=None):
    if window is None:
        window = default_window(psi)
    G = gram_matrix(psi, ("J", "phi"), window=window)
    kr_phi, kr_J = kr_uncertainties(psi)
    lhs, rhs, det = schrodinger_ur(psi, G)
    g = G["J", "phi"]
    return UncertaintyReport(
        kr_phi=kr_phi,
        kr_J=kr_J,
        kr_sum=kr_phi + kr_J,
        var_phi=G["phi", "phi"].real,
        var_J=G["J", "J"].real,
        cov_Jphi=g.real,
        im_G_Jphi=g.imag,
        detG=det,
        schrodinger_lhs=lhs,
        schrodinger_rhs=rhs,
        squeeze_flags=squeezing_flags(psi, delta0_sq, G),
        mean_phi=windowed_phi_moments(psi, window).mean_phi,
        mean_J=expect_J_moments(psi)[0],
        window={"phi0": window.phi0, "grid_n": window.grid_n},
    )
