"""State families on the circle as truncated angular-momentum coefficient vectors.

A state is stored as coefficients c_m of |m>, J|m> = m|m>, for
m in [m_min, m_max]. The position wavefunction is

    psi(phi) = (2 pi)^(-1/2) sum_m c_m exp(i m phi).

Coherent and squeezed coherent states follow the coefficient law
c_m ~ exp(-s m^2 / 2) z^(-m) with its natural phase, i.e. the same phase
convention under which <z|eta> is a theta_3 value. Cat states are built
from those raw vectors so that the relative phase of |z> and |-z> is the
one fixed by the overlap formula.
"""
import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .exceptions import CircleDomainError, DegenerateSuperpositionError, TruncationError
from .theta import cs_overlap

__all__ = [
    "CircleState",
    "M_CAP",
    "coherent_state",
    "squeezed_coherent_state",
    "cat_state",
    "fock_state",
    "superpose",
    "cat_normalization",
    "apply_Z",
    "state_to_csv",
]

M_CAP = 64
# boundary amplitudes must be below this fraction of the peak amplitude
_EDGE_RATIO = 1e-18
_LOG_EDGE = math.log(_EDGE_RATIO)


@dataclass(frozen=True, eq=False)
class CircleState:
    """Normalized pure state c_m |m>, m_min <= m <= m_max.

    ``coeffs`` is stored read-only; operations build new states.
    """

    m_min: int
    coeffs: np.ndarray
    label: str = ""
    family: str = "custom"
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex)
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)
        object.__setattr__(self, "m_min", int(self.m_min))

    @property
    def m_max(self):
        return self.m_min + len(self.coeffs) - 1

    @property
    def ms(self):
        return np.arange(self.m_min, self.m_max + 1)

    @property
    def norm(self):
        return float(np.linalg.norm(self.coeffs))

    def coeff(self, m):
        i = m - self.m_min
        if 0 <= i < len(self.coeffs):
            return complex(self.coeffs[i])
        return 0j

    def on_range(self, m_lo, m_hi):
        """Coefficients zero-padded (or clipped) to [m_lo, m_hi]."""
        out = np.zeros(m_hi - m_lo + 1, dtype=complex)
        lo = max(m_lo, self.m_min)
        hi = min(m_hi, self.m_max)
        if lo <= hi:
            out[lo - m_lo : hi - m_lo + 1] = self.coeffs[lo - self.m_min : hi - self.m_min + 1]
        return out

    def __repr__(self):
        return f"CircleState({self.label or self.family}, m=[{self.m_min}, {self.m_max}])"


def _gaussian_law(z, s):
    """Window and coefficients for c_m ~ exp(-s m^2/2) z^(-m), normalized."""
    z = complex(z)
    if z == 0:
        raise CircleDomainError("z must be nonzero")
    if not s > 0:
        raise CircleDomainError(f"squeeze parameter must be positive, got {s!r}")
    ell = -math.log(abs(z))
    alpha = cmath.phase(z)
    # log|c_m| = -s m^2/2 + m ell, peaked at m = ell/s
    peak = ell / s
    half = math.sqrt(-2.0 * _LOG_EDGE / s)
    m_lo = math.floor(peak - half) - 1
    m_hi = math.ceil(peak + half) + 1
    if m_lo < -M_CAP or m_hi > M_CAP:
        raise TruncationError(
            f"coefficient window [{m_lo}, {m_hi}] exceeds |m| <= {M_CAP} (z={z}, s={s})"
        )
    ms = np.arange(m_lo, m_hi + 1)
    logamp = -0.5 * s * ms**2 + ms * ell
    c = np.exp(logamp - logamp.max() - 1j * alpha * ms)
    c /= np.linalg.norm(c)
    return m_lo, c


def coherent_state(z):
    """Eigenstate |z> of Z = exp(-J + 1/2) U, with Z|z> = z|z>."""
    m_min, c = _gaussian_law(z, 1.0)
    return CircleState(m_min, c, label=f"|z={complex(z):g}>", family="coherent",
                       params={"z": complex(z)})


def squeezed_coherent_state(z, s):
    """Eigenstate of Z(s) = exp(-s J + s/2) U; ``s = 1`` is the coherent state."""
    m_min, c = _gaussian_law(z, float(s))
    return CircleState(m_min, c, label=f"|z={complex(z):g}>_s={float(s):g}",
                       family="squeezed", params={"z": complex(z), "s": float(s)})


def cat_normalization(z, a):
    """N(z, a) = [1 + |a|^2 + 2 <z|-z> Re a]^(-1/2), with <z|-z> the normalized overlap."""
    z, a = complex(z), complex(a)
    overlap = (cs_overlap(z, -z) / cs_overlap(z, z)).real
    return (1.0 + abs(a) ** 2 + 2.0 * overlap * a.real) ** -0.5


def cat_state(z, a):
    """Superposition N(z, a) (|z> + a |-z>) of two coherent states."""
    z, a = complex(z), complex(a)
    plus = coherent_state(z)
    if a == 0:
        return plus
    minus = coherent_state(-z)
    state = superpose([plus, minus], [1.0, a])
    return CircleState(state.m_min, state.coeffs, label=f"|z={z:g}, a={a:g}>",
                       family="cat", params={"z": z, "a": a})


def fock_state(m):
    """Angular-momentum eigenstate psi_m(phi) = exp(i m phi) / sqrt(2 pi)."""
    m = int(m)
    return CircleState(m, np.ones(1), label=f"|m={m}>", family="fock", params={"m": m})


def superpose(states, weights):
    """Normalized sum_k w_k psi_k over the union of the coefficient ranges."""
    states = list(states)
    weights = [complex(w) for w in weights]
    if not states or len(states) != len(weights):
        raise ValueError("need equally many states and weights, at least one")
    m_lo = min(st.m_min for st in states)
    m_hi = max(st.m_max for st in states)
    c = sum(w * st.on_range(m_lo, m_hi) for st, w in zip(states, weights))
    nrm = np.linalg.norm(c)
    if nrm < 1e-10:
        raise DegenerateSuperpositionError(f"superposition norm {nrm:.3e} is below 1e-10")
    c = c / nrm
    # drop exact-zero padding at both ends
    nz = np.flatnonzero(np.abs(c) > 0)
    c = c[nz[0] : nz[-1] + 1]
    return CircleState(m_lo + int(nz[0]), c, label="superposition", family="superposition")


def apply_Z(coeffs, m_min, s=1.0, dagger=False):
    """Action of Z(s) (or its adjoint) on a coefficient vector.

    (Z(s) c)_m = exp(-s (m - 1/2)) c_{m-1}; (Z(s)^+ c)_m = exp(-s (m + 1/2)) c_{m+1}.
    Returns ``(out, out_m_min)``; the support grows by one on one side.
    """
    coeffs = np.asarray(coeffs, dtype=complex)
    src = m_min + np.arange(len(coeffs))
    if dagger:
        dest = src - 1
        out = np.exp(-s * (dest + 0.5)) * coeffs
    else:
        dest = src + 1
        out = np.exp(-s * (dest - 0.5)) * coeffs
    return out, int(dest[0])


def state_to_csv(psi, digits=17):
    """Coefficient dump: comment header then ``m,re,im,abs2`` rows."""
    params = ";".join(f"{k}={_fmt(v, digits)}" for k, v in psi.params.items())
    lines = [
        f"# family={psi.family}",
        f"# params={params}",
        f"# norm_check={1.0 - psi.norm ** 2:.3e}",
        "m,re,im,abs2",
    ]
    for m, c in zip(psi.ms, psi.coeffs):
        lines.append(f"{m},{c.real:.{digits}g},{c.imag:.{digits}g},{abs(c) ** 2:.{digits}g}")
    return "\n".join(lines) + "\n"


def _fmt(v, digits):
    if isinstance(v, complex):
        return f"{v.real:.{digits}g},{v.imag:.{digits}g}"
    if isinstance(v, float):
        return f"{v:.{digits}g}"
    return str(v)
