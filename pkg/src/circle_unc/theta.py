"""Jacobi theta function on the imaginary-modulus slice.

Only theta_3 with tau = i*t is needed here:

    theta3(v, i t) = sum_n exp(-pi t n^2) exp(2 pi i n v)

The series is evaluated only in the well-conditioned region t >= 1,
|Im v| <= t/2. Other arguments are mapped there with the unit period, the
quasi-period

    theta3(v + i k t, t) = exp(pi t k^2 - 2 pi i k v) theta3(v, t)

and, for t < 1, Jacobi's imaginary transformation

    theta3(v, t) = t^(-1/2) exp(-pi v^2 / t) theta3(-i v / t, 1 / t).

The exponents of the prefactors can reach a few hundred, so they are
formed in double-double arithmetic before exponentiation.
"""
import cmath
import math

from .exceptions import CircleDomainError

__all__ = ["theta3", "cs_overlap"]

_TAIL_EPS = 1e-16
_PI = (math.pi, 1.2246467991473532e-16)
_SPLIT = 134217729.0  # 2^27 + 1


def _two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def _split(a):
    c = _SPLIT * a
    hi = c - (c - a)
    return hi, a - hi


def _two_prod(a, b):
    p = a * b
    ah, al = _split(a)
    bh, bl = _split(b)
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


def _dd_add(a, b):
    s, e = _two_sum(a[0], b[0])
    return _two_sum(s, e + a[1] + b[1])


def _dd_mul(a, b):
    p, e = _two_prod(a[0], b[0])
    return _two_sum(p, e + a[0] * b[1] + a[1] * b[0])


def _dd_div(a, t):
    q = a[0] / t
    p, e = _two_prod(q, t)
    return _two_sum(q, ((a[0] - p) - e + a[1]) / t)


def _exp_dd(re, im):
    """exp(re + i im) for double-double exponent parts."""
    mag = math.exp(re[0]) * (1.0 + re[1])
    c, s = math.cos(im[0]), math.sin(im[0])
    return mag * complex(c - s * im[1], s + c * im[1])


def _series(x, y, t):
    """Direct sum; intended for t >= 1 and |y| <= t/2."""
    w = 2j * math.pi * complex(x, y)
    b = abs(y)
    total = 1.0 + 0.0j
    n = 0
    n_peak = math.ceil(b / t)
    log_eps = math.log(_TAIL_EPS)
    while True:
        n += 1
        a = -math.pi * t * n * n
        total += cmath.exp(a + n * w) + cmath.exp(a - n * w)
        bound = a + 2.0 * math.pi * n * b
        if n >= n_peak and bound < log_eps + math.log(max(abs(total), 1.0)):
            return total


def _quasi_reduced(x, y, t):
    k = round(y / t)
    if k == 0:
        return _series(x, y, t)
    kt = _two_prod(float(k), t)
    y_red = (y - kt[0]) - kt[1]
    # exponent pi k (2y - kt) - 2 pi i k x
    gap = _dd_add((2.0 * y, 0.0), (-kt[0], -kt[1]))
    e_re = _dd_mul(_PI, _dd_mul((float(k), 0.0), gap))
    e_im = _dd_mul(_PI, _two_prod(-2.0 * k, x))
    return _exp_dd(e_re, e_im) * _series(x, y_red, t)


def theta3(v, t):
    """Jacobi theta_3(v, tau) with tau = i*t.

    Parameters
    ----------
    v : complex
        Argument. The function is periodic with period 1 in ``v``.
    t : float
        Imaginary part of the modulus, must be positive.

    Returns
    -------
    complex
        Value accurate to a few ulp away from the zeros v = 1/2 + i t/2 + lattice.
    """
    t = float(t)
    if not (t > 0 and math.isfinite(t)):
        raise CircleDomainError(f"theta3 needs finite t > 0, got {t!r}")
    v = complex(v)
    if not cmath.isfinite(v):
        raise CircleDomainError(f"theta3 needs finite v, got {v!r}")
    x = v.real - round(v.real)
    y = v.imag
    if t >= 1.0:
        return _quasi_reduced(x, y, t)
    # exponent -pi v^2 / t with v^2 = (x^2 - y^2) + 2 i x y
    x2, y2 = _two_prod(x, x), _two_prod(y, y)
    sq_re = _dd_add(x2, (-y2[0], -y2[1]))
    sq_im = _two_prod(2.0 * x, y)
    e_re = _dd_div(_dd_mul(_PI, sq_re), t)
    e_im = _dd_div(_dd_mul(_PI, sq_im), t)
    pref = _exp_dd((-e_re[0], -e_re[1]), (-e_im[0], -e_im[1])) / math.sqrt(t)
    xi = y / t
    return pref * _quasi_reduced(xi - round(xi), -x / t, 1.0 / t)


def cs_overlap(z1, z2):
    """Unnormalized overlap <z1|z2> of two circle coherent states.

    Evaluates theta3((i/2pi) ln(conj(z1) z2), 1/pi) with the principal
    logarithm; equal to sum_m exp(-m^2) (conj(z1) z2)^(-m), so the branch
    does not matter.
    """
    z1, z2 = complex(z1), complex(z2)
    if z1 == 0 or z2 == 0:
        raise CircleDomainError("coherent-state label must be nonzero")
    v = 1j / (2.0 * math.pi) * cmath.log(z1.conjugate() * z2)
    return theta3(v, 1.0 / math.pi)
