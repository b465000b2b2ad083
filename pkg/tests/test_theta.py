import cmath
import math

import mpmath as mp
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from circle_unc.exceptions import CircleDomainError
from circle_unc.theta import cs_overlap, theta3


def partial_sums(term, tol=1e-16):
    total, n = term(0), 0
    while True:
        n += 1
        t = term(n) + term(-n)
        total += t
        if abs(t) < tol:
            return total


def brute(v, t, nmax=50):
    """|n| <= nmax summed at 40 digits; returns (value, sum of |terms|)."""
    with mp.workdps(40):
        terms = [mp.exp(-mp.pi * mp.mpf(t) * n * n + 2j * mp.pi * n * mp.mpc(v)) for n in range(-nmax, nmax + 1)]
        return complex(mp.fsum(terms)), float(mp.fsum(abs(x) for x in terms))


def test_theta3_at_zero_matches_gaussian_sum():
    want = partial_sums(lambda n: math.exp(-n * n))
    assert want == pytest.approx(1.7726372048, abs=1e-10)
    assert theta3(0, 1 / math.pi) == pytest.approx(want, rel=1e-15)


def test_theta3_at_half_is_alternating_sum():
    want = partial_sums(lambda n: (-1) ** abs(n) * math.exp(-n * n))
    assert want == pytest.approx(0.3006258, abs=1e-7)
    assert theta3(0.5, 1 / math.pi) == pytest.approx(want, rel=1e-14)


@pytest.mark.parametrize("t", [0.1, 0.13, 0.3, 1 / math.pi, 0.7, 1.0, 2.5, 5.0])
@pytest.mark.parametrize("re", [-1.0, -0.75, -0.5, -0.3, 0.0, 0.25, 0.5, 1.0])
@pytest.mark.parametrize("im", [-2.0, -1.5, -0.7, -0.05, 0.0, 0.5, 1.0, 2.0])
def test_theta3_matches_brute_force(t, re, im):
    v = complex(re, im)
    want, scale = brute(v, t)
    err = abs(theta3(v, t) - want)
    # relative error is meaningless on the lattice zeros v = 1/2 + i t/2
    if abs(want) > 1e-6 * scale:
        assert err <= 1e-14 * abs(want)
    assert err <= 1e-14 * scale


def test_theta3_vanishes_on_lattice_zero():
    assert abs(theta3(0.5 + 0.5j, 1.0)) < 1e-15


@given(st.floats(-3, 3), st.floats(-1, 1), st.floats(0.2, 4))
def test_theta3_unit_period(re, im, t):
    v = complex(re, im)
    a, b = theta3(v + 1, t), theta3(v, t)
    assert abs(a - b) <= 1e-12 * max(abs(b), 1.0)


@given(st.floats(-1, 1), st.floats(-0.5, 0.5), st.floats(0.3, 4))
def test_theta3_quasi_periodicity(re, im, t):
    v = complex(re, im)
    lhs = theta3(v + 1j * t, t)
    rhs = cmath.exp(math.pi * t - 2j * math.pi * v) * theta3(v, t)
    assert abs(lhs - rhs) <= 1e-12 * abs(rhs)


@pytest.mark.parametrize("t", [0.0, -1.0, float("nan")])
def test_theta3_rejects_nonpositive_modulus(t):
    with pytest.raises(CircleDomainError):
        theta3(0.1, t)


def test_cs_overlap_equal_labels():
    assert cs_overlap(1, 1) == pytest.approx(theta3(0, 1 / math.pi), rel=1e-15)


zs = st.builds(lambda r, a: r * cmath.exp(1j * a), st.floats(0.2, 5), st.floats(-math.pi, math.pi))


@settings(max_examples=60)
@given(zs, zs)
def test_cs_overlap_is_coefficient_inner_product(z1, z2):
    w = z1.conjugate() * z2
    want = sum(math.exp(-m * m) * w ** (-m) for m in range(-40, 41))
    assert abs(cs_overlap(z1, z2) - want) <= 1e-12 * abs(want)
    assert abs(cs_overlap(z1, z2) - cs_overlap(z2, z1).conjugate()) <= 1e-12 * abs(want)


@given(zs)
def test_cs_overlap_with_negated_label_is_real(z):
    ratio = cs_overlap(z, -z) / cs_overlap(z, z)
    assert abs(ratio.imag) <= 1e-13


def test_cs_overlap_rejects_zero():
    with pytest.raises(CircleDomainError):
        cs_overlap(0, 1)
    with pytest.raises(CircleDomainError):
        cs_overlap(1, 0)
