import cmath
import math

import numpy as np
import pytest

from circle_unc.acceptance import regression_states
from circle_unc.exceptions import TruncationError
from circle_unc.observables import (
    WindowSpec,
    apply_J,
    apply_phi_windowed,
    apply_X_Y,
    density,
    expect_expJ,
    expect_J_moments,
    expect_U_power,
    packet_center,
    sawtooth_moment,
    wavefunction,
    windowed_phi_moments,
)
from circle_unc.states import cat_state, coherent_state, fock_state, squeezed_coherent_state, superpose

STATES = regression_states()
IDS = [psi.label for psi in STATES]


def grid(n):
    x = np.linspace(-math.pi, math.pi, n + 1)
    w = np.full(n + 1, 2 * math.pi / n)
    w[0] = w[-1] = math.pi / n
    return x, w


@pytest.mark.parametrize("psi", STATES, ids=IDS)
def test_parseval(psi):
    x, w = grid(4096)
    assert abs(np.sum(w * density(psi, x)) - psi.norm**2) < 1e-10


@pytest.mark.parametrize("k", [1, 2, -3])
@pytest.mark.parametrize("psi", STATES, ids=IDS)
def test_U_power_matches_quadrature(psi, k):
    x, w = grid(4096)
    want = np.sum(w * density(psi, x) * np.exp(1j * k * x))
    assert abs(expect_U_power(psi, k) - want) < 1e-12


def test_U_power_beyond_support_is_zero():
    assert expect_U_power(fock_state(3), 1) == 0
    assert expect_U_power(superpose([fock_state(0), fock_state(1)], [1, 1]), 1) == pytest.approx(0.5)


def test_odd_cat_expectations_from_odd_m_series():
    odd = range(-41, 42, 2)
    norm = math.fsum(math.exp(-m * m) for m in odd)
    u2 = math.fsum(math.exp(-((m + 2) ** 2) / 2 - m * m / 2) for m in odd) / norm
    e2 = math.fsum(math.exp(2 * m - m * m) for m in odd) / norm
    psi = cat_state(1.0, -1.0)
    assert abs(expect_U_power(psi, 2) - u2) < 1e-14
    assert expect_expJ(psi, 2.0) == pytest.approx(e2, rel=1e-14)
    assert u2 == pytest.approx(0.51814, abs=1e-5)


@pytest.mark.parametrize("z", [0.4, 1.0, 2.0 * cmath.exp(1j * math.pi / 4)])
def test_coherent_closed_forms(z):
    psi = coherent_state(z)
    assert expect_U_power(psi, 2) == pytest.approx(z / (math.e * z.conjugate()), rel=1e-12)
    assert expect_expJ(psi, 2.0) == pytest.approx(math.e / abs(z) ** 2, rel=1e-12)
    assert expect_expJ(psi, -2.0) == pytest.approx(math.e * abs(z) ** 2, rel=1e-12)


def test_expJ_overflow_guard():
    with pytest.raises(TruncationError):
        expect_expJ(coherent_state(1e-20), 20.0)


def test_J_moments():
    assert expect_J_moments(fock_state(-4)) == (-4.0, 16.0, 0.0)
    mean, mean2, var = expect_J_moments(superpose([fock_state(0), fock_state(1)], [1, 1]))
    assert (mean, mean2, var) == pytest.approx((0.5, 0.5, 0.25))
    psi = coherent_state(0.4)
    assert np.allclose(apply_J(psi), psi.ms * psi.coeffs)


def test_fock_wavefunction_is_plane_wave():
    phis = np.linspace(-3, 3, 7)
    got = wavefunction(fock_state(2), phis)
    assert np.allclose(got, np.exp(2j * phis) / math.sqrt(2 * math.pi), atol=1e-15)


@pytest.mark.parametrize("alpha", [0.0, 0.5, math.pi / 2, -2.0, 3.0])
@pytest.mark.parametrize("r", [0.4, 1.0, 2.5])
def test_coherent_packet_center_is_label_phase(r, alpha):
    assert packet_center(coherent_state(r * cmath.exp(1j * alpha))) == pytest.approx(alpha, abs=1e-5)


def test_packet_center_ties():
    assert packet_center(fock_state(5)) == 0.0
    assert packet_center(cat_state(1.0, -1.0)) == 0.0
    assert packet_center(cat_state(1.0, 1.0)) == 0.0
    # mirror images of the odd cat: lobes at +-pi/2, smallest nonnegative wins
    assert packet_center(cat_state(1j, -1.0)) == pytest.approx(math.pi / 2, abs=1e-9)


def test_odd_cat_lobes_and_nodes():
    p = density(cat_state(1.0, -1.0), [0.0, math.pi / 2, -math.pi / 2, math.pi])
    assert p[1] < 1e-30 and p[2] < 1e-30
    assert p[0] == pytest.approx(p[3], rel=1e-12)


def test_coherent_densities_coincide_at_common_center():
    a, b = coherent_state(0.4), coherent_state(1.0)
    x = np.linspace(-math.pi, math.pi, 4097)
    pa = density(a, x + packet_center(a))
    pb = density(b, x + packet_center(b))
    assert np.max(np.abs(pa - pb)) < 1e-2


@pytest.mark.parametrize("psi", STATES, ids=IDS)
def test_analytic_moments_match_fine_quadrature(psi):
    window = WindowSpec(packet_center(psi), 65536)
    a = windowed_phi_moments(psi, window)
    q = windowed_phi_moments(psi, window, method="quadrature")
    assert abs(a.mean_phi - q.mean_phi) < 1e-8
    assert abs(a.var_phi - q.var_phi) < 1e-8


def test_windowed_variance_values():
    assert windowed_phi_moments(coherent_state(0.4)).var_phi == pytest.approx(0.500549, abs=1e-6)
    assert windowed_phi_moments(coherent_state(1.0)).var_phi == pytest.approx(0.500638, abs=1e-6)
    assert windowed_phi_moments(cat_state(1.0, -1.0)).var_phi == pytest.approx(3.81261, abs=1e-5)


def test_fock_angle_is_uniform():
    mom = windowed_phi_moments(fock_state(3))
    assert mom.mean_phi == 0.0
    assert mom.var_phi == pytest.approx(math.pi**2 / 3, abs=1e-14)


def test_window_shift_moves_mean_not_variance():
    psi = coherent_state(1.3 * cmath.exp(0.8j))
    base = windowed_phi_moments(psi, WindowSpec(0.8))
    moved = windowed_phi_moments(psi, WindowSpec(0.8 + 2 * math.pi))
    assert moved.mean_phi == pytest.approx(base.mean_phi + 2 * math.pi, abs=1e-12)
    assert moved.var_phi == pytest.approx(base.var_phi, abs=1e-12)
    assert base.mean_phi == pytest.approx(0.8, abs=1e-12)


def test_odd_cat_variance_same_on_either_lobe():
    psi = cat_state(1.0, -1.0)
    a = windowed_phi_moments(psi, WindowSpec(0.0)).var_phi
    b = windowed_phi_moments(psi, WindowSpec(math.pi)).var_phi
    assert a == pytest.approx(b, abs=1e-12)


@pytest.mark.parametrize("bad", [dict(grid_n=100), dict(grid_n=1025), dict(phi0=float("inf"))])
def test_window_validation(bad):
    with pytest.raises(ValueError):
        WindowSpec(**bad)


def test_unknown_moment_method():
    with pytest.raises(ValueError):
        windowed_phi_moments(fock_state(0), method="simpson")
    with pytest.raises(ValueError):
        sawtooth_moment(3, np.arange(3))


def test_phi_on_constant_state_is_sawtooth_series():
    coeffs, lo = apply_phi_windowed(fock_state(0), WindowSpec(0.0), m_range=(-8, 8))
    ns = np.arange(-8, 9)
    x = np.linspace(-math.pi, math.pi, 400001)
    w = np.full(len(x), x[1] - x[0])
    w[0] = w[-1] = w[0] / 2
    want = (w * x) @ np.exp(-1j * np.outer(x, ns)) / (2 * math.pi)
    assert lo == -8
    assert np.max(np.abs(coeffs - want)) < 1e-8
    assert coeffs[8] == 0
    nz = ns != 0
    assert np.allclose(coeffs[nz], 1j * (-1.0) ** ns[nz] / ns[nz], atol=1e-15)


def test_phi_norm_approaches_second_moment():
    # coefficients decay like 1/n, so the missing tail is 2 sum_{n>N} 1/n^2 < 2/N
    big = 4000
    coeffs, _ = apply_phi_windowed(fock_state(0), WindowSpec(0.0), m_range=(-big, big))
    missing = math.pi**2 / 3 - np.sum(np.abs(coeffs) ** 2)
    assert 0 < missing < 2 / big


@pytest.mark.parametrize("psi", STATES, ids=IDS)
def test_phi_matrix_element_is_mean(psi):
    window = WindowSpec(packet_center(psi))
    coeffs, lo = apply_phi_windowed(psi, window)
    hi = lo + len(coeffs) - 1
    got = np.vdot(psi.on_range(lo, hi), coeffs)
    assert abs(got - windowed_phi_moments(psi, window).mean_phi) < 1e-12
    centered, _ = apply_phi_windowed(psi, window, centered=True)
    assert abs(np.vdot(psi.on_range(lo, hi), centered)) < 1e-12


def test_X_Y_are_hermitian_parts():
    psi = squeezed_coherent_state(1.5 * cmath.exp(0.3j), 0.7)
    x, y, lo = apply_X_Y(psi.coeffs, psi.m_min, 0.7)
    c = psi.on_range(lo, lo + len(x) - 1)
    ex, ey = np.vdot(c, x), np.vdot(c, y)
    # Z psi = z psi, so <X> = Re z, <Y> = Im z
    z = psi.params["z"]
    assert abs(ex - z.real) < 1e-12 and abs(ey - z.imag) < 1e-12
