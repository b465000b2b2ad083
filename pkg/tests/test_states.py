import cmath
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from circle_unc.exceptions import CircleDomainError, DegenerateSuperpositionError, TruncationError
from circle_unc.states import (
    M_CAP,
    CircleState,
    apply_Z,
    cat_normalization,
    cat_state,
    coherent_state,
    fock_state,
    squeezed_coherent_state,
    state_to_csv,
    superpose,
)
from circle_unc.theta import cs_overlap

from .conftest import Z_MODS, Z_PHASES, series_coeffs

Z_GRID = [r * cmath.exp(1j * ph) for r in Z_MODS for ph in Z_PHASES]
S_GRID = (0.1, 0.5, 1.0, 2.0)


def eigen_residual(psi, z, s):
    out, lo = apply_Z(psi.coeffs, psi.m_min, s)
    hi = lo + len(out) - 1
    m_lo, m_hi = min(lo, psi.m_min), max(hi, psi.m_max)
    zpsi = np.zeros(m_hi - m_lo + 1, dtype=complex)
    zpsi[lo - m_lo : hi - m_lo + 1] = out
    return np.linalg.norm(zpsi - z * psi.on_range(m_lo, m_hi)) / abs(z)


@pytest.mark.parametrize("z", Z_GRID, ids=lambda z: f"{z:.3g}")
def test_coherent_state_is_normalized_eigenvector(z):
    psi = coherent_state(z)
    assert abs(psi.norm - 1.0) < 1e-14
    assert eigen_residual(psi, z, 1.0) < 1e-10


@pytest.mark.parametrize("s", S_GRID)
@pytest.mark.parametrize("z", Z_GRID, ids=lambda z: f"{z:.3g}")
def test_squeezed_state_is_eigenvector_of_deformed_Z(z, s):
    psi = squeezed_coherent_state(z, s)
    assert abs(psi.norm - 1.0) < 1e-14
    assert eigen_residual(psi, z, s) < 1e-10
    # truncation certificate: edge amplitudes far below the peak
    c = np.abs(psi.coeffs)
    assert max(c[0], c[-1]) < 1e-15 * c.max()


@pytest.mark.parametrize("z", [1.0, 0.4j, 2.5 * cmath.exp(0.3j)])
def test_coherent_coefficients_follow_series_law(z):
    ms, c = series_coeffs(z)
    c /= np.linalg.norm(c)
    psi = coherent_state(z)
    assert np.max(np.abs(psi.on_range(ms[0], ms[-1]) - c)) < 1e-14


def test_squeezed_with_unit_s_is_coherent():
    for z in Z_GRID:
        a, b = coherent_state(z), squeezed_coherent_state(z, 1.0)
        assert a.m_min == b.m_min and np.array_equal(a.coeffs, b.coeffs)


def test_overlap_of_raw_vectors_is_theta_value():
    z1, z2 = 0.7 * cmath.exp(0.4j), 1.9 * cmath.exp(-2.0j)
    a, b = coherent_state(z1), coherent_state(z2)
    lo, hi = min(a.m_min, b.m_min), max(a.m_max, b.m_max)
    got = np.vdot(a.on_range(lo, hi), b.on_range(lo, hi))
    want = cs_overlap(z1, z2) / math.sqrt(cs_overlap(z1, z1).real * cs_overlap(z2, z2).real)
    assert abs(got - want) < 1e-14


@pytest.mark.parametrize("z", [1e-40, 1e40])
def test_extreme_labels_exceed_cap(z):
    with pytest.raises(TruncationError):
        coherent_state(z)


def test_strong_squeezing_exceeds_cap():
    with pytest.raises(TruncationError):
        squeezed_coherent_state(1.0, 0.005)
    assert M_CAP == 64


@pytest.mark.parametrize("bad", [(0, 1.0), (1.0, 0.0), (1.0, -1.0), (1.0, float("nan"))])
def test_domain_errors(bad):
    with pytest.raises(CircleDomainError):
        squeezed_coherent_state(*bad)


@pytest.mark.parametrize("a", [1, -1, 1j, -1j, 0.5, -2])
@pytest.mark.parametrize("z", [0.4, 1.0, 2.0 * cmath.exp(0.7j)])
def test_cat_normalization_matches_overlap_formula(z, a):
    plus, minus = coherent_state(z), coherent_state(-z)
    lo, hi = min(plus.m_min, minus.m_min), max(plus.m_max, minus.m_max)
    raw = plus.on_range(lo, hi) + a * minus.on_range(lo, hi)
    assert abs(cat_normalization(z, a) * np.linalg.norm(raw) - 1.0) < 1e-12
    psi = cat_state(z, a)
    assert abs(psi.norm - 1.0) < 1e-14
    assert np.max(np.abs(psi.on_range(lo, hi) - cat_normalization(z, a) * raw)) < 1e-12


def test_cat_with_zero_weight_is_coherent():
    a, b = cat_state(0.4, 0), coherent_state(0.4)
    assert np.array_equal(a.coeffs, b.coeffs)


@pytest.mark.parametrize("z", [0.4, 1.0, 3.0])
def test_odd_cat_has_only_odd_m(z):
    psi = cat_state(z, -1.0)
    even = psi.ms % 2 == 0
    assert np.max(np.abs(psi.coeffs[even])) < 1e-15
    psi = cat_state(z, 1.0)
    assert np.max(np.abs(psi.coeffs[~even])) < 1e-15


def test_odd_cat_weights():
    psi = cat_state(1.0, -1.0)
    odd = np.arange(-21, 22, 2)
    w = np.exp(-odd.astype(float) ** 2)
    w /= w.sum()
    assert np.allclose(np.abs(psi.on_range(-21, 21)[odd + 21]) ** 2, w, atol=1e-15)


def test_fock_state():
    psi = fock_state(-3)
    assert psi.m_min == psi.m_max == -3 and psi.coeff(-3) == 1
    assert psi.coeff(0) == 0


def test_superpose_identity_and_cat():
    psi = coherent_state(0.4)
    same = superpose([psi], [2.0j])
    assert np.allclose(same.coeffs, 1j * psi.coeffs, atol=1e-15)
    cat = superpose([coherent_state(1.0), coherent_state(-1.0)], [1, -1])
    assert np.allclose(cat.on_range(-20, 20), cat_state(1.0, -1.0).on_range(-20, 20), atol=1e-15)


def test_superpose_two_fock_states():
    psi = superpose([fock_state(0), fock_state(1)], [1, 1])
    assert psi.m_min == 0 and np.allclose(psi.coeffs, [2**-0.5, 2**-0.5])


def test_superpose_trims_zero_ends():
    psi = superpose([fock_state(-4), fock_state(4), fock_state(0)], [1, 0, 1])
    assert (psi.m_min, psi.m_max) == (-4, 0)


def test_superpose_errors():
    with pytest.raises(DegenerateSuperpositionError):
        superpose([fock_state(2), fock_state(2)], [1, -1])
    with pytest.raises(ValueError):
        superpose([], [])
    with pytest.raises(ValueError):
        superpose([fock_state(0)], [1, 2])


def test_coefficients_are_read_only():
    psi = coherent_state(1.0)
    with pytest.raises(ValueError):
        psi.coeffs[0] = 1.0


@given(st.integers(-30, 30), st.floats(0.05, 3.0), st.booleans())
def test_Z_and_adjoint_are_adjoint(m0, s, dag):
    rng = np.random.default_rng(m0 + 100)
    u = rng.normal(size=5) + 1j * rng.normal(size=5)
    v = rng.normal(size=5) + 1j * rng.normal(size=5)
    zu, lo_u = apply_Z(u, m0, s)
    zdv, lo_v = apply_Z(v, m0 + 1, s, dagger=True)
    # <v'|Z u> with v' on [m0+1, m0+5]; <Z^+ v'|u> with u on [m0, m0+4]
    assert lo_u == m0 + 1 and lo_v == m0
    assert abs(np.vdot(v, zu) - np.vdot(zdv, u)) < 1e-12 * max(1.0, np.abs(zu).max(), np.abs(zdv).max()) ** 2


def test_csv_dump():
    text = state_to_csv(cat_state(1.0, -1.0))
    lines = text.splitlines()
    assert lines[0] == "# family=cat"
    assert lines[1].startswith("# params=z=1,0;a=-1,0")
    assert lines[3] == "m,re,im,abs2"
    rows = np.array([[float(x) for x in ln.split(",")] for ln in lines[4:]])
    assert abs(rows[:, 3].sum() - 1.0) < 1e-14
    assert np.allclose(rows[:, 1] ** 2 + rows[:, 2] ** 2, rows[:, 3], rtol=1e-15, atol=0)


def test_state_repr_and_range():
    psi = CircleState(2, [1.0, 0.0])
    assert "m=[2, 3]" in repr(psi)
    assert np.array_equal(psi.on_range(0, 5), [0, 0, 1, 0, 0, 0])
    assert np.array_equal(psi.on_range(3, 3), [0])
