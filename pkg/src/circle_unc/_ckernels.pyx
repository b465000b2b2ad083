# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the kernels in _pykernels (same signatures)."""
import numpy as np

from libc.math cimport cos, sin, M_PI


def synthesize(coeffs, long m_min, phis):
    cdef const double complex[:] c = np.ascontiguousarray(coeffs, dtype=np.complex128)
    cdef const double[:] x = np.ascontiguousarray(phis, dtype=np.float64)
    cdef Py_ssize_t n = c.shape[0], npts = x.shape[0], i, k
    out = np.empty(npts, dtype=np.complex128)
    cdef double complex[:] o = out
    cdef double complex w, acc, lead
    cdef double ph
    with nogil:
        for i in range(npts):
            ph = x[i]
            w = cos(ph) + 1j * sin(ph)
            acc = 0
            # Horner in w = exp(i phi), then the exp(i m_min phi) prefactor
            for k in range(n - 1, -1, -1):
                acc = acc * w + c[k]
            lead = cos(m_min * ph) + 1j * sin(m_min * ph)
            o[i] = acc * lead
    return out


def phi_moment_sums(cp, long m_min):
    cdef const double complex[:] c = np.ascontiguousarray(cp, dtype=np.complex128)
    cdef Py_ssize_t n = c.shape[0], j, k, d
    re_arr = np.ascontiguousarray(np.real(cp), dtype=np.float64)
    im_arr = np.ascontiguousarray(np.imag(cp), dtype=np.float64)
    cdef const double[:] re = re_arr
    cdef const double[:] im = im_arr
    # signed reciprocal tables (-1)^d / d and (-1)^d / d^2
    inv1_arr = np.zeros(max(n, 1))
    inv2_arr = np.zeros(max(n, 1))
    cdef double[:] inv1 = inv1_arr
    cdef double[:] inv2 = inv2_arr
    cdef double sg = 1.0, m1 = 0.0, m2 = 0.0, norm = 0.0, pr, pi_
    for d in range(1, n):
        sg = -sg
        inv1[d] = sg / d
        inv2[d] = sg / (<double>d * d)
    with nogil:
        for j in range(n):
            norm += re[j] * re[j] + im[j] * im[j]
            for k in range(j + 1, n):
                d = k - j
                # conj(c_j) c_k; pairs (j,k) and (k,j) contribute equally
                pr = re[j] * re[k] + im[j] * im[k]
                pi_ = re[j] * im[k] - im[j] * re[k]
                m1 += pi_ * inv1[d]
                m2 += pr * inv2[d]
    return 2.0 * m1, M_PI * M_PI / 3.0 * norm + 4.0 * m2


def sawtooth_project(cp, long m_min, long out_lo, Py_ssize_t out_n):
    cdef Py_ssize_t n = len(cp), i, k
    cdef long d, off = m_min - out_lo
    re_arr = np.ascontiguousarray(np.real(cp), dtype=np.float64)
    im_arr = np.ascontiguousarray(np.imag(cp), dtype=np.float64)
    cdef const double[:] re = re_arr
    cdef const double[:] im = im_arr
    # (-1)^d / d indexed by d + span
    cdef Py_ssize_t span = n + out_n + abs(off) + 1
    tab_arr = np.zeros(2 * span + 1)
    cdef double[:] tab = tab_arr
    for d in range(1, span + 1):
        tab[span + d] = (1.0 if d % 2 == 0 else -1.0) / d
        tab[span - d] = -tab[span + d]
    out_re = np.zeros(out_n)
    out_im = np.zeros(out_n)
    cdef double[:] ore = out_re
    cdef double[:] oim = out_im
    cdef double ar, ai, t
    with nogil:
        for i in range(out_n):
            ar = 0.0
            ai = 0.0
            for k in range(n):
                # coefficient -i (-1)^d / d with d = m - n_out
                t = tab[span + off + k - i]
                ar += t * im[k]
                ai -= t * re[k]
            ore[i] = ar
            oim[i] = ai
    return out_re + 1j * out_im
