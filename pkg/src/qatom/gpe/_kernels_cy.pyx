# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled stepping kernels for the condensate field solver.

Same contract as _kernels_py; see that module for the conventions.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()


def apply_h_1d(cnp.complex128_t[::1] psi, double[::1] V, double kin,
               double u0, bint periodic):
    cdef Py_ssize_t n = psi.shape[0]
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] out_arr = np.empty(n, dtype=np.complex128)
    cdef cnp.complex128_t[::1] out = out_arr
    cdef Py_ssize_t j
    cdef double complex left, right, p
    for j in range(n):
        p = psi[j]
        left = psi[j - 1] if j > 0 else (psi[n - 1] if periodic else 0.0)
        right = psi[j + 1] if j < n - 1 else (psi[0] if periodic else 0.0)
        out[j] = -kin * (left + right - 2.0 * p) \
            + (V[j] + u0 * (p.real * p.real + p.imag * p.imag)) * p
    return out_arr


def apply_h_2d(cnp.complex128_t[:, ::1] psi, double[:, ::1] V, double kinx,
               double kiny, double u0, bint periodic):
    cdef Py_ssize_t ny = psi.shape[0], nx = psi.shape[1]
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] out_arr = np.empty((ny, nx), dtype=np.complex128)
    cdef cnp.complex128_t[:, ::1] out = out_arr
    cdef Py_ssize_t i, j
    cdef double complex up, dn, lf, rt, p
    for i in range(ny):
        for j in range(nx):
            p = psi[i, j]
            up = psi[i - 1, j] if i > 0 else (psi[ny - 1, j] if periodic else 0.0)
            dn = psi[i + 1, j] if i < ny - 1 else (psi[0, j] if periodic else 0.0)
            lf = psi[i, j - 1] if j > 0 else (psi[i, nx - 1] if periodic else 0.0)
            rt = psi[i, j + 1] if j < nx - 1 else (psi[i, 0] if periodic else 0.0)
            out[i, j] = -kinx * (lf + rt - 2.0 * p) - kiny * (up + dn - 2.0 * p) \
                + (V[i, j] + u0 * (p.real * p.real + p.imag * p.imag)) * p
    return out_arr


cdef void _pin_1d(cnp.complex128_t[::1] psi) noexcept:
    psi[0] = 0.0
    psi[psi.shape[0] - 1] = 0.0


cdef void _pin_2d(cnp.complex128_t[:, ::1] psi) noexcept:
    cdef Py_ssize_t ny = psi.shape[0], nx = psi.shape[1]
    cdef Py_ssize_t i, j
    for j in range(nx):
        psi[0, j] = 0.0
        psi[ny - 1, j] = 0.0
    for i in range(ny):
        psi[i, 0] = 0.0
        psi[i, nx - 1] = 0.0


def evolve_1d(psi_in, double[::1] V, double kin, double u0,
              double dt_over_hbar, Py_ssize_t nsteps,
              bint imag_time=False, bint midpoint=False, bint periodic=False,
              double dv=1.0, double target_norm2=-1.0):
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] psi_arr = \
        np.array(psi_in, dtype=np.complex128, copy=True)
    cdef cnp.complex128_t[::1] psi = psi_arr
    cdef Py_ssize_t n = psi.shape[0]
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] work_arr = np.empty(n, dtype=np.complex128)
    cdef cnp.complex128_t[::1] work = work_arr
    cdef cnp.complex128_t[::1] h
    cdef double complex c
    cdef Py_ssize_t step, j
    cdef double n2, scale
    c = dt_over_hbar if imag_time else 1j * dt_over_hbar
    for step in range(nsteps):
        if midpoint:
            h = apply_h_1d(psi, V, kin, u0, periodic)
            for j in range(n):
                work[j] = psi[j] - 0.5 * c * h[j]
            if not periodic:
                _pin_1d(work)
            h = apply_h_1d(work, V, kin, u0, periodic)
        else:
            h = apply_h_1d(psi, V, kin, u0, periodic)
        for j in range(n):
            psi[j] = psi[j] - c * h[j]
        if not periodic:
            _pin_1d(psi)
        if imag_time and target_norm2 > 0.0:
            n2 = 0.0
            for j in range(n):
                n2 += psi[j].real * psi[j].real + psi[j].imag * psi[j].imag
            scale = (target_norm2 / (n2 * dv)) ** 0.5
            for j in range(n):
                psi[j] = psi[j] * scale
    return psi_arr


def evolve_2d(psi_in, double[:, ::1] V, double kinx, double kiny, double u0,
              double dt_over_hbar, Py_ssize_t nsteps,
              bint imag_time=False, bint midpoint=False, bint periodic=False,
              double dv=1.0, double target_norm2=-1.0):
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] psi_arr = \
        np.array(psi_in, dtype=np.complex128, copy=True)
    cdef cnp.complex128_t[:, ::1] psi = psi_arr
    cdef Py_ssize_t ny = psi.shape[0], nx = psi.shape[1]
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] work_arr = np.empty((ny, nx), dtype=np.complex128)
    cdef cnp.complex128_t[:, ::1] work = work_arr
    cdef cnp.complex128_t[:, ::1] h
    cdef double complex c
    cdef Py_ssize_t step, i, j
    cdef double n2, scale
    c = dt_over_hbar if imag_time else 1j * dt_over_hbar
    for step in range(nsteps):
        if midpoint:
            h = apply_h_2d(psi, V, kinx, kiny, u0, periodic)
            for i in range(ny):
                for j in range(nx):
                    work[i, j] = psi[i, j] - 0.5 * c * h[i, j]
            if not periodic:
                _pin_2d(work)
            h = apply_h_2d(work, V, kinx, kiny, u0, periodic)
        else:
            h = apply_h_2d(psi, V, kinx, kiny, u0, periodic)
        for i in range(ny):
            for j in range(nx):
                psi[i, j] = psi[i, j] - c * h[i, j]
        if not periodic:
            _pin_2d(psi)
        if imag_time and target_norm2 > 0.0:
            n2 = 0.0
            for i in range(ny):
                for j in range(nx):
                    n2 += psi[i, j].real * psi[i, j].real + psi[i, j].imag * psi[i, j].imag
            scale = (target_norm2 / (n2 * dv)) ** 0.5
            for i in range(ny):
                for j in range(nx):
                    psi[i, j] = psi[i, j] * scale
    return psi_arr
