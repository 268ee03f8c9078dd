"""Pure-numpy fallback kernels for the condensate field stepper.

Signatures mirror the compiled extension exactly; the backend is chosen in
qatom.gpe at import time.  All arrays are complex128; `kin` carries
hbar^2 / (2 m dx^2) so the second difference is dimensionless.  Hard-wall
runs treat off-grid values as zero and the evolve loops pin the boundary
nodes to zero after every stage.
"""

import numpy as np


def apply_h_1d(psi, V, kin, u0, periodic):
    """Gross-Pitaevskii H acting on a 1D field."""
    lap = np.empty_like(psi)
    lap[1:-1] = psi[2:] - 2.0 * psi[1:-1] + psi[:-2]
    if periodic:
        lap[0] = psi[1] - 2.0 * psi[0] + psi[-1]
        lap[-1] = psi[0] - 2.0 * psi[-1] + psi[-2]
    else:
        lap[0] = psi[1] - 2.0 * psi[0]
        lap[-1] = psi[-2] - 2.0 * psi[-1]
    return -kin * lap + (V + u0 * np.abs(psi) ** 2) * psi


def apply_h_2d(psi, V, kinx, kiny, u0, periodic):
    """Gross-Pitaevskii H on a 2D field; axis 0 is y, axis 1 is x."""
    if periodic:
        lapx = np.roll(psi, 1, axis=1) + np.roll(psi, -1, axis=1) - 2.0 * psi
        lapy = np.roll(psi, 1, axis=0) + np.roll(psi, -1, axis=0) - 2.0 * psi
    else:
        lapx = -2.0 * psi
        lapx = lapx.copy()
        lapx[:, :-1] += psi[:, 1:]
        lapx[:, 1:] += psi[:, :-1]
        lapy = -2.0 * psi
        lapy = lapy.copy()
        lapy[:-1, :] += psi[1:, :]
        lapy[1:, :] += psi[:-1, :]
    return -kinx * lapx - kiny * lapy + (V + u0 * np.abs(psi) ** 2) * psi


def _pin_walls_1d(psi):
    psi[0] = 0.0
    psi[-1] = 0.0


def _pin_walls_2d(psi):
    psi[0, :] = 0.0
    psi[-1, :] = 0.0
    psi[:, 0] = 0.0
    psi[:, -1] = 0.0


def evolve_1d(psi, V, kin, u0, dt_over_hbar, nsteps,
              imag_time=False, midpoint=False, periodic=False,
              dv=1.0, target_norm2=-1.0):
    """March the field nsteps of explicit Euler (or midpoint) time stepping.

    Real time advances psi by -i dt/hbar H psi per step; imaginary time by
    -dt/hbar H psi with optional renormalization of the squared norm
    (integral of |psi|^2 dv) back to target_norm2 after every step.
    """
    psi = np.array(psi, dtype=np.complex128, copy=True)
    c = dt_over_hbar if imag_time else 1j * dt_over_hbar
    for _ in range(nsteps):
        if midpoint:
            mid = psi - 0.5 * c * apply_h_1d(psi, V, kin, u0, periodic)
            if not periodic:
                _pin_walls_1d(mid)
            psi = psi - c * apply_h_1d(mid, V, kin, u0, periodic)
        else:
            psi = psi - c * apply_h_1d(psi, V, kin, u0, periodic)
        if not periodic:
            _pin_walls_1d(psi)
        if imag_time and target_norm2 > 0.0:
            n2 = np.sum(np.abs(psi) ** 2) * dv
            psi *= np.sqrt(target_norm2 / n2)
    return psi


def evolve_2d(psi, V, kinx, kiny, u0, dt_over_hbar, nsteps,
              imag_time=False, midpoint=False, periodic=False,
              dv=1.0, target_norm2=-1.0):
    """2D counterpart of evolve_1d."""
    psi = np.array(psi, dtype=np.complex128, copy=True)
    c = dt_over_hbar if imag_time else 1j * dt_over_hbar
    for _ in range(nsteps):
        if midpoint:
            mid = psi - 0.5 * c * apply_h_2d(psi, V, kinx, kiny, u0, periodic)
            if not periodic:
                _pin_walls_2d(mid)
            psi = psi - c * apply_h_2d(mid, V, kinx, kiny, u0, periodic)
        else:
            psi = psi - c * apply_h_2d(psi, V, kinx, kiny, u0, periodic)
        if not periodic:
            _pin_walls_2d(psi)
        if imag_time and target_norm2 > 0.0:
            n2 = np.sum(np.abs(psi) ** 2) * dv
            psi *= np.sqrt(target_norm2 / n2)
    return psi
