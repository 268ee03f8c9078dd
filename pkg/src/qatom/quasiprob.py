"""Husimi Q and spherical Wigner distributions for spin ensembles.

Both distributions live on the Bloch sphere.  Q is the spin-coherent-state
overlap (N+1)/(4 pi) <<n|rho|n>> and is nonnegative with unit integral; the
Wigner function is the multipole expansion

    W(theta, phi) = sum_{l=0}^{N} sum_m rho_lm Y_lm(theta, phi),
    rho_lm = sum_{k1} (-1)^(N + k2) <j m1; j -m2 | l m> rho[k1, k2],

with j = N/2, m = m1 - m2 (so k2 = k1 - m), complex Y_lm with the
Condon-Shortley phase matching the Clebsch-Gordan convention, and its
integral is sqrt(4 pi/(N+1)) Tr rho.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import sph_harm_y

from .spinalg import DensityMatrix, KetVector, clebsch_gordan, scs_amplitudes, spinor_state


@dataclass(frozen=True)
class SphereGrid:
    """Quadrature nodes for integrals of the form int f sin(theta) dtheta dphi."""

    thetas: np.ndarray
    phis: np.ndarray
    theta_weights: np.ndarray  # weights for the cos(theta) measure

    @property
    def weights(self) -> np.ndarray:
        return np.outer(self.theta_weights, np.full(self.phis.size, 2 * np.pi / self.phis.size))

    @property
    def shape(self):
        return (self.thetas.size, self.phis.size)


@dataclass(frozen=True)
class SphereFunction:
    grid: SphereGrid
    values: np.ndarray


def sphere_grid(ntheta: int, nphi: int, kind: str = "gauss") -> SphereGrid:
    """Gauss-Legendre nodes in cos(theta) (default) or uniform theta midpoints.

    With the uniform phi grid the total weight is exactly 4 pi for the
    gauss variant; uniform theta carries the sin(theta) factor in its
    weights and integrates constants to O(ntheta^-2).
    """
    if kind == "gauss":
        x, w = np.polynomial.legendre.leggauss(ntheta)
        thetas = np.arccos(x[::-1])
        weights = w[::-1]
    elif kind == "uniform":
        dtheta = np.pi / ntheta
        thetas = (np.arange(ntheta) + 0.5) * dtheta
        weights = np.sin(thetas) * dtheta
    else:
        raise ValueError(f"unknown grid kind {kind!r}")
    phis = 2 * np.pi * np.arange(nphi) / nphi
    return SphereGrid(thetas=thetas, phis=phis, theta_weights=weights)


def default_grid(N: int) -> SphereGrid:
    return sphere_grid(2 * (N + 1), 4 * (N + 1))


def integrate(grid: SphereGrid, values: np.ndarray) -> float:
    return float(np.sum(grid.weights * values))


def _as_rho_or_ket(state):
    """Return (N, ket_amps or None, rho or None)."""
    if isinstance(state, KetVector):
        return state.basis.N, state.amps, None
    if isinstance(state, DensityMatrix):
        return state.basis.N, None, state.rho
    arr = np.asarray(state, dtype=complex)
    if arr.ndim == 1:
        return arr.size - 1, arr, None
    if arr.ndim == 2 and arr.shape[0] == arr.shape[1]:
        return arr.shape[0] - 1, None, arr
    raise ValueError(f"cannot interpret state with shape {arr.shape}")


def _theta_profiles(N: int, thetas: np.ndarray) -> np.ndarray:
    """Matrix B[i, k] = sqrt(C(N,k)) cos^k(t_i/2) sin^(N-k)(t_i/2)."""
    return np.array([np.abs(scs_amplitudes(N, t, 0.0)) for t in thetas])


def husimi_q(state, grid: SphereGrid | None = None) -> SphereFunction:
    """Q(theta, phi) on the grid; defaults to the 2(N+1) x 4(N+1) grid."""
    N, ket, rho = _as_rho_or_ket(state)
    if grid is None:
        grid = default_grid(N)
    B = _theta_profiles(N, grid.thetas)
    k = np.arange(N + 1)
    # global phase e^{i N phi / 2} dropped: only |<scs|.>|^2 matters
    E = np.exp(1j * np.outer(k, grid.phis))
    if ket is not None:
        amp = (B * ket[None, :]) @ E
        vals = (N + 1) / (4 * np.pi) * np.abs(amp) ** 2
    else:
        vals = np.empty(grid.shape)
        Econj = E.conj()
        for i in range(grid.thetas.size):
            c = B[i][:, None] * Econj  # scs amplitudes at (t_i, all phi)
            vals[i] = (N + 1) / (4 * np.pi) * np.real(np.sum(c.conj() * (rho @ c), axis=0))
    return SphereFunction(grid, vals)


def husimi_q_at(state, thetas, phis) -> np.ndarray:
    """Pointwise Q at arbitrary (theta, phi) pairs."""
    N, ket, rho = _as_rho_or_ket(state)
    thetas = np.atleast_1d(np.asarray(thetas, dtype=float))
    phis = np.atleast_1d(np.asarray(phis, dtype=float))
    out = np.empty(thetas.size)
    for i, (t, p) in enumerate(zip(thetas.ravel(), phis.ravel())):
        c = scs_amplitudes(N, t, p)
        if ket is not None:
            out[i] = (N + 1) / (4 * np.pi) * abs(np.vdot(c, ket)) ** 2
        else:
            out[i] = (N + 1) / (4 * np.pi) * np.real(np.vdot(c, rho @ c))
    return out.reshape(np.broadcast(thetas, phis).shape)


def _multipole_coefficients(N: int, rho: np.ndarray) -> dict:
    """rho_lm for l = 0..N, m = -l..l."""
    j = N / 2.0
    coeffs = {}
    for l in range(N + 1):
        for m in range(-l, l + 1):
            k1min, k1max = max(0, m), min(N, N + m)
            total = 0.0 + 0.0j
            for k1 in range(k1min, k1max + 1):
                k2 = k1 - m
                cg = clebsch_gordan(j, k1 - j, j, -(k2 - j), l, m)
                if cg != 0.0:
                    total += (-1.0) ** (N + k2) * cg * rho[k1, k2]
            coeffs[(l, m)] = total
    return coeffs


def wigner(state, grid: SphereGrid | None = None) -> SphereFunction:
    """Spherical Wigner function; real part returned, imaginary residual checked."""
    N, ket, rho = _as_rho_or_ket(state)
    if rho is None:
        rho = np.outer(ket, ket.conj())
    if grid is None:
        grid = default_grid(N)
    coeffs = _multipole_coefficients(N, rho)
    # Lambda[l][m] profiles on the theta nodes; separability in phi
    T = np.zeros((2 * N + 1, grid.thetas.size), dtype=complex)  # index m + N
    for l in range(N + 1):
        for m in range(0, l + 1):
            lam = sph_harm_y(l, m, grid.thetas, 0.0).real
            T[m + N] += coeffs[(l, m)] * lam
            if m > 0:
                T[-m + N] += coeffs[(l, -m)] * (-1.0) ** m * lam
    ms = np.arange(-N, N + 1)
    E = np.exp(1j * np.outer(ms, grid.phis))
    vals = np.einsum("mt,mp->tp", T, E)
    resid = np.max(np.abs(vals.imag))
    if resid > 1e-9:
        raise AssertionError(f"Wigner imaginary residual {resid:.2e} exceeds 1e-9")
    return SphereFunction(grid, vals.real)


# ---------------------------------------------------------------------------
# closed forms


def _central_angle_cos(thetas, phis, theta0, phi0):
    t = thetas[:, None]
    p = phis[None, :]
    return np.cos(t) * np.cos(theta0) + np.sin(t) * np.sin(theta0) * np.cos(p - phi0)


def q_scs_closed_form(N, theta0, phi0, grid: SphereGrid) -> SphereFunction:
    """Q of a spin coherent state at (theta0, phi0): a cos^2N lobe."""
    c = np.clip(_central_angle_cos(grid.thetas, grid.phis, theta0, phi0), -1.0, 1.0)
    vals = (N + 1) / (4 * np.pi) * ((1 + c) / 2) ** N  # cos^2(x/2) = (1+cos x)/2
    return SphereFunction(grid, vals)


def q_fock_closed_form(N, k, grid: SphereGrid) -> SphereFunction:
    """Q of a Fock state: phi-independent band peaked at cos(theta) = (2k-N)/N."""
    B = _theta_profiles(N, grid.thetas)
    vals = (N + 1) / (4 * np.pi) * np.repeat(B[:, k : k + 1] ** 2, grid.phis.size, axis=1)
    return SphereFunction(grid, vals)


def wigner_scs_closed_form(N, theta0, phi0, grid: SphereGrid) -> SphereFunction:
    """Wigner function of an SCS as a Legendre series in the central angle."""
    from scipy.special import eval_legendre, gammaln

    cosd = np.clip(_central_angle_cos(grid.thetas, grid.phis, theta0, phi0), -1.0, 1.0)
    vals = np.zeros(grid.shape)
    logNfact = gammaln(N + 1)
    for l in range(N + 1):
        coef = np.sqrt(2 * l + 1) * np.exp(
            logNfact - 0.5 * (gammaln(N - l + 1) + gammaln(l + 2 + N))
        )
        vals += coef * np.sqrt((2 * l + 1) / (4 * np.pi)) * eval_legendre(l, cosd)
    return SphereFunction(grid, vals)


def cat_state(N, theta0, phi0, parity: int) -> KetVector:
    """Superposition of the SCS at (theta0, phi0) with its mirrored antipode.

    The second branch carries the spinor (-beta0, alpha0), centered at
    (pi - theta0, -phi0); parity +1/-1 selects the sign between the lobes.
    """
    if parity not in (+1, -1):
        raise ValueError("parity must be +1 or -1")
    a0 = np.cos(theta0 / 2) * np.exp(-1j * phi0 / 2)
    b0 = np.sin(theta0 / 2) * np.exp(+1j * phi0 / 2)
    from .spinalg import EnsembleBasis

    amps = spinor_state(N, a0, b0) + parity * spinor_state(N, -b0, a0)
    nrm = np.linalg.norm(amps)
    if nrm < 1e-12:
        raise ValueError("the two branches cancel exactly at these angles")
    return KetVector(EnsembleBasis(N), amps / nrm)


def q_cat_state(N, theta0, phi0, parity: int, grid: SphereGrid | None = None) -> SphereFunction:
    """Closed-form Q of the two-lobe cat state, exact cross term included.

    The cross term is 2 Re[(z1* z2)^N] with z1, z2 the single-spin overlaps
    against the two lobes; dropping it (it is exponentially small in N)
    gives the familiar two-lobe sum.
    """
    if parity not in (+1, -1):
        raise ValueError("parity must be +1 or -1")
    if grid is None:
        grid = default_grid(N)
    a0 = np.cos(theta0 / 2) * np.exp(-1j * phi0 / 2)
    b0 = np.sin(theta0 / 2) * np.exp(+1j * phi0 / 2)
    t = grid.thetas[:, None]
    p = grid.phis[None, :]
    a = np.cos(t / 2) * np.exp(-1j * p / 2)
    b = np.sin(t / 2) * np.exp(+1j * p / 2)
    z1 = a.conj() * a0 + b.conj() * b0
    z2 = a.conj() * (-b0) + b.conj() * a0
    cross = 2 * np.real((z1.conj() * z2) ** N)
    norm2 = 2.0 + parity * 2 * np.real((np.conj(a0) * (-b0) + np.conj(b0) * a0) ** N)
    if norm2 < 1e-12:
        raise ValueError("the two branches cancel exactly at these angles")
    vals = (
        (N + 1)
        / (4 * np.pi)
        * (np.abs(z1) ** (2 * N) + np.abs(z2) ** (2 * N) + parity * cross)
        / norm2
    )
    return SphereFunction(grid, vals)
