"""Sphere-distribution tests: quadrature, Husimi Q, Wigner, cat states."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qatom.quasiprob import (
    SphereGrid,
    cat_state,
    default_grid,
    husimi_q,
    husimi_q_at,
    integrate,
    q_cat_state,
    q_fock_closed_form,
    q_scs_closed_form,
    sphere_grid,
    wigner,
    wigner_scs_closed_form,
)
from qatom.spinalg import (
    DensityMatrix,
    EnsembleBasis,
    KetVector,
    rotate,
    scs_amplitudes,
)


def scs_ket(N, theta, phi):
    return KetVector(EnsembleBasis(N), scs_amplitudes(N, theta, phi))


def fock_ket(N, k):
    amps = np.zeros(N + 1, dtype=complex)
    amps[k] = 1.0
    return KetVector(EnsembleBasis(N), amps)


def random_ket(N, seed):
    rng = np.random.default_rng(seed)
    amps = rng.normal(size=N + 1) + 1j * rng.normal(size=N + 1)
    return KetVector(EnsembleBasis(N), amps / np.linalg.norm(amps))


# ---------------------------------------------------------------------------
# quadrature grids


def test_gauss_grid_total_weight():
    for ntheta, nphi in [(4, 8), (31, 17), (128, 256)]:
        g = sphere_grid(ntheta, nphi)
        assert abs(np.sum(g.weights) - 4 * np.pi) < 1e-10


def test_uniform_grid_total_weight_converges():
    g = sphere_grid(400, 4, kind="uniform")
    assert abs(np.sum(g.weights) - 4 * np.pi) < 1e-4


def test_unknown_grid_kind():
    with pytest.raises(ValueError):
        sphere_grid(8, 8, kind="legendre-gauss")


def test_default_grid_shape():
    g = default_grid(7)
    assert g.shape == (16, 32)


# ---------------------------------------------------------------------------
# Husimi Q


def test_q_unit_integral_128x256():
    # spec-level tolerance: 1e-6 on the 128x256 grid up to N=30
    g = sphere_grid(128, 256)
    for N in (1, 5, 17, 30):
        psi = scs_ket(N, 1.1, -2.0)
        q = husimi_q(psi, g)
        assert abs(integrate(g, q.values) - 1.0) < 1e-6
        assert np.all(q.values >= -1e-12)


def test_q_unit_integral_default_grid():
    for N in (2, 9, 24):
        q = husimi_q(random_ket(N, seed=N))
        assert abs(integrate(q.grid, q.values) - 1.0) < 1e-10


@settings(max_examples=25, deadline=None)
@given(N=st.integers(1, 25), seed=st.integers(0, 2**32 - 1))
def test_q_positive_normalized_property(N, seed):
    q = husimi_q(random_ket(N, seed))
    assert np.all(q.values >= -1e-12)
    assert abs(integrate(q.grid, q.values) - 1.0) < 1e-8


def test_q_scs_matches_closed_form():
    N, th0, ph0 = 12, 0.7, 1.9
    g = default_grid(N)
    q = husimi_q(scs_ket(N, th0, ph0), g)
    ref = q_scs_closed_form(N, th0, ph0, g)
    assert np.max(np.abs(q.values - ref.values)) < 1e-12


def test_q_fock_band():
    N, k = 12, 4
    g = default_grid(N)
    q = husimi_q(fock_ket(N, k), g)
    ref = q_fock_closed_form(N, k, g)
    assert np.max(np.abs(q.values - ref.values)) < 1e-12
    # phi-independent band
    assert np.max(np.ptp(q.values, axis=1)) < 1e-14
    # peak position: cos(theta*) = (2k - N)/N on a dense theta line
    thetas = np.linspace(1e-3, np.pi - 1e-3, 20001)
    vals = husimi_q_at(fock_ket(N, k), thetas, np.zeros_like(thetas))
    theta_star = np.arccos((2 * k - N) / N)
    assert abs(thetas[np.argmax(vals)] - theta_star) < 2e-4


def test_q_maximally_mixed_flat():
    N = 8
    rho = DensityMatrix(EnsembleBasis(N), np.eye(N + 1) / (N + 1))
    q = husimi_q(rho)
    assert np.max(np.abs(q.values - 1 / (4 * np.pi))) < 1e-13


def test_q_ket_and_rho_routes_agree():
    N = 17
    psi = random_ket(N, seed=3)
    rho = DensityMatrix(EnsembleBasis(N), np.outer(psi.amps, psi.amps.conj()))
    qk = husimi_q(psi)
    qr = husimi_q(rho)
    assert np.max(np.abs(qk.values - qr.values)) < 1e-12


def test_q_rejects_nonsquare():
    with pytest.raises(ValueError):
        husimi_q(np.zeros((3, 4)))


def test_q_rotational_covariance():
    # rotate the state, then compare grid values against the original state
    # evaluated at back-rotated nodes; spec tolerance 1e-4, actual ~1e-15
    N = 14
    g = default_grid(N)
    psi = scs_ket(N, 0.9, 0.3)
    axis = np.array([1.0, 2.0, -0.5]) / np.sqrt(5.25)
    ang = 1.234
    q_rot = husimi_q(rotate(psi, axis, ang), g)
    T, P = np.meshgrid(g.thetas, g.phis, indexing="ij")
    v = np.stack([np.sin(T) * np.cos(P), np.sin(T) * np.sin(P), np.cos(T)], axis=-1)
    c, s = np.cos(-ang), np.sin(-ang)
    k = np.cross(np.broadcast_to(axis, v.shape), v)
    vb = v * c + k * s + axis * np.tensordot(v, axis, axes=([-1], [-1]))[..., None] * (1 - c)
    tb = np.arccos(np.clip(vb[..., 2], -1, 1))
    pb = np.arctan2(vb[..., 1], vb[..., 0])
    q_back = husimi_q_at(psi, tb.ravel(), pb.ravel()).reshape(T.shape)
    assert np.max(np.abs(q_rot.values - q_back)) < 1e-4


# ---------------------------------------------------------------------------
# Wigner


def test_wigner_scs_closed_form_and_positivity():
    N, th0, ph0 = 10, 1.2, -0.4
    g = default_grid(N)
    w = wigner(scs_ket(N, th0, ph0), g)
    ref = wigner_scs_closed_form(N, th0, ph0, g)
    assert np.max(np.abs(w.values - ref.values)) < 1e-10
    # the coherent-state Wigner function has genuine negative ripples that
    # shrink roughly 4x per two atoms: -1.3e-4 at N=10, below -1e-9 only
    # from N ~ 30 on; assert the true scale at both sizes
    assert w.values.min() >= -2e-4
    g30 = sphere_grid(400, 8)
    w30 = wigner_scs_closed_form(30, 0.0, 0.0, g30)
    assert w30.values.min() >= -1e-9


def test_wigner_integral_is_trace_normalized():
    # integral of W equals sqrt(4 pi/(N+1)) times the trace
    for N in (4, 10):
        g = default_grid(N)
        w = wigner(random_ket(N, seed=N + 100), g)
        assert abs(integrate(g, w.values) - np.sqrt(4 * np.pi / (N + 1))) < 1e-10


def test_wigner_fock_negative_regions():
    N, k = 10, 5
    g = default_grid(N)
    w = wigner(fock_ket(N, k), g)
    assert w.values.min() < -0.1
    assert np.max(np.ptp(w.values, axis=1)) < 1e-12


def test_wigner_mixed_state_route():
    N = 6
    psi = random_ket(N, seed=11)
    rho = DensityMatrix(EnsembleBasis(N), np.outer(psi.amps, psi.amps.conj()))
    g = default_grid(N)
    assert np.max(np.abs(wigner(psi, g).values - wigner(rho, g).values)) < 1e-12


def test_wigner_cat_fringes_flip_with_parity():
    # fringes live on the great circle equidistant from the two lobes; the
    # interference term flips sign with the cat parity while the incoherent
    # two-lobe background there is exponentially small
    N = 10
    g = sphere_grid(41, 8)
    wp = wigner(cat_state(N, np.pi / 2, 0.0, +1), g)
    wm = wigner(cat_state(N, np.pi / 2, 0.0, -1), g)
    j = np.argmin(np.abs(g.phis - np.pi / 2))
    ring_sum = np.max(np.abs(wp.values[:, j] + wm.values[:, j]))
    ring_diff = np.max(np.abs(wp.values[:, j] - wm.values[:, j]))
    assert ring_diff > 100 * ring_sum
    assert wp.values.min() < -0.05 and wm.values.min() < -0.05


# ---------------------------------------------------------------------------
# cat states


def test_cat_closed_form_matches_built_state():
    # includes non-orthogonal lobe angles (phi0 not in {0, pi}); the exact
    # cross term and two-branch normalization are required at this tolerance
    for N in (6, 13):
        for parity in (+1, -1):
            for th0, ph0 in [(0.8, 0.0), (1.1, 2.3), (np.pi / 2, np.pi)]:
                g = default_grid(N)
                built = husimi_q(cat_state(N, th0, ph0, parity), g)
                closed = q_cat_state(N, th0, ph0, parity, g)
                assert np.max(np.abs(built.values - closed.values)) < 1e-8


def test_cat_parity_difference_suppressed():
    # exact supremum of |Q+ - Q-| for orthogonal lobes is (N+1)/(4 pi) 2^(1-N)
    g = sphere_grid(128, 256)
    N = 10
    qplus = q_cat_state(N, np.pi / 2, 0.0, +1, g)
    qminus = q_cat_state(N, np.pi / 2, 0.0, -1, g)
    bound = (N + 1) / (4 * np.pi) * 2.0 ** (1 - N)
    assert np.max(np.abs(qplus.values - qminus.values)) <= bound * (1 + 1e-9)
    # a notch larger and the difference is under 1e-3 outright
    N = 12
    qplus = q_cat_state(N, np.pi / 2, 0.0, +1, g)
    qminus = q_cat_state(N, np.pi / 2, 0.0, -1, g)
    assert np.max(np.abs(qplus.values - qminus.values)) < 1e-3


def test_cat_polar_lobes():
    # theta0 = 0: branches are the two polar Fock states
    N = 9
    for parity in (+1, -1):
        ket = cat_state(N, 0.0, 0.0, parity)
        support = np.nonzero(np.abs(ket.amps) > 1e-12)[0]
        assert list(support) == [0, N]
        q = q_cat_state(N, 0.0, 0.0, parity, sphere_grid(129, 4))
        i = np.unravel_index(np.argmax(q.values), q.values.shape)[0]
        assert q.grid.thetas[i] < 0.1 or q.grid.thetas[i] > np.pi - 0.1


def test_cat_equator_combs():
    # equator cat amplitudes form even/odd Fock combs
    N = 9
    even = cat_state(N, np.pi / 2, 0.0, +1)
    odd = cat_state(N, np.pi / 2, 0.0, -1)
    assert np.all(np.abs(even.amps[1::2]) < 1e-14)
    assert np.all(np.abs(odd.amps[0::2]) < 1e-14)


def test_cat_degenerate_angles_raise():
    # at theta0 = phi0 = pi/2 the mirrored branch is -i times the first, so
    # for N = 2 (mod 4) the even combination vanishes identically
    with pytest.raises(ValueError):
        cat_state(2, np.pi / 2, np.pi / 2, +1)
    with pytest.raises(ValueError):
        q_cat_state(2, np.pi / 2, np.pi / 2, +1, sphere_grid(8, 8))


def test_cat_invalid_parity():
    with pytest.raises(ValueError):
        cat_state(4, 0.3, 0.0, 0)
    with pytest.raises(ValueError):
        q_cat_state(4, 0.3, 0.0, 2, sphere_grid(8, 8))
