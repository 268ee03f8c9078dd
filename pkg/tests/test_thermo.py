"""Bose gas condensation, Bogoliubov spectrum, and critical-velocity tests.

Polylogarithm reference values were frozen from a high-precision mpmath run;
condensation numbers come from an independent oracle script cross-checked
against brute-force series summation and closed-form reductions.
"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qatom import thermo as th

ZETA_32 = 2.6123753486854883433


# ---------------------------------------------------------------------------
# polylogarithm


def test_polylog_matches_high_precision_reference():
    # mpmath.polylog at 40 digits, spanning series route, split route, z = 1
    refs = [
        (1.5, 0.3, 0.3383110955448062693),
        (1.5, 0.5, 0.62483702081991385363),
        (1.5, 0.99, 2.2716600770079991348),
        (1.5, 1.0 - 1e-6, 2.6088319004525340238),
        (1.5, 1.0 - 1e-12, 2.6123718038184567985),
        (0.5, 0.5, 0.80612672304285226132),
        (2.0, 0.7, 0.88937762428603866222),
        (1.5, 1.0, ZETA_32),
    ]
    for s, z, ref in refs:
        assert abs(th.polylog(s, z) - ref) < 1e-12


def test_polylog_brute_force_series():
    # independent in-test route: direct summation converges fine at z = 0.5
    k = np.arange(1, 200001, dtype=float)
    brute = np.sum(0.5**k / k**1.5)
    assert abs(th.polylog(1.5, 0.5) - brute) < 1e-13


def test_polylog_special_points():
    assert th.polylog(1.5, 0.0) == 0.0
    assert abs(th.polylog(2.0, 1.0) - np.pi**2 / 6.0) < 1e-13


def test_polylog_domain_errors():
    with pytest.raises(ValueError):
        th.polylog(1.5, 1.0 + 1e-9)
    with pytest.raises(ValueError):
        th.polylog(1.5, -0.2)
    with pytest.raises(ValueError):
        th.polylog(-1.0, 0.5)
    with pytest.raises(ValueError):
        th.polylog(0.5, 0.95)  # diverges at z -> 1, no split available


# ---------------------------------------------------------------------------
# grand-canonical box gas


def test_bose_occupation_value():
    # beta (E - mu) = ln 2 puts exactly one atom in the level
    assert abs(th.bose_occupation(np.log(2.0), 1.0, 0.0) - 1.0) < 1e-14


def test_gas_spec_invariants():
    with pytest.raises(ValueError):
        th.GasSpec(1.0, 100, -1.0, -0.5)
    with pytest.raises(ValueError):
        th.GasSpec(1.0, 100, 1.0, 0.0)
    with pytest.raises(ValueError):
        th.GasSpec(0.0, 100, 1.0, -0.5)


def test_ground_population_closed_form():
    g = th.GasSpec(1.0, 100, 2.0, -0.25)
    assert abs(g.ground_population - 1.0 / (np.exp(0.5) - 1.0)) < 1e-12


def test_excited_population_saturates():
    # mu -> 0 gives the finite maximum (pi kT / eps0)^{3/2} zeta(3/2)
    g = th.GasSpec(1.0, 1e4, 0.1, -1e-300)
    assert abs(g.excited_population / ((np.pi * 10.0) ** 1.5 * ZETA_32) - 1.0) < 1e-12


def test_solve_mu_population_residual():
    for N, kT in [(1e3, 5.0), (1e4, 40.0), (1e4, 120.0)]:
        g = th.gas_at_temperature(N, kT)
        assert g.mu < 0.0
        assert abs(g.total_population - N) < 1e-8 * N


def test_solve_mu_needs_atoms():
    with pytest.raises(ValueError):
        th.solve_mu(0, 1.0)


@settings(deadline=None, max_examples=25)
@given(mu1=st.floats(-5.0, -0.02), shift=st.floats(0.001, 2.0))
def test_occupation_increases_with_chemical_potential(mu1, shift):
    mu2 = mu1 * np.exp(-shift)  # closer to zero, still negative
    n1 = th.bose_occupation(3.0, 1.0, mu1)
    n2 = th.bose_occupation(3.0, 1.0, mu2)
    assert n2 > n1


# ---------------------------------------------------------------------------
# condensation curves


def test_box_critical_temperature_frozen():
    # mu = 0 saturation root; matches the closed form (N / zeta)^{2/3} / pi
    tc3 = th.box_critical_temperature(1e3)
    tc4 = th.box_critical_temperature(1e4)
    assert abs(tc3 - 16.781331220479327) < 1e-10
    assert abs(tc4 - 77.89203960613436) < 1e-10
    closed = (1e3 / ZETA_32) ** (2.0 / 3.0) / np.pi
    assert abs(tc3 / closed - 1.0) < 1e-12


def test_exact_fraction_near_asymptote_below_tc():
    # N = 1e4 at T = 0.5 Tc: exact 0.65236 vs asymptotic 0.64645, under 1%
    tc = th.box_critical_temperature(1e4)
    exact = th.condensate_fraction(1e4, [0.5 * tc])[0]
    assert abs(exact - 0.6523560274068853) < 1e-9
    asym = th.condensate_fraction_asymptote(0.5 * tc, tc)
    assert abs(asym - (1.0 - 0.5**1.5)) < 1e-14
    assert abs(exact - asym) / asym < 0.03


def test_fraction_at_tc_scales_as_inverse_cube_root():
    # finite-size remnant fraction at Tc follows (2 sqrt(pi)/zeta)^{2/3} N^{-1/3}
    coef = (2.0 * np.sqrt(np.pi) / ZETA_32) ** (2.0 / 3.0)
    for N, frozen in [(1e3, 0.11930935152530459), (1e4, 0.05621414773019043)]:
        tc = th.box_critical_temperature(N)
        fr = th.condensate_fraction(N, [tc])[0]
        assert abs(fr - frozen) < 1e-9
        assert abs(fr / (coef * N ** (-1.0 / 3.0)) - 1.0) < 0.03


def test_asymptote_clips_above_tc():
    out = th.condensate_fraction_asymptote(np.array([0.5, 1.0, 1.7]), 1.0)
    assert out[2] == 0.0
    assert abs(out[0] - (1.0 - 0.5**1.5)) < 1e-14


def test_fraction_crossing_half_frozen():
    kT = th.fraction_crossing(1e3, level=0.5)
    assert abs(kT - 11.013170268938865) < 1e-8
    with pytest.raises(ValueError):
        th.fraction_crossing(1e3, level=1.5)


def test_fitted_tc_sits_slightly_above_closed_form():
    # finite-size smoothing biases the least-squares Tc high; bias shrinks
    # with N and is within 5% by N = 1e4
    tc4 = th.box_critical_temperature(1e4)
    fit4 = th.fit_critical_temperature(1e4)
    assert 0.0 < fit4 / tc4 - 1.0 < 0.05


def test_critical_temperature_closed_form_and_wavelength():
    # n lambda_dB^3 = zeta(3/2) exactly at the condensation point
    n, m = 0.7, 1.3
    kTc = th.critical_temperature(n, m)
    lam = th.thermal_debroglie_wavelength(kTc, m)
    assert abs(n * lam**3 - ZETA_32) < 1e-12
    with pytest.raises(ValueError):
        th.critical_temperature(-1.0, 1.0)


# ---------------------------------------------------------------------------
# two-level counting argument


def exact_ladder_ground_fraction(N, x):
    # brute-force canonical average over the N + 1 symmetric ladder states
    k = np.arange(N + 1)
    w = np.exp(-k * x)
    return np.sum((N - k) * w) / (N * np.sum(w))


def test_two_level_fractions_values():
    fd, fi = th.two_level_fractions(5, 1.0)
    assert abs(fd - 0.7310585786300049) < 1e-14
    assert abs(fi - 0.8836046586261347) < 1e-14
    # bosonic counting keeps more atoms in the ground level
    assert fi > fd


def test_two_level_formula_converges_to_exact_ladder():
    # the geometric-ladder formula drops an e^{-(N+1)x} tail
    assert abs(th.two_level_fractions(5, 1.0)[1] - exact_ladder_ground_fraction(5, 1.0)) < 5e-3
    assert abs(th.two_level_fractions(200, 0.1)[1] - exact_ladder_ground_fraction(200, 0.1)) < 1e-8


def test_two_level_indistinguishable_needs_positive_gap():
    with pytest.raises(ValueError):
        th.two_level_fractions(5, 0.0)
    with pytest.raises(ValueError):
        th.two_level_fractions(0, 1.0)


# ---------------------------------------------------------------------------
# Bogoliubov spectrum


def test_bogoliubov_spec_properties():
    spec = th.BogoliubovSpec(interaction_energy=2.0, mass=1.5)
    assert abs(spec.healing_length - 1.0 / np.sqrt(6.0)) < 1e-14
    assert abs(spec.sound_speed - np.sqrt(2.0 / 1.5)) < 1e-14
    # c xi = 1 / (sqrt(2) m) ties the two scales together
    assert abs(spec.sound_speed * spec.healing_length - 1.0 / (np.sqrt(2.0) * 1.5)) < 1e-14
    assert th.BogoliubovSpec(0.0).healing_length == np.inf
    with pytest.raises(ValueError):
        th.BogoliubovSpec(-1.0)
    with pytest.raises(ValueError):
        th.BogoliubovSpec(1.0, mass=0.0)


def test_bogoliubov_limits():
    spec = th.BogoliubovSpec(2.0)
    xi, c = spec.healing_length, spec.sound_speed
    # phonon: eps / k -> c as k -> 0
    klo = np.array([1e-6 / xi])
    assert abs(th.bogoliubov(klo, spec).energy[0] / klo[0] / c - 1.0) < 1e-9
    # particle: free energy plus mean-field offset within 0.1% by k xi = 5
    k5 = 5.0 / xi
    e5 = th.bogoliubov(np.array([k5]), spec).energy[0]
    assert abs(e5 - (k5**2 / 2.0 + 2.0)) / e5 < 1e-3


def test_bogoliubov_coefficient_identity_and_depletion():
    spec = th.BogoliubovSpec(0.7, mass=2.0)
    ks = np.geomspace(1e-3, 20.0, 100)
    m = th.bogoliubov(ks, spec)
    assert np.max(np.abs(m.cosh_coefficient**2 - m.sinh_coefficient**2 - 1.0)) < 1e-9
    assert np.allclose(m.depletion, m.sinh_coefficient**2)
    assert np.all(m.sinh_coefficient <= 0.0)


def test_bogoliubov_zero_mode_and_free_gas():
    m = th.bogoliubov(np.array([0.0, 1.0]), th.BogoliubovSpec(1.0))
    assert m.energy[0] == 0.0
    assert np.isinf(m.cosh_coefficient[0]) and np.isinf(m.depletion[0])
    free = th.bogoliubov(np.array([0.0, 1.0, 2.0]), th.BogoliubovSpec(0.0))
    assert np.allclose(free.energy, [0.0, 0.5, 2.0])
    assert np.allclose(free.cosh_coefficient, 1.0)
    assert np.allclose(free.sinh_coefficient, 0.0)
    with pytest.raises(ValueError):
        th.bogoliubov(np.array([-1.0]), th.BogoliubovSpec(1.0))


@settings(deadline=None, max_examples=40)
@given(
    u0n=st.floats(1e-3, 50.0),
    mass=st.floats(0.1, 10.0),
    k=st.floats(1e-3, 30.0),
)
def test_bogoliubov_identity_property(u0n, mass, k):
    m = th.bogoliubov(np.array([k]), th.BogoliubovSpec(u0n, mass))
    assert abs(m.cosh_coefficient[0] ** 2 - m.sinh_coefficient[0] ** 2 - 1.0) < 1e-8


# ---------------------------------------------------------------------------
# critical velocity


def test_landau_velocity_bogoliubov_is_sound_speed():
    for u0n, mass in [(2.0, 1.0), (0.3, 4.0)]:
        spec = th.BogoliubovSpec(u0n, mass)
        assert abs(th.landau_velocity_bogoliubov(spec) / spec.sound_speed - 1.0) < 1e-6


def test_landau_velocity_free_parabola_vanishes_at_grid_edge():
    # eps / k = k / 2m has no interior minimum; the infimum is the lower edge
    uc = th.landau_velocity(lambda k: k * k / 2.0, 1e-4, 50.0)
    assert uc < 6e-5
    assert th.landau_velocity(lambda k: k * k / 2.0, 1e-6, 50.0) < uc


def test_landau_velocity_interior_minimum_refined():
    # eps = (k - 2)^2 + 1 + k puts the minimum of eps / k at k = sqrt(5),
    # off any grid node; refined value is 2 sqrt(5) - 3
    uc = th.landau_velocity(lambda k: (k - 2.0) ** 2 + 1.0 + k, 0.1, 30.0)
    assert abs(uc - (2.0 * np.sqrt(5.0) - 3.0)) < 1e-10


def test_landau_velocity_error_surfaces():
    with pytest.raises(ValueError):
        th.landau_velocity(lambda k: k, 2.0, 1.0)
    with pytest.raises(ValueError):
        th.landau_velocity(lambda k: k, 0.5, 2.0, samples=1)
    with pytest.raises(ValueError):
        th.landau_velocity(lambda k: k - 1.0, 0.5, 2.0)
    with pytest.raises(ValueError):
        th.landau_velocity_bogoliubov(th.BogoliubovSpec(0.0))
