"""Collective-spin algebra for bosonic two-mode ensembles.

Everything downstream builds on the conventions fixed here: the symmetric
(Dicke) sector of N two-mode bosons is spanned by Fock states |k>, k = 0..N
counting atoms in mode a, and the collective spin operators are the
factor-free bilinears

    Sx = a'b + b'a,   Sy = -i a'b + i b'a,   Sz = a'a - b'b,

so Sz|k> = (2k - N)|k>, [Sx, Sy] = 2i Sz and Sx^2 + Sy^2 + Sz^2 = N(N+2).
The raising operator S+ = a'b has matrix elements sqrt((k+1)(N-k)).

Rotations use the halved generator exp(-i angle (n.S)/2) so `angle` is the
Bloch-sphere rotation angle.  Global phases are never meaningful here;
state equality means |<psi1|psi2>| = 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.linalg import eig_banded
from scipy.special import gammaln, xlogy


# ---------------------------------------------------------------------------
# domain types


@dataclass(frozen=True)
class EnsembleBasis:
    """Symmetric two-mode Fock basis for N bosons, labels k = 0..N."""

    N: int

    def __post_init__(self):
        if self.N < 1:
            raise ValueError(f"particle number must be >= 1, got {self.N}")

    @property
    def dimension(self) -> int:
        return self.N + 1

    @property
    def labels(self) -> np.ndarray:
        return np.arange(self.N + 1)


@dataclass(frozen=True)
class ProductBasis:
    """Tensor product of ensemble bases (A first, amplitudes C-ordered)."""

    factors: tuple

    @property
    def dimension(self) -> int:
        d = 1
        for f in self.factors:
            d *= f.dimension
        return d


@dataclass
class KetVector:
    """Complex amplitudes over a declared basis.

    Normalized unless `normalized=False` is passed explicitly; the norm is
    checked against `tol` at construction.
    """

    basis: object
    amps: np.ndarray
    normalized: bool = True
    tol: float = 1e-10

    def __post_init__(self):
        self.amps = np.asarray(self.amps, dtype=complex)
        if self.amps.shape != (self.basis.dimension,):
            raise ValueError(
                f"amplitude array has shape {self.amps.shape}, "
                f"basis dimension is {self.basis.dimension}"
            )
        if self.normalized:
            nrm = np.linalg.norm(self.amps)
            if abs(nrm - 1.0) > self.tol:
                raise ValueError(f"state not normalized: |psi| = {nrm!r}")

    @property
    def N(self) -> int:
        return self.basis.N

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian unit-trace positive matrix with its basis."""

    basis: object
    rho: np.ndarray
    tol: float = 1e-8

    def __post_init__(self):
        object.__setattr__(self, "rho", np.asarray(self.rho, dtype=complex))
        d = self.basis.dimension
        if self.rho.shape != (d, d):
            raise ValueError(f"density matrix shape {self.rho.shape} vs basis dim {d}")

    def check(self):
        """Raise if Hermiticity or unit trace are violated beyond tol."""
        herm = np.max(np.abs(self.rho - self.rho.conj().T))
        tr = abs(np.trace(self.rho) - 1.0)
        if herm > self.tol or tr > self.tol:
            raise ValueError(f"invalid density matrix: hermiticity {herm:.2e}, trace error {tr:.2e}")


@dataclass(frozen=True)
class BlochAngles:
    """Polar/azimuthal angles on the Bloch sphere, theta in [0, pi], phi in (-pi, pi]."""

    theta: float
    phi: float = 0.0

    def __post_init__(self):
        if not (0.0 <= self.theta <= np.pi):
            raise ValueError(f"theta must lie in [0, pi], got {self.theta}")
        if not (-np.pi < self.phi <= np.pi):
            raise ValueError(f"phi must lie in (-pi, pi], got {self.phi}")

    @property
    def alpha(self) -> complex:
        return np.cos(self.theta / 2) * np.exp(-1j * self.phi / 2)

    @property
    def beta(self) -> complex:
        return np.sin(self.theta / 2) * np.exp(+1j * self.phi / 2)


@dataclass(frozen=True)
class SpinOperatorSet:
    """Matrices Sx, Sy, Sz, S+, S- on the (N+1)-dimensional symmetric sector."""

    N: int
    Sx: np.ndarray
    Sy: np.ndarray
    Sz: np.ndarray
    Splus: np.ndarray
    Sminus: np.ndarray


@dataclass(frozen=True)
class AtomSpecies:
    """Alkali species constants; scattering lengths in Bohr radii."""

    name: str
    s: float
    l: float
    j: float
    i: float
    f_values: tuple
    a_singlet: float
    a_triplet: float


# table of alkali ground-state spin structure and s-wave scattering lengths
# (singlet a^0, triplet a^1, Bohr radii)
SPECIES = {
    sp.name: sp
    for sp in [
        AtomSpecies("7Li", 0.5, 0.0, 0.5, 1.5, (1, 2), 34.0, -27.6),
        AtomSpecies("23Na", 0.5, 0.0, 0.5, 1.5, (1, 2), 19.0, 65.0),
        AtomSpecies("41K", 0.5, 0.0, 0.5, 1.5, (1, 2), 85.0, 65.0),
        AtomSpecies("85Rb", 0.5, 0.0, 0.5, 2.5, (2, 3), 2400.0, -400.0),
        AtomSpecies("87Rb", 0.5, 0.0, 0.5, 1.5, (1, 2), 90.0, 106.0),
        AtomSpecies("133Cs", 0.5, 0.0, 0.5, 3.5, (3, 4), -208.0, -350.0),
    ]
}


# ---------------------------------------------------------------------------
# operators and states


def build_spin_operators(N: int) -> SpinOperatorSet:
    """Collective spin matrices for N bosons in the k = 0..N Fock basis.

    S+ = a'b raises k by one with matrix element sqrt((k+1)(N-k)); Sz is
    diagonal with entries 2k - N.  For N=1 the set reduces to the Pauli
    matrices in the basis {k=0, k=1}.
    """
    if not isinstance(N, (int, np.integer)) or N < 1:
        raise ValueError(f"particle number must be an integer >= 1, got {N!r}")
    k = np.arange(N)
    elem = np.sqrt((k + 1.0) * (N - k))
    Splus = np.diag(elem, -1).astype(complex)
    Sminus = Splus.conj().T
    Sx = Splus + Sminus
    Sy = -1j * (Splus - Sminus)
    Sz = np.diag(2.0 * np.arange(N + 1) - N).astype(complex)
    return SpinOperatorSet(N=int(N), Sx=Sx, Sy=Sy, Sz=Sz, Splus=Splus, Sminus=Sminus)


def _angles(angles) -> BlochAngles:
    if isinstance(angles, BlochAngles):
        return angles
    theta, phi = angles
    return BlochAngles(float(theta), float(phi))


def scs_amplitudes(N: int, theta: float, phi: float) -> np.ndarray:
    """Spin-coherent-state amplitudes sqrt(C(N,k)) alpha^k beta^(N-k).

    Evaluated through log-gamma so large N does not overflow the binomials.
    """
    k = np.arange(N + 1)
    logc = 0.5 * (gammaln(N + 1) - gammaln(k + 1) - gammaln(N - k + 1))
    ca, sa = np.cos(theta / 2.0), np.sin(theta / 2.0)
    # xlogy handles the poles where an amplitude factor is 0^0
    logmod = logc + xlogy(k, max(ca, 0.0)) + xlogy(N - k, max(sa, 0.0))
    # k atoms carry phase -phi/2 each, N-k carry +phi/2
    phase = -k * phi / 2.0 + (N - k) * phi / 2.0
    amps = np.exp(logmod + 1j * phase)
    nrm = np.linalg.norm(amps)
    return amps / nrm


def spinor_state(N: int, a: complex, b: complex) -> np.ndarray:
    """Amplitudes of (a a' + b b')^N |0> / sqrt(N!) for an arbitrary spinor (a, b).

    Unnormalized unless |a|^2 + |b|^2 = 1; evaluated through logs so the
    binomials never overflow.
    """
    k = np.arange(N + 1)
    logc = 0.5 * (gammaln(N + 1) - gammaln(k + 1) - gammaln(N - k + 1))
    ra, pa = abs(a), np.angle(a)
    rb, pb = abs(b), np.angle(b)
    logmod = logc + xlogy(k, ra) + xlogy(N - k, rb)
    return np.exp(logmod + 1j * (k * pa + (N - k) * pb))


def spin_coherent_state(N: int, angles) -> KetVector:
    """All N atoms in the single-particle state alpha|a> + beta|b>.

    `angles` is a BlochAngles or a (theta, phi) pair; theta=0 gives |k=N>
    and the mean spin vector is N (sin t cos p, sin t sin p, cos t).
    """
    ang = _angles(angles)
    basis = EnsembleBasis(int(N))
    return KetVector(basis, scs_amplitudes(basis.N, ang.theta, ang.phi))


def fock_state(N: int, k: int) -> KetVector:
    """Number state with k atoms in mode a and N - k in mode b."""
    basis = EnsembleBasis(int(N))
    if not 0 <= k <= N:
        raise ValueError(f"occupation must satisfy 0 <= k <= {N}, got {k}")
    amps = np.zeros(basis.dimension, dtype=complex)
    amps[int(k)] = 1.0
    return KetVector(basis, amps)


def overlap(psi1: KetVector, psi2: KetVector) -> complex:
    """Inner product <psi1|psi2>; bases must match."""
    if psi1.basis != psi2.basis:
        raise ValueError("basis mismatch between states")
    return complex(np.vdot(psi1.amps, psi2.amps))


def _axis_vector(axis) -> np.ndarray:
    named = {"x": (1.0, 0.0, 0.0), "y": (0.0, 1.0, 0.0), "z": (0.0, 0.0, 1.0)}
    if isinstance(axis, str):
        try:
            axis = named[axis.lower()]
        except KeyError:
            raise ValueError(f"unknown axis name {axis!r}") from None
    n = np.asarray(axis, dtype=float)
    if n.shape != (3,) or abs(np.linalg.norm(n) - 1.0) > 1e-10:
        raise ValueError(f"rotation axis must be a unit 3-vector, got {axis!r}")
    return n


def _ns_band(N: int, n: np.ndarray) -> np.ndarray:
    """Upper-band storage of the tridiagonal Hermitian matrix n.S."""
    k = np.arange(N)
    elem = np.sqrt((k + 1.0) * (N - k))
    band = np.zeros((2, N + 1), dtype=complex)
    band[0, 1:] = (n[0] + 1j * n[1]) * elem  # (n.S)_{k,k+1}
    band[1, :] = n[2] * (2.0 * np.arange(N + 1) - N)
    return band


def rotate(psi: KetVector, axis, angle: float) -> KetVector:
    """Apply exp(-i angle (n.S)/2) to the state.

    The generator n.S is tridiagonal in the Fock basis, so the propagator
    comes from a banded eigendecomposition.  An SCS Bloch vector rotates by
    `angle` about `axis`.
    """
    n = _axis_vector(axis)
    N = psi.basis.N
    w, v = eig_banded(_ns_band(N, n), lower=False)
    out = v @ (np.exp(-0.5j * angle * w) * (v.conj().T @ psi.amps))
    return KetVector(psi.basis, out, normalized=psi.normalized, tol=psi.tol)


def rotation_matrix(N: int, axis, angle: float) -> np.ndarray:
    """Dense (N+1)x(N+1) matrix of exp(-i angle (n.S)/2)."""
    n = _axis_vector(axis)
    w, v = eig_banded(_ns_band(N, n), lower=False)
    return (v * np.exp(-0.5j * angle * w)) @ v.conj().T


def fock_basis_transform(N: int, k: int, axis) -> KetVector:
    """Rotated Fock state |k>_n expressed in the Sz basis.

    `axis` is "z", "x", "y" or a (theta, phi) pair giving the quantization
    direction n.  The returned state satisfies (n.S)|k>_n = (2k - N)|k>_n.
    The amplitudes follow from |k>_n = e^{-i Sz phi/2} e^{-i Sy theta/2} |k>,
    with the rotation matrix element evaluated as a closed factorial sum.
    """
    if not 0 <= k <= N:
        raise ValueError(f"k must lie in 0..{N}, got {k}")
    if isinstance(axis, str):
        theta, phi = {"z": (0.0, 0.0), "x": (np.pi / 2, 0.0), "y": (np.pi / 2, np.pi / 2)}[
            axis.lower()
        ]
    else:
        theta, phi = float(axis[0]), float(axis[1])
    basis = EnsembleBasis(N)
    if theta == 0.0:
        amps = np.zeros(N + 1, dtype=complex)
        amps[k] = 1.0
        return KetVector(basis, amps)

    c, s = np.cos(theta / 2.0), np.sin(theta / 2.0)
    lf = gammaln(np.arange(N + 2) + 1.0)  # lf[m] = log m!
    pref = 0.5 * (lf[k] + lf[N - k])
    amps = np.zeros(N + 1, dtype=complex)
    for kp in range(N + 1):
        n0 = max(kp - k, 0)
        n1 = min(kp, N - k)
        if n1 < n0:
            continue
        n = np.arange(n0, n1 + 1)
        logterm = (
            pref
            + 0.5 * (lf[kp] + lf[N - kp])
            - lf[kp - n]
            - lf[N - k - n]
            - lf[n]
            - lf[k - kp + n]
        )
        # both exponents are >= 0 on the summation range and c, s > 0 here
        cexp = kp - k + N - 2 * n
        sexp = 2 * n + k - kp
        logpow = cexp * np.log(c) + sexp * np.log(s)
        amps[kp] = np.sum((-1.0) ** n * np.exp(logterm + logpow))
    amps *= np.exp(-0.5j * (2.0 * np.arange(N + 1) - N) * phi)
    nrm = np.linalg.norm(amps)
    return KetVector(basis, amps / nrm)


# ---------------------------------------------------------------------------
# expectation helpers used throughout the package


def expectation(psi, op: np.ndarray) -> float:
    """Real part of <psi|op|psi> (op Hermitian)."""
    a = psi.amps if isinstance(psi, KetVector) else np.asarray(psi)
    return float(np.real(np.vdot(a, op @ a)))


def variance(psi, op: np.ndarray) -> float:
    a = psi.amps if isinstance(psi, KetVector) else np.asarray(psi)
    oa = op @ a
    return float(np.real(np.vdot(oa, oa)) - np.real(np.vdot(a, oa)) ** 2)


def mean_spin(psi: KetVector) -> np.ndarray:
    """Bloch-style expectation vector (<Sx>, <Sy>, <Sz>)."""
    ops = build_spin_operators(psi.basis.N)
    return np.array([expectation(psi, ops.Sx), expectation(psi, ops.Sy), expectation(psi, ops.Sz)])


# ---------------------------------------------------------------------------
# angular momentum utilities


def _half_int(x, name: str) -> Fraction:
    fr = Fraction(x).limit_denominator(2)
    if fr != Fraction(x) or fr.denominator not in (1, 2):
        raise ValueError(f"{name} must be integer or half-integer, got {x!r}")
    return fr


def clebsch_gordan(j1, m1, j2, m2, J, M) -> float:
    """Condon-Shortley Clebsch-Gordan coefficient <j1 m1; j2 m2 | J M>.

    Evaluated with exact rational arithmetic (safe for j <= 40); selection
    rule violations return 0 rather than raising.
    """
    j1, m1 = _half_int(j1, "j1"), _half_int(m1, "m1")
    j2, m2 = _half_int(j2, "j2"), _half_int(m2, "m2")
    J, M = _half_int(J, "J"), _half_int(M, "M")
    # selection rules: projection sum, triangle rule, integer coupling
    if M != m1 + m2:
        return 0.0
    if abs(m1) > j1 or abs(m2) > j2 or abs(M) > J:
        return 0.0
    if (j1 + m1).denominator != 1 or (j2 + m2).denominator != 1 or (J + M).denominator != 1:
        return 0.0
    if J < abs(j1 - j2) or J > j1 + j2 or (j1 + j2 + J).denominator != 1:
        return 0.0

    def f(x: Fraction) -> int:
        if x.denominator != 1 or x < 0:
            raise ValueError(f"internal factorial argument {x}")
        return math.factorial(int(x))

    pref = Fraction(
        int(2 * J + 1)
        * f(J + j1 - j2)
        * f(J - j1 + j2)
        * f(j1 + j2 - J)
        * f(J + M)
        * f(J - M)
        * f(j1 - m1)
        * f(j1 + m1)
        * f(j2 - m2)
        * f(j2 + m2),
        f(j1 + j2 + J + 1),
    )
    total = Fraction(0)
    kmin = int(max(0, j2 - m1 - J, j1 + m2 - J))
    kmax = int(min(j1 + j2 - J, j1 - m1, j2 + m2))
    for k in range(kmin, kmax + 1):
        den = (
            math.factorial(k)
            * f(j1 + j2 - J - k)
            * f(j1 - m1 - k)
            * f(j2 + m2 - k)
            * f(J - j2 + m1 + k)
            * f(J - j1 - m2 + k)
        )
        total += Fraction((-1) ** k, den)
    if total == 0:
        return 0.0
    value2 = pref * total * total
    return math.copysign(math.sqrt(float(value2)), float(total))


def lande_g_factor(f, j, i, s, l) -> float:
    """Hyperfine Lande factor: electronic g times the hyperfine projection bracket.

    Uses g_s = 2.  Raises ZeroDivisionError for f = 0 or j = 0, where the
    projection is undefined.
    """
    if f == 0 or j == 0:
        raise ZeroDivisionError(
            f"Lande factor undefined for f={f}, j={j}: projection divides by f(f+1) and j(j+1)"
        )
    gj = 1.0 + (j * (j + 1) + s * (s + 1) - l * (l + 1)) / (2.0 * j * (j + 1))
    return gj * (f * (f + 1) + j * (j + 1) - i * (i + 1)) / (2.0 * f * (f + 1))


def _hyperfine_to_spin(species: AtomSpecies, fm) -> dict:
    """Decompose |f, m_f> into electron x nuclear projections {(ms, mi): coeff}."""
    fq, m = fm
    if fq not in species.f_values:
        raise ValueError(f"f={fq} not a hyperfine level of {species.name}")
    if abs(m) > fq:
        raise ValueError(f"|m_f| > f for {fm}")
    out = {}
    for ms in (Fraction(-1, 2), Fraction(1, 2)):
        mi = Fraction(m) - ms
        if abs(mi) > Fraction(species.i):
            continue
        c = clebsch_gordan(species.j, ms, species.i, mi, fq, m)
        if c != 0.0:
            out[(ms, mi)] = c
    return out


def alkali_swave_element(species, bra1, bra2, ket1, ket2, overlap_integral: float = 1.0):
    """Two-atom s-wave interaction matrix element between hyperfine states.

    Arguments are (f, m_f) pairs for the outgoing pair (bra1, bra2) and the
    incoming pair (ket1, ket2).  Returns the coefficient of 4 pi hbar^2 / m
    in the tabulated length unit, times the caller-supplied spatial overlap
    integral; the operator is (a0 + 3 a1)/4 + (a1 - a0) S1.S2 acting on the
    two electron spins.  Total m_f conservation gives zero otherwise.
    """
    if isinstance(species, str):
        species = SPECIES[species]
    for fm in (bra1, bra2, ket1, ket2):
        if fm[0] not in species.f_values:
            raise ValueError(f"invalid hyperfine label {fm} for {species.name}")
    if bra1[1] + bra2[1] != ket1[1] + ket2[1]:
        return 0.0
    a0, a1 = species.a_singlet, species.a_triplet

    delta = float(bra1 == ket1 and bra2 == ket2)
    d1, d2 = _hyperfine_to_spin(species, bra1), _hyperfine_to_spin(species, bra2)
    k1, k2 = _hyperfine_to_spin(species, ket1), _hyperfine_to_spin(species, ket2)

    s1s2 = 0.0
    for (ms1, mi1), c1 in k1.items():
        for (ms2, mi2), c2 in k2.items():
            # diagonal s1z s2z
            key1, key2 = (ms1, mi1), (ms2, mi2)
            if key1 in d1 and key2 in d2:
                s1s2 += d1[key1] * d2[key2] * c1 * c2 * float(ms1 * ms2)
            # flip-flop (1/2)(s1+ s2- + s1- s2+)
            for sgn in (+1, -1):
                nms1, nms2 = ms1 + sgn, ms2 - sgn
                if abs(nms1) > Fraction(1, 2) or abs(nms2) > Fraction(1, 2):
                    continue
                key1, key2 = (nms1, mi1), (nms2, mi2)
                if key1 in d1 and key2 in d2:
                    s1s2 += 0.5 * d1[key1] * d2[key2] * c1 * c2
    return overlap_integral * ((a0 + 3.0 * a1) / 4.0 * delta + (a1 - a0) * s1s2)
