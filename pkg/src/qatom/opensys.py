"""Lindblad master equations and quantum-jump Monte Carlo for atomic ensembles.

Markovian open-system dynamics d rho/dt = -i [H0, rho] + sum_j G_j D(X_j, rho)
with the dissipator D(X, rho) = X rho X+ - (X+X rho + rho X+X)/2, integrated
either exactly on the density matrix (fixed-step RK4) or as an ensemble of
stochastic pure-state trajectories.  Prebuilt models cover spontaneous
emission of a two-level atom, collective emission of N bosons into a shared
ground mode, and one/two/three-body loss on a truncated number ladder.
Units have hbar = 1; rates and times are reciprocal pairs.
"""

import warnings
from dataclasses import dataclass

import numpy as np

__all__ = [
    "LindbladModel",
    "MasterResult",
    "TrajectoryBatch",
    "lindblad_dissipator",
    "lindblad_rhs",
    "integrate_master",
    "quantum_jump",
    "two_level_decay",
    "superradiance_model",
    "superradiance_meanfield",
    "loss_channels",
    "expectation_trace",
]


@dataclass(frozen=True)
class LindbladModel:
    """Hamiltonian plus a list of (collapse operator, rate >= 0) channels."""

    hamiltonian: np.ndarray
    channels: tuple

    def __post_init__(self):
        H = np.asarray(self.hamiltonian, dtype=complex)
        if H.ndim != 2 or H.shape[0] != H.shape[1]:
            raise ValueError(f"hamiltonian must be square, got shape {H.shape}")
        if np.max(np.abs(H - H.conj().T)) > 1e-12:
            raise ValueError("hamiltonian must be Hermitian to 1e-12")
        chans = []
        for X, rate in self.channels:
            X = np.asarray(X, dtype=complex)
            if X.shape != H.shape:
                raise ValueError(f"channel operator shape {X.shape} != hamiltonian {H.shape}")
            if rate < 0.0:
                raise ValueError(f"channel rate must be >= 0, got {rate}")
            chans.append((X, float(rate)))
        object.__setattr__(self, "hamiltonian", H)
        object.__setattr__(self, "channels", tuple(chans))

    @property
    def dimension(self) -> int:
        return self.hamiltonian.shape[0]


@dataclass(frozen=True)
class MasterResult:
    """Density-matrix samples rho(t) with the integrator's step-size flag."""

    times: np.ndarray
    states: np.ndarray
    step_warning: bool


@dataclass(frozen=True)
class TrajectoryBatch:
    """Trajectory-averaged density matrices and population standard errors."""

    M: int
    seed: int
    times: np.ndarray
    states: np.ndarray
    population_stderr: np.ndarray


def lindblad_dissipator(X, rho):
    """Single-channel dissipator X rho X+ - (X+X rho + rho X+X) / 2."""
    XdX = X.conj().T @ X
    return X @ rho @ X.conj().T - 0.5 * (XdX @ rho + rho @ XdX)


def lindblad_rhs(model: LindbladModel, rho) -> np.ndarray:
    """Full right-hand side -i [H0, rho] + sum_j rate_j D(X_j, rho)."""
    rho = np.asarray(rho, dtype=complex)
    H = model.hamiltonian
    if rho.shape != H.shape:
        raise ValueError(f"density matrix shape {rho.shape} != model dimension {H.shape}")
    out = -1j * (H @ rho - rho @ H)
    for X, rate in model.channels:
        out += rate * lindblad_dissipator(X, rho)
    return out


def _max_channel_rate(model: LindbladModel) -> float:
    # fastest dissipative timescale: rate times the top eigenvalue of X+X
    worst = 0.0
    for X, rate in model.channels:
        if rate > 0.0:
            top = float(np.max(np.linalg.eigvalsh(X.conj().T @ X)))
            worst = max(worst, rate * top)
    return worst


def integrate_master(model: LindbladModel, rho0, t_end, dt, store_every=1) -> MasterResult:
    """Fixed-step RK4 integration of the master equation.

    dt is rounded so an integer number of steps lands exactly on t_end.
    Hermiticity and unit trace are re-imposed after every step (the
    projection is a no-op up to roundoff for a trace-preserving generator).
    A step warning is raised, and flagged on the result, when dt times the
    fastest channel rate exceeds 0.1.
    """
    rho = np.asarray(rho0, dtype=complex).copy()
    if rho.shape != model.hamiltonian.shape:
        raise ValueError(f"initial state shape {rho.shape} != model dimension")
    if t_end <= 0.0 or dt <= 0.0:
        raise ValueError("t_end and dt must be positive")
    nsteps = max(1, int(round(t_end / dt)))
    h = t_end / nsteps

    flagged = h * _max_channel_rate(model) > 0.1
    if flagged:
        warnings.warn("time step is large against the fastest channel rate; "
                      "results may be inaccurate", stacklevel=2)

    tr0 = np.trace(rho).real
    times = [0.0]
    states = [rho.copy()]
    for step in range(1, nsteps + 1):
        k1 = lindblad_rhs(model, rho)
        k2 = lindblad_rhs(model, rho + 0.5 * h * k1)
        k3 = lindblad_rhs(model, rho + 0.5 * h * k2)
        k4 = lindblad_rhs(model, rho + h * k3)
        rho = rho + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        rho = 0.5 * (rho + rho.conj().T)
        rho *= tr0 / np.trace(rho).real
        if step % store_every == 0 or step == nsteps:
            times.append(step * h)
            states.append(rho.copy())
    return MasterResult(np.asarray(times), np.asarray(states), flagged)


def quantum_jump(model: LindbladModel, psi0, t_end, dt, M, seed, store_every=1) -> TrajectoryBatch:
    """Stochastic unraveling of the master equation over M pure trajectories.

    Each step computes the jump probabilities dp_j = <X+X> rate_j dt, draws a
    uniform number, and either applies the renormalized no-jump propagator
    1 - i H_eff dt with H_eff = H0 - (i/2) sum_j rate_j X_j+ X_j, or picks a
    channel with probability dp_j / dp and applies the renormalized collapse.
    Trajectory kets are renormalized to exactly unit norm every step, so the
    batch-averaged density matrix has trace one identically.

    Random numbers come from a counter-based generator: step s draws its
    block from Philox(key=seed, counter position s), and trajectory k reads
    row k of the block, so the ensemble is reproducible and independent of
    evaluation order.
    """
    psi0 = np.asarray(psi0, dtype=complex)
    dim = model.dimension
    if psi0.shape != (dim,):
        raise ValueError(f"state shape {psi0.shape} != model dimension {dim}")
    if abs(np.linalg.norm(psi0) - 1.0) > 1e-8:
        raise ValueError("initial state must be normalized")
    if M < 1:
        raise ValueError(f"need at least one trajectory, got {M}")
    if t_end <= 0.0 or dt <= 0.0:
        raise ValueError("t_end and dt must be positive")
    nsteps = max(1, int(round(t_end / dt)))
    h = t_end / nsteps

    Xs = [X for X, _ in model.channels]
    rates = np.array([rate for _, rate in model.channels])
    nchan = len(Xs)
    Heff = model.hamiltonian.astype(complex).copy()
    for X, rate in model.channels:
        Heff -= 0.5j * rate * (X.conj().T @ X)
    U = np.eye(dim, dtype=complex) - 1j * h * Heff

    psi = np.tile(psi0, (M, 1))

    def record(ts, states, pop_err, t):
        ts.append(t)
        states.append(np.einsum("mi,mj->ij", psi, psi.conj()) / M)
        pops = np.abs(psi) ** 2
        pop_err.append(pops.std(axis=0, ddof=1) / np.sqrt(M) if M > 1 else np.zeros(dim))

    ts, states, pop_err = [], [], []
    record(ts, states, pop_err, 0.0)
    for step in range(1, nsteps + 1):
        collapsed = [psi @ X.T for X in Xs]  # row m holds X |psi_m>
        if nchan:
            dp_j = np.stack([rate * h * np.sum(np.abs(c) ** 2, axis=1)
                             for c, rate in zip(collapsed, rates)], axis=1)
        else:
            dp_j = np.zeros((M, 0))
        dp = dp_j.sum(axis=1)
        if np.any(dp >= 1.0):
            raise ValueError(f"jump probability reached {dp.max():.3f} at step {step}; "
                             "reduce dt")
        assert dp.max() < 0.1, "per-step jump probability exceeds 0.1; reduce dt"

        rng = np.random.Generator(np.random.Philox(key=seed, counter=[0, 0, 0, step]))
        u = rng.random((M, 2))
        jumping = (u[:, 0] <= dp) & (dp > 0.0)

        new_psi = psi @ U.T
        new_psi /= np.sqrt(1.0 - dp)[:, None]
        if np.any(jumping):
            # channel choice proportional to dp_j / dp
            cum = np.cumsum(dp_j[jumping], axis=1)
            pick = np.sum(u[jumping, 1, None] * dp[jumping, None] >= cum, axis=1)
            pick = np.minimum(pick, nchan - 1)
            rows = np.flatnonzero(jumping)
            for j in range(nchan):
                sel = rows[pick == j]
                if sel.size:
                    new_psi[sel] = collapsed[j][sel]
        psi = new_psi / np.linalg.norm(new_psi, axis=1)[:, None]

        if step % store_every == 0 or step == nsteps:
            record(ts, states, pop_err, step * h)

    return TrajectoryBatch(M, seed, np.asarray(ts), np.asarray(states),
                           np.asarray(pop_err))


def two_level_decay(rate, detuning=0.0) -> LindbladModel:
    """Spontaneous emission of a two-level atom, basis ordered (ground, excited)."""
    sigma_minus = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
    H0 = 0.5 * detuning * np.diag([-1.0, 1.0]).astype(complex)
    return LindbladModel(H0, ((sigma_minus, rate),))


def superradiance_model(N, rate) -> LindbladModel:
    """Collective emission of N bosons from an excited mode into a ground mode.

    Basis |k> counts excited atoms; the collapse operator moves one atom down
    with the bosonic enhancement sqrt(k (N - k + 1)) that makes the ensemble
    decay on the 1 / ((N + 1) rate) timescale.
    """
    if N < 1:
        raise ValueError(f"need at least one atom, got {N}")
    dim = N + 1
    X = np.zeros((dim, dim), dtype=complex)
    for k in range(1, dim):
        X[k - 1, k] = np.sqrt(k * (N - k + 1.0))
    return LindbladModel(np.zeros((dim, dim), dtype=complex), ((X, rate),))


def superradiance_meanfield(N, rate, t):
    """Closed-form mean excited number N (N + 1) / (N + e^{(N+1) rate t}).

    Follows from dropping the number fluctuations in the exact moment
    equation; the decay accelerates with N through bosonic enhancement.
    """
    if N < 1:
        raise ValueError(f"need at least one atom, got {N}")
    x = (N + 1.0) * rate * np.asarray(t, dtype=float)
    # e^{-x} form stays finite for arbitrarily large t
    return N * (N + 1.0) * np.exp(-x) / (N * np.exp(-x) + 1.0)


def loss_channels(N, order, rate) -> LindbladModel:
    """One-, two-, or three-body loss on a number ladder truncated at N atoms.

    The collapse operator is a^order on the (N + 1)-dimensional Fock space;
    order 3 models molecule formation carrying away three atoms at once.
    """
    if order not in (1, 2, 3):
        raise ValueError(f"loss order must be 1, 2, or 3, got {order}")
    if N < order:
        raise ValueError(f"truncation N={N} cannot host a {order}-body loss event")
    dim = N + 1
    a = np.zeros((dim, dim), dtype=complex)
    for n in range(1, dim):
        a[n - 1, n] = np.sqrt(n)
    X = np.linalg.matrix_power(a, order)
    return LindbladModel(np.zeros((dim, dim), dtype=complex), ((X, rate),))


def expectation_trace(states, op):
    """Real expectation Tr(rho op) for each density matrix in a time series."""
    states = np.asarray(states)
    if states.ndim == 2:
        states = states[None]
    return np.einsum("tij,ji->t", states, np.asarray(op, dtype=complex)).real
