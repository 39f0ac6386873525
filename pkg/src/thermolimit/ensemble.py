"""N independent two-level systems: fluctuation scaling and collective spin.

The model is ``H = lam * sum_i sigma_z_i`` on a product state
``prod_i (alpha_i |down> + beta_i |up>)``.  Everything measurable here has a
closed form because the sites never entangle: per-site magnetization
``m_i = |beta_i|^2 - |alpha_i|^2`` gives

    <H>      = lam * sum_i m_i
    Var(H)   = lam^2 * sum_i (1 - m_i^2)

so the relative fluctuation falls off like 1/sqrt(N) for sites with bounded
magnetization, and the collective transverse spin rotates rigidly at angular
frequency ``2*lam``.  A dense 2^N statevector oracle (N <= 12) backs all of
the closed forms.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg, serialize
from .errors import (
    DimensionTooLarge,
    InsufficientPoints,
    ZeroMeanEnergy,
)

DENSE_ORACLE_MAX_SPINS = 12

_MEAN_ZERO_TOL = 1e-12


@dataclass(frozen=True)
class EnsembleConfig:
    """Number of spins and the level-splitting energy scale (hbar = 1)."""

    n_spins: int
    lam: float

    def __post_init__(self):
        if self.n_spins < 1:
            raise ValueError(f"n_spins must be >= 1, got {self.n_spins}")
        if not np.isfinite(self.lam) or self.lam == 0:
            raise ValueError(f"lam must be finite and nonzero, got {self.lam}")


class ProductSpinState:
    """Product state of N qubits, stored as per-site (alpha, beta) pairs.

    ``alpha`` multiplies |down>, ``beta`` multiplies |up>; each pair is
    normalized to 1e-12.  The per-site Bloch components are

        sx = 2 Re(conj(beta) alpha), sy = 2 Im(conj(beta) alpha),
        sz = |beta|^2 - |alpha|^2.
    """

    def __init__(self, sites):
        sites = np.asarray(sites, dtype=complex)
        if sites.ndim != 2 or sites.shape[1] != 2 or sites.shape[0] < 1:
            raise ValueError(f"sites must be an (N, 2) array, got {sites.shape}")
        norms = np.abs(sites[:, 0]) ** 2 + np.abs(sites[:, 1]) ** 2
        if np.max(np.abs(norms - 1.0)) > 1e-12:
            raise ValueError("every site must satisfy |alpha|^2 + |beta|^2 = 1")
        self.sites = sites

    @property
    def n_spins(self) -> int:
        return self.sites.shape[0]

    @property
    def alphas(self) -> np.ndarray:
        return self.sites[:, 0]

    @property
    def betas(self) -> np.ndarray:
        return self.sites[:, 1]

    def magnetizations(self) -> np.ndarray:
        """Per-site <sigma_z>."""
        return np.abs(self.betas) ** 2 - np.abs(self.alphas) ** 2

    def transverse_moments(self) -> tuple[np.ndarray, np.ndarray]:
        """Per-site (<sigma_x>, <sigma_y>)."""
        z = np.conj(self.betas) * self.alphas
        return 2.0 * z.real, 2.0 * z.imag

    def to_dense(self) -> np.ndarray:
        """Full 2^N statevector in the computational (up/down) basis."""
        if self.n_spins > 22:
            raise DimensionTooLarge(f"2^{self.n_spins} statevector exceeds the cap")
        return linalg.kron_all(
            np.array([b, a], dtype=complex) for a, b in self.sites
        )

    @classmethod
    def uniform(cls, alpha: complex, beta: complex, n_spins: int) -> "ProductSpinState":
        return cls([(alpha, beta)] * n_spins)

    @classmethod
    def plus_x(cls, n_spins: int) -> "ProductSpinState":
        r = 1.0 / np.sqrt(2.0)
        return cls.uniform(r, r, n_spins)

    @classmethod
    def from_magnetizations(cls, m, phases=None) -> "ProductSpinState":
        """Sites with given <sigma_z> values and optional relative phases."""
        m = np.asarray(m, dtype=float)
        if np.any(np.abs(m) > 1):
            raise ValueError("magnetizations must lie in [-1, 1]")
        alpha = np.sqrt((1.0 - m) / 2.0).astype(complex)
        beta = np.sqrt((1.0 + m) / 2.0).astype(complex)
        if phases is not None:
            beta = beta * np.exp(1j * np.asarray(phases, dtype=float))
        return cls(np.column_stack([alpha, beta]))


def mean_energy(state: ProductSpinState, cfg: EnsembleConfig) -> float:
    """<H> = lam * sum_i m_i, exact for product states."""
    return float(cfg.lam * np.sum(state.magnetizations()))


def energy_std(state: ProductSpinState, cfg: EnsembleConfig) -> float:
    """sqrt(<H^2> - <H>^2) = |lam| * sqrt(sum_i (1 - m_i^2))."""
    m = state.magnetizations()
    return float(abs(cfg.lam) * np.sqrt(np.sum(1.0 - m**2)))


def relative_fluctuation(state: ProductSpinState, cfg: EnsembleConfig) -> float:
    """Delta H / <H>; raises ZeroMeanEnergy when the mean vanishes."""
    mean = mean_energy(state, cfg)
    if abs(mean) <= _MEAN_ZERO_TOL * abs(cfg.lam) * state.n_spins:
        raise ZeroMeanEnergy("relative fluctuation undefined at <H> = 0")
    return energy_std(state, cfg) / mean


@dataclass
class CollectiveTrajectory:
    """Collective spin means and the x-variance along a time grid."""

    times: np.ndarray
    jx: np.ndarray
    jy: np.ndarray
    jz: np.ndarray
    delta_jx: np.ndarray


def collective_spin_trajectory(
    state: ProductSpinState, cfg: EnsembleConfig, t_grid
) -> CollectiveTrajectory:
    """Exact Heisenberg evolution of J_a = sum_i sigma_a_i.

    From [sigma_z, sigma_x] = 2i sigma_y and [sigma_z, sigma_y] = -2i sigma_x
    the transverse components rotate at angular frequency 2*lam:

        <Jx>(t) =  cos(2 lam t) <Jx>(0) - sin(2 lam t) <Jy>(0)
        <Jy>(t) =  sin(2 lam t) <Jx>(0) + cos(2 lam t) <Jy>(0)

    while <Jz> is conserved.  The state stays a product, so Var(Jx)(t) is the
    per-site sum ``sum_i (1 - sx_i(t)^2)``.
    """
    t = np.asarray(list(t_grid), dtype=float)
    if t.size and not np.all(np.isfinite(t)):
        raise ValueError("t_grid must contain finite times")
    sx0, sy0 = state.transverse_moments()
    sz0 = state.magnetizations()
    c = np.cos(2.0 * cfg.lam * t)[:, None]
    s = np.sin(2.0 * cfg.lam * t)[:, None]
    sx_t = c * sx0[None, :] - s * sy0[None, :]
    sy_t = s * sx0[None, :] + c * sy0[None, :]
    return CollectiveTrajectory(
        times=t,
        jx=sx_t.sum(axis=1),
        jy=sy_t.sum(axis=1),
        jz=np.full(t.shape, sz0.sum()),
        delta_jx=np.sqrt(np.sum(1.0 - sx_t**2, axis=1)),
    )


@dataclass
class ScalingPoint:
    n: int
    mean_energy: float
    delta_h: float
    ratio: float


@dataclass
class ScalingTable:
    """Fluctuation-vs-size scan with its log-log power-law fit."""

    points: list[ScalingPoint]
    slope: float
    intercept: float

    def to_csv(self, path) -> None:
        """Data CSV plus a '<path>.json' sidecar holding the fit."""
        serialize.write_csv(
            path,
            ("n", "mean_energy", "delta_h", "ratio"),
            [(p.n, p.mean_energy, p.delta_h, p.ratio) for p in self.points],
        )
        serialize.write_json(
            str(path) + ".json", {"slope": self.slope, "intercept": self.intercept}
        )


def _sample_state(rng, magnetization, n: int) -> ProductSpinState:
    if np.isscalar(magnetization):
        m = np.full(n, float(magnetization))
        phases = None
    else:
        lo, hi = (float(magnetization[0]), float(magnetization[1]))
        if not (-1.0 <= lo <= hi <= 1.0):
            raise ValueError(f"magnetization interval {magnetization} outside [-1, 1]")
        m = rng.uniform(lo, hi, size=n)
        phases = rng.uniform(0.0, 2.0 * np.pi, size=n)
    return ProductSpinState.from_magnetizations(m, phases)


def scaling_experiment(
    magnetization,
    n_list,
    seed: int,
    lam: float = 1.0,
    retry_limit: int = 10,
) -> ScalingTable:
    """Sample one state per N, record (N, <H>, Delta H, ratio), fit the slope.

    ``magnetization`` is either a fixed per-site value or an interval to draw
    uniformly from (with uniform phases).  Draws whose mean energy vanishes
    are resampled up to ``retry_limit`` times, then ZeroMeanEnergy.
    A least-squares fit of log|ratio| against log N needs at least two
    distinct sizes (InsufficientPoints otherwise).
    """
    n_list = [int(n) for n in n_list]
    if not n_list or any(n < 2 for n in n_list):
        raise ValueError(f"n_list must be nonempty with all N >= 2: {n_list}")
    rng = np.random.default_rng(seed)
    points = []
    for n in n_list:
        cfg = EnsembleConfig(n_spins=n, lam=lam)
        for attempt in range(retry_limit + 1):
            state = _sample_state(rng, magnetization, n)
            try:
                ratio = relative_fluctuation(state, cfg)
            except ZeroMeanEnergy:
                if attempt == retry_limit:
                    raise
                continue
            break
        points.append(
            ScalingPoint(
                n=n,
                mean_energy=mean_energy(state, cfg),
                delta_h=energy_std(state, cfg),
                ratio=ratio,
            )
        )
    if len(set(n_list)) < 2:
        raise InsufficientPoints("slope fit needs at least two distinct N values")
    log_n = np.log([p.n for p in points])
    log_r = np.log([abs(p.ratio) for p in points])
    slope, intercept = np.polyfit(log_n, log_r, 1)
    return ScalingTable(points=points, slope=float(slope), intercept=float(intercept))


@dataclass
class OracleCheck:
    """Closed forms versus the dense statevector, worst deviation first."""

    max_deviation: float
    deviations: dict[str, float]


def dense_oracle_check(
    state: ProductSpinState, cfg: EnsembleConfig, t: float
) -> OracleCheck:
    """Evolve the full 2^N vector exactly and compare every closed form."""
    n = state.n_spins
    if n != cfg.n_spins:
        raise ValueError("state and config disagree on n_spins")
    if n > DENSE_ORACLE_MAX_SPINS:
        raise DimensionTooLarge(
            f"dense oracle limited to N <= {DENSE_ORACLE_MAX_SPINS}, got {n}"
        )
    h = cfg.lam * linalg.site_operator_sum(linalg.PAULI_Z, n)
    psi = linalg.HermitianPropagator(h).apply(state.to_dense(), t)

    deviations: dict[str, float] = {}
    h_psi = h @ psi
    mean_dense = float(np.vdot(psi, h_psi).real)
    std_dense = float(np.sqrt(max(np.vdot(h_psi, h_psi).real - mean_dense**2, 0.0)))
    deviations["mean_energy"] = abs(mean_dense - mean_energy(state, cfg))
    deviations["delta_h"] = abs(std_dense - energy_std(state, cfg))

    traj = collective_spin_trajectory(state, cfg, [t])
    for name, pauli, closed in (
        ("jx", linalg.PAULI_X, traj.jx[0]),
        ("jy", linalg.PAULI_Y, traj.jy[0]),
        ("jz", linalg.PAULI_Z, traj.jz[0]),
    ):
        op = linalg.site_operator_sum(pauli, n)
        deviations[name] = abs(float(np.vdot(psi, op @ psi).real) - closed)
    op_x = linalg.site_operator_sum(linalg.PAULI_X, n)
    jx_psi = op_x @ psi
    dense_var = float(np.vdot(jx_psi, jx_psi).real - np.vdot(psi, jx_psi).real ** 2)
    deviations["delta_jx"] = abs(np.sqrt(max(dense_var, 0.0)) - traj.delta_jx[0])
    return OracleCheck(
        max_deviation=max(deviations.values()), deviations=deviations
    )
