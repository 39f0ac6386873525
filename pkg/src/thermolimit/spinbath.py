"""Central spin in a spin bath: exact flopping and decoherence by averaging.

Model: ``H = lam * tau_x * sum_i sigma_x_i`` for one central spin (tau) and N
bath spins, prepared as ``|down> (x) prod_i |-x>_i``.  The bath state is a
collective sigma_x eigenstate with eigenvalue -N, so the joint state stays a
product for all time and the central spin simply precesses:

    |psi(t)> = exp(i N lam t tau_x) |down>
             = cos(N lam t) |down> + i sin(N lam t) |up>

Rabi flopping at Omega = 2 N lam.  The reduced density matrix oscillates at
Omega; nothing decoheres at finite N.  Decoherence appears only as the
regularized N -> infinity limit, where the flopping frequency diverges and
the only assignable values are time averages: off-diagonals 0, diagonals 1/2.

Density-matrix index convention: row/column 0 is |up>, 1 is |down>.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg, regularization, serialize
from .errors import DimensionTooLarge, InvalidWindow

DENSE_ORACLE_MAX_SPINS = 12

# above this many bath spins the joint propagator is applied as commuting
# two-qubit factors instead of one big matrix exponential
_DENSE_MATRIX_MAX_SPINS = 8

QUBIT_DENSITY_TOL = 1e-12


@dataclass(frozen=True)
class BathConfig:
    """Bath size and coupling strength (angular frequency, hbar = 1)."""

    n_spins: int
    lam: float

    def __post_init__(self):
        if self.n_spins < 1:
            raise ValueError(f"n_spins must be >= 1, got {self.n_spins}")
        if not (self.lam > 0 and np.isfinite(self.lam)):
            raise ValueError(f"lam must be positive and finite, got {self.lam}")


def validate_qubit_density(rho: np.ndarray, tol: float = QUBIT_DENSITY_TOL) -> np.ndarray:
    """Check Hermiticity, unit trace and positivity of a 2x2 density matrix."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (2, 2):
        raise ValueError(f"expected a 2x2 matrix, got {rho.shape}")
    if np.max(np.abs(rho - rho.conj().T)) > tol:
        raise ValueError("density matrix not Hermitian")
    if abs(np.trace(rho).real - 1.0) > tol:
        raise ValueError("density matrix trace differs from 1")
    if np.min(np.linalg.eigvalsh(rho)) < -tol:
        raise ValueError("density matrix has a negative eigenvalue")
    return rho


def evolve_interacting_spin(cfg: BathConfig, t: float) -> tuple[complex, complex]:
    """Amplitudes (c_down, c_up) of the central spin at time t.

    ``exp(i N lam t tau_x)|down> = cos(N lam t)|down> + i sin(N lam t)|up>``;
    exactly unitary at every t.
    """
    theta = cfg.n_spins * cfg.lam * t
    return complex(np.cos(theta)), 1j * complex(np.sin(theta))


def reduced_density(cfg: BathConfig, t: float) -> np.ndarray:
    """Exact 2x2 reduced density matrix of the central spin."""
    x = 2.0 * cfg.n_spins * cfg.lam * t
    rho = np.array(
        [
            [(1.0 - np.cos(x)) / 2.0, 0.5j * np.sin(x)],
            [-0.5j * np.sin(x), (1.0 + np.cos(x)) / 2.0],
        ],
        dtype=complex,
    )
    return validate_qubit_density(rho)


def rabi_frequency(cfg: BathConfig) -> float:
    """Flopping angular frequency Omega = 2 N lam."""
    return 2.0 * cfg.n_spins * cfg.lam


def time_averaged_density(
    cfg: BathConfig, window: float, n_infinite: bool = False
) -> np.ndarray:
    """Mean of the reduced density matrix over [0, T], in closed form.

    Off-diagonal magnitude is bounded by 1/(2 N lam T) and the diagonals
    approach 1/2 at the same rate.  With ``n_infinite`` the flopping
    frequency is taken to infinity first and the entries are the regularized
    trig limits: exactly diag(1/2, 1/2), a result independent of the window.
    """
    if not (window > 0 and np.isfinite(window)):
        raise InvalidWindow(f"window must be positive and finite, got {window}")
    if n_infinite:
        schedule = regularization.RegularizationSchedule.default()
        c = regularization.regularized_trig_limit("cos", schedule)
        s = regularization.regularized_trig_limit("sin", schedule)
        rho = np.array(
            [[(1.0 - c) / 2.0, 0.5j * s], [-0.5j * s, (1.0 + c) / 2.0]],
            dtype=complex,
        )
        return validate_qubit_density(rho)
    x = 2.0 * cfg.n_spins * cfg.lam * window
    avg_cos = np.sin(x) / x
    avg_sin = (1.0 - np.cos(x)) / x
    rho = np.array(
        [
            [(1.0 - avg_cos) / 2.0, 0.5j * avg_sin],
            [-0.5j * avg_sin, (1.0 + avg_cos) / 2.0],
        ],
        dtype=complex,
    )
    return validate_qubit_density(rho)


def offdiagonal_bound(cfg: BathConfig, window: float) -> float:
    """A-priori bound 1/(2 N lam T) on the averaged off-diagonal magnitude."""
    if not (window > 0 and np.isfinite(window)):
        raise InvalidWindow(f"window must be positive and finite, got {window}")
    return 1.0 / (2.0 * cfg.n_spins * cfg.lam * window)


def limit_report(cfg: BathConfig, window: float) -> dict:
    """Time-average report as serialized in the limit JSON artifact."""
    rho = time_averaged_density(cfg, window)
    return {
        "n": cfg.n_spins,
        "window": float(window),
        "offdiag_bound": offdiagonal_bound(cfg, window),
        "offdiag_max": float(abs(rho[0, 1])),
    }


def trajectory_rows(cfg: BathConfig, times) -> list[tuple]:
    """Rows (t, rho_uu, rho_dd, re_rho_ud, im_rho_ud) for the trajectory CSV."""
    rows = []
    for t in times:
        rho = reduced_density(cfg, float(t))
        rows.append(
            (
                float(t),
                float(rho[0, 0].real),
                float(rho[1, 1].real),
                float(rho[0, 1].real),
                float(rho[0, 1].imag),
            )
        )
    return rows


def write_trajectory_csv(path, cfg: BathConfig, times) -> None:
    serialize.write_csv(
        path,
        ("t", "rho_uu", "rho_dd", "re_rho_ud", "im_rho_ud"),
        trajectory_rows(cfg, times),
    )


def initial_joint_state(cfg: BathConfig) -> np.ndarray:
    """|down> (x) prod |-x> on the 2^(N+1) joint space (central spin first)."""
    return linalg.kron_all(
        [linalg.KET_DOWN] + [linalg.KET_MINUS_X] * cfg.n_spins
    )


def joint_evolution(cfg: BathConfig, t: float, method: str = "auto") -> np.ndarray:
    """Exact joint statevector at time t.

    ``method='dense'`` exponentiates the full 2^(N+1) Hamiltonian;
    ``method='factored'`` applies the commuting two-qubit factors
    ``exp(-i lam t tau_x sigma_x_i)`` one bath spin at a time (the terms all
    commute, so the product is exact).  'auto' picks dense for small N where
    the full eigendecomposition is cheap.
    """
    n = cfg.n_spins
    if method == "auto":
        method = "dense" if n <= _DENSE_MATRIX_MAX_SPINS else "factored"
    psi = initial_joint_state(cfg)
    if method == "dense":
        h = cfg.lam * linalg.kron(
            linalg.PAULI_X, linalg.site_operator_sum(linalg.PAULI_X, n)
        )
        return linalg.HermitianPropagator(h).apply(psi, t)
    if method != "factored":
        raise ValueError(f"method must be auto|dense|factored, got {method!r}")
    gate = linalg.hermitian_propagator(
        cfg.lam * linalg.kron(linalg.PAULI_X, linalg.PAULI_X), t
    ).reshape(2, 2, 2, 2)
    psi = psi.reshape([2] * (n + 1))
    for i in range(1, n + 1):
        # contract gate axes (2,3)=(central_in, bath_i_in) with psi axes (0,i)
        psi = np.tensordot(gate, psi, axes=([2, 3], [0, i]))
        # tensordot left the outputs in front; put bath axis i back in place
        psi = np.moveaxis(psi, 1, i)
    return psi.reshape(-1)


@dataclass
class OracleCheck:
    """Closed-form reduced density versus the dense joint evolution."""

    max_deviation: float


def dense_oracle_check(cfg: BathConfig, t: float, method: str = "auto") -> OracleCheck:
    """Evolve the joint state, trace out the bath, compare entrywise."""
    if cfg.n_spins > DENSE_ORACLE_MAX_SPINS:
        raise DimensionTooLarge(
            f"dense oracle limited to N <= {DENSE_ORACLE_MAX_SPINS}, got {cfg.n_spins}"
        )
    psi = joint_evolution(cfg, t, method=method)
    rho = linalg.partial_trace(psi, [2] * (cfg.n_spins + 1), keep=[0])
    dev = float(np.max(np.abs(rho - reduced_density(cfg, t))))
    return OracleCheck(max_deviation=dev)


def dominant_frequency(samples, dt: float) -> float:
    """Angular frequency of the strongest non-DC Fourier bin of a series."""
    samples = np.asarray(samples, dtype=float)
    spectrum = np.abs(np.fft.rfft(samples - samples.mean()))
    if spectrum.size < 2:
        return 0.0
    k = 1 + int(np.argmax(spectrum[1:]))
    return 2.0 * np.pi * k / (samples.size * dt)
