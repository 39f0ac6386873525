"""Dense complex linear algebra and quantum-state utilities.

This is the exact-oracle layer: Kronecker products, propagators
``exp(-i H t)`` from a Hermitian eigendecomposition, partial traces,
expectation values and matrix distances, all on plain ``numpy`` arrays.
Storage is dense on purpose; the models in this package are checked at small
sizes where a dense 2^N statevector is the most trustworthy representation.
Total dimensions are capped (default ``2**22``) so a bad loop fails fast
instead of exhausting memory.

Conventions
-----------
* Qubit basis index 0 is spin-up, index 1 is spin-down, so
  ``sigma_z = diag(1, -1)``.
* ``|+x>`` and ``|-x>`` are the sigma_x eigenvectors with eigenvalues +1/-1.
* States are 1-D complex arrays, operators 2-D; nothing is wrapped.
"""

from __future__ import annotations

import numpy as np

from .errors import DimensionMismatch, DimensionTooLarge, NotHermitian

MAX_DIMENSION = 2**22

HERMITICITY_TOL = 1e-10

IDENTITY_2 = np.eye(2, dtype=complex)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)

KET_UP = np.array([1, 0], dtype=complex)
KET_DOWN = np.array([0, 1], dtype=complex)
KET_PLUS_X = np.array([1, 1], dtype=complex) / np.sqrt(2)
KET_MINUS_X = np.array([1, -1], dtype=complex) / np.sqrt(2)


def kron(a: np.ndarray, b: np.ndarray, max_dim: int = MAX_DIMENSION) -> np.ndarray:
    """Kronecker product with a dimension guard.

    Raises DimensionTooLarge if either output axis would exceed ``max_dim``.
    """
    a = np.asarray(a)
    b = np.asarray(b)
    rows = a.shape[0] * b.shape[0]
    cols = (a.shape[1] if a.ndim == 2 else 1) * (b.shape[1] if b.ndim == 2 else 1)
    if max(rows, cols) > max_dim:
        raise DimensionTooLarge(
            f"kron output {rows}x{cols} exceeds the cap of {max_dim}"
        )
    return np.kron(a, b)


def kron_all(factors, max_dim: int = MAX_DIMENSION) -> np.ndarray:
    """Left-to-right Kronecker product of a sequence of arrays."""
    out = np.array([1.0], dtype=complex)
    first = True
    for f in factors:
        if first and np.asarray(f).ndim == 2:
            out = np.array([[1.0]], dtype=complex)
        first = False
        out = kron(out, f, max_dim=max_dim)
    return out


def site_operator_sum(
    op: np.ndarray, n_sites: int, max_dim: int = MAX_DIMENSION
) -> np.ndarray:
    """Sum over sites of ``I x ... x op x ... x I`` for a single-site operator."""
    d = op.shape[0]
    dim = d**n_sites
    if dim > max_dim:
        raise DimensionTooLarge(f"{n_sites} sites of dim {d} exceed the cap")
    total = np.zeros((dim, dim), dtype=complex)
    eye = np.eye(d, dtype=complex)
    for i in range(n_sites):
        term = np.array([[1.0]], dtype=complex)
        for j in range(n_sites):
            term = np.kron(term, op if j == i else eye)
        total += term
    return total


def dagger(a: np.ndarray) -> np.ndarray:
    return np.asarray(a).conj().T


def is_hermitian(a: np.ndarray, tol: float = HERMITICITY_TOL) -> bool:
    a = np.asarray(a)
    return a.ndim == 2 and a.shape[0] == a.shape[1] and np.max(np.abs(a - a.conj().T)) <= tol


class HermitianPropagator:
    """Time evolution ``exp(-i h t)`` from one eigendecomposition of ``h``.

    The factorization is done once; propagators at arbitrary ``t`` are then a
    diagonal rescaling, which is what t-grid sweeps need.  ``apply`` avoids
    forming the full unitary (two matvecs instead of two matmuls).
    """

    def __init__(self, h: np.ndarray, tol: float = HERMITICITY_TOL):
        h = np.asarray(h, dtype=complex)
        if h.ndim != 2 or h.shape[0] != h.shape[1]:
            raise DimensionMismatch(f"propagator needs a square matrix, got {h.shape}")
        dev = float(np.max(np.abs(h - h.conj().T))) if h.size else 0.0
        if dev > tol:
            raise NotHermitian(f"max |h - h^dag| = {dev:.3e} exceeds {tol:.1e}")
        self.dim = h.shape[0]
        self.eigenvalues, self._vectors = np.linalg.eigh(h)

    def matrix(self, t: float) -> np.ndarray:
        """Dense unitary exp(-i h t)."""
        phases = np.exp(-1j * self.eigenvalues * t)
        return (self._vectors * phases) @ self._vectors.conj().T

    def apply(self, state: np.ndarray, t: float) -> np.ndarray:
        """exp(-i h t) |state> without forming the full unitary."""
        state = np.asarray(state, dtype=complex)
        if state.shape != (self.dim,):
            raise DimensionMismatch(
                f"state of dim {state.shape} vs propagator dim {self.dim}"
            )
        coeffs = self._vectors.conj().T @ state
        coeffs *= np.exp(-1j * self.eigenvalues * t)
        return self._vectors @ coeffs


def hermitian_propagator(h: np.ndarray, t: float) -> np.ndarray:
    """One-shot ``exp(-i h t)`` for Hermitian ``h`` (see HermitianPropagator)."""
    return HermitianPropagator(h).matrix(t)


def partial_trace(state: np.ndarray, factor_dims, keep) -> np.ndarray:
    """Reduced density matrix of ``|state><state|`` over the kept factors.

    Parameters
    ----------
    state : 1-D complex array on the tensor product of ``factor_dims``.
    factor_dims : subsystem dimensions, in tensor order.
    keep : indices (into factor_dims) of the subsystems to keep; the reduced
        matrix orders them ascending.
    """
    state = np.asarray(state, dtype=complex)
    dims = list(int(d) for d in factor_dims)
    if int(np.prod(dims)) != state.size:
        raise DimensionMismatch(
            f"state dim {state.size} != product of factors {dims}"
        )
    keep = sorted(set(int(k) for k in keep))
    if any(k < 0 or k >= len(dims) for k in keep):
        raise DimensionMismatch(f"keep indices {keep} out of range for {len(dims)} factors")
    traced = [i for i in range(len(dims)) if i not in keep]
    psi = state.reshape(dims).transpose(keep + traced)
    d_keep = int(np.prod([dims[i] for i in keep])) if keep else 1
    mat = psi.reshape(d_keep, -1)
    return mat @ mat.conj().T


def expectation(op: np.ndarray, state: np.ndarray) -> complex:
    """<state| op |state>."""
    op = np.asarray(op, dtype=complex)
    state = np.asarray(state, dtype=complex)
    if op.ndim != 2 or op.shape[0] != op.shape[1] or op.shape[0] != state.size:
        raise DimensionMismatch(f"operator {op.shape} vs state dim {state.size}")
    return complex(np.vdot(state, op @ state))


def frobenius_distance(a: np.ndarray, b: np.ndarray) -> float:
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise DimensionMismatch(f"shape {a.shape} vs {b.shape}")
    return float(np.linalg.norm(a - b))


def trace_distance(a: np.ndarray, b: np.ndarray) -> float:
    """(1/2) * trace norm of a - b; in [0, 1] for density matrices."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != b.shape:
        raise DimensionMismatch(f"shape {a.shape} vs {b.shape}")
    return float(0.5 * np.sum(np.linalg.svd(a - b, compute_uv=False)))
