import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, settings
from hypothesis import strategies as st

from thermolimit import linalg
from thermolimit.errors import DimensionMismatch, DimensionTooLarge, NotHermitian


def random_hermitian(dim, seed):
    rng = np.random.default_rng(seed)
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return (a + a.conj().T) / 2


def random_state(dim, seed):
    rng = np.random.default_rng(seed)
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return v / np.linalg.norm(v)


class TestKron:
    def test_identity(self):
        np.testing.assert_allclose(
            linalg.kron(linalg.IDENTITY_2, linalg.IDENTITY_2), np.eye(4)
        )

    def test_sigma_z_identity(self):
        np.testing.assert_allclose(
            linalg.kron(linalg.PAULI_Z, linalg.IDENTITY_2),
            np.diag([1.0, 1.0, -1.0, -1.0]),
        )

    def test_double_bit_flip(self):
        xx = linalg.kron(linalg.PAULI_X, linalg.PAULI_X)
        ket00 = linalg.kron(linalg.KET_UP, linalg.KET_UP)
        ket11 = linalg.kron(linalg.KET_DOWN, linalg.KET_DOWN)
        np.testing.assert_allclose(xx @ ket00, ket11)

    def test_dimension_cap(self):
        with pytest.raises(DimensionTooLarge):
            linalg.kron(np.eye(2**11), np.eye(2**12))


class TestPropagator:
    def test_zero_hamiltonian(self):
        np.testing.assert_allclose(
            linalg.hermitian_propagator(np.zeros((3, 3)), 2.7), np.eye(3), atol=1e-14
        )

    def test_sigma_z_quarter_period(self):
        u = linalg.hermitian_propagator(linalg.PAULI_Z, np.pi / 2)
        expected = np.diag([np.exp(-1j * np.pi / 2), np.exp(1j * np.pi / 2)])
        np.testing.assert_allclose(u, expected, atol=1e-14)

    def test_rejects_non_hermitian(self):
        with pytest.raises(NotHermitian):
            linalg.HermitianPropagator(np.array([[0, 1], [0, 0]], dtype=complex))

    def test_matches_scipy_expm(self):
        # independent route: scaling-and-squaring vs eigendecomposition
        for seed in range(4):
            h = random_hermitian(9, seed)
            t = 0.3 + seed
            np.testing.assert_allclose(
                linalg.hermitian_propagator(h, t),
                scipy.linalg.expm(-1j * h * t),
                atol=1e-10,
            )

    @pytest.mark.parametrize("dim", [2, 5, 16])
    def test_unitarity(self, dim):
        h = random_hermitian(dim, dim)
        u = linalg.hermitian_propagator(h, 1.234)
        assert np.max(np.abs(u.conj().T @ u - np.eye(dim))) <= 1e-9

    @pytest.mark.parametrize("dim", [2, 7, 16])
    def test_norm_preserved(self, dim):
        prop = linalg.HermitianPropagator(random_hermitian(dim, 2 * dim))
        psi = random_state(dim, dim)
        assert abs(np.linalg.norm(prop.apply(psi, 5.1)) - 1.0) <= 1e-9

    @given(
        dim=st.integers(min_value=2, max_value=16),
        t1=st.floats(min_value=-3, max_value=3),
        t2=st.floats(min_value=-3, max_value=3),
        seed=st.integers(min_value=0, max_value=2**31),
    )
    @settings(max_examples=25, deadline=None)
    def test_additivity(self, dim, t1, t2, seed):
        prop = linalg.HermitianPropagator(random_hermitian(dim, seed))
        u12 = prop.matrix(t1) @ prop.matrix(t2)
        np.testing.assert_allclose(prop.matrix(t1 + t2), u12, atol=1e-8)

    def test_apply_equals_matrix(self):
        prop = linalg.HermitianPropagator(random_hermitian(8, 3))
        psi = random_state(8, 4)
        np.testing.assert_allclose(
            prop.apply(psi, 0.9), prop.matrix(0.9) @ psi, atol=1e-12
        )


class TestPartialTrace:
    def test_product_state(self):
        a = random_state(3, 1)
        b = random_state(4, 2)
        rho = linalg.partial_trace(np.kron(a, b), [3, 4], keep=[0])
        np.testing.assert_allclose(rho, np.outer(a, a.conj()), atol=1e-14)

    @pytest.mark.parametrize("keep", [[0], [1]])
    def test_bell_state(self, keep):
        bell = np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2)
        rho = linalg.partial_trace(bell, [2, 2], keep=keep)
        np.testing.assert_allclose(rho, np.eye(2) / 2, atol=1e-14)

    def test_dim_mismatch(self):
        with pytest.raises(DimensionMismatch):
            linalg.partial_trace(random_state(6, 0), [2, 4], keep=[0])

    def test_complementary_traces_share_trace(self):
        psi = random_state(24, 5)
        dims = [2, 3, 4]
        rho_a = linalg.partial_trace(psi, dims, keep=[0])
        rho_bc = linalg.partial_trace(psi, dims, keep=[1, 2])
        assert abs(np.trace(rho_a) - np.trace(rho_bc)) <= 1e-12

    def test_properties_of_reduced_matrix(self):
        psi = random_state(16, 9)
        rho = linalg.partial_trace(psi, [4, 4], keep=[1])
        assert np.max(np.abs(rho - rho.conj().T)) <= 1e-12
        assert abs(np.trace(rho).real - 1.0) <= 1e-10
        assert np.min(np.linalg.eigvalsh(rho)) >= -1e-10


class TestExpectationAndDistances:
    def test_identity_expectation(self):
        psi = random_state(5, 0)
        assert abs(linalg.expectation(np.eye(5), psi) - 1.0) <= 1e-12

    def test_sigma_z_up(self):
        assert linalg.expectation(linalg.PAULI_Z, linalg.KET_UP) == pytest.approx(1.0)

    def test_hermitian_expectation_is_real(self):
        h = random_hermitian(6, 8)
        val = linalg.expectation(h, random_state(6, 9))
        assert abs(val.imag) <= 1e-10

    def test_expectation_dim_mismatch(self):
        with pytest.raises(DimensionMismatch):
            linalg.expectation(np.eye(3), random_state(4, 0))

    def test_trace_distance_self(self):
        rho = np.outer(linalg.KET_UP, linalg.KET_UP)
        assert linalg.trace_distance(rho, rho) == 0.0

    def test_trace_distance_orthogonal_pure(self):
        up = np.outer(linalg.KET_UP, linalg.KET_UP)
        down = np.outer(linalg.KET_DOWN, linalg.KET_DOWN)
        assert linalg.trace_distance(up, down) == pytest.approx(1.0)

    def test_trace_distance_mixed(self):
        # eigenvalues of the difference diag(1/2, -1/2) -> distance 1/2
        a = np.diag([0.5, 0.5]).astype(complex)
        b = np.diag([0.0, 1.0]).astype(complex)
        assert linalg.trace_distance(a, b) == pytest.approx(0.5)

    def test_frobenius_distance(self):
        a = np.zeros((2, 2))
        b = np.array([[3.0, 0.0], [0.0, 4.0]])
        assert linalg.frobenius_distance(a, b) == pytest.approx(5.0)

    def test_dagger(self):
        m = np.array([[1, 2j], [3, 4]], dtype=complex)
        np.testing.assert_allclose(linalg.dagger(m), m.conj().T)


def test_site_operator_sum_matches_manual():
    total = linalg.site_operator_sum(linalg.PAULI_Z, 2)
    manual = np.kron(linalg.PAULI_Z, np.eye(2)) + np.kron(np.eye(2), linalg.PAULI_Z)
    np.testing.assert_allclose(total, manual)
