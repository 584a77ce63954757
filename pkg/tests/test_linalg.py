import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import stats

from relaymi.linalg import (
    RNG_ALGORITHM,
    exponential_toeplitz,
    hermitian_eig,
    log_det_id_plus,
    make_rng,
    psd_sqrt,
    sample_complex_gaussian,
)


def random_hermitian(n, seed):
    rng = np.random.default_rng(seed)
    X = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return X + X.conj().T


class TestPsdSqrt:
    def test_diagonal(self):
        np.testing.assert_allclose(psd_sqrt(np.diag([4.0, 9.0])), np.diag([2.0, 3.0]), atol=1e-15)

    def test_identity(self):
        np.testing.assert_array_equal(psd_sqrt(np.eye(5)), np.eye(5))

    def test_toeplitz_reconstruction(self):
        A = exponential_toeplitz(8, 0.3)
        S = psd_sqrt(A)
        assert np.linalg.norm(S @ S - A) / np.linalg.norm(A) < 1e-10

    @given(st.integers(2, 12), st.integers(0, 12), st.integers(0, 2**32 - 1))
    @settings(max_examples=30, deadline=None)
    def test_projector_is_its_own_root(self, n, k, seed):
        k = min(k, n)
        rng = np.random.default_rng(seed)
        Q, _ = np.linalg.qr(rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))
        P = Q[:, :k] @ Q[:, :k].conj().T
        np.testing.assert_allclose(psd_sqrt(P), P, atol=1e-10)

    def test_rejects_indefinite(self):
        with pytest.raises(ValueError, match="not PSD"):
            psd_sqrt(np.diag([1.0, -1e-6]))

    def test_clamps_rounding_negatives(self):
        S = psd_sqrt(np.diag([1.0, -1e-13]))
        np.testing.assert_allclose(S, np.diag([1.0, 0.0]))


class TestHermitianEig:
    def test_identity_gives_identity_vectors(self):
        eig = hermitian_eig(np.eye(4))
        np.testing.assert_array_equal(eig.eigenvectors, np.eye(4))
        np.testing.assert_array_equal(eig.eigenvalues, np.ones(4))

    def test_diagonal_sorted_non_increasing(self):
        eig = hermitian_eig(np.diag([1.0, 3.0, 2.0]))
        np.testing.assert_array_equal(eig.eigenvalues, [3.0, 2.0, 1.0])
        np.testing.assert_allclose(eig.reconstruct(), np.diag([1.0, 3.0, 2.0]))

    @given(st.integers(1, 64), st.integers(0, 2**32 - 1))
    @settings(max_examples=25, deadline=None)
    def test_reconstruction_and_order(self, n, seed):
        A = random_hermitian(n, seed)
        eig = hermitian_eig(A)
        assert np.all(np.diff(eig.eigenvalues) <= 0)
        assert np.linalg.norm(eig.reconstruct() - A) <= 1e-10 * np.linalg.norm(A)
        U = eig.eigenvectors
        np.testing.assert_allclose(U.conj().T @ U, np.eye(n), atol=1e-10)

    def test_reconstruction_n256(self):
        A = random_hermitian(256, 3)
        eig = hermitian_eig(A)
        assert np.linalg.norm(eig.reconstruct() - A) <= 1e-10 * np.linalg.norm(A)

    def test_rejects_non_hermitian(self):
        with pytest.raises(ValueError, match="Hermitian"):
            hermitian_eig(np.array([[1.0, 2.0], [0.0, 1.0]]))

    def test_rejects_non_square(self):
        with pytest.raises(ValueError, match="square"):
            hermitian_eig(np.ones((2, 3)))

    def test_rejects_nan(self):
        with pytest.raises(ValueError, match="non-finite"):
            hermitian_eig(np.array([[np.nan]]))


class TestGaussian:
    def test_entry_power(self):
        X = sample_complex_gaussian(1000, 1000, 1e-3, make_rng(7))
        assert 0.00095 <= np.mean(np.abs(X) ** 2) <= 0.00105

    def test_circular_halves(self):
        X = sample_complex_gaussian(500, 500, 2.0, make_rng(1))
        assert np.var(X.real) == pytest.approx(1.0, rel=0.02)
        assert np.var(X.imag) == pytest.approx(1.0, rel=0.02)
        assert abs(np.mean(X.real * X.imag)) < 0.01

    @pytest.mark.parametrize("var", [0.0, -1.0, np.inf, np.nan])
    def test_rejects_bad_variance(self, var):
        with pytest.raises(ValueError):
            sample_complex_gaussian(2, 2, var, make_rng(0))

    def test_same_seed_bit_identical(self):
        a = sample_complex_gaussian(8, 5, 1.0, make_rng(42, 3))
        b = sample_complex_gaussian(8, 5, 1.0, make_rng(42, 3))
        assert a.tobytes() == b.tobytes()

    def test_substreams_differ(self):
        a = sample_complex_gaussian(4, 4, 1.0, make_rng(42, 0))
        b = sample_complex_gaussian(4, 4, 1.0, make_rng(42, 1))
        assert not np.allclose(a, b)

    def test_rng_algorithm_is_named(self):
        assert RNG_ALGORITHM == "philox"
        assert isinstance(make_rng(0).bit_generator, np.random.Philox)

    def test_rejects_negative_seed(self):
        with pytest.raises(ValueError):
            make_rng(-1)

    def test_unitary_invariance_of_singular_values(self):
        n = 20
        rng_u = make_rng(5, 999)
        U, _ = np.linalg.qr(sample_complex_gaussian(n, n, 1.0, rng_u))
        V, _ = np.linalg.qr(sample_complex_gaussian(n, n, 1.0, rng_u))
        plain, rotated = [], []
        for j in range(200):
            plain.append(np.linalg.svd(sample_complex_gaussian(n, n, 1.0 / n, make_rng(5, j)),
                                       compute_uv=False))
            T = sample_complex_gaussian(n, n, 1.0 / n, make_rng(6, j))
            rotated.append(np.linalg.svd(U @ T @ V.conj().T, compute_uv=False))
        res = stats.ks_2samp(np.concatenate(plain), np.concatenate(rotated))
        assert res.pvalue > 0.01


class TestToeplitz:
    def test_small_example(self):
        np.testing.assert_allclose(exponential_toeplitz(3, 0.5),
                                   [[1, 0.5, 0.25], [0.5, 1, 0.5], [0.25, 0.5, 1]])

    def test_zero_is_identity(self):
        np.testing.assert_array_equal(exponential_toeplitz(6, 0.0), np.eye(6))

    def test_unit_trace(self):
        assert np.trace(exponential_toeplitz(128, 0.3)) / 128 == 1.0

    @pytest.mark.parametrize("r", [0.3, 0.7])
    def test_extreme_eigenvalues_approach_symbol_range(self, r):
        lo, hi = (1 - r) / (1 + r), (1 + r) / (1 - r)
        mins, maxs = [], []
        for n in (16, 64, 256):
            w = np.linalg.eigvalsh(exponential_toeplitz(n, r))
            mins.append(w[0])
            maxs.append(w[-1])
        assert all(m > lo for m in mins) and all(m < hi for m in maxs)
        assert mins[0] > mins[1] > mins[2]
        assert maxs[0] < maxs[1] < maxs[2]

    @pytest.mark.parametrize("r", [-0.1, 1.0, 1.5])
    def test_rejects_bad_r(self, r):
        with pytest.raises(ValueError):
            exponential_toeplitz(4, r)


class TestLogDet:
    def test_identity(self):
        assert log_det_id_plus(1.0, np.eye(2)) == pytest.approx(2.0, abs=1e-15)

    def test_zero_eta(self):
        assert log_det_id_plus(0.0, np.ones((3, 4))) == 0.0

    def test_singular_value_example(self):
        G = np.diag([2.0, 1.0])
        assert log_det_id_plus(3.0, G) == pytest.approx(np.log2(13) + np.log2(4), rel=1e-14)
        assert log_det_id_plus(3.0, G) == pytest.approx(5.70044, abs=1e-5)

    def test_matches_determinant(self):
        G = sample_complex_gaussian(5, 3, 1.0, make_rng(9))
        direct = np.log2(np.linalg.det(np.eye(5) + 0.7 * G @ G.conj().T).real)
        assert log_det_id_plus(0.7, G) == pytest.approx(direct, rel=1e-12)

    @given(st.integers(1, 8), st.integers(1, 8), st.integers(0, 2**32 - 1),
           st.lists(st.floats(0, 1e3), min_size=2, max_size=10))
    @settings(max_examples=30, deadline=None)
    def test_monotone_in_eta(self, m, n, seed, etas):
        G = sample_complex_gaussian(m, n, 1.0, make_rng(seed))
        vals = [log_det_id_plus(e, G) for e in sorted(etas)]
        assert all(b >= a for a, b in zip(vals, vals[1:]))

    def test_rejects_negative_eta(self):
        with pytest.raises(ValueError):
            log_det_id_plus(-1.0, np.eye(2))
