import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate

from relaymi.freeprob import (
    EmpiricalSpectrum,
    max_eigenvalue_growth,
    s_transform,
    stieltjes,
    szego_functional,
    toeplitz_symbol,
    upsilon,
    upsilon_inverse,
    verify_swap_relation,
    zero_eigenvalue_counts,
)
from relaymi.linalg import exponential_toeplitz, make_rng, sample_complex_gaussian
from relaymi.verify import chain_deviation


def wishart(n, seed, variance=None, p=None):
    X = sample_complex_gaussian(n, p or n, variance or 1.0 / (p or n), make_rng(seed))
    return EmpiricalSpectrum.of_hermitian(X @ X.conj().T)


@pytest.fixture(scope="module")
def wishart2000():
    return wishart(2000, 77)


spectra = st.lists(st.floats(0.0, 50.0), min_size=1, max_size=40).filter(lambda v: max(v) > 0.01)


class TestSpectrum:
    def test_sorted(self):
        np.testing.assert_array_equal(EmpiricalSpectrum([3.0, 1.0, 2.0]).eigenvalues, [1, 2, 3])

    def test_rejects_empty_and_nan(self):
        with pytest.raises(ValueError):
            EmpiricalSpectrum([])
        with pytest.raises(ValueError):
            EmpiricalSpectrum([1.0, np.nan])

    def test_product_of_non_real(self):
        rot = np.array([[0.0, -1.0], [1.0, 0.0]])
        with pytest.raises(ValueError, match="non-real"):
            EmpiricalSpectrum.of_product(rot, np.eye(2))

    def test_positive_fraction(self):
        assert EmpiricalSpectrum([0.0, 0.0, 1.0, 2.0]).positive_fraction == 0.5


class TestTransforms:
    def test_marchenko_pastur_stieltjes(self, wishart2000):
        # density of the square Marchenko-Pastur law on [0, 4]
        density = lambda x: np.sqrt(x * (4 - x)) / (2 * np.pi * x)
        oracle, _ = integrate.quad(lambda x: density(x) / (x + 1.0), 0, 4)
        assert oracle == pytest.approx((np.sqrt(5) - 1) / 2, rel=1e-8)
        assert stieltjes(wishart2000, -1.0).real == pytest.approx(oracle, rel=0.02)

    def test_pole_rejected(self):
        with pytest.raises(ValueError):
            stieltjes([1.0, 2.0], 2.0)
        with pytest.raises(ValueError):
            upsilon([1.0, 2.0], 0.5)

    @given(spectra, st.floats(-20.0, -0.01))
    @settings(max_examples=50, deadline=None)
    def test_upsilon_stieltjes_identity(self, lam, s):
        lhs = upsilon(lam, s)
        rhs = -1.0 - stieltjes(lam, 1.0 / s) / s
        assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(lhs))

    @given(spectra, st.floats(-10.0, -0.01))
    @settings(max_examples=50, deadline=None)
    def test_upsilon_inverse_roundtrip(self, lam, s):
        z = upsilon(lam, s).real
        if z == 0 or z <= -EmpiricalSpectrum(lam).positive_fraction:
            return
        s_back = upsilon_inverse(lam, z)
        assert abs(upsilon(lam, s_back).real - z) <= 1e-11
        assert s_back == pytest.approx(s, abs=1e-10, rel=1e-10)

    def test_upsilon_inverse_domain(self):
        with pytest.raises(ValueError, match="attainable"):
            upsilon_inverse([0.0, 1.0], -0.6)
        with pytest.raises(ValueError, match="non-negative"):
            upsilon_inverse([-1.0, 1.0], -0.1)
        assert upsilon_inverse([1.0], 0.0) == 0.0

    def test_point_mass_s_transform(self):
        # Upsilon(s) = s c / (1 - s c) for a point mass c, so S(z) = 1 / c
        for z in (-0.9, -0.5, -0.1):
            assert s_transform([2.5] * 7, z) == pytest.approx(0.4, rel=1e-12)

    def test_wishart_s_transform(self, wishart2000):
        for z in np.linspace(-0.9, -0.1, 9):
            assert s_transform(wishart2000, z) == pytest.approx(1 / (1 + z), rel=0.02)

    def test_wishart_scaled_variance(self):
        a = 3.0
        spec = wishart(800, 5, variance=a / 800)
        for z in (-0.8, -0.5, -0.2):
            assert s_transform(spec, z) == pytest.approx(1 / (a * (1 + z)), rel=0.03)

    def test_chain_prediction(self):
        assert chain_deviation(200, 0) < 0.05


def psd_pair(n, p, seed):
    rng = make_rng(seed)
    A = sample_complex_gaussian(n, p, 1.0, rng)
    W = sample_complex_gaussian(p, p, 1.0, rng)
    return A, (W @ W.conj().T) @ A.conj().T


class TestSwapRelation:
    def test_square(self):
        A, B = psd_pair(6, 6, 1)
        assert verify_swap_relation(A, B) < 1e-10

    def test_rectangular(self):
        A, B = psd_pair(4, 8, 2)
        assert verify_swap_relation(A, B) < 1e-8

    @given(st.integers(2, 12), st.integers(2, 12), st.integers(0, 2**32 - 1))
    @settings(max_examples=30, deadline=None)
    def test_random_pairs(self, n, p, seed):
        A, B = psd_pair(n, p, seed)
        assert verify_swap_relation(A, B) < 1e-8

    def test_wrong_xi_is_detected(self):
        A, B = psd_pair(5, 10, 3)
        assert verify_swap_relation(A, B, xi=1.3) > 1e-2

    def test_shape_check(self):
        with pytest.raises(ValueError):
            verify_swap_relation(np.ones((2, 3)), np.ones((2, 3)))

    @given(st.integers(1, 10), st.integers(1, 10), st.integers(0, 2**32 - 1))
    @settings(max_examples=30, deadline=None)
    def test_zero_bookkeeping(self, n, p, seed):
        A, B = psd_pair(n, p, seed)
        m0, m0p, m, nn = zero_eigenvalue_counts(A, B)
        assert m0 + nn == m0p + m
        assert (m, nn) == (n, p)


class TestSzego:
    @pytest.mark.parametrize("r", [0.0, 0.3, 0.7, 0.9])
    def test_known_integrals(self, r):
        assert szego_functional(r, lambda f: f) == pytest.approx(1.0, abs=1e-12)
        expected_log = np.log(1 - r * r) if r else 0.0
        assert szego_functional(r, np.log) == pytest.approx(expected_log, abs=1e-12)

    @pytest.mark.parametrize("r", [0.1, 0.5, 0.9])
    def test_doubling_log(self, r):
        for P in (256, 512):
            assert abs(szego_functional(r, np.log, 2 * P) - szego_functional(r, np.log, P)) < 1e-12

    @pytest.mark.parametrize("r", [0.1, 0.5, 0.8])
    def test_doubling_identity(self, r):
        for P in (256, 512):
            assert abs(szego_functional(r, lambda f: f, 2 * P)
                       - szego_functional(r, lambda f: f, P)) < 1e-12

    def test_eigen_average_converges(self):
        r = 0.5
        ref = szego_functional(r, np.log)
        errs = [abs(np.mean(np.log(np.linalg.eigvalsh(exponential_toeplitz(n, r)))) - ref)
                for n in (32, 128, 512)]
        assert errs[0] > errs[1] > errs[2]

    def test_symbol_range(self):
        f = toeplitz_symbol(0.4, np.linspace(0, 2 * np.pi, 101))
        assert f.min() == pytest.approx(0.6 / 1.4)
        assert f.max() == pytest.approx(1.4 / 0.6)

    def test_rejects(self):
        with pytest.raises(ValueError):
            szego_functional(1.0, np.log)
        with pytest.raises(ValueError):
            szego_functional(0.5, np.log, 0)


def test_max_eigenvalue_bounded():
    sizes = [50, 100, 200, 400]
    tops = max_eigenvalue_growth(
        lambda n: (lambda X: X @ X.conj().T)(sample_complex_gaussian(n, n, 1.0 / n, make_rng(n))),
        sizes)
    assert all(t < 4.5 for t in tops)
