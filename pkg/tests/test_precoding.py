import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from relaymi import EmpiricalLaw, solve_fixed_point
from relaymi.channel import CorrelationSpec, HopSpec, NetworkSpec, build_m_matrices, compose_end_to_end, draw_channels, instantaneous_mi, prepare
from relaymi.linalg import make_rng, sample_complex_gaussian
from relaymi.precoding import (
    PrecoderSet,
    equal_power_coeffs_general,
    equal_power_coeffs_uncorrelated,
    equal_power_precoders,
    optimal_precoders,
    simulate_transmit_power,
    trace_product_closed_form,
    trace_product_monte_carlo,
    transmit_power_audit,
)


class TestOptimalPrecoders:
    def test_identity_correlations_give_diagonal(self):
        spec = NetworkSpec.equal_spacing(3, 5)
        P = optimal_precoders(spec, [np.arange(1.0, 6.0)] * 3)
        for Pi in P.matrices:
            np.testing.assert_array_equal(Pi, np.diag(np.diag(Pi)))

    def test_zero_singular_values(self):
        spec = NetworkSpec.equal_spacing(2, 4, r_transmit=0.3)
        P = optimal_precoders(spec, [0.0, 0.0])
        for Pi in P.matrices:
            assert not np.any(Pi)
        G = compose_end_to_end(draw_channels(spec, 1), P)
        assert instantaneous_mi(G, 10.0, 4) == 0.0

    def test_toeplitz_bases_and_spectrum(self):
        spec = NetworkSpec.equal_spacing(2, 8, r_receive=0.3, r_transmit=0.3)
        net = prepare(spec)
        sv = [np.linspace(3, 1, 8), np.linspace(2, 0.5, 8)]
        P = optimal_precoders(net, sv)
        for i in range(2):
            np.testing.assert_array_equal(P.left[i], net.c_t_eig[i].eigenvectors)
            w = np.sort(np.linalg.eigvalsh(P.matrices[i].conj().T @ P.matrices[i]))
            np.testing.assert_allclose(w, np.sort(sv[i] ** 2), atol=1e-12)
        np.testing.assert_array_equal(P.right[1], net.c_r_eig[0].eigenvectors)
        np.testing.assert_array_equal(P.right[0], np.eye(8))

    @given(st.integers(1, 3), st.integers(1, 10), st.floats(0, 0.9), st.floats(0, 0.9),
           st.integers(0, 2**32 - 1))
    @settings(max_examples=25, deadline=None)
    def test_reassembly(self, N, k, rr, rt, seed):
        spec = NetworkSpec.equal_spacing(N, k, r_receive=rr, r_transmit=rt)
        net = prepare(spec)
        rng = np.random.default_rng(seed)
        sv = [rng.uniform(0, 2, k) for _ in range(N)]
        P = optimal_precoders(net, sv)
        right = [np.eye(k)] + [net.c_r_eig[i - 1].eigenvectors for i in range(1, N)]
        for i in range(N):
            U = net.c_t_eig[i].eigenvectors
            np.testing.assert_allclose(P.matrices[i], U @ np.diag(sv[i]) @ right[i].conj().T,
                                       atol=1e-12)

    def test_validation(self):
        spec = NetworkSpec.equal_spacing(2, 3)
        with pytest.raises(ValueError):
            optimal_precoders(spec, [1.0])
        with pytest.raises(ValueError):
            optimal_precoders(spec, [1.0, -1.0])


class TestCoefficients:
    def test_all_ones(self):
        np.testing.assert_array_equal(equal_power_coeffs_uncorrelated([1, 1, 1], [1, 1, 1]), np.ones(4))

    def test_example(self):
        alpha = equal_power_coeffs_uncorrelated([2.0, 3.0], [0.5, 1.0])
        assert alpha[1] == pytest.approx(np.sqrt(3.0), rel=1e-15)
        assert alpha[0] == pytest.approx(np.sqrt(2.0))
        assert alpha[-1] == 1.0

    @given(st.integers(1, 4), st.integers(1, 6), st.data())
    @settings(max_examples=30, deadline=None)
    def test_general_reduces_to_uncorrelated(self, N, k, data):
        power = data.draw(st.lists(st.floats(0.01, 100), min_size=N, max_size=N))
        a = data.draw(st.lists(st.floats(0.01, 100), min_size=N, max_size=N))
        ones = [np.ones(k)] * N
        np.testing.assert_allclose(equal_power_coeffs_general(power, a, ones, ones),
                                   equal_power_coeffs_uncorrelated(power, a), rtol=1e-14)

    def test_single_hop(self):
        alpha = equal_power_coeffs_general([4.0], [0.3], [np.ones(3)], [np.array([2.0, 0.7, 0.3])])
        np.testing.assert_array_equal(alpha, [2.0, 1.0])

    def test_brute_force_power_scaling(self):
        k = 16
        spec = NetworkSpec.equal_spacing(2, k, pathloss_exponent=0.0, r_receive=0.3, r_transmit=0.3)
        net = prepare(spec)
        alpha = equal_power_coeffs_general(spec.power, spec.pathloss,
                                           [e.eigenvalues for e in net.c_r_eig],
                                           [e.eigenvalues for e in net.c_t_eig])
        # level-1 power is quadratic in alpha_1: scale a trial value to hit k * P_1
        trial = 1.0
        audit = transmit_power_audit(net, optimal_precoders(net, [alpha[0], trial]))
        brute = trial * np.sqrt(k * spec.power[1] / audit[1])
        assert brute == pytest.approx(alpha[1], rel=1e-10)

    def test_rejects_non_positive(self):
        with pytest.raises(ValueError):
            equal_power_coeffs_uncorrelated([0.0], [1.0])
        with pytest.raises(ValueError):
            equal_power_coeffs_uncorrelated([1.0], [-1.0])


class TestPowerAudit:
    def test_level0(self):
        spec = NetworkSpec.equal_spacing(1, 5, power=2.5)
        audit = transmit_power_audit(spec, PrecoderSet.from_matrices([np.sqrt(2.5) * np.eye(5)]))
        assert audit[0] == pytest.approx(12.5, rel=1e-15)

    def test_uncorrelated_chain(self):
        spec = NetworkSpec.equal_spacing(3, 6, pathloss_exponent=2.0, power=[1.0, 2.0, 0.5])
        alpha = equal_power_coeffs_uncorrelated(spec.power, spec.pathloss)
        P = PrecoderSet.from_matrices([a * np.eye(6) for a in alpha[:-1]])
        np.testing.assert_allclose(transmit_power_audit(spec, P), 6 * np.array(spec.power), rtol=1e-12)

    @given(st.integers(1, 3), st.lists(st.integers(2, 10), min_size=4, max_size=4),
           st.floats(0, 0.9), st.floats(0, 0.9),
           st.lists(st.floats(0.1, 10), min_size=3, max_size=3), st.floats(0, 3))
    @settings(max_examples=30, deadline=None)
    def test_budget_equality(self, N, ks, rr, rt, power, beta):
        k = ks[:N + 1]
        hops = tuple(HopSpec(k[i], k[i + 1], 0.5 + i, CorrelationSpec.exponential(rt),
                             CorrelationSpec.exponential(rr)) for i in range(N))
        spec = NetworkSpec(hops, beta, tuple(power[:N]))
        audit = transmit_power_audit(spec, equal_power_precoders(spec))
        target = np.array(k[:-1]) * np.array(power[:N])
        np.testing.assert_allclose(audit, target, rtol=1e-9)

    def test_monte_carlo_matches_closed_form(self):
        spec = NetworkSpec.equal_spacing(2, 8, pathloss_exponent=2.0, r_receive=0.3, r_transmit=0.3)
        P = equal_power_precoders(spec)
        closed = transmit_power_audit(spec, P)
        mean, se = simulate_transmit_power(spec, P, 10_000, 12)
        assert mean[0] == pytest.approx(closed[0], rel=1e-12)
        assert abs(mean[1] - closed[1]) < 3 * se[1]

    def test_arbitrary_precoders(self):
        spec = NetworkSpec.equal_spacing(2, 4, pathloss_exponent=1.0, r_receive=0.5, r_transmit=0.2)
        rng = make_rng(4)
        P = PrecoderSet.from_matrices([sample_complex_gaussian(4, 4, 1.0, rng) for _ in range(2)])
        closed = transmit_power_audit(spec, P)
        mean, se = simulate_transmit_power(spec, P, 10_000, 13)
        assert abs(mean[1] - closed[1]) < 3 * se[1]


class TestTraceIdentity:
    @pytest.mark.parametrize("N,seed", [(1, 0), (2, 1), (3, 2)])
    def test_monte_carlo(self, N, seed):
        rng = make_rng(100 + seed)
        dims = [3, 5, 4, 8][:N + 1]
        A = [sample_complex_gaussian(dims[0], 2, 1.0, rng)]
        A += [sample_complex_gaussian(dims[i], dims[i], 1.0, rng) for i in range(1, N + 1)]
        sigma2 = [0.5, 1.3, 0.8][:N]
        closed = trace_product_closed_form(A, sigma2)
        mean, se = trace_product_monte_carlo(A, sigma2, 10_000, seed)
        assert abs(mean - closed) < 3 * se


def test_right_unitary_invariance():
    spec = NetworkSpec.equal_spacing(2, 12, pathloss_exponent=2.0, r_receive=0.4, r_transmit=0.4)
    net = prepare(spec)
    P = list(equal_power_precoders(net).matrices)
    V, _ = np.linalg.qr(sample_complex_gaussian(12, 12, 1.0, make_rng(3)))
    rotated = [P[0] @ V] + P[1:]

    def mi(prec):
        m = build_m_matrices(net, prec)
        levels = [EmpiricalLaw(np.linalg.eigvalsh(M.conj().T @ M)) for M in m]
        return solve_fixed_point(levels, 5.0, net.rho, net.pathloss).mi

    base = build_m_matrices(net, P)[0]
    rot = build_m_matrices(net, rotated)[0]
    np.testing.assert_allclose(np.linalg.eigvalsh(base.conj().T @ base),
                               np.linalg.eigvalsh(rot.conj().T @ rot), atol=1e-12)
    assert mi(rotated) == pytest.approx(mi(P), abs=1e-12)
