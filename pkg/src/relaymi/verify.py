"""Numerical checks of the transform identities and power bookkeeping.

Each check returns a :class:`CheckResult` with the measured deviation and the
tolerance it is held to. All randomness is drawn from ``make_rng(seed, ...)``.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .channel import NetworkSpec, build_m_matrices, compose_end_to_end, draw_channels, prepare
from .config import VerifyConfig
from .freeprob import (
    EmpiricalSpectrum,
    predicted_s_transform_chain,
    s_transform,
    stieltjes,
    szego_functional,
    upsilon,
    upsilon_inverse,
    verify_swap_relation,
    zero_eigenvalue_counts,
)
from .linalg import exponential_toeplitz, make_rng, sample_complex_gaussian
from .precoding import equal_power_precoders, simulate_transmit_power, transmit_power_audit


@dataclass
class CheckResult:
    name: str
    deviation: float
    tolerance: float
    passed: bool
    wall_ms: float = 0.0
    detail: str = ""

    def as_dict(self):
        return {"check": self.name, "passed": self.passed, "deviation": self.deviation,
                "tolerance": self.tolerance, "wall_ms": round(self.wall_ms, 3),
                "detail": self.detail}


def _wishart_spectrum(n, rng, variance=None):
    X = sample_complex_gaussian(n, n, variance or 1.0 / n, rng)
    return EmpiricalSpectrum.of_hermitian(X @ X.conj().T)


def check_upsilon_identity(seed):
    spec = _wishart_spectrum(200, make_rng(seed, 1))
    dev = 0.0
    for s in np.linspace(-5.0, -0.05, 25):
        lhs = upsilon(spec, s).real
        rhs = (-1.0 - stieltjes(spec, 1.0 / s) / s).real
        dev = max(dev, abs(lhs - rhs))
    return dev, 1e-12, ""


def check_upsilon_roundtrip(seed):
    spec = _wishart_spectrum(200, make_rng(seed, 2))
    dev = 0.0
    for s in -np.geomspace(0.01, 10.0, 25):
        dev = max(dev, abs(upsilon_inverse(spec, upsilon(spec, s).real) - s))
    return dev, 1e-10, ""


def _psd_compatible_pair(n, p, rng):
    A = sample_complex_gaussian(n, p, 1.0, rng)
    W = sample_complex_gaussian(p, p, 1.0, rng)
    B = (W @ W.conj().T) @ A.conj().T
    return A, B


def check_swap_relation(seed, size, xi=None):
    n, p = size
    A, B = _psd_compatible_pair(n, p, make_rng(seed, 3))
    dev = verify_swap_relation(A, B, xi=xi)
    detail = f"xi override {xi}" if xi is not None else ""
    return dev, 1e-8, detail


def check_zero_counts(seed, size):
    n, p = size
    A, B = _psd_compatible_pair(n, p, make_rng(seed, 4))
    m0, m0p, m, nn = zero_eigenvalue_counts(A, B)
    return float(abs((m0 + nn) - (m0p + m))), 0.0, f"m0={m0} m0'={m0p} m={m} n={nn}"


def check_wishart(seed, n):
    spec = _wishart_spectrum(n, make_rng(seed, 5))
    dev = 0.0
    for z in np.linspace(-0.9, -0.1, 9):
        ref = 1.0 / (1.0 + z)
        dev = max(dev, abs(s_transform(spec, z) - ref) / ref)
    return dev, 0.02, f"n={n}"


def chain_deviation(k, seed, r=0.3, z_grid=None):
    """Relative gap between the sampled and predicted S-transform of ``G_2 G_2^H``."""
    spec = NetworkSpec.equal_spacing(2, k, pathloss_exponent=2.0, r_receive=r, r_transmit=r)
    net = prepare(spec)
    precoders = equal_power_precoders(net)
    m = build_m_matrices(net, precoders)
    G = compose_end_to_end(draw_channels(net, make_rng(seed, 6)), precoders)
    sampled = EmpiricalSpectrum.of_hermitian(G @ G.conj().T)
    spectra = [EmpiricalSpectrum.of_hermitian(M.conj().T @ M) for M in m]
    dev = 0.0
    for z in (np.linspace(-0.8, -0.2, 7) if z_grid is None else z_grid):
        pred = predicted_s_transform_chain(spectra, net.rho, net.pathloss, z)
        dev = max(dev, abs(s_transform(sampled, z) - pred) / abs(pred))
    return dev


def check_chain(seed, k):
    return chain_deviation(k, seed), 0.05, f"N=2 k={k} r=0.3"


def check_szego():
    r = 0.5
    ref = szego_functional(r, np.log, 1024)
    errs = []
    for n in (32, 128, 512):
        lam = np.linalg.eigvalsh(exponential_toeplitz(n, r))
        errs.append(abs(np.mean(np.log(lam)) - ref) / abs(ref))
    # largest ratio between successive errors; strictly below 1 means monotone decrease
    ratio = max(b / a for a, b in zip(errs, errs[1:]))
    return ratio, 1.0 - 1e-12, "errors " + ", ".join(f"{e:.3e}" for e in errs)


def _power_spec(k):
    return NetworkSpec.equal_spacing(2, k, pathloss_exponent=2.0, r_receive=0.3, r_transmit=0.3)


def check_power_budget(k):
    spec = _power_spec(k)
    audit = transmit_power_audit(spec, equal_power_precoders(spec))
    target = np.array(spec.antennas[:-1]) * np.array(spec.power)
    return float(np.max(np.abs(audit - target) / target)), 1e-9, f"k={k}"


def check_power_monte_carlo(seed, k, trials):
    spec = _power_spec(k)
    P = equal_power_precoders(spec)
    closed = transmit_power_audit(spec, P)
    mean, se = simulate_transmit_power(spec, P, trials, seed)
    diff = np.abs(mean - closed)
    # level 0 carries no channel randomness: demand equality there
    exact = se <= 1e-12 * closed
    z = np.where(exact, np.where(diff <= 1e-9 * closed, 0.0, np.inf),
                 diff / np.where(exact, 1.0, se))
    return float(np.max(z)), 3.0, f"k={k} trials={trials} (deviation in standard errors)"


def run_checks(config: VerifyConfig, seed: int) -> list[CheckResult]:
    checks: list[tuple[str, Callable]] = [
        ("upsilon_stieltjes_identity", lambda: check_upsilon_identity(seed)),
        ("upsilon_inverse_roundtrip", lambda: check_upsilon_roundtrip(seed)),
        ("swap_s_transform_relation",
         lambda: check_swap_relation(seed, config.swap_size, config.swap_xi_override)),
        ("zero_eigenvalue_bookkeeping", lambda: check_zero_counts(seed, config.swap_size)),
        ("wishart_s_transform", lambda: check_wishart(seed, config.wishart_size)),
        ("s_transform_chain", lambda: check_chain(seed, config.chain_antennas)),
        ("szego_log_monotone", check_szego),
        ("power_budget_equality", lambda: check_power_budget(config.power_antennas)),
        ("power_monte_carlo",
         lambda: check_power_monte_carlo(seed, config.power_antennas, config.power_trials)),
    ]
    out = []
    for name, fn in checks:
        t0 = time.perf_counter()
        dev, tol, detail = fn()
        out.append(CheckResult(name, float(dev), tol, bool(dev <= tol),
                               1e3 * (time.perf_counter() - t0), detail))
    return out
