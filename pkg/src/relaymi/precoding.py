"""Optimal precoder structure, equal-power singular values and power audits."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from .channel import draw_channels, prepare, _check_precoders
from .linalg import make_rng, sample_complex_gaussian

__all__ = [
    "PrecoderSet",
    "optimal_precoders",
    "equal_power_coeffs_uncorrelated",
    "equal_power_coeffs_general",
    "equal_power_precoders",
    "transmit_power_audit",
    "simulate_transmit_power",
    "trace_product_closed_form",
    "trace_product_monte_carlo",
]


@dataclass(frozen=True, eq=False)
class PrecoderSet:
    """Per-level precoders ``P_i = left_i diag(singular_values_i) right_i^H``.

    ``left[i]`` holds the eigenvectors of ``C_{t,i+1}`` and ``right[i]`` those
    of ``C_{r,i}`` (identity at the source). Arbitrary precoders can be wrapped
    with :meth:`from_matrices`, in which case the factors are ``None``.
    """

    left: tuple[np.ndarray, ...] | None
    singular_values: tuple[np.ndarray, ...] | None
    right: tuple[np.ndarray, ...] | None
    _matrices: tuple[np.ndarray, ...] | None = None

    @classmethod
    def from_matrices(cls, matrices: Sequence[np.ndarray]) -> "PrecoderSet":
        return cls(None, None, None, tuple(np.asarray(P) for P in matrices))

    @cached_property
    def matrices(self) -> tuple[np.ndarray, ...]:
        if self._matrices is not None:
            return self._matrices
        return tuple((U * s) @ V.conj().T
                     for U, s, V in zip(self.left, self.singular_values, self.right))

    def __len__(self):
        return len(self.matrices)


def optimal_precoders(spec, singular_values: Sequence) -> PrecoderSet:
    """Precoders whose singular vectors are aligned with the correlation eigenvectors.

    ``P_0 = U_{t,1} Lambda_{P_0}`` and ``P_i = U_{t,i+1} Lambda_{P_i} U_{r,i}^H``.
    Singular values are paired with eigenvalues sorted in decreasing order; a
    scalar entry means equal singular values at that level.
    """
    net = prepare(spec)
    N, k = net.n_hops, net.antennas
    if len(singular_values) != N:
        raise ValueError(f"need {N} singular-value vectors, got {len(singular_values)}")
    sv = []
    for i, s in enumerate(singular_values):
        s = np.broadcast_to(np.asarray(s, dtype=float), (k[i],)).copy()
        if not np.all(np.isfinite(s)) or np.any(s < 0):
            raise ValueError(f"singular values at level {i} must be finite and non-negative")
        sv.append(s)
    left = tuple(net.c_t_eig[i].eigenvectors for i in range(N))
    right = (np.eye(k[0]),) + tuple(net.c_r_eig[i - 1].eigenvectors for i in range(1, N))
    return PrecoderSet(left, tuple(sv), right)


def _positive(values, name):
    values = np.asarray(values, dtype=float)
    if np.any(~(values > 0)):
        raise ValueError(f"{name} must be positive")
    return values


def equal_power_coeffs_uncorrelated(power: Sequence[float], a: Sequence[float]) -> np.ndarray:
    """Equal-power coefficients ``alpha_0..alpha_N`` for identity correlations.

    ``power`` is ``(P_0..P_{N-1})`` and ``a`` is ``(a_1..a_N)``.
    """
    power = _positive(power, "power budgets")
    a = _positive(a, "pathloss")
    if len(power) != len(a):
        raise ValueError("need one power budget per hop")
    N = len(a)
    alpha = np.ones(N + 1)
    alpha[0] = np.sqrt(power[0])
    for i in range(1, N):
        alpha[i] = np.sqrt(power[i] / (a[i - 1] * power[i - 1]))
    return alpha


def equal_power_coeffs_general(power: Sequence[float], a: Sequence[float],
                               lambda_r: Sequence, lambda_t: Sequence) -> np.ndarray:
    """Equal-power coefficients for arbitrary correlations.

    ``lambda_r[i-1]`` and ``lambda_t[i-1]`` are the decreasing eigenvalues of
    ``C_{r,i}`` and ``C_{t,i}`` for hops ``i = 1..N``; ``C_{r,0} = I``.
    Eigenvalues of ``Lambda_{t,i} Lambda_{r,i-1}`` are paired by index.
    """
    power = _positive(power, "power budgets")
    a = _positive(a, "pathloss")
    N = len(a)
    if len(power) != N or len(lambda_r) != N or len(lambda_t) != N:
        raise ValueError("power, lambda_r and lambda_t need one entry per hop")
    lam_r = [np.ones(len(lambda_t[0]))] + [np.asarray(x, dtype=float) for x in lambda_r]
    lam_t = [None] + [np.asarray(x, dtype=float) for x in lambda_t]
    alpha = np.ones(N + 1)
    alpha[0] = np.sqrt(power[0])
    for i in range(1, N):
        if len(lam_t[i]) != len(lam_r[i - 1]):
            raise ValueError(f"hop {i} transmit eigenvalues do not match level {i - 1}")
        tr_prev = lam_r[i - 1].sum()
        tr_cur = lam_r[i].sum()
        cross = np.dot(lam_t[i], lam_r[i - 1])
        if tr_cur <= 0 or cross <= 0:
            raise ValueError(f"zero trace in power coefficient at level {i}")
        k_i = len(lam_r[i])
        alpha[i] = np.sqrt(power[i] / (a[i - 1] * power[i - 1])
                           * tr_prev / tr_cur * k_i / cross)
    return alpha


def equal_power_precoders(spec) -> PrecoderSet:
    """Optimal-direction precoders with equal singular values meeting every budget."""
    net = prepare(spec)
    alpha = equal_power_coeffs_general(
        net.power, net.pathloss,
        [e.eigenvalues for e in net.c_r_eig],
        [e.eigenvalues for e in net.c_t_eig])
    return optimal_precoders(net, list(alpha[:-1]))


def transmit_power_audit(spec, precoders) -> np.ndarray:
    """Average transmit power ``tr E[x_i x_i^H]`` at levels ``0..N-1`` in closed form."""
    net = prepare(spec)
    P = list(precoders.matrices if hasattr(precoders, "matrices") else precoders)
    _check_precoders(net, P)
    N, k = net.n_hops, net.antennas
    a = np.concatenate([[1.0], net.pathloss])
    c_r = [np.eye(k[0])] + net.c_r
    out = np.empty(N)
    prod = 1.0
    for i in range(N):
        out[i] = a[i] * np.real(np.trace(P[i] @ c_r[i] @ P[i].conj().T)) * prod
        prod *= a[i] / k[i] * np.real(np.trace(net.c_t[i] @ P[i] @ c_r[i] @ P[i].conj().T))
    return out


def simulate_transmit_power(spec, precoders, trials: int,
                            seed: int) -> tuple[np.ndarray, np.ndarray]:
    """Monte Carlo estimate of ``tr E[x_i x_i^H]`` (mean, standard error per level).

    The source symbols are integrated out exactly (``E[y_0 y_0^H] = I``), so each
    trial contributes ``||P_i H_i ... H_1 P_0||_F^2``.
    """
    net = prepare(spec)
    P = list(precoders.matrices if hasattr(precoders, "matrices") else precoders)
    N = net.n_hops
    samples = np.empty((trials, N))
    for j in range(trials):
        H = draw_channels(net, make_rng(seed, j)).hops
        X = P[0]
        samples[j, 0] = np.linalg.norm(X) ** 2
        for i in range(1, N):
            X = P[i] @ (H[i - 1] @ X)
            samples[j, i] = np.linalg.norm(X) ** 2
    return samples.mean(axis=0), samples.std(axis=0, ddof=1) / np.sqrt(trials)


def trace_product_closed_form(A: Sequence[np.ndarray], sigma2: Sequence[float]) -> float:
    """``tr(A_0 A_0^H) * prod_k sigma_k^2 tr(A_k A_k^H)`` for ``k = 1..i``."""
    val = np.real(np.trace(A[0] @ A[0].conj().T))
    for Ak, s2 in zip(A[1:], sigma2):
        val *= s2 * np.real(np.trace(Ak @ Ak.conj().T))
    return float(val)


def trace_product_monte_carlo(A: Sequence[np.ndarray], sigma2: Sequence[float],
                              trials: int, seed: int) -> tuple[float, float]:
    """Monte Carlo mean and standard error of
    ``tr(A_i Theta_i ... A_1 Theta_1 A_0 A_0^H Theta_1^H A_1^H ... Theta_i^H A_i^H)``."""
    if len(sigma2) != len(A) - 1:
        raise ValueError("need one variance per Theta factor")
    vals = np.empty(trials)
    for j in range(trials):
        rng = make_rng(seed, j)
        X = A[0]
        for Ak, s2 in zip(A[1:], sigma2):
            theta = sample_complex_gaussian(Ak.shape[1], X.shape[0], s2, rng)
            X = Ak @ (theta @ X)
        vals[j] = np.linalg.norm(X) ** 2
    return float(vals.mean()), float(vals.std(ddof=1) / np.sqrt(trials))
