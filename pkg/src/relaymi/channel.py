"""N-hop Kronecker channel model, end-to-end composition and mutual information."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .linalg import (HermitianEig, exponential_toeplitz, hermitian_eig,
                     log_det_id_plus, make_rng, psd_sqrt,
                     sample_complex_gaussian)

__all__ = [
    "CorrelationSpec",
    "HopSpec",
    "NetworkSpec",
    "PreparedNetwork",
    "ChannelRealization",
    "pathloss",
    "prepare",
    "draw_channels",
    "build_m_matrices",
    "compose_end_to_end",
    "compose_from_m",
    "instantaneous_mi",
    "mi_samples",
    "average_mi_monte_carlo",
]


@dataclass(frozen=True, eq=False)
class CorrelationSpec:
    """Antenna correlation at one side of a hop.

    ``kind`` is ``"identity"``, ``"exponential"`` (entries ``r**|k-l|``) or
    ``"explicit"`` (a user matrix, Hermitian PSD with unit diagonal).
    """

    kind: str = "identity"
    r: float = 0.0
    matrix: np.ndarray | None = None

    def __post_init__(self):
        if self.kind == "identity":
            return
        if self.kind == "exponential":
            if not 0.0 <= self.r < 1.0:
                raise ValueError(f"exponential correlation needs 0 <= r < 1, got {self.r}")
            return
        if self.kind == "explicit":
            M = np.asarray(self.matrix)
            if M.ndim != 2 or M.shape[0] != M.shape[1]:
                raise ValueError("explicit correlation must be a square matrix")
            if not np.allclose(np.diag(M), 1.0, atol=1e-12):
                raise ValueError("explicit correlation must have unit diagonal")
            eig = hermitian_eig(M)
            if eig.eigenvalues[-1] < -1e-12:
                raise ValueError("explicit correlation must be PSD")
            object.__setattr__(self, "matrix", M)
            return
        raise ValueError(f"unknown correlation kind {self.kind!r}")

    @classmethod
    def identity(cls) -> "CorrelationSpec":
        return cls("identity")

    @classmethod
    def exponential(cls, r: float) -> "CorrelationSpec":
        if r == 0:
            return cls("identity")
        return cls("exponential", r=float(r))

    @classmethod
    def explicit(cls, matrix) -> "CorrelationSpec":
        return cls("explicit", matrix=np.asarray(matrix))

    def build(self, n: int) -> np.ndarray:
        if self.kind == "identity":
            return np.eye(n)
        if self.kind == "exponential":
            return exponential_toeplitz(n, self.r)
        if self.matrix.shape[0] != n:
            raise ValueError(f"explicit correlation has size {self.matrix.shape[0]}, expected {n}")
        return self.matrix


@dataclass(frozen=True, eq=False)
class HopSpec:
    """One hop: ``k_in`` transmit antennas, ``k_out`` receive antennas."""

    k_in: int
    k_out: int
    distance: float = 1.0
    transmit: CorrelationSpec = field(default_factory=CorrelationSpec)
    receive: CorrelationSpec = field(default_factory=CorrelationSpec)

    def __post_init__(self):
        if self.k_in < 1 or self.k_out < 1:
            raise ValueError("antenna counts must be >= 1")
        if not self.distance > 0:
            raise ValueError(f"hop distance must be positive, got {self.distance}")


def pathloss(d: float, beta: float) -> float:
    """Pathloss attenuation ``d**-beta``."""
    if not d > 0:
        raise ValueError(f"distance must be positive, got {d}")
    if beta < 0:
        raise ValueError(f"pathloss exponent must be non-negative, got {beta}")
    return float(d) ** (-float(beta))


@dataclass(frozen=True, eq=False)
class NetworkSpec:
    """Full description of an N-hop relay network.

    ``power`` holds the per-antenna budgets of levels ``0..N-1`` and ``eta``
    is the inverse noise power at the destination.
    """

    hops: tuple[HopSpec, ...]
    pathloss_exponent: float = 0.0
    power: tuple[float, ...] = ()
    eta: float = 1.0

    def __post_init__(self):
        hops = tuple(self.hops)
        object.__setattr__(self, "hops", hops)
        if not hops:
            raise ValueError("network needs at least one hop")
        for i in range(len(hops) - 1):
            if hops[i].k_out != hops[i + 1].k_in:
                raise ValueError(
                    f"hop {i + 1} has k_out={hops[i].k_out} but hop {i + 2} "
                    f"has k_in={hops[i + 1].k_in}")
        if self.pathloss_exponent < 0:
            raise ValueError("pathloss exponent must be non-negative")
        power = tuple(float(p) for p in self.power) or (1.0,) * len(hops)
        if len(power) != len(hops):
            raise ValueError(f"need {len(hops)} power budgets, got {len(power)}")
        if any(not p > 0 for p in power):
            raise ValueError("power budgets must be positive")
        object.__setattr__(self, "power", power)
        if not self.eta > 0:
            raise ValueError(f"eta must be positive, got {self.eta}")

    @classmethod
    def equal_spacing(cls, n_hops: int, antennas: int | Sequence[int], *,
                      total_distance: float = 1.0, pathloss_exponent: float = 2.0,
                      power: float | Sequence[float] = 1.0, eta: float = 1.0,
                      r_receive: float | Sequence[float] = 0.0,
                      r_transmit: float | Sequence[float] = 0.0) -> "NetworkSpec":
        """Relays inserted with equal spacing ``total_distance / n_hops``."""
        if n_hops < 1:
            raise ValueError("n_hops must be >= 1")
        k = _broadcast(antennas, n_hops + 1, "antennas")
        rr = _broadcast(r_receive, n_hops, "r_receive")
        rt = _broadcast(r_transmit, n_hops, "r_transmit")
        p = _broadcast(power, n_hops, "power")
        d = total_distance / n_hops
        hops = tuple(
            HopSpec(int(k[i]), int(k[i + 1]), d,
                    transmit=CorrelationSpec.exponential(rt[i]),
                    receive=CorrelationSpec.exponential(rr[i]))
            for i in range(n_hops))
        return cls(hops, pathloss_exponent, tuple(p), eta)

    @property
    def n_hops(self) -> int:
        return len(self.hops)

    @property
    def antennas(self) -> tuple[int, ...]:
        """``(k_0, ..., k_N)``."""
        return (self.hops[0].k_in,) + tuple(h.k_out for h in self.hops)

    @property
    def pathloss(self) -> np.ndarray:
        """``(a_1, ..., a_N)``; the convention ``a_{N+1} = 1`` is not included."""
        return np.array([pathloss(h.distance, self.pathloss_exponent) for h in self.hops])

    @property
    def rho(self) -> np.ndarray:
        """Antenna ratios ``k_i / k_N`` at this finite size."""
        k = np.array(self.antennas, dtype=float)
        return k / k[-1]


def _broadcast(value, n, name):
    if np.ndim(value) == 0:
        return [value] * n
    value = list(value)
    if len(value) != n:
        raise ValueError(f"{name} needs {n} entries, got {len(value)}")
    return value


class PreparedNetwork:
    """A :class:`NetworkSpec` with correlation matrices, square roots and
    eigendecompositions computed once.

    Index ``i`` of the per-hop lists refers to hop ``i + 1``.
    """

    def __init__(self, spec: NetworkSpec):
        self.spec = spec
        k = spec.antennas
        self.c_t = [h.transmit.build(k[i]) for i, h in enumerate(spec.hops)]
        self.c_r = [h.receive.build(k[i + 1]) for i, h in enumerate(spec.hops)]
        self.c_t_sqrt = [psd_sqrt(C) for C in self.c_t]
        self.c_r_sqrt = [psd_sqrt(C) for C in self.c_r]
        self.c_t_eig: list[HermitianEig] = [hermitian_eig(C) for C in self.c_t]
        self.c_r_eig: list[HermitianEig] = [hermitian_eig(C) for C in self.c_r]

    def __getattr__(self, name):
        return getattr(self.spec, name)


def prepare(spec) -> PreparedNetwork:
    if isinstance(spec, PreparedNetwork):
        return spec
    return PreparedNetwork(spec)


@dataclass(frozen=True, eq=False)
class ChannelRealization:
    """One draw of all hops: ``H_i = C_r^{1/2} Theta_i C_t^{1/2}``."""

    thetas: tuple[np.ndarray, ...]
    hops: tuple[np.ndarray, ...]
    seed: int | None = None


def draw_channels(spec, rng: np.random.Generator | int) -> ChannelRealization:
    """Draw independent hop matrices; ``Theta_i`` has entry variance ``a_i / k_{i-1}``."""
    net = prepare(spec)
    seed = None
    if not isinstance(rng, np.random.Generator):
        seed = int(rng)
        rng = make_rng(seed)
    k = net.antennas
    a = net.pathloss
    thetas, hops = [], []
    for i in range(net.n_hops):
        theta = sample_complex_gaussian(k[i + 1], k[i], a[i] / k[i], rng)
        thetas.append(theta)
        hops.append(net.c_r_sqrt[i] @ theta @ net.c_t_sqrt[i])
    return ChannelRealization(tuple(thetas), tuple(hops), seed)


def _precoder_matrices(precoders) -> list[np.ndarray]:
    return list(getattr(precoders, "matrices", precoders))


def _check_precoders(net, P):
    k = net.antennas
    if len(P) != net.n_hops:
        raise ValueError(f"need {net.n_hops} precoders, got {len(P)}")
    for i, Pi in enumerate(P):
        if Pi.shape != (k[i], k[i]):
            raise ValueError(f"precoder {i} has shape {Pi.shape}, expected {(k[i], k[i])}")


def build_m_matrices(spec, precoders) -> list[np.ndarray]:
    """``M_0 = C_{t,1}^{1/2} P_0``, ``M_i = C_{t,i+1}^{1/2} P_i C_{r,i}^{1/2}``,
    ``M_N = C_{r,N}^{1/2}``."""
    net = prepare(spec)
    P = _precoder_matrices(precoders)
    _check_precoders(net, P)
    N = net.n_hops
    M = [net.c_t_sqrt[0] @ P[0]]
    for i in range(1, N):
        M.append(net.c_t_sqrt[i] @ P[i] @ net.c_r_sqrt[i - 1])
    M.append(net.c_r_sqrt[N - 1].copy())
    return M


def compose_end_to_end(realization: ChannelRealization, precoders) -> np.ndarray:
    """``G_N = H_N P_{N-1} H_{N-1} ... H_1 P_0``."""
    P = _precoder_matrices(precoders)
    H = realization.hops
    if len(P) != len(H):
        raise ValueError(f"need {len(H)} precoders, got {len(P)}")
    G = P[0]
    for i, Hi in enumerate(H):
        if Hi.shape[1] != G.shape[0]:
            raise ValueError(f"hop {i + 1} expects {Hi.shape[1]} inputs, got {G.shape[0]}")
        G = Hi @ G
        if i + 1 < len(H):
            if P[i + 1].shape != (G.shape[0], G.shape[0]):
                raise ValueError(f"precoder {i + 1} has shape {P[i + 1].shape}")
            G = P[i + 1] @ G
    return G


def compose_from_m(thetas: Sequence[np.ndarray], m_matrices: Sequence[np.ndarray]) -> np.ndarray:
    """``G_N = M_N Theta_N M_{N-1} ... Theta_1 M_0``."""
    if len(m_matrices) != len(thetas) + 1:
        raise ValueError("need one more M matrix than Theta matrices")
    G = m_matrices[0]
    for theta, M in zip(thetas, m_matrices[1:]):
        G = M @ (theta @ G)
    return G


def instantaneous_mi(G, eta: float, k0: int) -> float:
    """Mutual information per source antenna in bits, ``log2 det(I + eta G G^H) / k0``."""
    if k0 < 1:
        raise ValueError("k0 must be positive")
    return log_det_id_plus(eta, G) / k0


def mi_samples(spec, precoders, eta: float, trials: int, seed: int) -> np.ndarray:
    """Instantaneous MI for ``trials`` independent realizations.

    Trial ``j`` draws from ``make_rng(seed, j)`` so any subset of trials can be
    regenerated on its own.
    """
    net = prepare(spec)
    k0 = net.antennas[0]
    out = np.empty(trials)
    for j in range(trials):
        G = compose_end_to_end(draw_channels(net, make_rng(seed, j)), precoders)
        out[j] = instantaneous_mi(G, eta, k0)
    return out


def average_mi_monte_carlo(spec, precoders, eta: float, trials: int,
                           seed: int) -> tuple[float, float]:
    """Sample mean and standard error of the instantaneous MI."""
    if trials < 2:
        raise ValueError("need at least 2 trials for a standard error")
    if eta == 0:
        return 0.0, 0.0
    x = mi_samples(spec, precoders, eta, trials, seed)
    return float(x.mean()), float(x.std(ddof=1) / np.sqrt(trials))
