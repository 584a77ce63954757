"""Empirical spectral transforms and numerical checks of free-probability identities.

All transforms are exact finite sums over an empirical spectrum and are only
evaluated on the negative real axis (``s < 0``, ``z`` in ``(-p, 0)`` with ``p``
the fraction of non-zero eigenvalues), where they are real and monotone.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.optimize import brentq

__all__ = [
    "EmpiricalSpectrum",
    "stieltjes",
    "upsilon",
    "upsilon_inverse",
    "s_transform",
    "zero_eigenvalue_counts",
    "verify_swap_relation",
    "predicted_s_transform_chain",
    "toeplitz_symbol",
    "szego_functional",
    "max_eigenvalue_growth",
]

POLE_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class EmpiricalSpectrum:
    """Uniform measure on a finite set of real eigenvalues (stored ascending)."""

    eigenvalues: np.ndarray

    def __post_init__(self):
        lam = np.sort(np.asarray(self.eigenvalues, dtype=float).ravel())
        if lam.size == 0:
            raise ValueError("empty spectrum")
        if not np.all(np.isfinite(lam)):
            raise ValueError("spectrum has non-finite eigenvalues")
        object.__setattr__(self, "eigenvalues", lam)

    @classmethod
    def of_hermitian(cls, A) -> "EmpiricalSpectrum":
        A = np.asarray(A)
        return cls(np.linalg.eigvalsh(0.5 * (A + A.conj().T)))

    @classmethod
    def of_product(cls, A, B, imag_tol: float = 1e-8) -> "EmpiricalSpectrum":
        """Spectrum of ``A @ B`` which must have real eigenvalues."""
        w = np.linalg.eigvals(np.asarray(A) @ np.asarray(B))
        scale = max(1.0, float(np.max(np.abs(w))))
        if np.max(np.abs(w.imag)) > imag_tol * scale:
            raise ValueError("product has non-real eigenvalues")
        return cls(w.real)

    @property
    def n(self) -> int:
        return self.eigenvalues.size

    @property
    def positive_fraction(self) -> float:
        lam = self.eigenvalues
        tol = 1e-12 * max(1.0, float(np.max(np.abs(lam))))
        return float(np.mean(lam > tol))

    def scaled(self, c: float) -> "EmpiricalSpectrum":
        return EmpiricalSpectrum(c * self.eigenvalues)


def _spectrum(spec) -> EmpiricalSpectrum:
    return spec if isinstance(spec, EmpiricalSpectrum) else EmpiricalSpectrum(spec)


def stieltjes(spec, s: complex) -> complex:
    """``G(s) = mean(1 / (lambda_k - s))``."""
    lam = _spectrum(spec).eigenvalues
    d = lam - s
    if np.min(np.abs(d)) < POLE_TOL:
        raise ValueError(f"argument {s} lies on the spectrum")
    return complex(np.mean(1.0 / d))


def upsilon(spec, s: complex) -> complex:
    """``Upsilon(s) = mean(s lambda_k / (1 - s lambda_k))``."""
    lam = _spectrum(spec).eigenvalues
    if s == 0:
        return 0j
    d = 1.0 - s * lam
    if np.min(np.abs(d)) < POLE_TOL:
        raise ValueError(f"1/{s} lies on the spectrum")
    return complex(np.mean(s * lam / d))


def _upsilon_real(lam, s):
    return float(np.mean(s * lam / (1.0 - s * lam)))


def upsilon_inverse(spec, z: float, tol: float = 1e-12) -> float:
    """The ``s <= 0`` with ``Upsilon(s) = z``.

    Requires a non-negative spectrum and ``z`` in ``(-p, 0]`` where ``p`` is
    the fraction of non-zero eigenvalues. On ``s < 0`` Upsilon decreases
    monotonically from 0 towards ``-p``.
    """
    sp = _spectrum(spec)
    lam = sp.eigenvalues
    if lam[0] < -1e-12 * max(1.0, abs(lam[-1])):
        raise ValueError("Upsilon inverse needs a non-negative spectrum")
    z = float(np.real(z))
    if z == 0:
        return 0.0
    p = sp.positive_fraction
    if not -p < z < 0:
        raise ValueError(f"z={z} outside the attainable range (-{p}, 0)")
    # Upsilon(s) >= s*mean(lambda) for s < 0, so s = z/mean is a lower-side start
    lo = z / float(np.mean(lam))
    hi = lo
    while _upsilon_real(lam, hi) <= z:
        hi *= 0.5
    while _upsilon_real(lam, lo) > z:
        lo *= 2.0
    return brentq(lambda s: _upsilon_real(lam, s) - z, lo, hi,
                  xtol=1e-300, rtol=4 * np.finfo(float).eps, maxiter=500)


def s_transform(spec, z: float) -> float:
    """``S(z) = (z + 1) / z * Upsilon^{-1}(z)``."""
    if z == 0:
        raise ValueError("S-transform is evaluated away from z = 0")
    return (z + 1.0) / z * upsilon_inverse(spec, z)


def zero_eigenvalue_counts(A, B, tol: float = 1e-10) -> tuple[int, int, int, int]:
    """Zero multiplicities of ``AB`` and ``BA`` and the sizes of both products.

    Returns ``(m0, m0_prime, m, n)`` for ``A`` of shape ``(m, n)``; these
    satisfy ``m0 + n == m0_prime + m``.
    """
    A, B = np.asarray(A), np.asarray(B)
    m, n = A.shape
    ab = np.linalg.eigvals(A @ B)
    ba = np.linalg.eigvals(B @ A)
    scale = max(1.0, float(np.max(np.abs(ab))))
    return (int(np.sum(np.abs(ab) < tol * scale)),
            int(np.sum(np.abs(ba) < tol * scale)), m, n)


def verify_swap_relation(A, B, z_grid: Sequence[float] | None = None,
                         xi: float | None = None) -> float:
    """Max relative deviation between ``S_AB(z)`` and
    ``(z + 1) / (z + xi) * S_BA(z / xi)`` on ``z_grid``.

    ``A`` is ``n x p`` and ``B`` is ``p x n``; ``xi`` defaults to ``p / n``
    (passing another value is useful as a negative control). The relation is
    exact for empirical spectra, so the deviation is at rounding level.
    """
    A, B = np.asarray(A), np.asarray(B)
    n, p = A.shape
    if B.shape != (p, n):
        raise ValueError(f"B must have shape {(p, n)}, got {B.shape}")
    ab = EmpiricalSpectrum.of_product(A, B)
    ba = EmpiricalSpectrum.of_product(B, A)
    for sp in (ab, ba):
        if sp.eigenvalues[0] < -1e-10 * max(1.0, sp.eigenvalues[-1]):
            raise ValueError("products must have non-negative eigenvalues")
    true_xi = p / n
    xi = true_xi if xi is None else float(xi)
    zmax = min(ab.positive_fraction, xi * ba.positive_fraction)
    if z_grid is None:
        z_grid = np.linspace(-0.9, -0.1, 9) * zmax
    dev = 0.0
    for z in z_grid:
        lhs = s_transform(ab, z)
        rhs = (z + 1.0) / (z + xi) * s_transform(ba, z / xi)
        dev = max(dev, abs(lhs - rhs) / abs(lhs))
    return dev


def predicted_s_transform_chain(m_spectra: Sequence, rho: Sequence[float],
                                a: Sequence[float], z: float) -> float:
    """S-transform of ``G_N G_N^H`` predicted from the spectra of ``M_i^H M_i``.

    ``m_spectra`` holds the ``N + 1`` spectra of ``M_0^H M_0 .. M_N^H M_N``,
    ``rho`` the ratios ``k_i / k_N`` and ``a`` the pathloss ``a_1..a_N``.
    """
    N = len(m_spectra) - 1
    if len(rho) != N + 1 or len(a) != N:
        raise ValueError("need N+1 spectra and ratios and N pathloss values")
    val = s_transform(m_spectra[N], z)
    for i in range(1, N + 1):
        r = rho[i - 1]
        val *= r / a[i - 1] / (z + r) * s_transform(m_spectra[i - 1], z / r)
    return val


def toeplitz_symbol(r: float, lam) -> np.ndarray:
    """Symbol ``(1 - r^2) / |1 - r e^{j lam}|^2`` of the exponential Toeplitz family."""
    lam = np.asarray(lam, dtype=float)
    return (1.0 - r * r) / (1.0 - 2.0 * r * np.cos(lam) + r * r)


def szego_functional(r: float, g: Callable[[np.ndarray], np.ndarray],
                     points: int = 1024) -> float:
    """``(1/2pi) int_0^{2pi} g(f_r(lam)) dlam`` by the periodic trapezoid rule."""
    if not 0.0 <= r < 1.0:
        raise ValueError(f"r must be in [0, 1), got {r}")
    if points < 1:
        raise ValueError("points must be positive")
    lam = 2.0 * np.pi * np.arange(points) / points
    return float(np.mean(g(toeplitz_symbol(r, lam))))


def max_eigenvalue_growth(sample: Callable[[int], np.ndarray],
                          sizes: Sequence[int]) -> list[float]:
    """Largest eigenvalue of ``sample(n)`` (a Hermitian matrix) for each size.

    A bounded sequence is the empirical signature of a compactly supported
    limit distribution; this is a diagnostic, not a test.
    """
    return [float(np.linalg.eigvalsh(sample(n))[-1]) for n in sizes]
