"""Dense complex matrix primitives used throughout the package.

Everything here works on plain ``numpy`` arrays. Random draws take a
``numpy.random.Generator``; use :func:`make_rng` to obtain one with the
package-wide bit generator so streams are reproducible across platforms.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import toeplitz

__all__ = [
    "RNG_ALGORITHM",
    "HermitianEig",
    "make_rng",
    "hermitian_eig",
    "psd_sqrt",
    "sample_complex_gaussian",
    "exponential_toeplitz",
    "log_det_id_plus",
]

#: Counter-based bit generator; identical (seed, key) gives identical streams.
RNG_ALGORITHM = "philox"

HERMITIAN_TOL = 1e-12
PSD_CLAMP_TOL = 1e-12


@dataclass(frozen=True)
class HermitianEig:
    """Eigenvalues (non-increasing) and matching unitary eigenvectors."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        U = self.eigenvectors
        return (U * self.eigenvalues) @ U.conj().T


def make_rng(seed: int, *key: int) -> np.random.Generator:
    """Return a Philox generator for ``seed`` and an optional substream key.

    ``make_rng(seed, trial)`` gives each Monte Carlo trial its own stream, so
    results do not depend on the order in which trials are evaluated.
    """
    if seed < 0 or seed >= 2**64:
        raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
    ss = np.random.SeedSequence(int(seed), spawn_key=tuple(int(k) for k in key))
    return np.random.Generator(np.random.Philox(ss))


def _as_square(A, name="A") -> np.ndarray:
    A = np.asarray(A)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"{name} must be a square matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise ValueError(f"{name} has non-finite entries")
    return A


def hermitian_eig(A) -> HermitianEig:
    """Eigendecomposition of a Hermitian matrix, eigenvalues non-increasing.

    The input is symmetrized before decomposition. Equal eigenvalues keep the
    order in which LAPACK returned them, and an exactly diagonal input yields
    (a permutation of) the identity, so ``hermitian_eig(I)`` returns ``I``.
    """
    A = _as_square(A)
    scale = max(1.0, float(np.max(np.abs(A))) if A.size else 1.0)
    if np.max(np.abs(A - A.conj().T), initial=0.0) > HERMITIAN_TOL * scale:
        raise ValueError("matrix is not Hermitian")
    A = 0.5 * (A + A.conj().T)
    n = A.shape[0]

    off = A - np.diag(np.diag(A))
    if not np.any(off):
        w = np.real(np.diag(A)).astype(float)
        V = np.eye(n, dtype=A.dtype)
    else:
        w, V = np.linalg.eigh(A)
    order = np.argsort(-w, kind="stable")
    return HermitianEig(w[order], V[:, order])


def psd_sqrt(A) -> np.ndarray:
    """Hermitian PSD square root.

    Eigenvalues in ``[-1e-12, 0)`` are clamped to zero; anything more negative
    is treated as an indefinite input and rejected. For non-diagonal input,
    eigenvalues within ``n * eps * max(eig)`` of zero are set to exactly zero.
    """
    eig = hermitian_eig(A)
    w = eig.eigenvalues
    if w.size and w[-1] < -PSD_CLAMP_TOL:
        raise ValueError(f"matrix is not PSD (min eigenvalue {w[-1]:.3e})")
    w = np.clip(w, 0.0, None)
    A = np.asarray(A)
    if np.any(A - np.diag(np.diag(A))) and w.size:
        # below the eigensolver's backward error; a square root would amplify the noise
        w = np.where(w <= w.size * np.finfo(float).eps * w[0], 0.0, w)
    U = eig.eigenvectors
    S = (U * np.sqrt(w)) @ U.conj().T
    return 0.5 * (S + S.conj().T)


def sample_complex_gaussian(rows: int, cols: int, variance: float,
                            rng: np.random.Generator) -> np.ndarray:
    """Circularly-symmetric complex Gaussian matrix with entry variance ``variance``.

    Real and imaginary parts are independent N(0, variance/2).
    """
    if not np.isfinite(variance) or variance <= 0:
        raise ValueError(f"variance must be finite and positive, got {variance}")
    if rows < 1 or cols < 1:
        raise ValueError("rows and cols must be positive")
    z = rng.standard_normal((rows, cols, 2))
    return np.sqrt(variance / 2.0) * (z[..., 0] + 1j * z[..., 1])


def exponential_toeplitz(n: int, r: float) -> np.ndarray:
    """Correlation matrix with entries ``r**|k-l|`` (0 <= r < 1)."""
    if not 0.0 <= r < 1.0:
        raise ValueError(f"correlation coefficient must be in [0, 1), got {r}")
    if n < 1:
        raise ValueError("n must be positive")
    return toeplitz(r ** np.arange(n, dtype=float))


def log_det_id_plus(eta: float, G) -> float:
    """``log2 det(I + eta G G^H)`` from the singular values of ``G``."""
    if not np.isfinite(eta) or eta < 0:
        raise ValueError(f"eta must be finite and non-negative, got {eta}")
    G = np.asarray(G)
    if not np.all(np.isfinite(G)):
        raise ValueError("G has non-finite entries")
    if eta == 0 or G.size == 0:
        return 0.0
    s = np.linalg.svd(G, compute_uv=False)
    return float(np.sum(np.log1p(eta * s * s)) / np.log(2.0))
