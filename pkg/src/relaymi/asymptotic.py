"""Deterministic large-antenna mutual information of N-hop relay networks.

The unknowns ``h_0..h_N`` solve

    prod_j h_j = rho_i E[h_i^N L_i / (rho_i / a_{i+1} + eta h_i^N L_i)],  i = 0..N

where ``L_i`` follows the limiting spectrum of ``M_i^H M_i`` and
``a_{N+1} = 1``. Writing ``x_i = eta a_{i+1} h_i^N / rho_i`` and
``u = eta prod_j h_j`` each equation becomes ``phi_i(x_i) = u / rho_i`` with
``phi_i(x) = E[x L_i / (1 + x L_i)]`` increasing in ``x``. Substituting back
into ``prod_j h_j`` leaves one scalar equation in ``u`` whose left side is
strictly decreasing in ``log u``, so the solution exists and is unique; it is
found by bracketed root finding, with a Newton polish on ``log h`` as
fallback.

Internally everything is in nats; results are reported in bits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.optimize import brentq

from .freeprob import EmpiricalSpectrum, toeplitz_symbol

__all__ = [
    "PointMass",
    "EmpiricalLaw",
    "ToeplitzProduct",
    "FixedPointSolution",
    "ConvergenceError",
    "SolverConfig",
    "solve_fixed_point",
    "asymptotic_mi",
    "closed_form_single_hop_iid",
    "single_hop_correlated",
    "multi_hop_uncorrelated",
    "multi_hop_exponential",
    "one_sided_exponential",
    "complete_elliptic_k",
    "mi_derivative_check",
]

LN2 = math.log(2.0)
_EPS = np.finfo(float).eps


class ConvergenceError(RuntimeError):
    """The fixed-point solver did not reach its tolerance.

    The best available :class:`FixedPointSolution` is attached as ``solution``.
    """

    def __init__(self, message, solution=None):
        super().__init__(message)
        self.solution = solution


@dataclass(frozen=True)
class SolverConfig:
    tolerance: float = 1e-11
    max_iterations: int = 10_000
    polish_iterations: int = 500


# ---------------------------------------------------------------------------
# spectral laws


_TINY_ETA = 1e-100


def _brent(f, lo, hi, **kw):
    """``(root, iterations, converged)``; exact roots at an endpoint short-circuit.

    scipy leaves the iteration count unset when an endpoint is already a root,
    which would leak an arbitrary integer into the output.
    """
    for end in (lo, hi):
        if f(end) == 0:
            return end, 0, True
    root, info = brentq(f, lo, hi, full_output=True, disp=False, **kw)
    return root, int(info.iterations), bool(info.converged)


def _invert_increasing(phi, y, x_lo, dphi=None, maxiter=500):
    """Solve ``phi(x) = y`` for an increasing ``phi`` with ``phi(x_lo) <= y``."""
    x_hi = x_lo
    while phi(x_hi) < y:
        x_lo = x_hi
        x_hi *= 4.0
    if x_hi == x_lo:
        while phi(x_lo) > y:
            x_hi = x_lo
            x_lo *= 0.25
    s_lo, s_hi = math.log(x_lo), math.log(x_hi)
    if dphi is None:
        s = brentq(lambda s: phi(math.exp(s)) - y, s_lo, s_hi,
                   xtol=1e-15, rtol=4 * _EPS, maxiter=maxiter)
        return math.exp(s)
    # safeguarded Newton in log x
    s = 0.5 * (s_lo + s_hi)
    for _ in range(maxiter):
        x = math.exp(s)
        f = phi(x) - y
        if f > 0:
            s_hi = s
        else:
            s_lo = s
        d = x * dphi(x)  # derivative with respect to log x
        step = f / d if d > 0 else math.inf
        s_new = s - step
        if not s_lo < s_new < s_hi:
            s_new = 0.5 * (s_lo + s_hi)
        if abs(s_new - s) <= 4 * _EPS * max(1.0, abs(s)) or s_hi - s_lo <= 1e-15:
            return math.exp(s_new)
        s = s_new
    return math.exp(s)


@dataclass(frozen=True)
class PointMass:
    """All eigenvalues equal to ``value``."""

    value: float

    def __post_init__(self):
        if not self.value >= 0 or not math.isfinite(self.value):
            raise ValueError(f"point mass must be finite and non-negative, got {self.value}")

    @property
    def mean(self) -> float:
        return float(self.value)

    @property
    def positive_fraction(self) -> float:
        return 1.0 if self.value > 0 else 0.0

    def phi(self, x):
        v = self.value
        return x * v / (1.0 + x * v)

    def phi_inverse(self, y):
        return y / (self.value * (1.0 - y))

    def log_term(self, x):
        return math.log1p(x * self.value)


class EmpiricalLaw:
    """Weighted atoms (uniform weights unless given)."""

    def __init__(self, values, weights=None):
        if isinstance(values, EmpiricalSpectrum):
            values = values.eigenvalues
        v = np.asarray(values, dtype=float).ravel()
        if v.size == 0 or not np.all(np.isfinite(v)):
            raise ValueError("empirical law needs finite values")
        scale = max(1.0, float(np.max(np.abs(v))))
        if np.min(v) < -1e-12 * scale:
            raise ValueError("spectrum must be non-negative")
        v = np.clip(v, 0.0, None)
        if weights is None:
            w = np.full(v.size, 1.0 / v.size)
        else:
            w = np.asarray(weights, dtype=float).ravel()
            w = w / w.sum()
        keep = v > 1e-14 * scale
        self.values = v[keep]
        self.weights = w[keep]
        self.positive_fraction = float(w[keep].sum())
        self.mean = float(np.dot(self.weights, self.values))

    def phi(self, x):
        xv = x * self.values
        return float(np.dot(self.weights, xv / (1.0 + xv)))

    def dphi(self, x):
        v = self.values
        return float(np.dot(self.weights, v / (1.0 + x * v) ** 2))

    def phi_inverse(self, y):
        return _invert_increasing(self.phi, y, y / self.mean, dphi=self.dphi)

    def log_term(self, x):
        return float(np.dot(self.weights, np.log1p(x * self.values)))


def _midpoints(points):
    return (np.arange(points) + 0.5) * (np.pi / points)


def _auto_points(*rs):
    r = max(rs, default=0.0)
    if r <= 0:
        return 1
    p = 16
    while r ** (2 * p) > 1e-17 and p < 1024:
        p *= 2
    return p


class ToeplitzProduct:
    """Law of ``scale * Y * Z`` with ``Y`` and ``Z`` independent and distributed
    as the limiting spectra of exponential Toeplitz matrices with parameters
    ``r_receive`` and ``r_transmit``.

    ``fixed_point`` selects how ``phi`` is evaluated: ``"quadrature"`` uses a
    tensor midpoint rule over both symbol angles; ``"elliptic"`` uses the
    closed form in terms of the complete elliptic integral ``K(m)`` (which has
    no ``K`` when one side is uncorrelated). The log term always uses
    quadrature, refined by doubling until it changes by less than ``1e-10``.
    """

    def __init__(self, r_receive: float, r_transmit: float, scale: float = 1.0,
                 points: int | None = None, fixed_point: str = "quadrature"):
        for r in (r_receive, r_transmit):
            if not 0.0 <= r < 1.0:
                raise ValueError(f"correlation coefficient must be in [0, 1), got {r}")
        if not scale > 0:
            raise ValueError("scale must be positive")
        if fixed_point not in ("quadrature", "elliptic"):
            raise ValueError(f"unknown fixed_point method {fixed_point!r}")
        self.r_receive = float(r_receive)
        self.r_transmit = float(r_transmit)
        self.scale = float(scale)
        self.points = points or _auto_points(r_receive, r_transmit)
        self.fixed_point = fixed_point
        self.c_receive = (1 - r_receive) / (1 + r_receive)
        self.c_transmit = (1 - r_transmit) / (1 + r_transmit)
        self.mean = self.scale
        self.positive_fraction = 1.0
        self._atoms = None

    def atoms(self, points=None) -> EmpiricalLaw:
        p = points or self.points
        y = toeplitz_symbol(self.r_receive, _midpoints(p if self.r_receive else 1))
        z = toeplitz_symbol(self.r_transmit, _midpoints(p if self.r_transmit else 1))
        return EmpiricalLaw(self.scale * np.multiply.outer(y, z))

    def _quad(self):
        if self._atoms is None:
            self._atoms = self.atoms()
        return self._atoms

    def phi(self, x):
        if self.fixed_point == "quadrature":
            return self._quad().phi(x)
        w = x * self.scale
        cr, ct = self.c_receive, self.c_transmit
        c = cr * ct
        if cr == 1.0 or ct == 1.0:
            return w / math.sqrt((c + w) * (1.0 / c + w))
        m = 1.0 - ((ct / cr + w) * (cr / ct + w)) / ((1.0 / c + w) * (c + w))
        m = min(max(m, 0.0), 1.0 - _EPS)
        return (2.0 / math.pi) * w * complete_elliptic_k(m) / math.sqrt((c + w) * (1.0 / c + w))

    def phi_inverse(self, y):
        if self.fixed_point == "quadrature":
            return self._quad().phi_inverse(y)
        c = self.c_receive * self.c_transmit
        if self.c_receive == 1.0 or self.c_transmit == 1.0:
            # w^2 (1 - y^2) - y^2 (c + 1/c) w - y^2 = 0
            b = y * y * (c + 1.0 / c)
            w = (b + math.sqrt(b * b + 4.0 * y * y * (1.0 - y * y))) / (2.0 * (1.0 - y * y))
            return w / self.scale
        return _invert_increasing(self.phi, y, y / self.mean)

    def log_term(self, x, tol=1e-10):
        p = max(16, self.points // 4) if (self.r_receive or self.r_transmit) else 1
        prev = self.atoms(p).log_term(x)
        if p == 1:
            return prev
        while True:
            p *= 2
            cur = self.atoms(p).log_term(x)
            if abs(cur - prev) < tol or p >= 4096:
                return cur
            prev = cur


def _as_law(obj):
    if isinstance(obj, (PointMass, EmpiricalLaw, ToeplitzProduct)):
        return obj
    if isinstance(obj, (int, float)):
        return PointMass(float(obj))
    return EmpiricalLaw(obj)


# ---------------------------------------------------------------------------
# solver


@dataclass(frozen=True, eq=False)
class FixedPointSolution:
    """Solution of the fixed-point system and the resulting MI (bits per source antenna)."""

    h: np.ndarray
    mi: float
    residual: float
    iterations: int
    converged: bool
    product: float = 0.0
    degenerate: bool = False
    method: str = "scalar-reduction"
    details: dict = field(default_factory=dict)


def _prepare_params(levels, rho, a):
    N = len(levels) - 1
    if N < 1:
        raise ValueError("need at least two levels (N >= 1)")
    rho = np.asarray(rho, dtype=float)
    a = np.asarray(a, dtype=float)
    if rho.shape != (N + 1,):
        raise ValueError(f"rho needs {N + 1} entries, got {rho.size}")
    if a.shape == (N + 1,):
        if a[-1] != 1.0:
            raise ValueError("a_{N+1} must be 1")
    elif a.shape == (N,):
        a = np.append(a, 1.0)
    else:
        raise ValueError(f"a needs {N} entries (a_1..a_N), got {a.size}")
    if np.any(~(rho > 0)) or np.any(~(a > 0)):
        raise ValueError("rho and a must be positive")
    return N, rho, a


def _residuals(levels, h, eta, rho, a_ext):
    N = len(levels) - 1
    prod = float(np.prod(h))
    res = np.empty(N + 1)
    for i, lev in enumerate(levels):
        g = h[i] ** N
        if eta == 0:
            rhs = a_ext[i] * g * lev.mean
        else:
            rhs = rho[i] / eta * lev.phi(eta * a_ext[i] * g / rho[i])
        res[i] = prod - rhs
    return res


def _log_terms(levels, h, eta, rho, a_ext):
    N = len(levels) - 1
    return np.array([lev.log_term(eta * a_ext[i] * h[i] ** N / rho[i])
                     for i, lev in enumerate(levels)])


def _mi_bits(levels, h, eta, rho, a_ext):
    if eta == 0:
        return 0.0
    N = len(levels) - 1
    nats = (np.dot(rho, _log_terms(levels, h, eta, rho, a_ext))
            - N * eta * float(np.prod(h))) / rho[0]
    return max(float(nats) / LN2, 0.0)


def _newton_polish(levels, h, eta, rho, a_ext, iterations):
    """Newton on ``log h`` with a forward-difference Jacobian."""
    v = np.log(h)
    for _ in range(iterations):
        r = _residuals(levels, np.exp(v), eta, rho, a_ext)
        J = np.empty((v.size, v.size))
        for j in range(v.size):
            dv = 1e-7 * max(1.0, abs(v[j]))
            vp = v.copy()
            vp[j] += dv
            J[:, j] = (_residuals(levels, np.exp(vp), eta, rho, a_ext) - r) / dv
        step = np.linalg.solve(J, -r)
        v = v + step
        if np.max(np.abs(step)) < 1e-15:
            break
    return np.exp(v)


def _solve(levels, eta, rho, a, config: SolverConfig, method="scalar-reduction"):
    N, rho, a_ext = _prepare_params(levels, rho, a)
    if not eta >= 0 or not math.isfinite(eta):
        raise ValueError(f"eta must be finite and non-negative, got {eta}")

    if any(lev.positive_fraction == 0 for lev in levels):
        return FixedPointSolution(np.zeros(N + 1), 0.0, 0.0, 0, True, 0.0,
                                  degenerate=True, method=method)

    if 0 < eta < _TINY_ETA:
        # the eta = 0 profile is exact to rounding here; MI is linear in eta
        sol = _solve(levels, 0.0, rho, a, config, method)
        res = _residuals(levels, sol.h, eta, rho, a_ext)
        return FixedPointSolution(sol.h, eta * sol.product / (rho[0] * math.log(2.0)),
                                  float(np.max(np.abs(res))), 0, True, sol.product,
                                  method="small-snr")

    if eta == 0:
        # prod h = a_{i+1} E[L_i] h_i^N  =>  prod h = prod_i a_{i+1} E[L_i]
        m = np.array([a_ext[i] * lev.mean for i, lev in enumerate(levels)])
        t = float(np.prod(m))
        h = (t / m) ** (1.0 / N)
        res = _residuals(levels, h, 0.0, rho, a_ext)
        return FixedPointSolution(h, 0.0, float(np.max(np.abs(res))), 0, True,
                                  float(np.prod(h)), method="closed-form")

    u_max = min(rho[i] * lev.positive_fraction for i, lev in enumerate(levels))
    log_eta = math.log(eta)
    log_ra = np.log(rho / a_ext)

    def xs(u):
        return np.array([lev.phi_inverse(u / rho[i]) for i, lev in enumerate(levels)])

    def F(s):
        x = xs(math.exp(s))
        return N * s + log_eta - float(np.sum(log_ra + np.log(x)))

    s_mid = math.log(0.5 * u_max)
    f_mid = F(s_mid)
    if f_mid > 0:
        s_lo, s_hi = s_mid, None
        for k in range(2, 60):
            s = math.log(u_max * (1.0 - 2.0 ** -k))
            if F(s) < 0:
                s_hi = s
                break
            s_lo = s
    else:
        s_lo, s_hi = None, s_mid
        s = s_mid
        for _ in range(2000):
            s -= 2.0
            if F(s) > 0:
                s_lo = s
                break
            s_hi = s
    if s_lo is None or s_hi is None:
        raise ConvergenceError("could not bracket the fixed point")

    s, iterations, brent_ok = _brent(F, s_lo, s_hi, xtol=1e-15, rtol=4 * _EPS,
                                     maxiter=config.max_iterations)
    x = xs(math.exp(s))
    g = rho * x / (eta * a_ext)
    h = g ** (1.0 / N)

    res = _residuals(levels, h, eta, rho, a_ext)
    scale = max(1.0, float(np.prod(h)))
    if np.max(np.abs(res)) > config.tolerance * scale and config.polish_iterations:
        h = _newton_polish(levels, h, eta, rho, a_ext, config.polish_iterations)
        res = _residuals(levels, h, eta, rho, a_ext)
        method = method + "+newton"
    residual = float(np.max(np.abs(res)))
    converged = bool(brent_ok and residual <= config.tolerance * scale)
    sol = FixedPointSolution(h, _mi_bits(levels, h, eta, rho, a_ext), residual,
                             iterations, converged, float(np.prod(h)), method=method,
                             details={"u": math.exp(s), "x": x})
    return sol


def solve_fixed_point(inputs: Sequence, eta: float, rho: Sequence[float],
                      a: Sequence[float], config: SolverConfig | None = None,
                      raise_on_failure: bool = True) -> FixedPointSolution:
    """Solve the ``N + 1`` coupled equations for ``h_0..h_N``.

    Parameters
    ----------
    inputs : sequence
        Spectral law of ``M_i^H M_i`` for each level: :class:`PointMass`,
        :class:`EmpiricalLaw`, :class:`ToeplitzProduct`, an
        :class:`~relaymi.freeprob.EmpiricalSpectrum`, an array of eigenvalues
        or a bare number (point mass).
    eta : float
        Inverse noise power at the destination.
    rho : sequence of float
        Antenna ratios ``k_i / k_N`` for ``i = 0..N``.
    a : sequence of float
        Pathloss ``a_1..a_N``; ``a_{N+1} = 1`` is appended.

    A level whose law has no mass away from zero gives the degenerate
    solution ``h = 0`` with zero mutual information.
    """
    config = config or SolverConfig()
    levels = [_as_law(x) for x in inputs]
    sol = _solve(levels, eta, rho, a, config)
    if not sol.converged and raise_on_failure:
        raise ConvergenceError(
            f"fixed point not converged (residual {sol.residual:.3e})", sol)
    return sol


def asymptotic_mi(solution: FixedPointSolution, inputs: Sequence, eta: float,
                  rho: Sequence[float], a: Sequence[float]) -> float:
    """Asymptotic MI in bits per source antenna, evaluated from ``solution.h``."""
    if not solution.converged:
        raise ValueError("solution did not converge")
    if eta == 0 or solution.degenerate:
        return 0.0
    levels = [_as_law(x) for x in inputs]
    _, rho, a_ext = _prepare_params(levels, rho, a)
    return _mi_bits(levels, np.asarray(solution.h), eta, rho, a_ext)


def mi_derivative_check(inputs: Sequence, eta: float, rho: Sequence[float],
                        a: Sequence[float], step: float = 1e-4) -> tuple[float, float]:
    """``(analytic, numeric)`` derivative of the MI with respect to ``eta``.

    The analytic value is ``prod h / (rho_0 ln 2)``; the numeric value is a
    central difference with the given step.
    """
    if not 0 < step < eta:
        raise ValueError("need 0 < step < eta")
    levels = [_as_law(x) for x in inputs]
    sol = solve_fixed_point(levels, eta, rho, a)
    analytic = sol.product / (float(rho[0]) * LN2)
    hi = solve_fixed_point(levels, eta + step, rho, a).mi
    lo = solve_fixed_point(levels, eta - step, rho, a).mi
    return analytic, (hi - lo) / (2.0 * step)


# ---------------------------------------------------------------------------
# closed forms and scenario paths


def complete_elliptic_k(m: float) -> float:
    """``K(m) = int_0^{pi/2} dtheta / sqrt(1 - m sin^2 theta)`` by the AGM."""
    if not 0.0 <= m < 1.0:
        raise ValueError(f"K(m) needs 0 <= m < 1, got {m}")
    a, b = 1.0, math.sqrt(1.0 - m)
    for _ in range(64):
        if abs(a - b) <= 4 * _EPS * a:
            break
        a, b = 0.5 * (a + b), math.sqrt(a * b)
    return math.pi / (2.0 * a)


def closed_form_single_hop_iid(eta: float, P0: float) -> float:
    """Asymptotic capacity per dimension of a square i.i.d. Rayleigh link (bits)."""
    if not eta > 0 or not P0 > 0:
        raise ValueError("eta and P0 must be positive")
    x = eta * P0
    root = math.sqrt(1.0 + 4.0 * x)
    # (root - 1)^2 / (4x) rewritten as 4x / (root + 1)^2 to avoid cancellation
    return 2.0 * math.log2(0.5 * (1.0 + root)) - 4.0 * x / (root + 1.0) ** 2 / LN2


def single_hop_correlated(eta: float, rho0: float, spectrum_lambda0,
                          spectrum_lambda1, full_output: bool = False):
    """Asymptotic MI of a correlated single-hop link.

    ``spectrum_lambda0`` is the law of ``Lambda_{t,1} Lambda_Q`` (transmit
    correlation times the chosen power allocation), ``spectrum_lambda1`` the
    law of the receive correlation eigenvalues. Solves

        h0 = E[L1 / (1 + eta L1 h1)],  h1 = E[L0 / (1 + eta L0 h0 / rho0)]

    by a bracketed search on ``h0``.
    """
    if not eta > 0 or not rho0 > 0:
        raise ValueError("eta and rho0 must be positive")
    L0 = _as_law(spectrum_lambda0)
    L1 = _as_law(spectrum_lambda1)
    if L0.positive_fraction == 0 or L1.positive_fraction == 0:
        sol = FixedPointSolution(np.zeros(2), 0.0, 0.0, 0, True, 0.0, degenerate=True,
                                 method="two-equation")
        return sol if full_output else 0.0

    # E[L / (1 + c L)] = phi(c) / c
    def ratio(law, c):
        return law.mean if c == 0 else law.phi(c) / c

    def h1_of(h0):
        return ratio(L0, eta * h0 / rho0)

    def gap(h0):
        return h0 - ratio(L1, eta * h1_of(h0))

    h0, iterations, brent_ok = _brent(gap, 0.0, L1.mean, xtol=1e-16, rtol=4 * _EPS,
                                      maxiter=1000)
    h1 = h1_of(h0)
    nats = (L0.log_term(eta * h0 / rho0) + L1.log_term(eta * h1) / rho0
            - eta * h0 * h1 / rho0)
    mi = max(nats / LN2, 0.0)
    if not full_output:
        return mi
    return FixedPointSolution(np.array([h0, h1]), mi, float(abs(gap(h0))), iterations,
                              brent_ok, h0 * h1, method="two-equation")


def _check_alpha(alpha, N):
    alpha = np.asarray(alpha, dtype=float)
    if alpha.shape != (N + 1,):
        raise ValueError(f"alpha needs {N + 1} entries")
    if np.any(~(alpha > 0)):
        raise ValueError("alpha must be positive")
    return alpha


def multi_hop_uncorrelated(eta: float, rho: Sequence[float], a: Sequence[float],
                           alpha: Sequence[float], full_output: bool = False,
                           config: SolverConfig | None = None):
    """Uncorrelated multi-hop network with equal power allocation.

    Every ``M_i^H M_i`` is ``alpha_i^2 I`` so each level is a point mass and
    the per-level inversions are explicit.
    """
    N = len(rho) - 1
    alpha = _check_alpha(alpha, N)
    levels = [PointMass(float(al) ** 2) for al in alpha]
    sol = _solve(levels, eta, rho, a, config or SolverConfig())
    if not sol.converged:
        raise ConvergenceError("uncorrelated path did not converge", sol)
    return sol if full_output else sol.mi


def _exponential_levels(alpha, r_r, r_t, fixed_point, points=None):
    N = len(alpha) - 1
    r_r = list(r_r)
    r_t = list(r_t)
    if len(r_r) != N or len(r_t) != N:
        raise ValueError(f"need {N} receive and {N} transmit correlation coefficients")
    # level i pairs r_{r,i} with r_{t,i+1}; r_{r,0} = r_{t,N+1} = 0
    rr = [0.0] + r_r
    rt = r_t + [0.0]
    return [ToeplitzProduct(rr[i], rt[i], float(alpha[i]) ** 2, points=points,
                            fixed_point=fixed_point) for i in range(N + 1)]


def multi_hop_exponential(eta: float, rho: Sequence[float], a: Sequence[float],
                          alpha: Sequence[float], r_r: Sequence[float],
                          r_t: Sequence[float], quadrature: int | None = None,
                          full_output: bool = False,
                          config: SolverConfig | None = None):
    """Exponentially correlated multi-hop network with optimal directions and
    equal power allocation.

    ``r_r`` are the receive coefficients ``r_{r,1..N}`` and ``r_t`` the
    transmit coefficients ``r_{t,1..N}``. The fixed point uses the elliptic
    integral form; the MI uses the double symbol integral.
    """
    N = len(rho) - 1
    alpha = _check_alpha(alpha, N)
    levels = _exponential_levels(alpha, r_r, r_t, "elliptic", quadrature)
    sol = _solve(levels, eta, rho, a, config or SolverConfig(), method="elliptic")
    if not sol.converged:
        raise ConvergenceError("exponential path did not converge", sol)
    return sol if full_output else sol.mi


def one_sided_exponential(eta: float, rho: Sequence[float], a: Sequence[float],
                          alpha: Sequence[float], r_t: Sequence[float],
                          full_output: bool = False,
                          config: SolverConfig | None = None):
    """Transmit-side-only exponential correlation (all receive coefficients 0).

    The fixed point is solved in closed form per level (no elliptic integral)
    and the MI uses the single symbol integral.
    """
    N = len(rho) - 1
    alpha = _check_alpha(alpha, N)
    levels = _exponential_levels(alpha, [0.0] * N, r_t, "elliptic")
    sol = _solve(levels, eta, rho, a, config or SolverConfig(), method="one-sided")
    if not sol.converged:
        raise ConvergenceError("one-sided path did not converge", sol)
    return sol if full_output else sol.mi
