"""Scenario evaluation over a sweep grid: asymptotic MI plus Monte Carlo statistics."""

from __future__ import annotations

import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .asymptotic import (
    ConvergenceError,
    EmpiricalLaw,
    SolverConfig,
    ToeplitzProduct,
    closed_form_single_hop_iid,
    multi_hop_exponential,
    multi_hop_uncorrelated,
    one_sided_exponential,
    single_hop_correlated,
    solve_fixed_point,
)
from .channel import build_m_matrices, compose_end_to_end, draw_channels, prepare
from .config import RunConfig
from .linalg import make_rng
from .precoding import equal_power_coeffs_uncorrelated, equal_power_precoders

WORKERS_ENV = "RELAYMI_WORKERS"

COLUMNS = ("sweep_value", "mi_asymptotic", "mi_mc_mean", "mi_mc_stderr", "mi_mc_min",
           "mi_mc_max", "residual", "iterations", "wall_ms", "converged")


@dataclass
class SweepRecord:
    sweep_value: float
    mi_asymptotic: float
    residual: float
    iterations: int
    converged: bool
    mi_mc_mean: float | None = None
    mi_mc_stderr: float | None = None
    mi_mc_min: float | None = None
    mi_mc_max: float | None = None
    wall_ms: float | None = None

    def as_row(self) -> dict:
        return {c: getattr(self, c) for c in COLUMNS}


def worker_count() -> int:
    raw = os.environ.get(WORKERS_ENV)
    if raw is None or raw == "":
        return os.cpu_count() or 1
    try:
        n = int(raw)
    except ValueError:
        raise ValueError(f"{WORKERS_ENV} must be a positive integer, got {raw!r}") from None
    if n < 1:
        raise ValueError(f"{WORKERS_ENV} must be a positive integer, got {raw!r}")
    return n


def _as_list(v, n):
    return list(v) if isinstance(v, list) else [v] * n


def asymptotic_solution(config: RunConfig, spec):
    """Fixed-point solution (with ``mi``) for the configured scenario at ``spec``."""
    solver = SolverConfig(config.solver.tolerance, config.solver.max_iterations)
    N = spec.n_hops
    eta = spec.eta
    rho = spec.rho
    a = spec.pathloss
    power = np.asarray(spec.power)
    net = config.network
    rr = _as_list(net.receive_correlation, N)
    rt = _as_list(net.transmit_correlation, N)
    scenario = config.scenario
    try:
        if scenario == "single_hop_iid":
            sol = solve_fixed_point([power[0], 1.0], eta, rho, a, solver,
                                    raise_on_failure=False)
            closed = closed_form_single_hop_iid(eta, a[0] * power[0])
            return replace(sol, mi=closed)
        if scenario == "single_hop_correlated":
            lam0 = ToeplitzProduct(0.0, rt[0], a[0] * power[0])
            lam1 = ToeplitzProduct(rr[0], 0.0, 1.0)
            return single_hop_correlated(eta, rho[0], lam0, lam1, full_output=True)
        alpha = equal_power_coeffs_uncorrelated(power, a)
        if scenario == "multi_hop_uncorrelated":
            return multi_hop_uncorrelated(eta, rho, a, alpha, full_output=True, config=solver)
        if scenario == "multi_hop_exponential":
            return multi_hop_exponential(eta, rho, a, alpha, rr, rt, full_output=True,
                                         config=solver)
        if scenario == "one_sided_exponential":
            return one_sided_exponential(eta, rho, a, alpha, rt, full_output=True,
                                         config=solver)
        if scenario == "generic":
            return solve_fixed_point(generic_levels(spec), eta, rho, a, solver,
                                     raise_on_failure=False)
    except ConvergenceError as exc:
        if exc.solution is None:
            raise
        return exc.solution
    raise ValueError(f"unknown scenario {scenario!r}")


def generic_levels(spec):
    """Empirical spectra of ``M_i^H M_i`` for equal-power optimal precoders at finite size."""
    m = build_m_matrices(spec, equal_power_precoders(spec))
    return [EmpiricalLaw(np.linalg.eigvalsh(M.conj().T @ M)) for M in m]


def singular_values_per_trial(spec, trials: int, seed: int, workers: int = 1) -> list[np.ndarray]:
    """Singular values of ``G_N`` for trials ``0..trials-1`` drawn from ``make_rng(seed, j)``."""
    net = prepare(spec)
    precoders = equal_power_precoders(net)

    def one(j):
        G = compose_end_to_end(draw_channels(net, make_rng(seed, j)), precoders)
        return np.linalg.svd(G, compute_uv=False)

    if workers > 1 and trials > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(one, range(trials)))
    return [one(j) for j in range(trials)]


def mi_from_singular_values(s, eta, k0):
    return float(np.sum(np.log1p(eta * s * s)) / math.log(2.0) / k0)


def _mc_stats(samples):
    x = np.asarray(samples)
    stderr = float(x.std(ddof=1) / math.sqrt(x.size)) if x.size > 1 else None
    return float(x.mean()), stderr, float(x.min()), float(x.max())


def run_sweep(config: RunConfig, monte_carlo: bool, workers: int | None = None) -> list[SweepRecord]:
    """One record per grid point, in grid order."""
    workers = workers or worker_count()
    net = config.network
    grid = config.sweep.grid
    mc = config.monte_carlo if monte_carlo else None

    if config.sweep.variable == "snr_db":
        specs = [net.build(10.0 ** (v / 10.0)) for v in grid]
        svs = None
        if mc is not None:
            svs = singular_values_per_trial(specs[0], mc.trials, mc.seed, workers)

        def point(idx):
            t0 = time.perf_counter()
            spec = specs[idx]
            sol = asymptotic_solution(config, spec)
            stats = None
            if svs is not None:
                k0 = spec.antennas[0]
                stats = _mc_stats([mi_from_singular_values(s, spec.eta, k0) for s in svs])
            return _record(grid[idx], sol, stats, t0)
    else:
        eta = 10.0 ** (net.snr_db / 10.0)

        def point(idx):
            t0 = time.perf_counter()
            spec = net.build(eta, antennas=int(grid[idx]))
            sol = asymptotic_solution(config, spec)
            stats = None
            if mc is not None:
                svs = singular_values_per_trial(spec, mc.trials, mc.seed)
                k0 = spec.antennas[0]
                stats = _mc_stats([mi_from_singular_values(s, eta, k0) for s in svs])
            return _record(grid[idx], sol, stats, t0)

    with ThreadPoolExecutor(max_workers=workers) as pool:
        records = list(pool.map(point, range(len(grid))))
    if not config.output.timing:
        for rec in records:
            rec.wall_ms = None
    return records


def _record(value, sol, stats, t0):
    rec = SweepRecord(value, float(sol.mi), float(sol.residual), int(sol.iterations),
                      bool(sol.converged))
    if stats is not None:
        rec.mi_mc_mean, rec.mi_mc_stderr, rec.mi_mc_min, rec.mi_mc_max = stats
    rec.wall_ms = 1e3 * (time.perf_counter() - t0)
    return rec
