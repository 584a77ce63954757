"""Run configuration: YAML parsing, validation and serialization.

Unknown keys anywhere in the document are rejected so that typos surface as
errors instead of silently falling back to defaults. See ``README.md`` for the
schema.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field, fields, replace
from pathlib import Path
from typing import Any

import yaml

from .channel import CorrelationSpec, HopSpec, NetworkSpec

SCENARIOS = (
    "single_hop_iid",
    "single_hop_correlated",
    "multi_hop_uncorrelated",
    "multi_hop_exponential",
    "one_sided_exponential",
    "generic",
)
SWEEP_VARIABLES = ("snr_db", "antennas")
FORMATS = ("csv", "jsonl")


class ConfigError(ValueError):
    """Invalid configuration; the message names the offending field."""


def _fail(path, msg):
    raise ConfigError(f"{path}: {msg}")


def _number(value, path, *, positive=False, nonneg=False, integer=False):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        _fail(path, f"expected a number, got {value!r}")
    if not math.isfinite(value):
        _fail(path, "must be finite")
    if integer and int(value) != value:
        _fail(path, f"expected an integer, got {value!r}")
    if positive and not value > 0:
        _fail(path, f"must be positive, got {value!r}")
    if nonneg and value < 0:
        _fail(path, f"must be non-negative, got {value!r}")
    return int(value) if integer else float(value)


def _scalar_or_list(value, path, n, **kw):
    if isinstance(value, (list, tuple)):
        if len(value) != n:
            _fail(path, f"expected {n} entries, got {len(value)}")
        return [_number(v, f"{path}[{i}]", **kw) for i, v in enumerate(value)]
    return _number(value, path, **kw)


def _section(data, path, cls):
    if data is None:
        return {}
    if not isinstance(data, dict):
        _fail(path, "expected a mapping")
    allowed = {f.name for f in fields(cls)}
    unknown = sorted(set(data) - allowed)
    if unknown:
        _fail(path, f"unknown key(s) {', '.join(map(str, unknown))}")
    return data


@dataclass
class NetworkConfig:
    hops: int = 1
    antennas: Any = 10
    total_distance: float | None = None
    distances: list | None = None
    pathloss_exponent: float = 2.0
    power: Any = 1.0
    snr_db: float | None = None
    receive_correlation: Any = 0.0
    transmit_correlation: Any = 0.0

    @classmethod
    def from_dict(cls, data, path="network"):
        data = _section(data, path, cls)
        hops = _number(data.get("hops", 1), f"{path}.hops", positive=True, integer=True)
        antennas = _scalar_or_list(data.get("antennas", 10), f"{path}.antennas", hops + 1,
                                   positive=True, integer=True)
        total = data.get("total_distance")
        dists = data.get("distances")
        if total is not None and dists is not None:
            _fail(path, "give either total_distance or distances, not both")
        if total is not None:
            total = _number(total, f"{path}.total_distance", positive=True)
        if dists is not None:
            if not isinstance(dists, list):
                _fail(f"{path}.distances", "expected a list")
            dists = _scalar_or_list(dists, f"{path}.distances", hops, positive=True)
        beta = _number(data.get("pathloss_exponent", 2.0), f"{path}.pathloss_exponent", nonneg=True)
        power = _scalar_or_list(data.get("power", 1.0), f"{path}.power", hops, positive=True)
        snr = data.get("snr_db")
        if snr is not None:
            snr = _number(snr, f"{path}.snr_db")
        rr = _scalar_or_list(data.get("receive_correlation", 0.0),
                             f"{path}.receive_correlation", hops, nonneg=True)
        rt = _scalar_or_list(data.get("transmit_correlation", 0.0),
                             f"{path}.transmit_correlation", hops, nonneg=True)
        for name, val in (("receive_correlation", rr), ("transmit_correlation", rt)):
            for r in (val if isinstance(val, list) else [val]):
                if r >= 1:
                    _fail(f"{path}.{name}", f"coefficients must be below 1, got {r}")
        return cls(hops, antennas, total, dists, beta, power, snr, rr, rt)

    def to_dict(self):
        return {k: v for k, v in asdict(self).items() if v is not None}

    def distance_list(self):
        if self.distances is not None:
            return list(self.distances)
        total = 1.0 if self.total_distance is None else self.total_distance
        return [total / self.hops] * self.hops

    def build(self, eta: float, antennas=None) -> NetworkSpec:
        """NetworkSpec at inverse noise power ``eta``; ``antennas`` overrides the configured counts."""
        N = self.hops
        k = antennas if antennas is not None else self.antennas
        k = [int(k)] * (N + 1) if not isinstance(k, list) else k
        p = self.power if isinstance(self.power, list) else [self.power] * N
        rr = self.receive_correlation
        rt = self.transmit_correlation
        rr = rr if isinstance(rr, list) else [rr] * N
        rt = rt if isinstance(rt, list) else [rt] * N
        hops = tuple(HopSpec(k[i], k[i + 1], d,
                             transmit=CorrelationSpec.exponential(rt[i]),
                             receive=CorrelationSpec.exponential(rr[i]))
                     for i, d in enumerate(self.distance_list()))
        return NetworkSpec(hops, self.pathloss_exponent, tuple(p), eta)


@dataclass
class SweepConfig:
    variable: str = "snr_db"
    grid: list = field(default_factory=list)

    @classmethod
    def from_dict(cls, data, path="sweep"):
        if data is None:
            _fail(path, "missing sweep section")
        data = _section(data, path, cls)
        var = data.get("variable", "snr_db")
        if var not in SWEEP_VARIABLES:
            _fail(f"{path}.variable", f"must be one of {SWEEP_VARIABLES}, got {var!r}")
        grid = data.get("grid")
        if not isinstance(grid, list) or not grid:
            _fail(f"{path}.grid", "must be a non-empty list")
        integer = var == "antennas"
        grid = [_number(g, f"{path}.grid[{i}]", integer=integer, positive=integer)
                for i, g in enumerate(grid)]
        if any(b <= a for a, b in zip(grid, grid[1:])):
            _fail(f"{path}.grid", "must be strictly increasing")
        return cls(var, grid)

    def to_dict(self):
        return asdict(self)


@dataclass
class MonteCarloConfig:
    trials: int = 20
    seed: int = 0

    @classmethod
    def from_dict(cls, data, path="monte_carlo"):
        data = _section(data, path, cls)
        trials = _number(data.get("trials", 20), f"{path}.trials", positive=True, integer=True)
        seed = _number(data.get("seed", 0), f"{path}.seed", nonneg=True, integer=True)
        if seed >= 2**64:
            _fail(f"{path}.seed", "must fit in 64 bits")
        return cls(trials, seed)

    def to_dict(self):
        return asdict(self)


@dataclass
class OutputConfig:
    path: str | None = None
    format: str = "csv"
    timing: bool = False

    @classmethod
    def from_dict(cls, data, path="output"):
        data = _section(data, path, cls)
        fmt = data.get("format", "csv")
        if fmt not in FORMATS:
            _fail(f"{path}.format", f"must be one of {FORMATS}, got {fmt!r}")
        timing = data.get("timing", False)
        if not isinstance(timing, bool):
            _fail(f"{path}.timing", "expected true or false")
        out = data.get("path")
        if out is not None and not isinstance(out, str):
            _fail(f"{path}.path", "expected a string")
        return cls(out, fmt, timing)

    def to_dict(self):
        return {k: v for k, v in asdict(self).items() if v is not None}


@dataclass
class SolverSection:
    tolerance: float = 1e-11
    max_iterations: int = 10_000

    @classmethod
    def from_dict(cls, data, path="solver"):
        data = _section(data, path, cls)
        return cls(_number(data.get("tolerance", 1e-11), f"{path}.tolerance", positive=True),
                   _number(data.get("max_iterations", 10_000), f"{path}.max_iterations",
                           positive=True, integer=True))

    def to_dict(self):
        return asdict(self)


@dataclass
class VerifyConfig:
    swap_size: list = field(default_factory=lambda: [40, 80])
    chain_antennas: int = 200
    wishart_size: int = 2000
    power_trials: int = 10_000
    power_antennas: int = 8
    swap_xi_override: float | None = None

    @classmethod
    def from_dict(cls, data, path="verify"):
        data = _section(data, path, cls)
        d = cls()
        size = data.get("swap_size", d.swap_size)
        if not isinstance(size, list) or len(size) != 2:
            _fail(f"{path}.swap_size", "expected [n, p]")
        size = [_number(s, f"{path}.swap_size[{i}]", positive=True, integer=True)
                for i, s in enumerate(size)]
        xi = data.get("swap_xi_override")
        if xi is not None:
            xi = _number(xi, f"{path}.swap_xi_override", positive=True)
        return cls(
            size,
            _number(data.get("chain_antennas", d.chain_antennas), f"{path}.chain_antennas",
                    positive=True, integer=True),
            _number(data.get("wishart_size", d.wishart_size), f"{path}.wishart_size",
                    positive=True, integer=True),
            _number(data.get("power_trials", d.power_trials), f"{path}.power_trials",
                    positive=True, integer=True),
            _number(data.get("power_antennas", d.power_antennas), f"{path}.power_antennas",
                    positive=True, integer=True),
            xi)

    def to_dict(self):
        return {k: v for k, v in asdict(self).items() if v is not None}


@dataclass
class RunConfig:
    scenario: str
    network: NetworkConfig
    sweep: SweepConfig
    monte_carlo: MonteCarloConfig | None = None
    output: OutputConfig = field(default_factory=OutputConfig)
    solver: SolverSection = field(default_factory=SolverSection)
    verify: VerifyConfig = field(default_factory=VerifyConfig)

    @classmethod
    def from_dict(cls, data) -> "RunConfig":
        if not isinstance(data, dict):
            raise ConfigError("config: expected a mapping at the top level")
        _section(data, "config", cls)
        scenario = data.get("scenario")
        if scenario not in SCENARIOS:
            _fail("scenario", f"must be one of {SCENARIOS}, got {scenario!r}")
        network = NetworkConfig.from_dict(data.get("network"))
        sweep = SweepConfig.from_dict(data.get("sweep"))
        mc = data.get("monte_carlo")
        mc = MonteCarloConfig.from_dict(mc) if mc is not None else None
        cfg = cls(scenario, network, sweep, mc,
                  OutputConfig.from_dict(data.get("output")),
                  SolverSection.from_dict(data.get("solver")),
                  VerifyConfig.from_dict(data.get("verify")))
        cfg._check_scenario()
        return cfg

    def _check_scenario(self):
        net = self.network

        def nonzero(v):
            return any(v) if isinstance(v, list) else v != 0

        if self.sweep.variable == "antennas" and net.snr_db is None:
            _fail("network.snr_db", "required when sweeping antennas")
        if self.scenario in ("single_hop_iid", "single_hop_correlated") and net.hops != 1:
            _fail("network.hops", f"scenario {self.scenario} needs exactly one hop")
        if self.scenario in ("single_hop_iid", "multi_hop_uncorrelated"):
            if nonzero(net.receive_correlation) or nonzero(net.transmit_correlation):
                _fail("network", f"scenario {self.scenario} does not allow correlation")
        if self.scenario == "one_sided_exponential" and nonzero(net.receive_correlation):
            _fail("network.receive_correlation", "must be 0 for one_sided_exponential")
        if self.scenario == "single_hop_iid":
            k = net.antennas
            if isinstance(k, list) and k[0] != k[1]:
                _fail("network.antennas", "single_hop_iid needs a square link")

    def to_dict(self) -> dict:
        out = {"scenario": self.scenario, "network": self.network.to_dict(),
               "sweep": self.sweep.to_dict()}
        if self.monte_carlo is not None:
            out["monte_carlo"] = self.monte_carlo.to_dict()
        out["output"] = self.output.to_dict()
        out["solver"] = self.solver.to_dict()
        out["verify"] = self.verify.to_dict()
        return out

    def with_overrides(self, *, seed=None, path=None, fmt=None) -> "RunConfig":
        cfg = self
        if seed is not None:
            mc = cfg.monte_carlo or MonteCarloConfig()
            cfg = replace(cfg, monte_carlo=replace(mc, seed=seed))
        if path is not None or fmt is not None:
            out = cfg.output
            cfg = replace(cfg, output=replace(out, path=path or out.path, format=fmt or out.format))
        return cfg


def parse_config(text: str) -> RunConfig:
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ConfigError(f"config: invalid YAML ({exc})") from exc
    return RunConfig.from_dict(data)


def load_config(path) -> RunConfig:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"config: cannot read {path} ({exc.strerror})") from exc
    return parse_config(text)


def dump_config(config: RunConfig) -> str:
    return yaml.safe_dump(config.to_dict(), sort_keys=False)
