"""Command-line interface: config handling, reports, CSV emission.

Configs are flat ``key = value`` text with ``#`` comments and dotted section
prefixes, for example::

    population.demand = 115.0
    population.beta_max = 1.5
    population.gamma_max = 8.0
    bpr.a = 0.15
    bpr.b = 4.0
    bpr.t_free = 22.0
    bpr.v_cap = 140.0
    occupancy = 2.5
    rho_values = 0.25, 0.5, 0.75
    tau_min = 0.5
    tau_max = 10.0
    tau_step = 0.5
    oracle.grid_n = 2000       # optional block
    oracle.damping = 0.2
    oracle.tol = 1e-09
    oracle.max_iters = 10000

Monetary values are dollars, times are minutes. All CSV floats are written
with 12 significant digits so repeated runs produce byte-identical files.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from .design import (
    DesignPointResult,
    FailedDesignPoint,
    comparative_statics_scan,
    evaluate_design,
    pareto_front,
    sweep,
)
from .errors import HotLaneError, NoConvergence, ParseError, ValidationError
from .latency import BprParams, DesignParams, latency_hot, latency_ordinary
from .oracle import OracleConfig, oracle_equilibrium
from .population import PopulationParams

__all__ = [
    "RunConfig",
    "load_config",
    "parse_config_text",
    "dump_config",
    "i880_config",
    "cmd_equilibrium",
    "cmd_verify",
    "cmd_sweep",
    "cmd_pareto",
    "cmd_statics",
    "main",
]

SWEEP_COLUMNS = (
    "tau",
    "rho",
    "regime",
    "sigma_toll",
    "sigma_pool",
    "sigma_o",
    "c_delta",
    "latency_hot",
    "latency_ordinary",
    "avg_time",
    "revenue",
    "residual",
)
STATICS_COLUMNS = ("rho", "regime", "sigma_toll", "sigma_pool", "sigma_o", "c_delta")


@dataclass(frozen=True)
class RunConfig:
    """Fully validated run configuration."""

    population: PopulationParams
    bpr: BprParams
    occupancy: float
    rho_values: tuple[float, ...]
    tau_min: float
    tau_max: float
    tau_step: float
    oracle: OracleConfig

    def __post_init__(self):
        if not self.occupancy >= 2:
            raise ValidationError(f"occupancy must be >= 2, got {self.occupancy}")
        if not self.rho_values:
            raise ValidationError("rho_values must be non-empty")
        for rho in self.rho_values:
            if not 0 < rho < 1:
                raise ValidationError(f"every rho must lie in the open interval (0, 1), got {rho}")
        if not self.tau_min > 0:
            raise ValidationError(f"tau_min must be > 0, got {self.tau_min}")
        if not self.tau_step > 0:
            raise ValidationError(f"tau_step must be > 0, got {self.tau_step}")
        if not self.tau_min <= self.tau_max:
            raise ValidationError(f"tau_min must be <= tau_max, got {self.tau_min} > {self.tau_max}")

    def tau_values(self) -> list[float]:
        count = int((self.tau_max - self.tau_min) / self.tau_step + 1e-9) + 1
        return [self.tau_min + i * self.tau_step for i in range(count)]

    def design_grid(self) -> list[DesignParams]:
        """Grid ordered rho outer ascending, tau inner ascending."""
        return [
            DesignParams(rho=rho, tau=tau, occupancy=self.occupancy)
            for rho in sorted(self.rho_values)
            for tau in self.tau_values()
        ]


def i880_config() -> RunConfig:
    """Built-in calibration for the I-880 study segment."""
    return RunConfig(
        population=PopulationParams(demand=115.0, beta_max=1.5, gamma_max=8.0),
        bpr=BprParams(a=0.15, b=4.0, t_free=22.0, v_cap=140.0),
        occupancy=2.5,
        rho_values=(0.25, 0.5, 0.75),
        tau_min=0.5,
        tau_max=10.0,
        tau_step=0.5,
        oracle=OracleConfig(),
    )


_FLOAT_KEYS = {
    "population.demand",
    "population.beta_max",
    "population.gamma_max",
    "bpr.a",
    "bpr.b",
    "bpr.t_free",
    "bpr.v_cap",
    "occupancy",
    "tau_min",
    "tau_max",
    "tau_step",
    "oracle.damping",
    "oracle.tol",
}
_INT_KEYS = {"oracle.grid_n", "oracle.max_iters"}
_LIST_KEYS = {"rho_values"}
_OPTIONAL_KEYS = {"oracle.grid_n", "oracle.damping", "oracle.tol", "oracle.max_iters"}
_ALL_KEYS = _FLOAT_KEYS | _INT_KEYS | _LIST_KEYS


def parse_config_text(text: str) -> RunConfig:
    """Parse and validate configuration text in the key=value format."""
    raw: dict[str, object] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ParseError(f"line {lineno}: expected 'key = value', got {line.strip()!r}")
        key, _, value = stripped.partition("=")
        key, value = key.strip(), value.strip()
        if key not in _ALL_KEYS:
            raise ParseError(f"line {lineno}: unknown key {key!r}")
        if key in raw:
            raise ParseError(f"line {lineno}: duplicate key {key!r}")
        try:
            if key in _LIST_KEYS:
                raw[key] = tuple(float(item) for item in value.split(","))
            elif key in _INT_KEYS:
                raw[key] = int(value)
            else:
                raw[key] = float(value)
        except ValueError as exc:
            raise ParseError(f"line {lineno}: bad value for {key!r}: {exc}") from None

    missing = sorted((_ALL_KEYS - _OPTIONAL_KEYS) - raw.keys())
    if missing:
        raise ValidationError(f"missing required config keys: {', '.join(missing)}")

    oracle_kwargs = {
        field: raw[f"oracle.{field}"]
        for field in ("grid_n", "damping", "tol", "max_iters")
        if f"oracle.{field}" in raw
    }
    return RunConfig(
        population=PopulationParams(
            demand=raw["population.demand"],
            beta_max=raw["population.beta_max"],
            gamma_max=raw["population.gamma_max"],
        ),
        bpr=BprParams(a=raw["bpr.a"], b=raw["bpr.b"], t_free=raw["bpr.t_free"], v_cap=raw["bpr.v_cap"]),
        occupancy=raw["occupancy"],
        rho_values=raw["rho_values"],
        tau_min=raw["tau_min"],
        tau_max=raw["tau_max"],
        tau_step=raw["tau_step"],
        oracle=OracleConfig(**oracle_kwargs),
    )


def load_config(path: str | Path) -> RunConfig:
    """Read and validate a configuration file."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read config {path}: {exc}") from None
    return parse_config_text(text)


def dump_config(config: RunConfig) -> str:
    """Serialize a config so that parsing the output reproduces it exactly."""
    lines = [
        f"population.demand = {config.population.demand!r}",
        f"population.beta_max = {config.population.beta_max!r}",
        f"population.gamma_max = {config.population.gamma_max!r}",
        f"bpr.a = {config.bpr.a!r}",
        f"bpr.b = {config.bpr.b!r}",
        f"bpr.t_free = {config.bpr.t_free!r}",
        f"bpr.v_cap = {config.bpr.v_cap!r}",
        f"occupancy = {config.occupancy!r}",
        "rho_values = " + ", ".join(repr(rho) for rho in config.rho_values),
        f"tau_min = {config.tau_min!r}",
        f"tau_max = {config.tau_max!r}",
        f"tau_step = {config.tau_step!r}",
        f"oracle.grid_n = {config.oracle.grid_n!r}",
        f"oracle.damping = {config.oracle.damping!r}",
        f"oracle.tol = {config.oracle.tol!r}",
        f"oracle.max_iters = {config.oracle.max_iters!r}",
    ]
    return "\n".join(lines) + "\n"


def _fmt(value: float) -> str:
    return format(value, ".12g")


def cmd_equilibrium(config: RunConfig, tau: float, rho: float, json_output: bool = False) -> int:
    """Solve one design point and print its equilibrium report."""
    design = DesignParams(rho=rho, tau=tau, occupancy=config.occupancy)
    result = evaluate_design(design, config.population, config.bpr)
    outcome = result.outcome
    flow_ordinary, flow_hot = outcome.flows
    report = {
        "tau": tau,
        "rho": rho,
        "regime": outcome.regime.value,
        "sigma_toll": outcome.shares.toll,
        "sigma_pool": outcome.shares.pool,
        "sigma_o": outcome.shares.ordinary,
        "c_delta": outcome.gap,
        "latency_hot": latency_hot(flow_hot, design.rho, config.bpr),
        "latency_ordinary": latency_ordinary(flow_ordinary, design.rho, config.bpr),
        "avg_time": result.avg_time,
        "revenue": result.revenue,
        "residual": outcome.residual,
        "iterations": outcome.iterations,
    }
    if json_output:
        print(json.dumps(report, sort_keys=True))
        return 0
    print(f"regime: {report['regime']}")
    print(f"toll share: {_fmt(report['sigma_toll'])}")
    print(f"pool share: {_fmt(report['sigma_pool'])}")
    print(f"ordinary share: {_fmt(report['sigma_o'])}")
    print(f"c_delta (min): {_fmt(report['c_delta'])}")
    print(f"latency_hot (min): {_fmt(report['latency_hot'])}")
    print(f"latency_ordinary (min): {_fmt(report['latency_ordinary'])}")
    print(f"avg_time (min): {_fmt(report['avg_time'])}")
    print(f"revenue ($/min): {_fmt(report['revenue'])}")
    print(f"residual: {_fmt(report['residual'])}")
    print(f"iterations: {report['iterations']}")
    return 0


def cmd_verify(config: RunConfig, tau: float, rho: float, grid_n: int | None = None) -> int:
    """Compare the analytic equilibrium against the brute-force oracle."""
    design = DesignParams(rho=rho, tau=tau, occupancy=config.occupancy)
    oracle_cfg = config.oracle if grid_n is None else dataclasses.replace(config.oracle, grid_n=grid_n)
    solve_shares = evaluate_design(design, config.population, config.bpr).outcome.shares
    try:
        oracle_shares, iterations = oracle_equilibrium(design, config.population, config.bpr, oracle_cfg)
    except NoConvergence as exc:
        print(f"oracle failed to converge: {exc}", file=sys.stderr)
        return 2
    distance = max(
        abs(solve_shares.toll - oracle_shares.toll),
        abs(solve_shares.pool - oracle_shares.pool),
        abs(solve_shares.ordinary - oracle_shares.ordinary),
    )
    tolerance = max(5e-3, 4.0 / oracle_cfg.grid_n)
    print(
        "solver: "
        f"({_fmt(solve_shares.toll)}, {_fmt(solve_shares.pool)}, {_fmt(solve_shares.ordinary)})"
    )
    print(
        "oracle: "
        f"({_fmt(oracle_shares.toll)}, {_fmt(oracle_shares.pool)}, {_fmt(oracle_shares.ordinary)})"
        f"  [grid_n={oracle_cfg.grid_n}, iterations={iterations}]"
    )
    print(f"max-norm distance: {_fmt(distance)} (tolerance {_fmt(tolerance)})")
    if distance <= tolerance:
        return 0
    print("distance exceeds tolerance", file=sys.stderr)
    return 1


def _result_cells(result: DesignPointResult, config: RunConfig) -> list[str]:
    outcome = result.outcome
    design = result.design
    flow_ordinary, flow_hot = outcome.flows
    return [
        _fmt(design.tau),
        _fmt(design.rho),
        outcome.regime.value,
        _fmt(outcome.shares.toll),
        _fmt(outcome.shares.pool),
        _fmt(outcome.shares.ordinary),
        _fmt(outcome.gap),
        _fmt(latency_hot(flow_hot, design.rho, config.bpr)),
        _fmt(latency_ordinary(flow_ordinary, design.rho, config.bpr)),
        _fmt(result.avg_time),
        _fmt(result.revenue),
        _fmt(outcome.residual),
    ]


def _sweep_rows(config: RunConfig) -> tuple[list[str], int]:
    """CSV data rows for the config's design grid, plus the failure count."""
    entries = sweep(config.design_grid(), config.population, config.bpr)
    rows: list[str] = []
    failures = 0
    for entry in entries:
        if isinstance(entry, FailedDesignPoint):
            failures += 1
            cells = [_fmt(entry.design.tau), _fmt(entry.design.rho), "ERROR"] + [""] * 9
        else:
            cells = _result_cells(entry, config)
        rows.append(",".join(cells))
    return rows, failures


def cmd_sweep(config: RunConfig, out_path: str | Path) -> int:
    """Evaluate the whole design grid and write one CSV row per point."""
    rows, failures = _sweep_rows(config)
    lines = [",".join(SWEEP_COLUMNS)] + rows
    Path(out_path).write_text("\n".join(lines) + "\n")
    return 0 if failures == 0 else 1


def cmd_pareto(config: RunConfig, out_path: str | Path, per_rho: bool = False) -> int:
    """Write the Pareto front of the sweep; optionally one front per rho."""
    entries = sweep(config.design_grid(), config.population, config.bpr)
    solved = [entry for entry in entries if isinstance(entry, DesignPointResult)]
    failures = len(entries) - len(solved)
    lines = [",".join(SWEEP_COLUMNS) + ",front_id"]
    for point in pareto_front(solved).points:
        lines.append(",".join(_result_cells(point, config) + ["global"]))
    if per_rho:
        for rho in sorted(set(config.rho_values)):
            subset = [point for point in solved if point.design.rho == rho]
            if not subset:
                continue
            front_id = f"rho={_fmt(rho)}"
            for point in pareto_front(subset).points:
                lines.append(",".join(_result_cells(point, config) + [front_id]))
    Path(out_path).write_text("\n".join(lines) + "\n")
    return 0 if failures == 0 else 1


def cmd_statics(config: RunConfig, tau: float, out_path: str | Path) -> int:
    """Scan the config's rho grid at a fixed toll and report directions."""
    table = comparative_statics_scan(
        tau, list(config.rho_values), config.occupancy, config.population, config.bpr
    )
    lines = [",".join(STATICS_COLUMNS)]
    failures = 0
    for row in table.rows:
        if row.outcome is None:
            failures += 1
            lines.append(",".join([_fmt(row.rho), "ERROR", "", "", "", ""]))
        else:
            outcome = row.outcome
            lines.append(
                ",".join(
                    [
                        _fmt(row.rho),
                        outcome.regime.value,
                        _fmt(outcome.shares.toll),
                        _fmt(outcome.shares.pool),
                        _fmt(outcome.shares.ordinary),
                        _fmt(outcome.gap),
                    ]
                )
            )
    for column in ("sigma_toll", "sigma_pool", "sigma_o", "c_delta"):
        lines.append(f"# monotonicity,{column},{table.flags[column]}")
    Path(out_path).write_text("\n".join(lines) + "\n")
    return 0 if failures == 0 else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hotlane",
        description="Equilibrium solver and design explorer for high-occupancy toll lanes.",
    )
    source = parser.add_mutually_exclusive_group()
    source.add_argument("--config", metavar="PATH", help="configuration file (key = value format)")
    source.add_argument(
        "--i880-defaults", action="store_true", help="use the built-in I-880 calibration"
    )
    parser.add_argument(
        "--dump-config", action="store_true", help="print the effective configuration and exit"
    )
    commands = parser.add_subparsers(dest="command")

    equilibrium = commands.add_parser("equilibrium", help="solve one design point")
    equilibrium.add_argument("--tau", type=float, required=True, help="toll price in dollars")
    equilibrium.add_argument("--rho", type=float, required=True, help="HOT capacity fraction")
    equilibrium.add_argument("--json", action="store_true", help="emit one JSON object")

    verify = commands.add_parser("verify", help="cross-check the solver against the oracle")
    verify.add_argument("--tau", type=float, required=True)
    verify.add_argument("--rho", type=float, required=True)
    verify.add_argument("--grid-n", type=int, default=None, help="oracle agents per axis")

    sweep_cmd = commands.add_parser("sweep", help="evaluate the full design grid to CSV")
    sweep_cmd.add_argument("--out", required=True, metavar="PATH")

    pareto = commands.add_parser("pareto", help="write the Pareto front of the sweep")
    pareto.add_argument("--out", required=True, metavar="PATH")
    pareto.add_argument("--per-rho", action="store_true", help="also write one front per rho")

    statics = commands.add_parser("statics", help="scan rho at a fixed toll")
    statics.add_argument("--tau", type=float, required=True)
    statics.add_argument("--out", required=True, metavar="PATH")

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.i880_defaults:
            config = i880_config()
        elif args.config is not None:
            config = load_config(args.config)
        else:
            parser.error("one of --config or --i880-defaults is required")
        if args.dump_config:
            print(dump_config(config), end="")
            return 0
        if args.command is None:
            parser.error("a command is required (equilibrium, verify, sweep, pareto, statics)")
        if args.command == "equilibrium":
            return cmd_equilibrium(config, args.tau, args.rho, json_output=args.json)
        if args.command == "verify":
            return cmd_verify(config, args.tau, args.rho, grid_n=args.grid_n)
        if args.command == "sweep":
            return cmd_sweep(config, args.out)
        if args.command == "pareto":
            return cmd_pareto(config, args.out, per_rho=args.per_rho)
        return cmd_statics(config, args.tau, args.out)
    except HotLaneError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
