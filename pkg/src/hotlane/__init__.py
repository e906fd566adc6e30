"""Equilibrium analysis and design of high-occupancy toll (HOT) lanes.

A highway segment splits its capacity between ordinary lanes and HOT lanes;
travelers with heterogeneous values of time and carpool disutilities choose
between paying the toll, carpooling, or riding the ordinary lanes. The
package computes the unique population equilibrium for any capacity split
and toll price, validates it against a brute-force agent-grid oracle, and
sweeps design grids to trade average travel time against toll revenue.

Main entry points:

* :func:`hotlane.equilibrium.solve` - classify a design point and solve its
  fixed-point equation.
* :func:`hotlane.oracle.oracle_equilibrium` - independent brute-force check.
* :func:`hotlane.design.sweep` / :func:`hotlane.design.pareto_front` -
  design-grid evaluation and Pareto extraction.
* ``hotlane`` console script - equilibrium / verify / sweep / pareto /
  statics commands over a config file or the built-in I-880 calibration.
"""

from .errors import (
    BracketFailure,
    EmptyInput,
    GapNonPositive,
    HotLaneError,
    InfeasibleClosure,
    NoConvergence,
    ParseError,
    ValidationError,
)
from .latency import (
    BprParams,
    DesignParams,
    StrategyShares,
    latency_gap,
    latency_hot,
    latency_ordinary,
    vehicle_flows,
)
from .population import (
    ActionLabel,
    AgentType,
    PopulationParams,
    action_cost,
    best_response,
    best_response_at_gap,
    region_measures,
    region_measures_at_gap,
)
from .equilibrium import (
    EquilibriumOutcome,
    RegimeLabel,
    classify_regime,
    probe_gap,
    solve,
    solve_regime_a1,
    solve_regime_a2,
    solve_regime_b,
)
from .oracle import OracleConfig, empirical_shares, oracle_equilibrium
from .design import (
    DesignPointResult,
    FailedDesignPoint,
    ParetoFront,
    comparative_statics_scan,
    evaluate_design,
    pareto_front,
    sweep,
)
from .cli import RunConfig, dump_config, i880_config, load_config

__version__ = "0.1.0"

__all__ = [
    "ActionLabel",
    "AgentType",
    "BprParams",
    "BracketFailure",
    "DesignParams",
    "DesignPointResult",
    "EmptyInput",
    "EquilibriumOutcome",
    "FailedDesignPoint",
    "GapNonPositive",
    "HotLaneError",
    "InfeasibleClosure",
    "NoConvergence",
    "OracleConfig",
    "ParetoFront",
    "ParseError",
    "PopulationParams",
    "RegimeLabel",
    "RunConfig",
    "StrategyShares",
    "ValidationError",
    "action_cost",
    "best_response",
    "best_response_at_gap",
    "classify_regime",
    "comparative_statics_scan",
    "dump_config",
    "empirical_shares",
    "evaluate_design",
    "i880_config",
    "latency_gap",
    "latency_hot",
    "latency_ordinary",
    "load_config",
    "oracle_equilibrium",
    "pareto_front",
    "probe_gap",
    "region_measures",
    "region_measures_at_gap",
    "solve",
    "solve_regime_a1",
    "solve_regime_a2",
    "solve_regime_b",
    "sweep",
    "vehicle_flows",
]
