"""Traveler population: types, action costs, and the best-response partition.

Travelers are nonatomic agents with a value of time ``beta`` (dollars/minute)
and a carpool disutility ``gamma`` (dollars), jointly uniform on the
rectangle [0, beta_max] x [0, gamma_max]. Against a share profile with
latency gap ``g`` (ordinary minus HOT latency) and toll ``tau``, the plane
splits into three best-response regions:

* toll:     beta * g >= tau  and  gamma >= tau
* pool:     beta * g >= gamma  and  gamma <= tau
* ordinary: beta * g <= min(tau, gamma)

Region measures are returned as population fractions (the uniform density
1/(beta_max*gamma_max) integrates to 1); total demand enters the model only
through vehicle flows. Boundary ties have zero measure and are broken by the
fixed priority pool > toll > ordinary so that agent-level labeling is
deterministic and reproducible.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import ValidationError
from .latency import BprParams, DesignParams, StrategyShares, latency_gap, vehicle_flows, latency_hot, latency_ordinary

__all__ = [
    "PopulationParams",
    "AgentType",
    "ActionLabel",
    "action_cost",
    "best_response",
    "best_response_at_gap",
    "region_measures",
    "region_measures_at_gap",
]


@dataclass(frozen=True)
class PopulationParams:
    """Total demand and the bounds of the uniform type rectangle.

    ``demand`` is in vehicles/minute equivalents (every traveler counts as
    one vehicle unless folded into a carpool), ``beta_max`` in
    dollars/minute, ``gamma_max`` in dollars. All strictly positive.
    """

    demand: float
    beta_max: float
    gamma_max: float

    def __post_init__(self):
        if not self.demand > 0:
            raise ValidationError(f"demand must be > 0, got {self.demand}")
        if not self.beta_max > 0:
            raise ValidationError(f"beta_max must be > 0, got {self.beta_max}")
        if not self.gamma_max > 0:
            raise ValidationError(f"gamma_max must be > 0, got {self.gamma_max}")


@dataclass(frozen=True)
class AgentType:
    """One traveler type: value of time and carpool disutility, both >= 0."""

    beta: float
    gamma: float

    def __post_init__(self):
        if self.beta < 0 or self.gamma < 0:
            raise ValidationError(f"agent type must be non-negative, got ({self.beta}, {self.gamma})")


class ActionLabel(enum.Enum):
    TOLL = "toll"
    POOL = "pool"
    ORDINARY = "ordinary"


def action_cost(
    agent: AgentType,
    action: ActionLabel,
    sigma: StrategyShares,
    design: DesignParams,
    pop: PopulationParams,
    bpr: BprParams,
) -> float:
    """Dollar cost the agent incurs by playing ``action`` against ``sigma``.

    Time is priced at the agent's value of time; paying the toll adds
    ``tau`` and carpooling adds the agent's ``gamma``.
    """
    flow_ordinary, flow_hot = vehicle_flows(sigma, pop.demand, design.occupancy)
    if action is ActionLabel.ORDINARY:
        return agent.beta * latency_ordinary(flow_ordinary, design.rho, bpr)
    hot_time = latency_hot(flow_hot, design.rho, bpr)
    if action is ActionLabel.TOLL:
        return agent.beta * hot_time + design.tau
    return agent.beta * hot_time + agent.gamma


def best_response_at_gap(beta: float, gamma: float, gap: float, tau: float) -> ActionLabel:
    """Best-response label for an agent given the latency gap directly.

    Encodes the region inequalities with the pool > toll > ordinary
    tie-break. The same rule, applied pointwise, drives the brute-force
    oracle.
    """
    weighted = beta * gap
    if weighted >= gamma and gamma <= tau:
        return ActionLabel.POOL
    if weighted >= tau and gamma >= tau:
        return ActionLabel.TOLL
    return ActionLabel.ORDINARY


def best_response(
    agent: AgentType,
    sigma: StrategyShares,
    design: DesignParams,
    pop: PopulationParams,
    bpr: BprParams,
) -> ActionLabel:
    """Cost-minimizing action for the agent against the profile ``sigma``."""
    gap = latency_gap(sigma, design, pop.demand, bpr)
    return best_response_at_gap(agent.beta, agent.gamma, gap, design.tau)


def region_measures_at_gap(gap: float, tau: float, pop: PopulationParams) -> StrategyShares:
    """Population fractions of the three best-response regions, closed form.

    With gap ``g > 0`` the pool region is bounded above by the line
    ``gamma = beta * g`` capped at ``t = min(tau, gamma_max)``: a pure
    triangle while ``beta_max * g <= t``, a triangle plus rectangle beyond.
    The toll region is the rectangle above ``gamma = tau`` and right of
    ``beta = tau / g``. A non-positive gap sends everyone to the ordinary
    lane.
    """
    beta_max, gamma_max = pop.beta_max, pop.gamma_max
    if gap <= 0.0:
        return StrategyShares(0.0, 0.0, 1.0)

    cap = min(tau, gamma_max)
    peak = beta_max * gap
    if peak <= cap:
        pool_area = 0.5 * beta_max * peak
    else:
        beta_cross = cap / gap
        pool_area = 0.5 * cap * beta_cross + cap * (beta_max - beta_cross)
    pool = pool_area / (beta_max * gamma_max)

    beta_cut = tau / gap
    toll = max(0.0, beta_max - beta_cut) * max(0.0, gamma_max - tau) / (beta_max * gamma_max)

    ordinary = max(0.0, 1.0 - pool - toll)
    return StrategyShares(toll, pool, ordinary)


def region_measures(
    sigma: StrategyShares,
    design: DesignParams,
    pop: PopulationParams,
    bpr: BprParams,
) -> StrategyShares:
    """Fractions of the population best-responding with each action."""
    gap = latency_gap(sigma, design, pop.demand, bpr)
    return region_measures_at_gap(gap, design.tau, pop)
