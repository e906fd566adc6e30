"""Lane latency model and core parameter types.

A single highway segment is split into an ordinary lane group and a
high-occupancy toll (HOT) lane group. A capacity fraction ``rho`` of the
total capacity goes to the HOT lanes and ``1 - rho`` to the ordinary lanes.
Each lane group follows a volume-delay curve of the form

    latency(flow) = t_free * (1 + (a * flow / capacity) ** b)

Units are minutes for times, vehicles/minute for flows and capacities, and
dollars for money. Note that the curvature coefficient ``a`` multiplies the
flow/capacity ratio *inside* the power. The more common BPR convention is
``t_free * (1 + a * (flow / capacity) ** b)``; if your coefficients come
from a source using that convention, rescale ``a`` accordingly
(``a_inside = a_outside ** (1/b)``).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ValidationError

__all__ = [
    "BprParams",
    "DesignParams",
    "StrategyShares",
    "vehicle_flows",
    "latency_ordinary",
    "latency_hot",
    "latency_gap",
]

SIMPLEX_TOL = 1e-12


@dataclass(frozen=True)
class BprParams:
    """Volume-delay curve constants.

    Parameters
    ----------
    a : float
        Dimensionless curvature coefficient, > 0 (applied inside the power).
    b : float
        Dimensionless congestion exponent, >= 1.
    t_free : float
        Free-flow travel time of the segment in minutes, > 0.
    v_cap : float
        Total capacity of the segment in vehicles/minute, > 0.
    """

    a: float
    b: float
    t_free: float
    v_cap: float

    def __post_init__(self):
        if not self.a > 0:
            raise ValidationError(f"BPR coefficient a must be > 0, got {self.a}")
        if not self.b >= 1:
            raise ValidationError(f"BPR exponent b must be >= 1, got {self.b}")
        if not self.t_free > 0:
            raise ValidationError(f"free-flow time t_free must be > 0, got {self.t_free}")
        if not self.v_cap > 0:
            raise ValidationError(f"capacity v_cap must be > 0, got {self.v_cap}")


@dataclass(frozen=True)
class DesignParams:
    """The authority's levers: capacity split, toll price, occupancy rule.

    ``rho`` is the HOT capacity fraction and must lie strictly inside (0, 1);
    either extreme would leave one lane group with zero capacity. ``tau`` is
    the toll in dollars, > 0. ``occupancy`` is the carpool size required for
    free HOT access, >= 2 (fractional values such as 2.5 model mixed
    requirements along the segment).
    """

    rho: float
    tau: float
    occupancy: float

    def __post_init__(self):
        if not 0 < self.rho < 1:
            raise ValidationError(
                f"capacity fraction rho must lie in the open interval (0, 1), got {self.rho}"
            )
        if not self.tau > 0:
            raise ValidationError(f"toll tau must be > 0, got {self.tau}")
        if not self.occupancy >= 2:
            raise ValidationError(f"occupancy must be >= 2, got {self.occupancy}")


@dataclass(frozen=True)
class StrategyShares:
    """Population fractions choosing each action; a point on the 2-simplex."""

    toll: float
    pool: float
    ordinary: float

    def __post_init__(self):
        for name, value in (("toll", self.toll), ("pool", self.pool), ("ordinary", self.ordinary)):
            if not 0.0 <= value <= 1.0:
                raise ValidationError(f"share '{name}' must lie in [0, 1], got {value}")
        total = self.toll + self.pool + self.ordinary
        if abs(total - 1.0) > SIMPLEX_TOL:
            raise ValidationError(f"shares must sum to 1 within {SIMPLEX_TOL}, got {total!r}")

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.toll, self.pool, self.ordinary)


def vehicle_flows(sigma: StrategyShares, demand: float, occupancy: float) -> tuple[float, float]:
    """Aggregate vehicle flows (ordinary, HOT) induced by the shares.

    Carpools of size ``occupancy`` fold that many travelers into one vehicle,
    so the HOT flow is ``(toll + pool/occupancy) * demand``.
    """
    if not demand > 0:
        raise ValidationError(f"demand must be > 0, got {demand}")
    flow_ordinary = sigma.ordinary * demand
    flow_hot = (sigma.toll + sigma.pool / occupancy) * demand
    return flow_ordinary, flow_hot


def _bpr(flow: float, capacity: float, bpr: BprParams) -> float:
    return bpr.t_free * (1.0 + (bpr.a * flow / capacity) ** bpr.b)


def latency_ordinary(flow, rho: float, bpr: BprParams):
    """Ordinary-lane travel time in minutes at the given vehicle flow.

    The ordinary lanes hold the ``1 - rho`` capacity share, so their latency
    grows as ``rho`` grows. Accepts scalar or numpy-array ``flow``.
    """
    if not 0 < rho < 1:
        raise ValidationError(f"capacity fraction rho must lie in (0, 1), got {rho}")
    _check_flow(flow)
    return _bpr(flow, bpr.v_cap * (1.0 - rho), bpr)


def latency_hot(flow, rho: float, bpr: BprParams):
    """HOT-lane travel time in minutes at the given vehicle flow.

    Mirrors :func:`latency_ordinary` with capacity ``v_cap * rho``.
    """
    if not 0 < rho < 1:
        raise ValidationError(f"capacity fraction rho must lie in (0, 1), got {rho}")
    _check_flow(flow)
    return _bpr(flow, bpr.v_cap * rho, bpr)


def _check_flow(flow) -> None:
    # Works for scalars and numpy arrays alike.
    if np.any(np.asarray(flow) < 0):
        raise ValidationError(f"flow must be >= 0, got {flow}")


def latency_gap(sigma: StrategyShares, design: DesignParams, demand: float, bpr: BprParams) -> float:
    """Ordinary-lane latency minus HOT-lane latency at the given profile.

    Positive when the HOT lane is faster. Decreasing in the pool share when
    the toll share is held fixed and the remainder rides the ordinary lane.
    """
    flow_ordinary, flow_hot = vehicle_flows(sigma, demand, design.occupancy)
    return latency_ordinary(flow_ordinary, design.rho, bpr) - latency_hot(flow_hot, design.rho, bpr)
