"""Brute-force equilibrium oracle, independent of the closed-form solver.

A dense grid of agent types (cell midpoints of the type rectangle) is
labeled with the same best-response rule individual agents use, and a
damped fixed-point iteration drives the share vector to self-consistency.
Nothing here touches the closed-form region areas or the regime equations,
so agreement with :func:`hotlane.equilibrium.solve` is a genuine
cross-check of both.

Labeling the full ``grid_n x grid_n`` grid is done by counting: for a fixed
value-of-time column the pool condition ``beta*gap >= gamma and gamma <= tau``
selects exactly the gamma midpoints up to ``min(beta*gap, tau)``, and the
toll condition selects the midpoints strictly above ``tau`` whenever
``beta*gap >= tau`` (ties on ``gamma == tau`` belong to pool by the fixed
priority). Counts via ``searchsorted`` reproduce the per-agent comparisons
bit for bit while keeping the oracle fast enough to sweep a design grid.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NoConvergence, ValidationError
from .latency import BprParams, DesignParams, StrategyShares, latency_hot, latency_ordinary
from .population import PopulationParams

__all__ = ["OracleConfig", "empirical_shares", "oracle_equilibrium"]


@dataclass(frozen=True)
class OracleConfig:
    """Grid resolution and damped-iteration controls."""

    grid_n: int = 2000
    damping: float = 0.2
    tol: float = 1e-9
    max_iters: int = 10000

    def __post_init__(self):
        if not self.grid_n >= 10:
            raise ValidationError(f"grid_n must be >= 10, got {self.grid_n}")
        if not 0.0 < self.damping <= 1.0:
            raise ValidationError(f"damping must lie in (0, 1], got {self.damping}")
        if not self.tol > 0:
            raise ValidationError(f"tol must be > 0, got {self.tol}")
        if not self.max_iters >= 1:
            raise ValidationError(f"max_iters must be >= 1, got {self.max_iters}")


def _midpoints(upper: float, n: int) -> np.ndarray:
    return (np.arange(n) + 0.5) * (upper / n)


def _gap_raw(
    toll: float, pool: float, ordinary: float, design: DesignParams, pop: PopulationParams, bpr: BprParams
) -> float:
    flow_ordinary = ordinary * pop.demand
    flow_hot = (toll + pool / design.occupancy) * pop.demand
    return latency_ordinary(flow_ordinary, design.rho, bpr) - latency_hot(flow_hot, design.rho, bpr)


def _label_counts(
    gap: float, tau: float, beta_mid: np.ndarray, gamma_mid: np.ndarray
) -> tuple[int, int]:
    """(toll, pool) agent counts over the midpoint grid at the given gap."""
    n = beta_mid.size
    weighted = beta_mid * gap
    # Pool: gamma midpoints up to min(beta*gap, tau), per column.
    pool = int(np.searchsorted(gamma_mid, np.minimum(weighted, tau), side="right").sum())
    # Toll: columns with beta*gap >= tau take every gamma midpoint strictly
    # above tau (gamma == tau ties go to pool).
    above_tau = n - int(np.searchsorted(gamma_mid, tau, side="right"))
    toll = above_tau * int(np.count_nonzero(weighted >= tau))
    return toll, pool


def empirical_shares(
    sigma: StrategyShares,
    design: DesignParams,
    pop: PopulationParams,
    bpr: BprParams,
    cfg: OracleConfig,
) -> StrategyShares:
    """Best-response label fractions of the midpoint agent grid against ``sigma``."""
    beta_mid = _midpoints(pop.beta_max, cfg.grid_n)
    gamma_mid = _midpoints(pop.gamma_max, cfg.grid_n)
    gap = _gap_raw(sigma.toll, sigma.pool, sigma.ordinary, design, pop, bpr)
    toll, pool = _label_counts(gap, design.tau, beta_mid, gamma_mid)
    total = cfg.grid_n * cfg.grid_n
    return StrategyShares(toll / total, pool / total, (total - toll - pool) / total)


# Iterations without a new grid labeling before the run is declared a limit
# cycle; generously above the short periods such cycles exhibit.
_CYCLE_WINDOW = 50


def oracle_equilibrium(
    design: DesignParams,
    pop: PopulationParams,
    bpr: BprParams,
    cfg: OracleConfig = OracleConfig(),
) -> tuple[StrategyShares, int]:
    """Fixed point of the damped best-response iteration, plus its step count.

    Starting from the barycenter, each step blends the current share vector
    with the grid's best-response fractions using the damping weight. When
    the step size drops to ``tol`` the grid labeling has frozen on a
    self-consistent state, which is returned as the fixed point.

    The grid quantizes shares to multiples of ``1/grid_n**2``, so a design
    point whose exact equilibrium straddles a labeling boundary has no
    self-consistent grid state; the iteration then settles into a small
    limit cycle instead of freezing. That is detected when no new labeling
    appears for a stretch of iterations, and the visited labeling closest to
    self-consistency is returned, provided it sits within the discretization
    floor ``2/grid_n``. Either way the result satisfies
    ``shares == empirical_shares(shares)`` within ``tol + 2/grid_n``.
    """
    beta_mid = _midpoints(pop.beta_max, cfg.grid_n)
    gamma_mid = _midpoints(pop.gamma_max, cfg.grid_n)
    total = cfg.grid_n * cfg.grid_n

    def labeling(toll: float, pool: float, ordinary: float) -> tuple[int, int]:
        gap = _gap_raw(toll, pool, ordinary, design, pop, bpr)
        return _label_counts(gap, design.tau, beta_mid, gamma_mid)

    def as_shares(state: tuple[int, int]) -> StrategyShares:
        toll, pool = state
        return StrategyShares(toll / total, pool / total, (total - toll - pool) / total)

    def self_residual(state: tuple[int, int]) -> int:
        """Max count change when the state is labeled against itself."""
        toll, pool = state
        re_toll, re_pool = labeling(toll / total, pool / total, (total - toll - pool) / total)
        d_toll, d_pool = re_toll - toll, re_pool - pool
        return max(abs(d_toll), abs(d_pool), abs(d_toll + d_pool))

    residuals: dict[tuple[int, int], int] = {}
    best_state: tuple[int, int] | None = None
    last_new_state = 0

    toll, pool, ordinary = 1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0
    lam = cfg.damping
    step = 1.0
    for iteration in range(1, cfg.max_iters + 1):
        state = labeling(toll, pool, ordinary)
        if state not in residuals:
            residuals[state] = self_residual(state)
            last_new_state = iteration
            if best_state is None or residuals[state] < residuals[best_state]:
                best_state = state
        bt, bp = state[0] / total, state[1] / total
        bo = (total - state[0] - state[1]) / total
        new_toll = (1.0 - lam) * toll + lam * bt
        new_pool = (1.0 - lam) * pool + lam * bp
        new_ordinary = (1.0 - lam) * ordinary + lam * bo
        step = max(abs(new_toll - toll), abs(new_pool - pool), abs(new_ordinary - ordinary))
        toll, pool, ordinary = new_toll, new_pool, new_ordinary
        if step <= cfg.tol:
            return as_shares(state), iteration
        if (
            iteration - last_new_state >= _CYCLE_WINDOW
            and residuals[best_state] <= 2 * cfg.grid_n  # 2/grid_n in count units
        ):
            return as_shares(best_state), iteration
    raise NoConvergence(
        f"oracle iteration did not contract to {cfg.tol} within {cfg.max_iters} steps",
        last_value=StrategyShares(toll, pool, ordinary),
        residual=step,
    )
