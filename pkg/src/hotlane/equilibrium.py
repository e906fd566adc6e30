"""Regime classification and fixed-point equilibrium solvers.

Every design point falls into one of two qualitative regimes, split by how
the toll compares with the carpool-disutility bound and with the weighted
latency gap at the probe profile ``(0, tau/(2*gamma_max), 1 - tau/(2*gamma_max))``:

* Regime A (high toll): nobody pays; HOT users all carpool. Subcase A1
  solves ``(beta_max/(2*gamma_max)) * gap = pool`` for the pool share;
  subcase A2 (which forces ``tau > gamma_max``) solves
  ``(gamma_max/(2*beta_max)) / gap = ordinary`` for the ordinary share.
* Regime B (low toll): a positive mass pays. The toll share solves
  ``(1 - tau/(beta_max*gap)) * (gamma_max-tau)/gamma_max = toll`` with the
  pool share tied to the toll share in closed form.

Each equation has a unique root because its residual changes sign exactly
once across the documented bracket: the associated auxiliary functions
(share/gap for A1, gap*(1-share) for A2, and the linearly damped gap for B)
are strictly monotone wherever the latency gap is positive, and beyond the
zero-gap point the residuals sit strictly on the far side of their targets.
Bisection is therefore guaranteed to converge; no derivatives are needed.

Boundary designs where the regime conditions hold with equality are
classified as Regime A: both inequalities in the published regime sets are
strict, either assignment yields the same limiting equilibrium, and Regime A
keeps the toll share at zero, which is the limit of the Regime-B solution
approaching the boundary. When ``tau >= 2*gamma_max`` the probe share would
leave the simplex, so the probe is clamped to ``(0, 1, 0)``; the clamped gap
is negative, which lands such designs in Regime A1 as expected for a toll
that high.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import BracketFailure, GapNonPositive, InfeasibleClosure, NoConvergence, ValidationError
from .latency import BprParams, DesignParams, StrategyShares, latency_gap, vehicle_flows
from .population import PopulationParams

__all__ = [
    "RegimeLabel",
    "EquilibriumOutcome",
    "probe_gap",
    "classify_regime",
    "solve",
    "solve_regime_a1",
    "solve_regime_a2",
    "solve_regime_b",
    "a1_auxiliary",
    "a2_auxiliary",
    "b_auxiliary",
    "b_companion_shares",
    "regime_bracket",
    "positive_gap_bracket",
    "SHARE_TOL",
    "RESIDUAL_TOL",
    "MAX_BISECT",
]

SHARE_TOL = 1e-12
RESIDUAL_TOL = 1e-10
MAX_BISECT = 200


class RegimeLabel(enum.Enum):
    A1 = "A1"
    A2 = "A2"
    B = "B"

    @property
    def is_regime_a(self) -> bool:
        return self in (RegimeLabel.A1, RegimeLabel.A2)


@dataclass(frozen=True)
class EquilibriumOutcome:
    """Solved equilibrium: shares plus diagnostics.

    ``gap`` is the ordinary-minus-HOT latency difference at the solved
    shares (minutes), ``flows`` the (ordinary, HOT) vehicle flows,
    ``residual`` the absolute fixed-point residual of the solved equation in
    its printed units, and ``iterations`` the bisection count.
    """

    shares: StrategyShares
    regime: RegimeLabel
    gap: float
    flows: tuple[float, float]
    residual: float
    iterations: int

    def __post_init__(self):
        if not self.shares.pool > 0:
            raise ValidationError(f"equilibrium pool share must be > 0, got {self.shares.pool}")
        if not self.shares.ordinary > 0:
            raise ValidationError(f"equilibrium ordinary share must be > 0, got {self.shares.ordinary}")
        if self.regime.is_regime_a and self.shares.toll != 0.0:
            raise ValidationError(f"regime {self.regime.value} requires a zero toll share, got {self.shares.toll}")
        if not self.regime.is_regime_a and not self.shares.toll > 0:
            raise ValidationError(f"regime B requires a positive toll share, got {self.shares.toll}")
        if not self.residual <= RESIDUAL_TOL:
            raise ValidationError(f"fixed-point residual {self.residual} exceeds {RESIDUAL_TOL}")


def _probe_share(design: DesignParams, pop: PopulationParams) -> float:
    return min(design.tau / (2.0 * pop.gamma_max), 1.0)


def probe_gap(design: DesignParams, pop: PopulationParams, bpr: BprParams) -> float:
    """Latency gap at the probe profile used by the regime boundary."""
    share = _probe_share(design, pop)
    sigma = StrategyShares(0.0, share, 1.0 - share)
    return latency_gap(sigma, design, pop.demand, bpr)


def classify_regime(design: DesignParams, pop: PopulationParams, bpr: BprParams) -> RegimeLabel:
    """Regime of the design point; boundary equalities resolve to Regime A."""
    weighted_gap = pop.beta_max * probe_gap(design, pop, bpr)
    if design.tau < min(pop.gamma_max, weighted_gap):
        return RegimeLabel.B
    if pop.gamma_max < weighted_gap:
        return RegimeLabel.A2
    return RegimeLabel.A1


# ---------------------------------------------------------------------------
# Auxiliary functions and brackets
# ---------------------------------------------------------------------------


def _gap_no_toll(pool_share: float, design: DesignParams, pop: PopulationParams, bpr: BprParams) -> float:
    sigma = StrategyShares(0.0, pool_share, 1.0 - pool_share)
    return latency_gap(sigma, design, pop.demand, bpr)


def a1_auxiliary(pool_share: float, design: DesignParams, pop: PopulationParams, bpr: BprParams) -> float:
    """Pool share divided by the no-toll latency gap.

    Strictly increasing wherever the gap is positive; returns +inf at and
    beyond the zero-gap share, matching its one-sided limit.
    """
    gap = _gap_no_toll(pool_share, design, pop, bpr)
    if gap <= 0.0:
        return math.inf
    return pool_share / gap


def a2_auxiliary(pool_share: float, design: DesignParams, pop: PopulationParams, bpr: BprParams) -> float:
    """No-toll latency gap times the ordinary share; strictly decreasing
    wherever the gap is positive."""
    return _gap_no_toll(pool_share, design, pop, bpr) * (1.0 - pool_share)


def b_companion_shares(toll_share: float, design: DesignParams, pop: PopulationParams) -> StrategyShares:
    """Full share vector implied by a candidate toll share in Regime B."""
    tau, gamma_max = design.tau, pop.gamma_max
    if not tau < gamma_max:
        raise InfeasibleClosure(f"Regime B requires tau < gamma_max, got tau={tau}, gamma_max={gamma_max}")
    pool = 0.5 * tau * (toll_share / (gamma_max - tau) + 1.0 / gamma_max)
    ordinary = 1.0 - toll_share - pool
    if -1e-12 <= ordinary < 0.0:
        ordinary = 0.0
    if not (0.0 <= toll_share <= 1.0 and 0.0 <= pool <= 1.0 and 0.0 <= ordinary <= 1.0):
        raise InfeasibleClosure(
            f"companion shares ({toll_share}, {pool}, {ordinary}) leave the simplex; "
            "the design point is outside Regime B"
        )
    return StrategyShares(toll_share, pool, ordinary)


def b_auxiliary(toll_share: float, design: DesignParams, pop: PopulationParams, bpr: BprParams) -> float:
    """Linearly damped latency gap along the Regime-B closure.

    Strictly decreasing wherever the gap is positive; its root against
    ``tau/beta_max`` is the equilibrium toll share.
    """
    sigma = b_companion_shares(toll_share, design, pop)
    linear = 1.0 - (pop.gamma_max / (pop.gamma_max - design.tau)) * toll_share
    return linear * latency_gap(sigma, design, pop.demand, bpr)


def regime_bracket(regime: RegimeLabel, design: DesignParams, pop: PopulationParams) -> tuple[float, float]:
    """Search interval for the regime's share variable."""
    probe = _probe_share(design, pop)
    if regime is RegimeLabel.A1:
        return 0.0, probe
    if regime is RegimeLabel.A2:
        return probe, 1.0
    return 0.0, (pop.gamma_max - design.tau) / pop.gamma_max


def positive_gap_bracket(
    regime: RegimeLabel, design: DesignParams, pop: PopulationParams, bpr: BprParams
) -> tuple[float, float]:
    """Portion of the regime bracket where the latency gap stays positive.

    The auxiliary functions are strictly monotone exactly here; past the
    zero-gap point they sit strictly on the far side of their targets, so
    the solvers never rely on their shape there.
    """
    lo, hi = regime_bracket(regime, design, pop)

    if regime is RegimeLabel.B:
        def gap_at(x: float) -> float:
            return latency_gap(b_companion_shares(x, design, pop), design, pop.demand, bpr)
    else:
        def gap_at(x: float) -> float:
            return _gap_no_toll(x, design, pop, bpr)

    if gap_at(hi) > 0.0:
        return lo, hi
    if gap_at(lo) <= 0.0:
        raise GapNonPositive(f"the latency gap is non-positive on the whole bracket ({lo}, {hi})")
    # The gap decreases along each parametrization; bisect its zero crossing.
    a, b = lo, hi
    for _ in range(MAX_BISECT):
        if b - a <= SHARE_TOL:
            break
        mid = 0.5 * (a + b)
        if gap_at(mid) > 0.0:
            a = mid
        else:
            b = mid
    return lo, a


# ---------------------------------------------------------------------------
# Bisection driver
# ---------------------------------------------------------------------------


def _bisect_decreasing(residual, lo: float, hi: float) -> tuple[float, int]:
    """Root of a residual that is positive at ``lo`` and negative at ``hi``
    and crosses zero exactly once."""
    iterations = 0
    while hi - lo > SHARE_TOL:
        if iterations >= MAX_BISECT:
            raise NoConvergence(
                f"bisection did not reach width {SHARE_TOL} within {MAX_BISECT} iterations",
                last_value=0.5 * (lo + hi),
                residual=hi - lo,
            )
        mid = 0.5 * (lo + hi)
        iterations += 1
        if residual(mid) >= 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi), iterations


def _finish(
    shares: StrategyShares,
    regime: RegimeLabel,
    residual: float,
    iterations: int,
    design: DesignParams,
    pop: PopulationParams,
    bpr: BprParams,
) -> EquilibriumOutcome:
    gap = latency_gap(shares, design, pop.demand, bpr)
    flows = vehicle_flows(shares, pop.demand, design.occupancy)
    residual = abs(residual)
    if residual > RESIDUAL_TOL:
        raise NoConvergence(
            f"fixed-point residual {residual} exceeds {RESIDUAL_TOL}", last_value=shares, residual=residual
        )
    return EquilibriumOutcome(shares, regime, gap, flows, residual, iterations)


def solve_regime_a1(
    design: DesignParams,
    pop: PopulationParams,
    bpr: BprParams,
    bracket: tuple[float, float] | None = None,
) -> EquilibriumOutcome:
    """Regime-A1 equilibrium: nobody pays, pool share from the triangle rule."""
    lo, hi = bracket if bracket is not None else regime_bracket(RegimeLabel.A1, design, pop)
    coef = 0.5 * pop.beta_max / pop.gamma_max

    def residual(share: float) -> float:
        return coef * _gap_no_toll(share, design, pop, bpr) - share

    if residual(lo) <= 0.0:
        if _gap_no_toll(lo, design, pop, bpr) <= 0.0:
            raise GapNonPositive(
                "the HOT lane is never faster at the bracket start; check the latency parameters"
            )
        raise BracketFailure(f"A1 residual is non-positive at the lower bracket {lo}")
    if residual(hi) > 0.0:
        raise BracketFailure(f"A1 residual is positive at the upper bracket {hi}")

    root, iterations = _bisect_decreasing(residual, lo, hi)
    shares = StrategyShares(0.0, root, 1.0 - root)
    return _finish(shares, RegimeLabel.A1, residual(root), iterations, design, pop, bpr)


def solve_regime_a2(
    design: DesignParams,
    pop: PopulationParams,
    bpr: BprParams,
    bracket: tuple[float, float] | None = None,
) -> EquilibriumOutcome:
    """Regime-A2 equilibrium: nobody pays, ordinary share from the inverse-gap rule."""
    lo, hi = bracket if bracket is not None else regime_bracket(RegimeLabel.A2, design, pop)
    if not lo < hi:
        raise BracketFailure(f"empty A2 bracket ({lo}, {hi}); the design point is outside Regime A2")
    target = 0.5 * pop.gamma_max / pop.beta_max

    def residual(share: float) -> float:
        return a2_auxiliary(share, design, pop, bpr) - target

    if residual(lo) < 0.0:
        raise BracketFailure(f"A2 auxiliary is below its target at the lower bracket {lo}")
    if residual(hi) > 0.0:
        raise BracketFailure(f"A2 auxiliary is above its target at the upper bracket {hi}")

    root, iterations = _bisect_decreasing(residual, lo, hi)
    shares = StrategyShares(0.0, root, 1.0 - root)
    # Residual of the printed equation, stated in the ordinary share.
    printed = target / _gap_no_toll(root, design, pop, bpr) - (1.0 - root)
    return _finish(shares, RegimeLabel.A2, printed, iterations, design, pop, bpr)


def solve_regime_b(
    design: DesignParams,
    pop: PopulationParams,
    bpr: BprParams,
    bracket: tuple[float, float] | None = None,
) -> EquilibriumOutcome:
    """Regime-B equilibrium: the toll share zeroes the damped-gap residual."""
    lo, hi = bracket if bracket is not None else regime_bracket(RegimeLabel.B, design, pop)
    target = design.tau / pop.beta_max

    def residual(toll_share: float) -> float:
        return b_auxiliary(toll_share, design, pop, bpr) - target

    if residual(lo) <= 0.0:
        raise BracketFailure(f"B auxiliary does not exceed its target at the lower bracket {lo}")
    if residual(hi) >= 0.0:
        raise BracketFailure(f"B auxiliary does not drop below its target at the upper bracket {hi}")

    root, iterations = _bisect_decreasing(residual, lo, hi)
    shares = b_companion_shares(root, design, pop)
    gap = latency_gap(shares, design, pop.demand, bpr)
    printed = (1.0 - design.tau / (pop.beta_max * gap)) * (pop.gamma_max - design.tau) / pop.gamma_max - root
    return _finish(shares, RegimeLabel.B, printed, iterations, design, pop, bpr)


_SOLVERS = {
    RegimeLabel.A1: solve_regime_a1,
    RegimeLabel.A2: solve_regime_a2,
    RegimeLabel.B: solve_regime_b,
}


def solve(design: DesignParams, pop: PopulationParams, bpr: BprParams) -> EquilibriumOutcome:
    """Classify the design point and solve its regime's fixed-point equation."""
    regime = classify_regime(design, pop, bpr)
    return _SOLVERS[regime](design, pop, bpr)
