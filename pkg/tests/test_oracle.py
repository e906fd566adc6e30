"""Brute-force oracle: exact labeling semantics and fixed-point behavior."""

import numpy as np
import pytest

from hotlane import (
    AgentType,
    DesignParams,
    NoConvergence,
    OracleConfig,
    RegimeLabel,
    StrategyShares,
    ValidationError,
    best_response,
    classify_regime,
    empirical_shares,
    oracle_equilibrium,
    solve,
)
from hotlane.population import ActionLabel


def test_oracle_config_validation():
    OracleConfig()
    with pytest.raises(ValidationError):
        OracleConfig(grid_n=5)
    with pytest.raises(ValidationError):
        OracleConfig(damping=0.0)
    with pytest.raises(ValidationError):
        OracleConfig(damping=1.5)
    with pytest.raises(ValidationError):
        OracleConfig(tol=0.0)
    with pytest.raises(ValidationError):
        OracleConfig(max_iters=0)


def _loop_shares(sigma, design, pop, bpr, grid_n):
    """Reference implementation: label every midpoint agent one by one."""
    counts = {label: 0 for label in ActionLabel}
    for i in range(grid_n):
        beta = (i + 0.5) * pop.beta_max / grid_n
        for j in range(grid_n):
            gamma = (j + 0.5) * pop.gamma_max / grid_n
            label = best_response(AgentType(beta, gamma), sigma, design, pop, bpr)
            counts[label] += 1
    total = grid_n * grid_n
    return (
        counts[ActionLabel.TOLL] / total,
        counts[ActionLabel.POOL] / total,
        counts[ActionLabel.ORDINARY] / total,
    )


def test_empirical_shares_matches_per_agent_loop(i880_pop, i880_bpr, congested_bpr):
    """The counting implementation reproduces per-agent labeling exactly."""
    cases = [
        (DesignParams(0.75, 0.5, 2.5), StrategyShares(0.1, 0.1, 0.8), i880_bpr),
        (DesignParams(0.25, 1.0, 2.5), StrategyShares(0.0, 0.01, 0.99), i880_bpr),
        (DesignParams(0.5, 0.5, 2.5), StrategyShares(0.3, 0.1, 0.6), congested_bpr),
        (DesignParams(0.5, 4.0, 2.5), StrategyShares(0.0, 0.5, 0.5), congested_bpr),
    ]
    for grid_n in (10, 37):
        cfg = OracleConfig(grid_n=grid_n)
        for design, sigma, bpr in cases:
            fast = empirical_shares(sigma, design, i880_pop, bpr, cfg)
            slow = _loop_shares(sigma, design, i880_pop, bpr, grid_n)
            assert fast.as_tuple() == slow


def test_empirical_shares_nonpositive_gap(i880_pop, i880_bpr):
    # Everyone on the HOT lane makes it the slow lane; every midpoint agent
    # picks ordinary.
    sigma = StrategyShares(0.5, 0.5, 0.0)
    design = DesignParams(0.25, 1.0, 2.5)
    cfg = OracleConfig(grid_n=50)
    assert empirical_shares(sigma, design, i880_pop, i880_bpr, cfg) == StrategyShares(0.0, 0.0, 1.0)


def test_empirical_shares_tracks_region_measures(i880_pop, congested_bpr):
    """Quadrature converges to the closed-form areas at O(1/grid_n)."""
    from hotlane import region_measures

    rng = np.random.default_rng(3)
    cfg = OracleConfig(grid_n=500)
    for _ in range(20):
        toll = rng.uniform(0, 0.5)
        pool = rng.uniform(0, 1.0 - toll)
        sigma = StrategyShares(toll, pool, 1.0 - toll - pool)
        design = DesignParams(rng.uniform(0.2, 0.8), rng.uniform(0.3, 10.0), 2.5)
        grid = empirical_shares(sigma, design, i880_pop, congested_bpr, cfg)
        exact = region_measures(sigma, design, i880_pop, congested_bpr)
        for a, b in zip(grid.as_tuple(), exact.as_tuple()):
            assert abs(a - b) <= 2.0 / cfg.grid_n


def test_oracle_equilibrium_fixed_point(i880_pop, i880_bpr, oracle_cfg):
    # Includes the design point whose exact equilibrium straddles a grid
    # labeling boundary (limit-cycle exit path).
    for rho, tau in [(0.25, 1.0), (0.75, 0.5), (0.75, 1.0)]:
        design = DesignParams(rho, tau, 2.5)
        shares, iterations = oracle_equilibrium(design, i880_pop, i880_bpr, oracle_cfg)
        again = empirical_shares(shares, design, i880_pop, i880_bpr, oracle_cfg)
        floor = oracle_cfg.tol + 2.0 / oracle_cfg.grid_n
        for a, b in zip(shares.as_tuple(), again.as_tuple()):
            assert abs(a - b) <= floor
        assert 1 <= iterations <= oracle_cfg.max_iters


def test_oracle_matches_solver_named_point(i880_pop, i880_bpr, oracle_cfg):
    design = DesignParams(0.25, 1.0, 2.5)
    shares, _ = oracle_equilibrium(design, i880_pop, i880_bpr, oracle_cfg)
    out = solve(design, i880_pop, i880_bpr)
    for a, b in zip(shares.as_tuple(), out.shares.as_tuple()):
        assert abs(a - b) <= 5e-3


def test_oracle_regime_a_toll_share(i880_pop, i880_bpr, oracle_cfg):
    design = DesignParams(0.25, 4.0, 2.5)
    assert classify_regime(design, i880_pop, i880_bpr) is RegimeLabel.A1
    shares, _ = oracle_equilibrium(design, i880_pop, i880_bpr, oracle_cfg)
    assert shares.toll <= 2.0 / oracle_cfg.grid_n


def test_oracle_grid_refinement(i880_pop, i880_bpr):
    """Doubling the grid moves the result by at most 4/grid_n."""
    base = OracleConfig(grid_n=2000)
    fine = OracleConfig(grid_n=4000)
    sampled = [
        (0.25, 0.5), (0.25, 5.0), (0.25, 10.0), (0.5, 1.0), (0.5, 4.5),
        (0.5, 9.0), (0.75, 0.5), (0.75, 1.0), (0.75, 5.5), (0.75, 10.0),
    ]
    for rho, tau in sampled:
        design = DesignParams(rho, tau, 2.5)
        coarse_shares, _ = oracle_equilibrium(design, i880_pop, i880_bpr, base)
        fine_shares, _ = oracle_equilibrium(design, i880_pop, i880_bpr, fine)
        for a, b in zip(coarse_shares.as_tuple(), fine_shares.as_tuple()):
            assert abs(a - b) <= 4.0 / base.grid_n


def test_oracle_damping_robustness(i880_pop, i880_bpr):
    """Different damping weights land on the same fixed point."""
    sampled = [(0.25, 1.0), (0.25, 7.5), (0.5, 3.0), (0.75, 4.0), (0.75, 10.0)]
    for rho, tau in sampled:
        design = DesignParams(rho, tau, 2.5)
        results = []
        for damping in (0.1, 0.2, 0.5):
            cfg = OracleConfig(damping=damping)
            shares, _ = oracle_equilibrium(design, i880_pop, i880_bpr, cfg)
            results.append(shares.as_tuple())
        for other in results[1:]:
            for a, b in zip(results[0], other):
                assert abs(a - b) <= 10 * OracleConfig().tol


def test_oracle_no_convergence_surfaced(i880_pop, i880_bpr):
    cfg = OracleConfig(max_iters=3)
    with pytest.raises(NoConvergence) as excinfo:
        oracle_equilibrium(DesignParams(0.75, 0.5, 2.5), i880_pop, i880_bpr, cfg)
    assert isinstance(excinfo.value.last_value, StrategyShares)
    assert excinfo.value.residual is not None


def test_oracle_deterministic(i880_pop, i880_bpr):
    cfg = OracleConfig(grid_n=400)
    design = DesignParams(0.75, 1.0, 2.5)
    first = oracle_equilibrium(design, i880_pop, i880_bpr, cfg)
    second = oracle_equilibrium(design, i880_pop, i880_bpr, cfg)
    assert first == second
