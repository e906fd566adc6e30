import pytest

from hotlane import BprParams, DesignParams, OracleConfig, PopulationParams


@pytest.fixture(scope="session")
def i880_pop() -> PopulationParams:
    return PopulationParams(demand=115.0, beta_max=1.5, gamma_max=8.0)


@pytest.fixture(scope="session")
def i880_bpr() -> BprParams:
    return BprParams(a=0.15, b=4.0, t_free=22.0, v_cap=140.0)


@pytest.fixture(scope="session")
def congested_bpr() -> BprParams:
    """Steep volume-delay curve used to reach the regimes the mild I-880
    calibration cannot."""
    return BprParams(a=1.0, b=4.0, t_free=22.0, v_cap=140.0)


@pytest.fixture(scope="session")
def a2_setup(congested_bpr):
    """A design point that classifies into Regime A2 (tau above gamma_max,
    large weighted probe gap)."""
    pop = PopulationParams(demand=115.0, beta_max=2.0, gamma_max=1.0)
    design = DesignParams(rho=0.7, tau=1.5, occupancy=3.0)
    return design, pop, congested_bpr


@pytest.fixture(scope="session")
def oracle_cfg() -> OracleConfig:
    return OracleConfig()


def make_design(rho: float, tau: float, occupancy: float = 2.5) -> DesignParams:
    return DesignParams(rho=rho, tau=tau, occupancy=occupancy)
