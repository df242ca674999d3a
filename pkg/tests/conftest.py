import pytest

from models.geometry import Area, Point2D, RadioParams
from models.scenario import FairnessSpec, MonteCarloParams, Scenario

# -130 dB noise: PER ~0.45 directly below the UAV, ~0.96 at 500 m offset
NOISY_SIGMA2 = 1e-13


@pytest.fixture
def noisy_radio() -> RadioParams:
    return RadioParams(sigma2=NOISY_SIGMA2)


@pytest.fixture
def two_users() -> list[Point2D]:
    return [Point2D(x=0.0, y=0.0), Point2D(x=300.0, y=0.0)]


@pytest.fixture
def small_scenario(two_users, noisy_radio) -> Scenario:
    return Scenario(
        users=two_users,
        radio=noisy_radio,
        layers=3,
        slots=4,
        fairness=FairnessSpec(l_min=1, p_th=0.0),
    )


@pytest.fixture
def small_area_scenario(noisy_radio) -> Scenario:
    return Scenario(
        users=[Point2D(x=-50.0, y=0.0), Point2D(x=80.0, y=40.0)],
        area=Area(xmin=-100.0, xmax=100.0, ymin=-100.0, ymax=100.0),
        radio=noisy_radio,
        layers=2,
        slots=3,
        fairness=FairnessSpec(l_min=1, p_th=0.0),
    )


@pytest.fixture
def quick_mc() -> MonteCarloParams:
    return MonteCarloParams(runs=20, master_seed=7)
