import asyncio

import numpy as np
import pytest

from models.geometry import Area, Point2D
from models.placement import Particle, PsoParams
from models.scenario import (
    ClusterSpec,
    FairnessSpec,
    LayoutKind,
    MonteCarloParams,
    Scenario,
    ScenarioSpec,
)
from models.scheduling import SchemeKind
from services.errors import InfeasibleProblemError, ParameterError
from services.harness.monte_carlo import monte_carlo
from services.harness.scenarios import generate_scenario
from services.harness.streams import EPISODE, FITNESS, PSO, stream
from services.placement.fitness import CachedFitness, FitnessEvaluator, fitness
from services.placement.grid import exhaustive_search, grid_points
from services.placement.pso import optimize, update_position, update_velocity
from services.scheduler.episode import run_episode

OPEN = FairnessSpec(l_min=1, p_th=0.0)
STRICT = FairnessSpec(l_min=1, p_th=1.0)


class OnesRng:
    """Stand-in generator whose uniform draws are all 1."""

    def random(self, size=None):
        return 1.0 if size is None else np.ones(size)


def _particle(o=(0.0, 0.0), v=(10.0, 0.0), pbest=(100.0, 0.0)):
    return Particle(o=Point2D.of(o), v=v, pbest=Point2D.of(pbest))


def test_velocity_update_with_unit_draws():
    params = PsoParams(bounds=Area())
    v = update_velocity(_particle(), Point2D(x=0.0, y=100.0), params, OnesRng())
    assert v == pytest.approx((0.729 * 10 + 1.4955 * 100, 1.4955 * 100))


def test_velocity_is_clamped_per_axis():
    params = PsoParams(bounds=Area())
    p = _particle(pbest=(1000.0, -1000.0))
    v = update_velocity(p, Point2D(x=1000.0, y=-1000.0), params, OnesRng())
    assert v == pytest.approx((200.0, -200.0))


def test_random_inertia_stays_in_range():
    params = PsoParams(bounds=Area(), random_inertia=True, c1=0.0, c2=0.0)
    rng = np.random.default_rng(0)
    for _ in range(50):
        vx, _ = update_velocity(_particle(v=(100.0, 0.0)), Point2D(x=0.0, y=0.0), params, rng)
        assert 50.0 <= vx <= 100.0


def test_position_update_clamps_to_the_area(small_scenario):
    params = PsoParams().within(small_scenario.area)
    p = _particle(o=(450.0, 0.0))
    assert update_position(p, (200.0, 30.0), small_scenario, OPEN, params) == Point2D(
        x=500.0, y=30.0
    )


def test_infeasible_moves_are_rejected(small_scenario):
    params = PsoParams().within(small_scenario.area)
    p = _particle(o=(0.0, 0.0))
    assert update_position(p, (50.0, 50.0), small_scenario, STRICT, params) == p.o


def test_fitness_uses_common_random_numbers(small_scenario, quick_mc):
    q = Point2D(x=20.0, y=-10.0)
    assert fitness(q, small_scenario, quick_mc) == fitness(q, small_scenario, quick_mc)


def test_fitness_prefers_the_user_centroid(small_scenario, quick_mc):
    evaluator = FitnessEvaluator(small_scenario, quick_mc)
    assert evaluator(Point2D(x=150.0, y=0.0)) > evaluator(Point2D(x=-500.0, y=500.0))


def test_cache_counts_hits_and_misses(small_scenario, quick_mc):
    cache = CachedFitness(FitnessEvaluator(small_scenario, quick_mc))
    a, b = Point2D(x=0.0, y=0.0), Point2D(x=10.0, y=0.0)
    values = asyncio.run(cache.evaluate_many([a, b, a], workers=2))
    assert values[0] == values[2]
    assert cache(b) == values[1]
    assert (cache.hits, cache.misses) == (2, 2)


def test_swarm_trace_and_best(small_scenario, quick_mc):
    params = PsoParams(sizepop=6, maxg=5)
    result = asyncio.run(
        optimize(small_scenario, OPEN, params, quick_mc, stream(quick_mc.master_seed, PSO, 0))
    )
    fits = [record.gbest_fit for record in result.trace]
    assert [record.iter for record in result.trace] == list(range(5))
    assert fits == sorted(fits)
    assert small_scenario.area.contains(result.q_star)
    assert result.fitness == pytest.approx(fitness(result.q_star, small_scenario, quick_mc))
    assert 1 <= result.evaluations <= 6 * 5


def test_swarm_is_deterministic_across_worker_counts(small_scenario, quick_mc):
    params = PsoParams(sizepop=5, maxg=4, init_velocity="zero")
    results = [
        asyncio.run(
            optimize(small_scenario, OPEN, params, quick_mc, stream(3, PSO, 0), workers=w)
        )
        for w in (1, 4)
    ]
    assert results[0] == results[1]


def test_stall_stops_early(small_scenario, quick_mc):
    params = PsoParams(sizepop=3, maxg=50, stall_iterations=2, stall_tolerance=1.0)
    result = asyncio.run(optimize(small_scenario, OPEN, params, quick_mc, stream(0, PSO, 0)))
    assert result.iterations == 3


def test_swarm_without_feasible_start(small_scenario, quick_mc):
    params = PsoParams(sizepop=4, maxg=2)
    with pytest.raises(InfeasibleProblemError):
        asyncio.run(optimize(small_scenario, STRICT, params, quick_mc, stream(0, PSO, 0)))


def test_grid_points_include_both_edges():
    points = grid_points(Area(), 50.0)
    assert len(points) == 21 * 21
    assert points[0] == Point2D(x=-500.0, y=-500.0)
    assert points[-1] == Point2D(x=500.0, y=500.0)


def test_grid_step_must_be_positive():
    with pytest.raises(ParameterError):
        grid_points(Area(), 0.0)


def test_grid_search_returns_the_best_lattice_point(small_area_scenario, quick_mc):
    result = asyncio.run(exhaustive_search(small_area_scenario, OPEN, 100.0, quick_mc))
    evaluator = FitnessEvaluator(small_area_scenario, quick_mc)
    scores = [evaluator(q) for q in grid_points(small_area_scenario.area, 100.0)]
    assert result.method == "grid"
    assert result.evaluations == 9
    assert result.fitness == pytest.approx(max(scores))


def test_grid_search_without_feasible_points(small_area_scenario, quick_mc):
    with pytest.raises(InfeasibleProblemError):
        asyncio.run(exhaustive_search(small_area_scenario, STRICT, 100.0, quick_mc))


def test_fitness_scores_on_its_own_substream(small_scenario, quick_mc):
    q = Point2D(x=150.0, y=0.0)
    runs = [
        run_episode(
            small_scenario, q, SchemeKind.UARNC, stream(quick_mc.master_seed, FITNESS, r)
        ).throughput
        for r in range(quick_mc.runs)
    ]
    assert fitness(q, small_scenario, quick_mc) == pytest.approx(np.mean(runs))
    assert not np.array_equal(
        stream(quick_mc.master_seed, FITNESS, 0).random(8),
        stream(quick_mc.master_seed, EPISODE, 0).random(8),
    )


def _layout(spec: ScenarioSpec, **coding) -> Scenario:
    return generate_scenario(spec, Scenario(users=[Point2D(x=0.0, y=0.0)], **coding))


@pytest.mark.slow
@pytest.mark.parametrize("seed", range(5))
def test_swarm_matches_exhaustive_search(seed):
    scenario = _layout(
        ScenarioSpec(layout=LayoutKind.UNIFORM, count=10, seed=seed), layers=3, slots=6
    )
    mc = MonteCarloParams(runs=8, master_seed=seed)
    grid = asyncio.run(exhaustive_search(scenario, scenario.fairness, 50.0, mc))
    swarm = asyncio.run(
        optimize(
            scenario,
            scenario.fairness,
            PsoParams(sizepop=10, maxg=10),
            mc,
            stream(seed, PSO, 0),
        )
    )
    assert swarm.fitness >= 0.98 * grid.fitness


@pytest.mark.slow
def test_uniform_users_leave_the_center_optimal():
    scenario = _layout(
        ScenarioSpec(layout=LayoutKind.UNIFORM, count=20, seed=2), layers=3, slots=6
    )
    mc = MonteCarloParams(runs=10, master_seed=2)
    result = asyncio.run(
        optimize(scenario, scenario.fairness, PsoParams(sizepop=10, maxg=10), mc, stream(2, PSO, 0))
    )
    assert fitness(scenario.area.center, scenario, mc) >= 0.99 * result.fitness


@pytest.mark.slow
def test_clustered_users_pull_the_uav_off_center(noisy_radio):
    hotspots = [
        ClusterSpec(center=Point2D(x=300.0, y=300.0), sigma=20.0, count=10),
        ClusterSpec(center=Point2D(x=-300.0, y=-250.0), sigma=20.0, count=5),
        ClusterSpec(center=Point2D(x=350.0, y=-300.0), sigma=20.0, count=5),
    ]
    scenario = _layout(
        ScenarioSpec(layout=LayoutKind.CLUSTERS, clusters=hotspots, seed=1),
        radio=noisy_radio,
        layers=2,
        slots=4,
        fairness=OPEN,
    )
    result = asyncio.run(
        exhaustive_search(scenario, OPEN, 100.0, MonteCarloParams(runs=20, master_seed=3))
    )
    mc = MonteCarloParams(runs=200, master_seed=3)
    placed = asyncio.run(monte_carlo(scenario, result.q_star, SchemeKind.UARNC, mc))
    center = asyncio.run(
        monte_carlo(scenario, scenario.area.center, SchemeKind.UARNC_FIXED, mc)
    )
    assert result.q_star != scenario.area.center
    assert placed.ci95_lo > center.ci95_hi
