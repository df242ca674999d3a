"""Exhaustive grid search over feasible hover positions."""

from typing import Optional

import numpy as np

from config.log_setup import get_logger
from models.geometry import Area, Point2D
from models.placement import SwarmResult, TraceRecord
from models.scenario import FairnessSpec, MonteCarloParams, Scenario
from services.analytics.decode_distribution import feasible
from services.channel.link import packet_error_rates
from services.errors import InfeasibleProblemError, ParameterError

from .fitness import CachedFitness, FitnessEvaluator

logger = get_logger(__name__)


def _axis(lo: float, hi: float, step: float) -> np.ndarray:
    # Inclusive of hi when it lies on the lattice
    return lo + step * np.arange(int(np.floor((hi - lo) / step + 1e-9)) + 1)


def grid_points(area: Area, step: float) -> list[Point2D]:
    """Row-major lattice (x outer, y inner) anchored at the lower-left corner."""
    if not step > 0:
        raise ParameterError(f"Grid step must be positive, got {step}")
    return [
        Point2D(x=float(x), y=float(y))
        for x in _axis(area.xmin, area.xmax, step)
        for y in _axis(area.ymin, area.ymax, step)
    ]


async def exhaustive_search(
    scenario: Scenario,
    spec: FairnessSpec,
    grid_step: float,
    mc: MonteCarloParams,
    workers: Optional[int] = None,
) -> SwarmResult:
    """Best feasible lattice point; ties go to lower mean PER, then lattice order."""
    candidates = [q for q in grid_points(scenario.area, grid_step) if feasible(q, scenario, spec)]
    if not candidates:
        raise InfeasibleProblemError(
            f"No feasible grid point at step {grid_step} "
            f"(l_min={spec.l_min}, p_th={spec.p_th})"
        )
    logger.info("Grid search over %d feasible points (step %.1f m)", len(candidates), grid_step)

    cache = CachedFitness(FitnessEvaluator(scenario, mc))
    scores = await cache.evaluate_many(candidates, workers)
    mean_pers = [float(np.mean(packet_error_rates(scenario, q))) for q in candidates]

    best = 0
    for i in range(1, len(candidates)):
        if scores[i] > scores[best] or (
            scores[i] == scores[best] and mean_pers[i] < mean_pers[best]
        ):
            best = i
    q_star = candidates[best]
    logger.info("Grid best: q*=(%.2f, %.2f) fitness %.6f", q_star.x, q_star.y, scores[best])
    return SwarmResult(
        q_star=q_star,
        fitness=scores[best],
        trace=(TraceRecord(iter=0, gbest_fit=scores[best], qx=q_star.x, qy=q_star.y),),
        evaluations=cache.misses,
        method="grid",
    )
