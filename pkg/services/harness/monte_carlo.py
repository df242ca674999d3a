"""Monte Carlo estimate of one scheme's throughput at one position."""

import math
from functools import partial
from typing import Optional, Sequence

import numpy as np

from config.log_setup import get_logger
from models.geometry import Point2D
from models.results import ResultsRow
from models.scenario import MonteCarloParams, ReceptionModel, Scenario
from models.scheduling import SchemeKind
from services.analytics.decode_distribution import feasible
from services.scheduler.episode import run_episode

from .streams import episode_rng
from .workers import chunked, map_ordered

logger = get_logger(__name__)

Z95 = 1.96
RUNS_PER_TASK = 32


def _run_block(
    scenario: Scenario,
    q: Point2D,
    scheme: SchemeKind,
    master_seed: int,
    runs: range,
    reception: ReceptionModel,
    pers: Optional[Sequence[float]],
) -> list[float]:
    return [
        run_episode(
            scenario, q, scheme, episode_rng(master_seed, r), pers=pers, reception=reception
        ).throughput
        for r in runs
    ]


def summarize(values: np.ndarray) -> tuple[float, float, float]:
    """Mean and normal-approximation 95% interval; a single run gives a zero-width one."""
    mean = float(np.mean(values))
    if len(values) < 2:
        return mean, mean, mean
    half = Z95 * float(np.std(values, ddof=1)) / math.sqrt(len(values))
    return mean, mean - half, mean + half


async def monte_carlo(
    scenario: Scenario,
    q: Point2D,
    scheme: SchemeKind,
    mc: MonteCarloParams,
    *,
    workers: Optional[int] = None,
    reception: ReceptionModel = "generic",
    pers: Optional[Sequence[float]] = None,
) -> ResultsRow:
    """Run R episodes; run r always uses the episode substream r of the master seed."""
    blocks = chunked(mc.runs, RUNS_PER_TASK)
    results = await map_ordered(
        partial(_run_block, scenario, q, scheme, mc.master_seed, reception=reception, pers=pers),
        blocks,
        workers,
    )
    values = np.array([value for block in results for value in block], dtype=float)
    mean, lo, hi = summarize(values)

    is_feasible = feasible(q, scenario, scenario.fairness)
    if not is_feasible:
        logger.warning(
            "Position (%.1f, %.1f) violates the fairness constraint for %s",
            q.x,
            q.y,
            scheme.value,
        )
    logger.debug(
        "%s L=%d T=%d at (%.1f, %.1f): %.6f [%.6f, %.6f] over %d runs",
        scheme.value,
        scenario.layers,
        scenario.slots,
        q.x,
        q.y,
        mean,
        lo,
        hi,
        mc.runs,
    )
    return ResultsRow(
        scheme=scheme.value,
        L=scenario.layers,
        T=scenario.slots,
        K=scenario.num_users,
        qx=q.x,
        qy=q.y,
        mean_throughput=mean,
        ci95_lo=lo,
        ci95_hi=hi,
        runs=mc.runs,
        seed=mc.master_seed,
        feasible=is_feasible,
    )
