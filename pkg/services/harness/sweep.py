"""Parameter sweeps over L or T, one row per (value, scheme)."""

from typing import Literal, Optional, Sequence

from pydantic import BaseModel, ConfigDict

from config.log_setup import get_logger
from models.geometry import Point2D
from models.placement import PsoParams, SwarmResult
from models.results import ResultsTable
from models.scenario import DEADLINE_RULE, MonteCarloParams, ReceptionModel, Scenario
from models.scheduling import SchemeKind
from services.errors import SweepDomainError
from services.placement.grid import exhaustive_search
from services.placement.pso import optimize

from .monte_carlo import monte_carlo
from .streams import PSO, stream

logger = get_logger(__name__)

SweepParam = Literal["L", "T"]


class Placement(BaseModel):
    """Where UARNC hovers: a fixed point, or re-optimized per sweep value."""

    model_config = ConfigDict(frozen=True)

    mode: Literal["fixed", "pso", "grid"] = "fixed"
    q: Optional[Point2D] = None
    grid_step: float = 50.0


def scenario_at(scenario: Scenario, param: SweepParam, value: int) -> Scenario:
    layers = value if param == "L" else scenario.layers
    slots = value if param == "T" else scenario.slots
    if slots < layers:
        raise SweepDomainError(f"{DEADLINE_RULE} violated at {param}={value}: T={slots} < L={layers}")
    if param == "L" and scenario.fairness.l_min > layers:
        raise SweepDomainError(f"L={layers} is below fairness.l_min={scenario.fairness.l_min}")
    return scenario.with_coding(layers=layers, slots=slots)


async def place_uav(
    scenario: Scenario,
    placement: Placement,
    mc: MonteCarloParams,
    pso: PsoParams,
    index: int = 0,
    workers: Optional[int] = None,
) -> Optional[SwarmResult]:
    """Optimized position for `scenario`, or None for fixed placement."""
    if placement.mode == "pso":
        rng = stream(mc.master_seed, PSO, index)
        return await optimize(scenario, scenario.fairness, pso, mc, rng, workers)
    if placement.mode == "grid":
        return await exhaustive_search(scenario, scenario.fairness, placement.grid_step, mc, workers)
    return None


def placement_for(scheme: SchemeKind, placement: Placement) -> Optional[Placement]:
    """How a scheme's hover point is chosen; None means the fixed position."""
    if scheme is SchemeKind.UARNC:
        return placement
    if scheme is SchemeKind.UARNC_ES:
        return placement.model_copy(update={"mode": "grid"})
    return None


async def sweep(
    scenario: Scenario,
    param: SweepParam,
    values: Sequence[int],
    schemes: Sequence[SchemeKind],
    mc: MonteCarloParams,
    placement: Placement = Placement(),
    *,
    pso: Optional[PsoParams] = None,
    workers: Optional[int] = None,
    reception: ReceptionModel = "generic",
) -> ResultsTable:
    """One Monte Carlo row per (value, scheme), values outer.

    `placement` moves UARNC; UARNC-ES is always placed by grid search at
    `placement.grid_step`, UARNC-fixed hovers at the area center and the baselines
    at the fixed position. Each distinct placement is computed once per value.
    """
    if param not in ("L", "T"):
        raise SweepDomainError(f"Sweep parameter must be L or T, got {param!r}")
    schemes = [SchemeKind(s) for s in schemes]
    cells = [scenario_at(scenario, param, value) for value in values]
    pso = pso or PsoParams()
    fixed_q = placement.q or scenario.area.center
    table = ResultsTable()

    for index, (value, cell) in enumerate(zip(values, cells)):
        placed: dict[tuple[str, float], Point2D] = {}
        for scheme in schemes:
            how = placement_for(scheme, placement)
            if scheme is SchemeKind.UARNC_FIXED:
                q = cell.area.center
            elif how is None:
                q = fixed_q
            else:
                key = (how.mode, how.grid_step)
                if key not in placed:
                    result = await place_uav(cell, how, mc, pso, index, workers)
                    placed[key] = fixed_q if result is None else result.q_star
                q = placed[key]
            row = await monte_carlo(cell, q, scheme, mc, workers=workers, reception=reception)
            logger.info(
                "Sweep %s=%d %s: %.6f [%.6f, %.6f]",
                param,
                value,
                scheme.value,
                row.mean_throughput,
                row.ci95_lo,
                row.ci95_hi,
            )
            table.rows.append(row)
    return table
